"""Bistable soft-gripper energy modeling and design exploration."""

__version__ = "0.1.0"

from .model import (ChainConfiguration, CrossSection, EnergyLandscape,
                    FingerDesign, GripperDesign, LinearElastic, RingDesign,
                    Yeoh, chain_energy, chain_gradient, chain_hessian,
                    finger_energy_1dof, forward_kinematics, gradient_1dof,
                    gravity_energy_1dof, moment_curvature, ring_energy_1dof,
                    sample_landscape, set_design_value, total_energy_1dof)
from .statics import (ContinuationPath, Equilibrium, EquilibriumReport,
                      continuation_ramped_load, find_equilibria_1dof,
                      find_equilibria_chain, saddle_search_chain,
                      snap_through_energy, trigger_moment)
from .dynamics import (ClosingEvent, Trajectory, closing_time,
                       closing_time_vs_frequency_study, gravity_trigger_check,
                       natural_frequency, simulate_1dof)
from .explore import (MorphologyCaseReport, SweepSpec, SweepTable,
                      grip_force_estimate, reproduce_fea_cases, run_sweep,
                      tune_ring_width)
from .config import (ConfigDocument, build_design, build_solver_settings,
                     default_config, load_config, parse_config,
                     serialize_config)
