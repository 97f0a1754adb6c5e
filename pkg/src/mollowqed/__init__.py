"""Radiative and relativistic corrections to Mollow sidebands of driven hydrogen 1S-3P."""

from .constants import DEFAULT_CONSTANTS, PhysicalConstants, UncertainValue
from .dressed import DriveConfig, generalized_rabi, reference_drive
from .hydrogen import AtomicLevel, level
from .ledger import Kind, Target, ledger_report
from .spectrum import LevelScheme, incoherent_spectrum, refine_peak, steady_state

__version__ = "0.1.0"
