"""Primary Module to define version and expose packages"""

__version__ = "0.1.0"

# Local/Relative Imports
from .workbench import Workbench

__all__ = ("Workbench",)
