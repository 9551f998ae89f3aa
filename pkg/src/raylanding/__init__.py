"""Dynamic rays and landing constructions for z^D + c and e^z + c."""

from .maps import MapSpec
from .symbolic import DigitSequence, ExpAddress, PolyAngle

__all__ = ["MapSpec", "PolyAngle", "DigitSequence", "ExpAddress"]
__version__ = "0.1.0"
