"""Utility module for Quipu

Definitions/declarations in this module should be independent of other modules,
to the maximum extent possible.
"""
# Standard Library Imports
import logging

from enum import Enum
from fractions import Fraction

# Quipu
from mpmath import mp, mpf

logger = logging.getLogger("quipu.utils")


class FamilyId(Enum):
    """The three candidate families, keyed by their textual code"""

    FamP = "P"
    FamPPrime = "P1"
    FamPDoublePrime = "P2"

    def parts(self, e):
        """Number of internal paths r of a member with parameter ``e``"""
        return e - _PART_OFFSET[self]

    @property
    def mirror_symmetric(self):
        return self is not FamilyId.FamPPrime

    @classmethod
    def from_code(cls, code):
        return cls(code.strip())


_PART_OFFSET = {FamilyId.FamP: 4, FamilyId.FamPPrime: 3, FamilyId.FamPDoublePrime: 2}


class Scope(Enum):
    FamilyP = "FamilyP"
    FamilyPPrime = "FamilyPPrime"
    FamilyPDoublePrime = "FamilyPDoublePrime"
    AllTrees = "AllTrees"
    AllGraphsSmall = "AllGraphsSmall"

    @classmethod
    def for_family(cls, family):
        return {
            FamilyId.FamP: cls.FamilyP,
            FamilyId.FamPPrime: cls.FamilyPPrime,
            FamilyId.FamPDoublePrime: cls.FamilyPDoublePrime,
        }[family]


class LimitKind(Enum):
    """Defining equations of the limit radii"""

    RhoK = "RhoK"
    RhoPrimeK = "RhoPrimeK"
    RhoDoublePrimeK = "RhoDoublePrimeK"


class ConvergenceKind(Enum):
    """Tree sequences whose radii converge to a limit radius"""

    DoublePrimeIKJ = "DoublePrimeIKJ"
    PrimeKJ = "PrimeKJ"
    CorollaryKI = "CorollaryKI"


def is_exact(value):
    return isinstance(value, (int, Fraction))


def as_mpf(value):
    """Convert ints, Fractions, strings and floats to an mpmath scalar"""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


def format_scalar(value, digits):
    """Decimal string of ``value`` with ``digits`` significant digits"""
    if value is None:
        return None
    return mp.nstr(as_mpf(value), int(digits))
