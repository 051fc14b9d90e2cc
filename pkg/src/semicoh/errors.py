"""Exception hierarchy shared by every module.

All numerical-failure conditions raise a subclass of SemicohError so the
CLI can map them to a single exit code, distinct from usage errors.
"""

from __future__ import annotations


class SemicohError(Exception):
    """Base class for all library-level failures."""


class DimMismatch(SemicohError):
    """Operands have incompatible dimensions."""


class NotHermitian(SemicohError):
    """A matrix required to be Hermitian fails the tolerance check."""


class NotUnitary(SemicohError):
    """A matrix required to be unitary fails the tolerance check."""


class NotInvolutive(SemicohError):
    """A dichotomic observable fails the a^2 = 1 check."""


class BranchCut(SemicohError):
    """Principal logarithm undefined: spectrum touches the closed negative real axis."""


class NonDiagonalizable(SemicohError):
    """Eigenvector matrix too ill-conditioned to trust a spectral decomposition."""


class DegenerateGrid(SemicohError):
    """Order estimation needs at least four distinct positive t samples."""


class SingularInverse(SemicohError):
    """A time-reversed process could not be inverted."""


class ZeroBranch(SemicohError):
    """A sampled measurement branch has numerically zero norm."""


class DegenerateSpectrum(SemicohError):
    """Walk refused: two eigenvalues share the same magnitude."""


class BranchAmbiguity(SemicohError):
    """arccos inversion ambiguous: |t| times the spectral radius reaches pi/2."""


class ZeroSuccess(SemicohError):
    """Post-selection probability is numerically zero."""


class ZeroState(SemicohError):
    """A state vector has numerically zero norm."""


class ZeroField(SemicohError):
    """One-qubit field strength d = 0: the evolution is trivially the identity."""


class OddLength(SemicohError):
    """Even chain length required for the sublattice split / valence bond cover."""


class EvenOrder(SemicohError):
    """The symmetric Svetlichny form is defined for odd qubit counts only."""


class NonFinite(SemicohError):
    """An energy evaluation produced a non-finite value (parameter blow-up)."""


class UnknownProcess(SemicohError):
    """Process id is not one of the twelve registered rows."""
