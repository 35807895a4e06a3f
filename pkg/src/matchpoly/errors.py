"""Errors raised across matchpoly.

Plain argument misuse (bad heights, absent edges, out-of-range indices,
unbalanced sets) raises ValueError; the classes below mark conditions a
caller may want to distinguish programmatically.
"""


class Error(Exception):
    """Base class for matchpoly errors."""


class CapExceeded(Error):
    """An exhaustive enumeration passed its configured cap."""


class NoPerfectMatching(Error):
    """The graph has no perfect matching but the operation needs one."""


class NotAlternating(Error):
    """A cycle offered for flipping is not alternating for the matching."""


class DisconnectedSkeleton(Error):
    """A skeleton BFS found an unreachable pair; matching skeletons are
    connected, so this signals a bug."""


class UnreachableOptimum(Error):
    """No monotone path from the start vertex reaches an optimal vertex."""


class Unreachable(Error):
    """No admissible flip sequence connects the two matchings."""


class WrongOrigin(Error):
    """The towered graph lacks the split-construction origin metadata."""


class PreconditionViolation(Error):
    """A constructive procedure was handed inputs outside its contract;
    the message names the failing condition."""


class NotSpanning(Error):
    """The cycle misses the tower chain of some source vertex."""


class NotHamiltonian(Error):
    """The supplied vertex sequence is not a Hamiltonian cycle."""


class ZeroStep(Error):
    """The circuit direction is infeasible at the point (step would be 0)."""


class UnboundedDirection(Error):
    """No nonnegativity constraint limits the circuit step; impossible on a
    polytope, so this signals a bug."""
