"""Shared numeric tolerances and defaults."""

#: Tolerance for algebraic identities that hold exactly up to round-off.
EQ_TOL = 1e-12

#: Largest n for which a dense n-by-n similarity matrix is allocated.
DENSE_CAP = 20_000

DEFAULT_DAMPING = 0.6
DEFAULT_ITERS = 15


def oracle_tol(c: float, k: int) -> float:
    """Tolerance for comparing two K-truncated SimRank series.

    Both sides truncate the same geometric series differently; each tail is
    bounded by ``c**(k+1)`` per entry.
    """
    return max(1e-10, 3.0 * c ** (k + 1))
