"""Closed-form measure curves for Werner states under one-sided amplitude damping.

These expressions serve as the independent oracle against the numeric
Kraus pipeline. For a Werner state with parameter p evolved at strength q:

  concurrence   C(p, q) = max(0, p sqrt(1-q) - (1/2) sqrt((1-p)(1-q)(1-p+q+pq)))
  fidelity      F(p, q) = (3 + (1 + 2 sqrt(1-q) - q) p) / 6
  bell          B(p, q) = max(B1, B2),  B1 = 2 sqrt(p) sqrt(1-q),
                                        B2 = 2 p sqrt(2 - 3q + q^2)

The two-branch Bell expression is kept as-is rather than silently corrected.
It is known to be defective: with s = sqrt(1-q), B2 equals 2 sqrt(v1 + v3)
over the eigenvalues v = (p^2 s^2, p^2 s^2, p^2 s^4) of T^T T, i.e. it pairs
the largest eigenvalue with the smallest instead of the two largest, and B1
over-scales at small p. The Kraus pipeline yields 2 sqrt(2) p sqrt(1-q)
exactly. The discrepancy is characterized by dedicated diagnostic tests so
the defective form stays inspectable next to the measured truth.
"""

from __future__ import annotations

import math


def _check_point(p: float, q: float) -> tuple[float, float]:
    p, q = float(p), float(q)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"state parameter p must lie in [0, 1], got {p}")
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"channel parameter q must lie in [0, 1], got {q}")
    return p, q


def concurrence_ad_unclamped(p: float, q: float) -> float:
    """Signed concurrence expression; its zero crossing locates q_C."""
    p, q = _check_point(p, q)
    inner = (1.0 - p) * (1.0 - q) * (1.0 - p + q + p * q)
    return p * math.sqrt(1.0 - q) - 0.5 * math.sqrt(max(inner, 0.0))


def concurrence_ad(p: float, q: float) -> float:
    """Concurrence of the damped Werner state, clamped at zero."""
    return max(0.0, concurrence_ad_unclamped(p, q))


def fidelity_ad(p: float, q: float) -> float:
    """Optimal teleportation fidelity of the damped Werner state."""
    p, q = _check_point(p, q)
    return (3.0 + (1.0 + 2.0 * math.sqrt(1.0 - q) - q) * p) / 6.0


def bell_ad_branches(p: float, q: float) -> tuple[float, float]:
    """The two branches (B1, B2) of the closed-form Bell expression."""
    p, q = _check_point(p, q)
    b1 = 2.0 * math.sqrt(p) * math.sqrt(1.0 - q)
    b2 = 2.0 * p * math.sqrt(2.0 - 3.0 * q + q * q)
    return b1, b2


def bell_ad(p: float, q: float) -> float:
    """Two-branch closed-form Bell parameter max(B1, B2).

    See the module docstring: this expression is defective and disagrees
    with the Kraus pipeline away from q = 0.
    """
    return max(bell_ad_branches(p, q))


def boundary_q_c(p: float) -> float | None:
    """Smallest q in [0, 1] where the closed-form concurrence reaches zero.

    Exhaustive by cases: 0 for p <= 1/3 (never entangled to begin with),
    (3p - 1)/(1 - p) for p in (1/3, 1/2] (reaching exactly 1 at p = 1/2),
    and None for p > 1/2, where entanglement survives every q < 1.
    """
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"state parameter p must lie in [0, 1], got {p}")
    if p <= 1.0 / 3.0:
        return 0.0
    if p > 0.5:
        return None
    return (3.0 * p - 1.0) / (1.0 - p)
