"""Chebyshev polynomials of the first kind and the rank-2 substitution identity.

The bridge between the exchange recurrence and the skein recursion runs
through the quantity x1*x4 - x2*x3, where x3, x4 are the cluster variables
produced by two seed mutations of the rank-2 (2, 2) seed.  That combination
collapses to (x1^2 + x2^2 + 1)/(x1*x2), and the Chebyshev family evaluated at
it stays Laurent with positive coefficients.
"""

from __future__ import annotations

from .cluster import initial_seed, mutate_seed, rank2_matrix, rank2_sequence
from .laurent import LaurentPoly, NotDivisibleError


class IdentityFailure(RuntimeError):
    """A symbolic identity that must hold by construction failed."""


def chebyshev_T(n: int) -> LaurentPoly:
    """T_n as an exact univariate polynomial: T_0 = 1, T_1 = x, T_{n+1} = 2x T_n - T_{n-1}."""
    if n < 0:
        raise ValueError("Chebyshev index must be nonnegative")
    prev = LaurentPoly.one(1)
    if n == 0:
        return prev
    x = LaurentPoly.variable(1, 0)
    current = x
    for _ in range(n - 1):
        prev, current = current, 2 * x * current - prev
    return current


def cheb_self_check(m: int, n: int) -> bool:
    """Recurrence and composition cross-checks: 2x T_n - T_{n-1} = T_{n+1}, T_m(T_n) = T_{mn}."""
    if m < 0 or n < 0:
        return False
    x = LaurentPoly.variable(1, 0)
    if n >= 1:
        if 2 * x * chebyshev_T(n) - chebyshev_T(n - 1) != chebyshev_T(n + 1):
            return False
    composed = chebyshev_T(m).substitute(0, chebyshev_T(n))
    return composed == chebyshev_T(m * n)


def substitution_value() -> LaurentPoly:
    """(x1^2 + x2^2 + 1)/(x1*x2) expanded as a 2-variable Laurent polynomial."""
    x1 = LaurentPoly.variable(2, 0)
    x2 = LaurentPoly.variable(2, 1)
    numerator = x1**2 + x2**2 + LaurentPoly.one(2)
    return numerator.div_exact(x1 * x2)


def x_substitution_identity() -> LaurentPoly:
    """Check x1*x4 - x2*x3 = (x1^2 + x2^2 + 1)/(x1*x2) and return the value.

    x3 and x4 come from actual seed mutations (directions 1 then 2), so a
    mismatch here points at a mutation bug rather than at algebra done by
    hand.
    """
    seed = initial_seed(rank2_matrix(2, 2))
    after_one = mutate_seed(seed, 1)
    after_two = mutate_seed(after_one, 2)
    x1 = LaurentPoly.variable(2, 0)
    x2 = LaurentPoly.variable(2, 1)
    x3 = after_one.cluster[0]
    x4 = after_two.cluster[1]
    combination = x1 * x4 - x2 * x3
    expected = substitution_value()
    if combination != expected:
        raise IdentityFailure("x1*x4 - x2*x3 does not collapse to (x1^2+x2^2+1)/(x1*x2)")
    return combination


def chebyshev_at_substitution(n: int) -> LaurentPoly:
    """T_n evaluated at (x1^2 + x2^2 + 1)/(x1*x2), cleared to a Laurent polynomial."""
    x1 = LaurentPoly.variable(2, 0)
    x2 = LaurentPoly.variable(2, 1)
    numerator = x1**2 + x2**2 + LaurentPoly.one(2)
    return chebyshev_T(n).substitute(0, numerator, x1 * x2)


def basis_elements(window: tuple[int, int], p_max: int, q_max: int, n_max: int) -> list[LaurentPoly]:
    """Monomials x_i^p x_{i+1}^q plus the Chebyshev family at x1*x4 - x2*x3.

    ``window`` is an inclusive 1-based range of sequence indices i.  Every
    element is expanded as a Laurent polynomial in the initial variables.
    """
    lo, hi = window
    if lo < 1 or hi < lo:
        raise ValueError("window must be an inclusive 1-based range")
    if min(p_max, q_max, n_max) < 0:
        raise ValueError("bounds must be nonnegative")
    seq = rank2_sequence(2, 2, hi + 1)
    elements: list[LaurentPoly] = []
    for i in range(lo, hi + 1):
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                elements.append(seq[i - 1] ** p * seq[i] ** q)
    for n in range(1, n_max + 1):
        elements.append(chebyshev_at_substitution(n))
    return elements


def substitute_square(p: LaurentPoly, image: LaurentPoly) -> LaurentPoly:
    """Map v^(2k) to image^k for a univariate p with even exponents.

    Negative k requires an exact division by image^(-k); NotDivisibleError
    propagates when the image does not clear.
    """
    if p.arity != 1:
        raise ValueError("square substitution expects a univariate polynomial")
    halved = {}
    for (half,), coeff in p.terms():
        if half % 4:
            raise NotDivisibleError("exponent is not an even integer power")
        halved[(half // 2,)] = coeff
    return LaurentPoly(1, halved).substitute(0, image)
