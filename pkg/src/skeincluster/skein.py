"""Skein recursion for the (2, n) torus family and the Chebyshev correspondence.

All values live in the univariate half-integer-exponent ring in t.  The skein
relation

    (1/t) V_{L-} - t V_{L+} = (sqrt(t) - 1/sqrt(t)) V_L

is handled through the rescaling W_{L+-} = (-(t+1)/sqrt(t)) V_{L+-},
W_L = (t^2 - 1) V_L, under which it becomes the linear three-term relation
W_L = t^2 W_{L+} - W_{L-}.  Solving for one endpoint and clearing the scale
factors by exact division walks the torus family in either direction; the
closed forms are never hard-coded, every step performs the division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from . import chebyshev
from .laurent import LaurentPoly
from .report import Check, Report

Role = Literal["plus", "minus", "base"]

T = LaurentPoly.variable(1, 0)
SQRT_T = LaurentPoly.half_power(1, 0, 1)
ONE = LaurentPoly.one(1)
# -(t+1)/sqrt(t), the crossing-role scale factor
NEG_T_PLUS_1_OVER_SQRT = LaurentPoly(1, {(1,): -1, (-1,): -1})
# Jones value of the 2-component unlink
UNLINK_TWO = LaurentPoly(1, {(1,): -1, (-1,): -1})


def w_scalar(role: Role) -> LaurentPoly:
    if role in ("plus", "minus"):
        return NEG_T_PLUS_1_OVER_SQRT
    if role == "base":
        return T**2 - ONE
    raise ValueError(f"unknown role {role!r}")


def w_transform(v: LaurentPoly, role: Role) -> LaurentPoly:
    """Rescale a Jones value into the W variable for its role in the relation."""
    return w_scalar(role) * v


def w_space_step(w_plus: LaurentPoly, w_base: LaurentPoly) -> LaurentPoly:
    """Solve the linear relation W_L = t^2 W_{L+} - W_{L-} for W_{L-}."""
    return T**2 * w_plus - w_base


def skein_step(v_plus: LaurentPoly, v_base: LaurentPoly) -> LaurentPoly:
    """V of the link one crossing deeper: solve the skein relation for V_{L-}.

    The computation runs through W space and divides the role scale back out;
    the division is exact for every input because t^2 - 1 carries the factor
    t + 1.
    """
    w_minus = w_space_step(w_transform(v_plus, "plus"), w_transform(v_base, "base"))
    return w_minus.div_exact(w_scalar("minus"))


def skein_solve_base(v_plus: LaurentPoly, v_minus: LaurentPoly) -> LaurentPoly:
    """Solve the skein relation for the middle value V_L.

    Raises NotDivisibleError when t^2 - 1 does not clear, i.e. when the two
    arguments are not actually skein neighbours.
    """
    w_base = T**2 * w_transform(v_plus, "plus") - w_transform(v_minus, "minus")
    return w_base.div_exact(w_scalar("base"))


@dataclass(frozen=True)
class TorusChain:
    """Jones values V_0..V_N of the (2, n) torus links, V_0 the 2-unlink."""

    values: tuple[LaurentPoly, ...]

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def torus_chain(n_max: int) -> TorusChain:
    """Iterate the skein step along the torus family up to V_{n_max}."""
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    values = [UNLINK_TWO, ONE]
    for n in range(1, n_max):
        values.append(skein_step(values[n - 1], values[n]))
    return TorusChain(tuple(values))


def verify_skein_chain(n_max: int) -> Report:
    """Re-check the raw skein relation on every consecutive chain triple.

    The identity tested is (t^2-1) V_n = ((t+1)/sqrt(t)) (V_{n+1} - t^2 V_{n-1}),
    evaluated with plain ring arithmetic rather than through skein_step, so a
    sign slip in the solver cannot cancel itself out.
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    chain = torus_chain(n_max + 1)
    t_plus_1_over_sqrt = -NEG_T_PLUS_1_OVER_SQRT
    checks = []
    for n in range(1, n_max + 1):
        lhs = (T**2 - ONE) * chain[n]
        rhs = t_plus_1_over_sqrt * (chain[n + 1] - T**2 * chain[n - 1])
        checks.append(Check(f"triple.n{n}", lhs == rhs))
    return Report("skein-chain", tuple(checks))


def _recurrence_coefficients_w() -> tuple[LaurentPoly, LaurentPoly]:
    """Extract the (W_{L+}, W_L) coefficients of the solved relation by linearity."""
    return w_space_step(ONE, LaurentPoly.zero(1)), w_space_step(LaurentPoly.zero(1), ONE)


def _recurrence_coefficients_chebyshev() -> tuple[LaurentPoly, LaurentPoly]:
    """Extract the Chebyshev three-term coefficients by exact division."""
    x = LaurentPoly.variable(1, 0)
    for n in (3, 5):
        lead = (chebyshev.chebyshev_T(n + 1) + chebyshev.chebyshev_T(n - 1)).div_exact(
            chebyshev.chebyshev_T(n)
        )
        if lead != 2 * x:
            raise chebyshev.IdentityFailure("Chebyshev recurrence coefficient mismatch")
    return 2 * x, -LaurentPoly.one(1)


def verify_correspondence() -> Report:
    """Match the skein recursion against the Chebyshev recursion.

    Checks, in order: the W-space step has coefficients (t^2, -1); the
    Chebyshev step has coefficients (2x, -1); mapping t^2 to 2x carries one
    onto the other; and twice the mutation-derived substitution value equals
    2(x1^2+x2^2+1)/(x1*x2), so the two descriptions of t^2 agree.
    """
    checks = []

    c_plus, c_base = _recurrence_coefficients_w()
    checks.append(Check("w-step.plus-coefficient", c_plus == T**2, f"got {c_plus}"))
    checks.append(Check("w-step.base-coefficient", c_base == -ONE, f"got {c_base}"))

    x = LaurentPoly.variable(1, 0)
    try:
        d_lead, d_trail = _recurrence_coefficients_chebyshev()
        checks.append(Check("chebyshev.lead-coefficient", d_lead == 2 * x, f"got {d_lead}"))
        checks.append(Check("chebyshev.trail-coefficient", d_trail == -ONE, f"got {d_trail}"))
    except chebyshev.IdentityFailure as exc:
        checks.append(Check("chebyshev.lead-coefficient", False, str(exc)))
        return Report("correspondence", tuple(checks))

    mapped = chebyshev.substitute_square(c_plus, 2 * x)
    checks.append(Check("map.t2-to-2x", mapped == d_lead, f"t^2 maps to {mapped}"))
    checks.append(Check("map.trail", -ONE == d_trail))

    try:
        identity_value = chebyshev.x_substitution_identity()
        x1 = LaurentPoly.variable(2, 0)
        x2 = LaurentPoly.variable(2, 1)
        rhs = (2 * (x1**2 + x2**2 + LaurentPoly.one(2))).div_exact(x1 * x2)
        checks.append(Check("substitution.doubled", 2 * identity_value == rhs))
    except chebyshev.IdentityFailure as exc:
        checks.append(Check("substitution.doubled", False, str(exc)))

    return Report("correspondence", tuple(checks))


def jones_at_one(v: LaurentPoly) -> Fraction:
    return v.evaluate([1])


def components_from_value(v: LaurentPoly) -> int:
    """Recover the component count from V(1) = (-2)^(components - 1)."""
    value = jones_at_one(v)
    if value.denominator != 1:
        raise ValueError("V(1) must be an integer")
    magnitude = abs(int(value))
    exponent = magnitude.bit_length() - 1
    if 2**exponent != magnitude or int(value) != (-2) ** exponent:
        raise ValueError(f"V(1) = {value} is not a power of -2")
    return exponent + 1
