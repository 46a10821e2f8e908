"""Agreement checks between the independent Jones computations.

The skein recursion and the bracket state sum share no code path: one walks a
three-term relation in t, the other enumerates crossing resolutions in A.
Equality of their values on the torus family is therefore a genuine
cross-check of both.
"""

from __future__ import annotations

from . import skein, tl
from .laurent import format_poly
from .report import Check, Report


def oracle_agreement(n_max: int) -> Report:
    """Bracket oracle vs skein chain on the (2, n) torus closures, 2 <= n <= n_max.

    The chirality of the braid words is fixed once by the trefoil calibration;
    the trace-formula calibration sweep is appended so that a single report
    carries every oracle-level finding.
    """
    if n_max < 2:
        raise ValueError("need n_max >= 2")
    chain = skein.torus_chain(n_max)
    sign = tl.calibrate_chirality()
    checks = [
        Check(
            "chirality",
            True,
            f"torus words use sigma_1^{'n' if sign > 0 else '(-n)'}",
        )
    ]
    for n in range(2, n_max + 1):
        word = tl.torus_braid(n, positive=sign > 0)
        via_bracket = tl.jones_via_bracket(word)
        via_chain = chain[n]
        checks.append(
            Check(
                f"torus.n{n}",
                via_bracket == via_chain,
                f"bracket {format_poly(via_bracket)} vs chain {format_poly(via_chain)}",
            )
        )
    calibration = tl.trace_formula_calibration()
    checks.extend(calibration.checks)
    return Report("oracle-agreement", tuple(checks))
