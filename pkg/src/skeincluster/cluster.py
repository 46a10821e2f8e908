"""Seeds, exchange-matrix and seed mutation, and rank-2 exchange recurrences.

A seed is a tuple of cluster variables (Laurent polynomials in the initial
variables) together with a skew-symmetric integer exchange matrix.  Mutation
in direction k replaces variable x_k by

    x_k' = (prod_i x_i^{max(b_ik, 0)} + prod_i x_i^{max(-b_ik, 0)}) / x_k

and transforms the matrix entrywise.  The quotient is computed by exact
division; the Laurent phenomenon guarantees it clears, so a failed division
is escalated as :class:`LaurentPhenomenonViolation`.

Directions k are 1-based throughout, matching the usual mu_k notation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .laurent import LaurentPoly, NotDivisibleError
from .report import Check, Report


class LaurentPhenomenonViolation(RuntimeError):
    """An exchange quotient failed to divide exactly.

    Carries the mutation prefix that produced the failure, so the offending
    walk can be replayed.
    """

    def __init__(self, message: str, walk_prefix: tuple[int, ...] = ()):
        super().__init__(message)
        self.walk_prefix = walk_prefix


class UnsupportedSurfaceError(ValueError):
    """Requested a triangulation matrix outside the supported (g, n) pairs."""


@dataclass(frozen=True)
class ExchangeMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValueError("exchange matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ExchangeMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]


def mutate_matrix(matrix: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation in direction k (1-based)."""
    n = matrix.n
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    kk = k - 1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            b = matrix.rows[i][j]
            if i == kk or j == kk:
                row.append(-b)
            else:
                bik, bkj = matrix.rows[i][kk], matrix.rows[kk][j]
                bump = abs(bik) * bkj + bik * abs(bkj)
                row.append(b + bump // 2)
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


@dataclass(frozen=True)
class Seed:
    cluster: tuple[LaurentPoly, ...]
    matrix: ExchangeMatrix

    def __post_init__(self):
        n = self.matrix.n
        if len(self.cluster) != n:
            raise ValueError("cluster size != matrix size")
        for entry in self.cluster:
            if entry.arity != n:
                raise ValueError("cluster entry arity != rank")
            if entry.is_zero():
                raise ValueError("cluster entries must be nonzero")
            if not entry.has_integer_exponents():
                raise ValueError("cluster variables must have integer exponents")

    @property
    def rank(self) -> int:
        return self.matrix.n


def initial_seed(matrix: ExchangeMatrix) -> Seed:
    n = matrix.n
    cluster = tuple(LaurentPoly.variable(n, i) for i in range(n))
    return Seed(cluster, matrix)


def exchange_binomial(seed: Seed, k: int) -> LaurentPoly:
    """The right-hand side of the exchange relation in direction k (1-based)."""
    n = seed.rank
    kk = k - 1
    pos = LaurentPoly.one(n)
    neg = LaurentPoly.one(n)
    for i in range(n):
        b = seed.matrix.rows[i][kk]
        if b > 0:
            pos = pos * seed.cluster[i] ** b
        elif b < 0:
            neg = neg * seed.cluster[i] ** (-b)
    return pos + neg


def mutate_seed(seed: Seed, k: int, walk_prefix: tuple[int, ...] = ()) -> Seed:
    """Seed mutation in direction k (1-based)."""
    n = seed.rank
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    binomial = exchange_binomial(seed, k)
    try:
        new_var = binomial.div_exact(seed.cluster[k - 1])
    except NotDivisibleError as exc:
        raise LaurentPhenomenonViolation(
            f"exchange quotient in direction {k} is not Laurent", walk_prefix + (k,)
        ) from exc
    cluster = list(seed.cluster)
    cluster[k - 1] = new_var
    return Seed(tuple(cluster), mutate_matrix(seed.matrix, k))


def apply_walk(seed: Seed, walk: Sequence[int]) -> Seed:
    for step, k in enumerate(walk):
        seed = mutate_seed(seed, k, tuple(walk[:step]))
    return seed


# --------------------------------------------------------------------------
# rank 2
# --------------------------------------------------------------------------


def rank2_matrix(b: int, c: int) -> ExchangeMatrix:
    return ExchangeMatrix.from_rows([[0, b], [-c, 0]])


def rank2_sequence(b: int, c: int, count: int) -> list[LaurentPoly]:
    """Cluster variables x_1, ..., x_count of the rank-2 recurrence.

    x_{i-1} x_{i+1} = 1 + x_i^b for odd i and 1 + x_i^c for even i; the parity
    convention is fixed so that direction-1-first alternating seed mutation
    reproduces the same sequence.
    """
    if b < 1 or c < 1:
        raise ValueError("exchange exponents must be positive")
    if count < 2:
        raise ValueError("need at least the two initial variables")
    x1 = LaurentPoly.variable(2, 0)
    x2 = LaurentPoly.variable(2, 1)
    one = LaurentPoly.one(2)
    seq = [x1, x2]
    for i in range(2, count):
        exponent = b if i % 2 == 1 else c
        numerator = one + seq[-1] ** exponent
        try:
            seq.append(numerator.div_exact(seq[-2]))
        except NotDivisibleError as exc:
            raise LaurentPhenomenonViolation(
                f"rank-2 step to x_{i + 1} is not Laurent"
            ) from exc
    return seq


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


def laurent_phenomenon_check(seed: Seed, walk: Sequence[int], require_positive: bool = False) -> Report:
    """Mutate along ``walk`` and report Laurentness/positivity per new variable.

    Positivity failures only fail the report when ``require_positive`` is set;
    otherwise they are recorded in the detail string.
    """
    checks = []
    current = seed
    for step, k in enumerate(walk):
        try:
            current = mutate_seed(current, k, tuple(walk[:step]))
        except LaurentPhenomenonViolation as exc:
            checks.append(
                Check(
                    f"step{step + 1}.mu{k}",
                    False,
                    f"not Laurent after prefix {list(exc.walk_prefix)}",
                )
            )
            return Report("laurent-phenomenon", tuple(checks))
        produced = current.cluster[k - 1]
        denom = produced.denominator_exponents()
        positive = produced.all_coefficients_positive()
        detail = f"denominator exponents {list(denom)}, positive={positive}"
        passed = positive if require_positive else True
        checks.append(Check(f"step{step + 1}.mu{k}", passed, detail))
    if not walk:
        checks.append(Check("empty-walk", True, "cluster equals the initial variables"))
    return Report("laurent-phenomenon", tuple(checks))


def rank2_phenomenon_check(b: int, c: int, depth: int, require_positive: bool = False) -> Report:
    """Laurent phenomenon report along the rank-2 recurrence itself.

    The (b, c) exchange matrix is only skew-symmetrizable when b != c, so it
    cannot back a Seed here; the recurrence produces the same variables as the
    alternating mutation walk and is used for both shapes.
    """
    checks = []
    try:
        seq = rank2_sequence(b, c, depth + 2)
    except LaurentPhenomenonViolation as exc:
        return Report("laurent-phenomenon-rank2", (Check("sequence", False, str(exc)),))
    for i, entry in enumerate(seq[2:], start=3):
        denom = entry.denominator_exponents()
        positive = entry.all_coefficients_positive()
        detail = f"denominator exponents {list(denom)}, positive={positive}"
        passed = positive if require_positive else True
        checks.append(Check(f"x{i}", passed, detail))
    return Report("laurent-phenomenon-rank2", tuple(checks))


def triangulation_matrix(g: int, n: int) -> ExchangeMatrix:
    """Signed-adjacency matrices of the two supported cusped surfaces."""
    if (g, n) == (0, 2):
        return ExchangeMatrix.from_rows([[0, 2], [-2, 0]])
    if (g, n) == (1, 1):
        return ExchangeMatrix.from_rows([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
    raise UnsupportedSurfaceError(f"no triangulation matrix for (g, n) = ({g}, {n})")
