"""Bratteli diagrams at finite level: construction, path counts, inclusions.

Three diagram families are built:

* ``pascal``: level L has L+1 vertices, vertex k feeding children k and k+1;
  path counts are binomial coefficients.
* ``truncated-pascal``: the tower of Temperley-Lieb algebras.  Level L hosts
  one vertex per admissible through-strand count j of TL_{L+1} (j runs over
  L+1, L-1, ... down to 0 or 1) and vertex j feeds j-1 and j+1 where they
  exist.  Level sizes run 1, 2, 2, 3, 3, 4, ... and the squared path counts
  at a level sum to a Catalan number.
* ``s11``: level L has 2^{L+1} - 1 vertices and vertex i feeds children
  2i, 2i+1, 2i+2, so horizontal neighbours share a child.  The
  overlapping-children rule is kept in one place (`_s11_matrix`) so a
  different sharing pattern can be swapped in without touching anything else.

All edge multiplicities are 1.  Dimension vectors are exact path counts from
the root and satisfy d_{L+1} = M_L^T d_L for the transition matrices M_L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .report import Check, Report
from .tl import noncrossing_matchings

KINDS = ("pascal", "truncated-pascal", "s11")
_S11_LEVEL_LIMIT = 10


@dataclass(frozen=True)
class BratteliDiagram:
    kind: str
    sizes: tuple[int, ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.matrices) != max(0, len(self.sizes) - 1):
            raise ValueError("need one transition matrix per consecutive level pair")
        for level, matrix in enumerate(self.matrices):
            if len(matrix) != self.sizes[level]:
                raise ValueError(f"matrix at level {level} has wrong row count")
            for row in matrix:
                if len(row) != self.sizes[level + 1]:
                    raise ValueError(f"matrix at level {level} has wrong column count")
                if any(m < 0 for m in row):
                    raise ValueError("edge multiplicities must be nonnegative")
        for level in range(1, len(self.sizes)):
            columns = zip(*self.matrices[level - 1])
            if any(all(m == 0 for m in column) for column in columns):
                raise ValueError(f"level {level} has a vertex with no incoming edge")

    @property
    def levels(self) -> int:
        return len(self.sizes)


def truncated_defect_labels(level: int) -> tuple[int, ...]:
    """Admissible through-strand counts of TL_{level+1}, ascending."""
    top = level + 1
    return tuple(range(top % 2, top + 1, 2))


def _pascal_matrix(level: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for k in range(level + 1):
        row = [0] * (level + 2)
        row[k] = row[k + 1] = 1
        rows.append(tuple(row))
    return tuple(rows)


def _truncated_matrix(level: int) -> tuple[tuple[int, ...], ...]:
    current = truncated_defect_labels(level)
    nxt = truncated_defect_labels(level + 1)
    position = {j: a for a, j in enumerate(nxt)}
    rows = []
    for j in current:
        row = [0] * len(nxt)
        for j2 in (j - 1, j + 1):
            if j2 in position:
                row[position[j2]] = 1
        rows.append(tuple(row))
    return tuple(rows)


def _s11_matrix(level: int) -> tuple[tuple[int, ...], ...]:
    size, nxt = 2 ** (level + 1) - 1, 2 ** (level + 2) - 1
    rows = []
    for i in range(size):
        row = [0] * nxt
        for child in (2 * i, 2 * i + 1, 2 * i + 2):
            row[child] = 1
        rows.append(tuple(row))
    return tuple(rows)


def build_diagram(kind: str, levels: int) -> BratteliDiagram:
    if levels < 1:
        raise ValueError("need at least one level")
    if kind == "pascal":
        sizes = tuple(level + 1 for level in range(levels))
        matrices = tuple(_pascal_matrix(level) for level in range(levels - 1))
    elif kind == "truncated-pascal":
        sizes = tuple(len(truncated_defect_labels(level)) for level in range(levels))
        matrices = tuple(_truncated_matrix(level) for level in range(levels - 1))
    elif kind == "s11":
        # level sizes double; dense multiplicity matrices get unwieldy fast
        if levels > _S11_LEVEL_LIMIT:
            raise ValueError(f"s11 diagrams support at most {_S11_LEVEL_LIMIT} levels")
        sizes = tuple(2 ** (level + 1) - 1 for level in range(levels))
        matrices = tuple(_s11_matrix(level) for level in range(levels - 1))
    else:
        raise ValueError(f"unknown diagram kind {kind!r}; expected one of {KINDS}")
    return BratteliDiagram(kind, sizes, matrices)


def transition_matrix(diagram: BratteliDiagram, level: int) -> tuple[tuple[int, ...], ...]:
    if not 0 <= level < diagram.levels - 1:
        raise IndexError(f"no transition matrix at level {level}")
    return diagram.matrices[level]


def dimension_vector(diagram: BratteliDiagram, level: int) -> tuple[int, ...]:
    """Exact path counts from the root to each vertex of the level."""
    if not 0 <= level < diagram.levels:
        raise IndexError(f"level {level} outside built range")
    dims = [1] + [0] * (diagram.sizes[0] - 1)
    for step in range(level):
        matrix = diagram.matrices[step]
        nxt = [0] * diagram.sizes[step + 1]
        for row, d in zip(matrix, dims):
            for j, mult in enumerate(row):
                nxt[j] += mult * d
        dims = nxt
    return tuple(dims)


def enumerate_paths(diagram: BratteliDiagram, level: int) -> Iterator[tuple[int, ...]]:
    """All root paths as vertex-index tuples (multiplicities here are all 1)."""
    if not 0 <= level < diagram.levels:
        raise IndexError(f"level {level} outside built range")

    def extend(path: tuple[int, ...], depth: int) -> Iterator[tuple[int, ...]]:
        if depth == level:
            yield path
            return
        row = diagram.matrices[depth][path[-1]]
        for j, mult in enumerate(row):
            for _ in range(mult):
                yield from extend(path + (j,), depth + 1)

    yield from extend((0,), 0)


def catalan_number(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def to_json_obj(diagram: BratteliDiagram) -> dict:
    levels = []
    for level in range(diagram.levels):
        entry = {
            "size": diagram.sizes[level],
            "dims": list(dimension_vector(diagram, level)),
        }
        if level < diagram.levels - 1:
            entry["matrix"] = [list(row) for row in diagram.matrices[level]]
        levels.append(entry)
    return {"kind": diagram.kind, "levels": levels}


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def catalan_check(levels: int) -> Report:
    """Sum of squared truncated path counts vs Catalan numbers and matchings.

    At level n the check is sum(d^2) = Catalan(n+1), with the Catalan value
    confirmed against a direct enumeration of the noncrossing matchings on
    n+1 strands.
    """
    if levels < 1:
        raise ValueError("need at least one level")
    diagram = build_diagram("truncated-pascal", levels + 1)
    checks = []
    for level in range(1, levels + 1):
        dims = dimension_vector(diagram, level)
        square_sum = sum(d * d for d in dims)
        catalan = catalan_number(level + 1)
        matchings = sum(1 for _ in noncrossing_matchings(level + 1))
        passed = square_sum == catalan == matchings
        checks.append(
            Check(
                f"level{level}",
                passed,
                f"sum of squares {square_sum}, Catalan {catalan}, matchings {matchings}",
            )
        )
    return Report("catalan", tuple(checks))


def _truncated_to_pascal_vertex(level: int, j: int) -> int:
    # through-strand count j at level L sits at Pascal position (L+1-j)/2
    return (level + 1 - j) // 2


def inclusion_check(levels: int) -> Report:
    """Embed the truncated diagram into the Pascal diagram vertex by vertex.

    The through-strand vertex j at level L maps to Pascal position
    (L+1-j)/2.  The report checks that every truncated edge maps to a Pascal
    edge, that mapped root paths are valid in Pascal and pairwise distinct,
    and that each truncated path count is bounded by the binomial at the
    image vertex.
    """
    if levels < 1:
        raise ValueError("need at least one level")
    truncated = build_diagram("truncated-pascal", levels + 1)
    pascal = build_diagram("pascal", levels + 1)
    checks = []

    edges_ok = True
    for level in range(levels):
        labels = truncated_defect_labels(level)
        next_labels = truncated_defect_labels(level + 1)
        matrix = truncated.matrices[level]
        pascal_matrix = pascal.matrices[level]
        for a, j in enumerate(labels):
            for b, j2 in enumerate(next_labels):
                if matrix[a][b] == 0:
                    continue
                k = _truncated_to_pascal_vertex(level, j)
                k2 = _truncated_to_pascal_vertex(level + 1, j2)
                if pascal_matrix[k][k2] == 0:
                    edges_ok = False
    checks.append(Check("edges-map-to-edges", edges_ok))

    mapped = set()
    paths_ok = True
    count = 0
    for path in enumerate_paths(truncated, levels):
        count += 1
        image = tuple(
            _truncated_to_pascal_vertex(level, truncated_defect_labels(level)[v])
            for level, v in enumerate(path)
        )
        for level in range(levels):
            if pascal.matrices[level][image[level]][image[level + 1]] == 0:
                paths_ok = False
        mapped.add(image)
    checks.append(Check("paths-valid-in-pascal", paths_ok))
    checks.append(Check("paths-distinct", len(mapped) == count, f"{count} paths"))

    dims_ok = True
    details = []
    for level in range(levels + 1):
        dims = dimension_vector(truncated, level)
        binomials = dimension_vector(pascal, level)
        labels = truncated_defect_labels(level)
        for d, j in zip(dims, labels):
            if d > binomials[_truncated_to_pascal_vertex(level, j)]:
                dims_ok = False
                details.append(f"level {level} vertex j={j}")
    checks.append(Check("dims-bounded-by-binomials", dims_ok, "; ".join(details)))
    return Report("inclusion", tuple(checks))
