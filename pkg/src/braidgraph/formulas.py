"""
Closed-form rank-two flat counts, an independent geometric count, and the
diameter-bound sweep over all elements of a small group.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .coxeter import Element, Family, GroupSpec, all_elements
from .errors import BudgetExceededError, InvalidInputError
from .rank2 import l2_mask
from .wordgraph import DEFAULT_BUDGET, build_graph, eccentricities

log = logging.getLogger(__name__)

__all__ = [
    "FIXED_COUNTS", "L2CountRow", "l2_closed_form", "table_rows", "count_flats_by_geometry",
    "ConjectureRow", "ConjectureReport", "conjecture_check",
]

FIXED_COUNTS = {"E8": 4900, "E7": 1281, "E6": 390, "F4": 122, "H4": 722, "H3": 31}
_MIN_PARAMETER = {"A": 2, "B": 1, "D": 2, "I2": 2}


@dataclass(frozen=True)
class L2CountRow:
    family: str
    parameter: int | None
    count: int


def l2_closed_form(family: str, parameter: int | None = None) -> int:
    """Number of rank-two flats.

    ``A`` takes the number of letters ``n`` (the group is A_{n-1}); ``B`` and
    ``D`` take their rank; ``I2`` takes the dihedral order parameter ``m``.

    >>> [l2_closed_form("A", n) for n in range(3, 7)]
    [1, 7, 25, 65]
    >>> l2_closed_form("D", 4), l2_closed_form("E8")
    (34, 4900)
    """
    fam = family.upper().replace("_", "").replace("(M)", "")
    if fam in FIXED_COUNTS:
        return FIXED_COUNTS[fam]
    if fam == "I2M":
        fam = "I2"
    if fam not in _MIN_PARAMETER:
        raise InvalidInputError(f"unknown family {family!r}")
    if isinstance(parameter, bool) or not isinstance(parameter, int) or parameter < _MIN_PARAMETER[fam]:
        raise InvalidInputError(
            f"family {fam} needs an integer parameter >= {_MIN_PARAMETER[fam]}, got {parameter!r}")
    n = parameter
    if fam == "A":
        value = Fraction(n * (n - 1) * (n - 2) * (3 * n - 5), 24)
    elif fam == "B":
        value = Fraction(n * (n - 1) * (3 * n * n - 5 * n + 1), 6)
    elif fam == "D":
        value = Fraction(n * (n - 1) * (3 * n * n - 11 * n + 13), 6)
    else:
        value = Fraction(1)
    assert value.denominator == 1
    return int(value)


def table_rows(n: int = 4) -> list[L2CountRow]:
    rows = [L2CountRow("A", n, l2_closed_form("A", n)),
            L2CountRow("B", n, l2_closed_form("B", n)),
            L2CountRow("D", n, l2_closed_form("D", n))]
    rows += [L2CountRow(k, None, v) for k, v in FIXED_COUNTS.items()]
    rows.append(L2CountRow("I2", None, 1))
    return rows


def _normals(family: str, n: int) -> np.ndarray:
    fam = family.upper()
    vecs = []
    for i, j in itertools.combinations(range(n), 2):
        v = [0] * n
        v[i], v[j] = 1, -1
        vecs.append(v)
        if fam in ("B", "D"):
            v = [0] * n
            v[i], v[j] = 1, 1
            vecs.append(v)
    if fam == "B":
        for i in range(n):
            v = [0] * n
            v[i] = 1
            vecs.append(v)
    elif fam not in ("A", "D"):
        raise InvalidInputError(f"geometric count supports A, B, D, not {family!r}")
    return np.array(vecs, dtype=np.int64).reshape(-1, n)


def count_flats_by_geometry(family: str, n: int) -> int:
    """Count codimension-two intersections of the root hyperplanes directly.

    For every pair of normals ``a, b`` the flat ``a⊥ ∩ b⊥`` is identified by the
    set of normals ``c`` lying in ``span(a, b)``, tested exactly by the integer
    Gram determinant of ``(a, b, c)``.  Pairs inside an already found flat are
    skipped.
    """
    V = _normals(family, n)
    m = len(V)
    G = V @ V.T
    done = np.zeros((m, m), dtype=bool)
    flats = set()
    for a in range(m):
        for b in range(a + 1, m):
            if done[a, b]:
                continue
            ga, gb, gc = G[a], G[b], np.diag(G)
            aa, bb, ab = G[a, a], G[b, b], G[a, b]
            # det [[aa, ab, ac], [ab, bb, bc], [ac, bc, cc]]
            det = (aa * (bb * gc - gb * gb) - ab * (ab * gc - gb * ga) + ga * (ab * gb - bb * ga))
            members = np.flatnonzero(det == 0)
            key = tuple(members.tolist())
            flats.add(key)
            done[np.ix_(members, members)] = True
    return len(flats)


# --------------------------------------------------------------------------
# conjecture sweep

@dataclass
class ConjectureRow:
    element: str
    words: int
    diameter: int
    l2: int
    lower: int
    upper: int
    passed: bool
    within_double_l2: bool
    floor_only: bool = False

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.diameter, self.l2) if self.l2 else None


@dataclass
class ConjectureReport:
    spec: GroupSpec
    rows: list[ConjectureRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed and r.within_double_l2 for r in self.rows)

    def failures(self) -> list[ConjectureRow]:
        return [r for r in self.rows if not (r.passed and r.within_double_l2)]

    def extremal(self) -> tuple[ConjectureRow | None, ConjectureRow | None]:
        """Rows with the smallest and largest diameter/|L2(w)| ratio (first in element order on ties)."""
        scored = [r for r in self.rows if r.l2]
        if not scored:
            return None, None
        lo = min(scored, key=lambda r: r.ratio)
        hi = max(scored, key=lambda r: r.ratio)
        return lo, hi

    def to_jsonl(self) -> str:
        lines = []
        for r in self.rows:
            d = asdict(r)
            d["spec"] = str(self.spec)
            lines.append(json.dumps(d, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = f"{'w':>16} {'|R(w)|':>8} {'diam':>5} {'|L2(w)|':>8} {'lower':>6} {'pass':>5}"
        out = [f"diameter bounds for every element of {self.spec}", head]
        for r in self.rows:
            out.append(f"{r.element:>16} {r.words:>8} {r.diameter:>5} {r.l2:>8} {r.lower:>6} "
                       f"{'yes' if r.passed else 'NO':>5}")
        lo, hi = self.extremal()
        out.append(f"elements: {len(self.rows)}, failures: {len(self.failures())}")
        if lo is not None:
            out.append(f"min ratio diam/|L2(w)| = {lo.ratio} at w = {lo.element}")
            out.append(f"max ratio diam/|L2(w)| = {hi.ratio} at w = {hi.element}")
        return "\n".join(out) + "\n"


def _lower_divisor(spec: GroupSpec) -> int:
    return 2 if spec.family is Family.A else 3


def check_element(w: Element, budget: int = DEFAULT_BUDGET) -> ConjectureRow:
    try:
        g = build_graph(w, budget=budget)
    except BudgetExceededError as exc:
        raise BudgetExceededError(f"conjecture sweep stopped at w = {w}: {exc}",
                                  required=exc.required, budget=exc.budget) from None
    diam = max(eccentricities(g))
    l2 = l2_mask(w).bit_count()
    k = _lower_divisor(w.spec)
    lower = math.ceil(Fraction(l2, k))
    passed = lower <= diam <= l2
    floor_only = not passed and math.floor(Fraction(l2, k)) <= diam <= l2
    return ConjectureRow(str(w), len(g.vertices), diam, l2, lower, l2, passed, diam <= 2 * l2, floor_only)


def _check_images(args):
    spec, images, budget = args
    return check_element(Element(spec, images), budget)


def conjecture_check(spec: GroupSpec, *, budget: int = DEFAULT_BUDGET, workers: int = 1) -> ConjectureReport:
    """Exact diameter against ``|L2(w)|`` for every element of ``spec``."""
    elements = list(all_elements(spec))
    report = ConjectureReport(spec)
    jobs = [(spec, w.images, budget) for w in elements]
    if workers <= 1:
        for k, job in enumerate(jobs):
            report.rows.append(_check_images(job))
            if (k + 1) % 100 == 0:
                log.info("checked %d/%d elements of %s", k + 1, len(jobs), spec)
    else:
        with ProcessPoolExecutor(workers) as ex:
            report.rows.extend(ex.map(_check_images, jobs, chunksize=8))
    return report
