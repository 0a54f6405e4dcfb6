"""
Secure degrees of freedom regions as exact rational inequality systems
H d <= h, and their extreme points.

A point is extreme iff it is feasible and n linearly independent rows are
tight there, so the enumeration walks every n-row subset, keeps the
nonsingular ones (fraction-free Bareiss elimination over integers), solves
them exactly and filters by feasibility. No floating point is used here.
"""
from __future__ import annotations

import functools
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Optional, Sequence, Tuple

from sdof_lab import conf
from sdof_lab.exceptions import DomainError, TooLarge, Unbounded

logger = logging.getLogger(__name__)

SECRECY = "secrecy"
PAIRWISE = "pairwise"
NONNEG = "nonneg"

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RowLabel:
    kind: str
    users: Tuple[int, ...]

    def __str__(self):
        if self.kind == SECRECY:
            return "Secrecy({})".format(self.users[0])
        if self.kind == NONNEG:
            return "Nonneg({})".format(self.users[0])
        return "Pairwise({{{}}})".format(",".join(str(u) for u in self.users))


def _term(coeff: Fraction, index: int):
    name = "d{}".format(index)
    if coeff == 1:
        return name
    if coeff == -1:
        return "-" + name
    return "{}{}".format(coeff, name)


@dataclass(frozen=True)
class RegionSpec:
    """The polytope {d in R^n : H d <= h}, one label per row."""

    n: int
    H: Tuple[Tuple[Fraction, ...], ...]
    h: Tuple[Fraction, ...]
    labels: Tuple[RowLabel, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.H) != len(self.h) or len(self.H) != len(self.labels):
            raise DomainError("H, h and labels must have one entry per row")
        if any(len(row) != self.n for row in self.H):
            raise DomainError("Every row of H must have {} entries".format(self.n))
        if len(self.H) < self.n:
            raise DomainError("A bounded region in R^{} needs at least {} rows".format(self.n, self.n))
        object.__setattr__(self, "H", tuple(tuple(Fraction(c) for c in row) for row in self.H))
        object.__setattr__(self, "h", tuple(Fraction(c) for c in self.h))

    @property
    def m(self):
        return len(self.H)

    def row_text(self, i: int):
        terms = [_term(c, j + 1) for j, c in enumerate(self.H[i]) if c != 0]
        lhs = "".join(t if k == 0 or t.startswith("-") else "+" + t for k, t in enumerate(terms))
        return "{}<={}".format(lhs or "0", self.h[i])

    def rows_of(self, kind: str):
        return tuple(i for i, label in enumerate(self.labels) if label.kind == kind)

    def without_row(self, i: int):
        if not 0 <= i < self.m:
            raise DomainError("Row index {} out of range".format(i))
        keep = [r for r in range(self.m) if r != i]
        return RegionSpec(
            n=self.n,
            H=tuple(self.H[r] for r in keep),
            h=tuple(self.h[r] for r in keep),
            labels=tuple(self.labels[r] for r in keep),
            name=self.name,
        )


def _nonneg_rows(K):
    rows = []
    for i in range(K):
        rows.append((tuple(-1 if j == i else 0 for j in range(K)), 0, RowLabel(NONNEG, (i + 1,))))
    return rows


def _region(K, rows, name):
    return RegionSpec(
        n=K,
        H=tuple(r[0] for r in rows),
        h=tuple(r[1] for r in rows),
        labels=tuple(r[2] for r in rows),
        name=name,
    )


def mac_region(K: int) -> RegionSpec:
    """K-user multiple access wiretap channel: K d_i + (K-1) sum_{j != i} d_j <= K-1, d >= 0."""
    if int(K) != K or K < 2:
        raise DomainError("mac_region needs K >= 2")
    rows = []
    for i in range(K):
        coeffs = tuple(K if j == i else K - 1 for j in range(K))
        rows.append((coeffs, K - 1, RowLabel(SECRECY, (i + 1,))))
    return _region(K, rows + _nonneg_rows(K), "mac")


def ic_region(K: int) -> RegionSpec:
    """
    K-user interference channel with secrecy constraints:
    K d_i + sum_{j != i} d_j <= K-1, d_i + d_j <= 1 for every pair, d >= 0.
    """
    if int(K) != K or K < 2:
        raise DomainError("ic_region needs K >= 2")
    rows = []
    for i in range(K):
        coeffs = tuple(K if j == i else 1 for j in range(K))
        rows.append((coeffs, K - 1, RowLabel(SECRECY, (i + 1,))))
    for i, j in itertools.combinations(range(K), 2):
        coeffs = tuple(1 if k in (i, j) else 0 for k in range(K))
        rows.append((coeffs, 1, RowLabel(PAIRWISE, (i + 1, j + 1))))
    return _region(K, rows + _nonneg_rows(K), "ic")


@dataclass(frozen=True)
class ExtremePointSet:
    points: FrozenSet[Point]

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.points)

    def __contains__(self, point):
        return tuple(Fraction(c) for c in point) in self.points

    def sorted(self):
        return tuple(sorted(self.points, key=lambda p: (sum(p), p)))


def is_bounded(spec: RegionSpec) -> bool:
    """
    Syntactic boundedness: every coordinate has a lower-bound row acting on
    it alone and appears with positive weight in some row whose
    coefficients are all nonnegative.
    """
    for i in range(spec.n):
        lower = any(
            row[i] < 0 and all(c == 0 for j, c in enumerate(row) if j != i) for row in spec.H
        )
        upper = any(row[i] > 0 and all(c >= 0 for c in row) for row in spec.H)
        if not (lower and upper):
            return False
    return True


def _integer_rows(spec: RegionSpec):
    rows = []
    for row, rhs in zip(spec.H, spec.h):
        scale = 1
        for value in row + (rhs,):
            scale = scale * value.denominator // math.gcd(scale, value.denominator)
        rows.append(tuple(int(c * scale) for c in row) + (int(rhs * scale),))
    return rows


def bareiss_solve(rows: Sequence[Sequence[int]], n: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """
    Solve an n x n integer system given as augmented rows [A | b].

    Returns (numerators, det) with x = numerators / det and det > 0, or
    None when A has rank < n. Forward elimination is Bareiss's
    fraction-free scheme; every division in it and in the back
    substitution is exact.
    """
    A = [list(r) for r in rows]
    prev = 1
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if A[i][k] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != k:
            A[k], A[pivot_row] = A[pivot_row], A[k]
        pivot = A[k][k]
        row_k = A[k]
        for i in range(k + 1, n):
            row_i = A[i]
            factor = row_i[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (pivot * row_i[j] - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    det = A[n - 1][n - 1]
    numerators = [0] * n
    for i in range(n - 1, -1, -1):
        acc = det * A[i][n] - sum(A[i][j] * numerators[j] for j in range(i + 1, n))
        numerators[i] = acc // A[i][i]
    if det < 0:
        det = -det
        numerators = [-x for x in numerators]
    return tuple(numerators), det


def _feasible(int_rows, numerators, det):
    for row in int_rows:
        if sum(c * x for c, x in zip(row, numerators)) > row[-1] * det:
            return False
    return True


@functools.lru_cache(maxsize=64)
def _enumerate(spec: RegionSpec, guard: int):
    subsets = math.comb(spec.m, spec.n)
    if subsets > guard:
        raise TooLarge("{} row subsets exceed the enumeration guard {}".format(subsets, guard))
    logger.debug("Enumerating %d row subsets of a %d-row system", subsets, spec.m)
    int_rows = _integer_rows(spec)
    seen = {}
    for subset in itertools.combinations(int_rows, spec.n):
        solved = bareiss_solve(subset, spec.n)
        if solved is None:
            continue
        numerators, det = solved
        common = math.gcd(det, *numerators)
        key = (tuple(x // common for x in numerators), det // common)
        if key not in seen:
            seen[key] = _feasible(int_rows, *key)
    points = frozenset(
        tuple(Fraction(x, det) for x in numerators) for (numerators, det), ok in seen.items() if ok
    )
    return ExtremePointSet(points)


def extreme_points(spec: RegionSpec, guard: int = None) -> ExtremePointSet:
    if not is_bounded(spec):
        raise Unbounded("Region {!r} is not bounded by its own rows".format(spec.name or spec))
    return _enumerate(spec, conf.resolve("SUBSET_GUARD", guard))


def _as_point(spec: RegionSpec, point):
    if len(point) != spec.n:
        raise DomainError("Point has {} coordinates, region has {}".format(len(point), spec.n))
    return tuple(Fraction(c) for c in point)


def _row_value(spec, i, point):
    return sum(c * x for c, x in zip(spec.H[i], point))


def violated_rows(spec: RegionSpec, point) -> Tuple[int, ...]:
    point = _as_point(spec, point)
    return tuple(i for i in range(spec.m) if _row_value(spec, i, point) > spec.h[i])


def tight_rows(spec: RegionSpec, point) -> Tuple[int, ...]:
    point = _as_point(spec, point)
    return tuple(i for i in range(spec.m) if _row_value(spec, i, point) == spec.h[i])


def contains(spec: RegionSpec, point) -> bool:
    return not violated_rows(spec, point)


def is_redundant(spec: RegionSpec, row_index: int, guard: int = None) -> bool:
    """True iff dropping the row leaves the extreme point set unchanged."""
    reduced = spec.without_row(row_index)
    if not is_bounded(reduced):
        return False
    return extreme_points(reduced, guard) == extreme_points(spec, guard)


def max_sum(spec: RegionSpec, guard: int = None) -> Fraction:
    """Largest sum of coordinates; attained at an extreme point since the objective is linear."""
    return max(sum(p) for p in extreme_points(spec, guard).points)


def sum_optimal_points(spec: RegionSpec, guard: int = None) -> Tuple[Point, ...]:
    best = max_sum(spec, guard)
    return tuple(p for p in extreme_points(spec, guard) if sum(p) == best)


def same_region(a: RegionSpec, b: RegionSpec, guard: int = None) -> bool:
    """Two polytopes are equal iff their extreme point sets are."""
    return a.n == b.n and extreme_points(a, guard) == extreme_points(b, guard)


def is_permutation_closed(points: ExtremePointSet) -> bool:
    return all(
        perm in points.points for p in points.points for perm in itertools.permutations(p)
    )


def helper_sdof(M: int) -> Fraction:
    return Fraction(M, M + 1)


def mac_sum_sdof(K: int) -> Fraction:
    return Fraction(K * (K - 1), K * (K - 1) + 1)


def ic_sum_sdof(K: int) -> Fraction:
    return Fraction(K * (K - 1), 2 * K - 1)


def region_for(family: str, K: int) -> RegionSpec:
    if family == "mac":
        return mac_region(K)
    if family == "ic":
        return ic_region(K)
    raise DomainError("Unknown region family {!r}; expected mac or ic".format(family))
