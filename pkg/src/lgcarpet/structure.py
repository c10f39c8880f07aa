"""Vertical projection, fibers over y, and separation machinery.

The nonempty rows induce a self-similar IFS on the y axis whose attractor is
the projection F of the carpet.  Every y in F has at most two row itineraries
(codings), and the part of E above y is a fiber: a nested intersection of
finite interval unions, one refinement per coding digit.  This module works
with those interval unions at explicit finite depth and provides the
quantities that drive the uniform-disconnectedness analysis:

  * Hausdorff distances between fiber approximations and the prefix-product
    bound on them (check_hd_bound),
  * complementary gap intervals of guaranteed relative size (find_gap_interval),
  * the partition of stopping row-words into delta-connected classes
    (idelta_classes) and the worst-case cylinder aspect ratio (h_delta).
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_right
from dataclasses import dataclass

from .carpet import CarpetSpec, _max_cylinders
from .errors import (
    BudgetExceeded,
    CodingsNotDiverging,
    EmptyAttractor,
    EmptyInput,
    InvalidCoding,
    NoGapFound,
    NotInProjection,
    VerificationFailed,
)

Coding = tuple[int, ...]

# Merging two interval-set distances against delta tolerates this much
# relative slack, so exact-rational block gaps equal to delta still merge.
DIST_TIE_REL = 1e-9

# Strip widths below this are indistinguishable from the rounding error of
# their own endpoints (the unit square keeps ulp near 2e-16); itinerary
# digits past that scale carry no float information.
RESOLUTION_FLOOR = 1e-14


@dataclass(frozen=True)
class IntervalSet:
    """Disjoint closed intervals, sorted by left endpoint."""

    intervals: tuple[tuple[float, float], ...]

    @classmethod
    def from_pairs(cls, pairs, tol: float = 0.0) -> "IntervalSet":
        """Sort and merge intervals whose gap is <= tol (0 merges touching)."""
        items = sorted((float(lo), float(hi)) for lo, hi in pairs)
        merged: list[list[float]] = []
        for lo, hi in items:
            if merged and lo - merged[-1][1] <= tol:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    @property
    def bounds(self) -> tuple[float, float]:
        if not self.intervals:
            raise EmptyInput("empty interval set has no bounds")
        return self.intervals[0][0], self.intervals[-1][1]

    def distance_to_point(self, x: float) -> float:
        if not self.intervals:
            raise EmptyInput("empty interval set")
        los = [lo for lo, _ in self.intervals]
        return _point_distance(x, self.intervals, los)

    def intersects_open(self, lo: float, hi: float) -> bool:
        """True when some closed interval meets the open interval (lo, hi)."""
        for a, b in self.intervals:
            if a >= hi:
                break
            if b > lo:
                return True
        return False


def _point_distance(x: float, intervals, los) -> float:
    idx = bisect_right(los, x) - 1
    if idx >= 0 and x <= intervals[idx][1]:
        return 0.0
    best = math.inf
    if idx >= 0:
        best = x - intervals[idx][1]
    if idx + 1 < len(intervals):
        best = min(best, intervals[idx + 1][0] - x)
    return best


def _directed_hausdorff(a: IntervalSet, b: IntervalSet) -> float:
    """max over x in A of dist(x, B), exact for finite interval unions.

    The distance-to-B function is piecewise linear with local maxima only at
    midpoints of B's gaps, so the supremum over A is attained at an endpoint
    of A or at a gap midpoint of B that lies inside A.
    """
    b_los = [lo for lo, _ in b.intervals]
    a_los = [lo for lo, _ in a.intervals]
    candidates = [p for lo, hi in a.intervals for p in (lo, hi)]
    for (_, hi_prev), (lo_next, _) in zip(b.intervals, b.intervals[1:]):
        mid = 0.5 * (hi_prev + lo_next)
        if _point_distance(mid, a.intervals, a_los) == 0.0:
            candidates.append(mid)
    return max(_point_distance(p, b.intervals, b_los) for p in candidates)


def hausdorff_distance(a: IntervalSet, b: IntervalSet) -> float:
    if not a.intervals or not b.intervals:
        raise EmptyInput("hausdorff_distance needs two nonempty interval sets")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))


@dataclass(frozen=True)
class ProjectionIFS:
    """The 1-D system {y -> ratio*y + offset} over the nonempty rows."""

    rows: tuple[int, ...]
    ratios: tuple[float, ...]
    offsets: tuple[float, ...]


def project_F(spec: CarpetSpec) -> ProjectionIFS:
    rows = spec.nonempty_rows
    if not rows:
        raise EmptyAttractor("every row is empty, projection undefined")
    return ProjectionIFS(
        rows=rows,
        ratios=tuple(spec.rows[i - 1].b for i in rows),
        offsets=tuple(spec.d[i - 1] for i in rows),
    )


def projection_approx(spec: CarpetSpec, depth: int,
                      max_intervals: int | None = None) -> IntervalSet:
    """Depth-k interval cover of the projection (row words of length k)."""
    proj = project_F(spec)
    cap = _max_cylinders(max_intervals)
    level = [(0.0, 1.0)]
    for _ in range(depth):
        nxt = [(lo + s * off, lo + s * off + s * ratio)
               for lo, hi in level
               for s in ((hi - lo),)
               for ratio, off in zip(proj.ratios, proj.offsets)]
        if len(nxt) > cap:
            raise BudgetExceeded(f"projection approximation exceeds cap {cap}")
        level = list(IntervalSet.from_pairs(nxt).intervals)
    return IntervalSet(tuple(level))


def y_codings(spec: CarpetSpec, y: float, depth: int) -> list[Coding]:
    """Row itineraries of y to the given depth, lexicographic, at most two.

    Membership tests use closed strips widened by a few ulp, so a y on a
    shared strip boundary keeps both itineraries and a point rounded one ulp
    into a gap is not rejected.  Strips narrower than RESOLUTION_FLOOR cannot
    be told apart in floats (their computed boundaries carry comparable
    rounding error), so from there on each branch is extended canonically
    with the smallest row symbol instead of testing membership.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    proj = project_F(spec)
    if not 0.0 <= y <= 1.0:
        raise NotInProjection(f"y={y} outside [0, 1]")
    # strips live in [0, 1], so absolute slack is also relative slack
    tol = 1e-15
    active: list[tuple[Coding, float, float]] = [((), 0.0, 1.0)]
    for level in range(depth):
        nxt = []
        for digits, lo, s in active:
            if s < RESOLUTION_FLOOR:
                nxt.append((digits + (proj.rows[0],),
                            lo + s * proj.offsets[0], s * proj.ratios[0]))
                continue
            for i, ratio, off in zip(proj.rows, proj.ratios, proj.offsets):
                clo = lo + s * off
                cs = s * ratio
                if clo - tol <= y <= clo + cs + tol:
                    nxt.append((digits + (i,), clo, cs))
        if not nxt:
            raise NotInProjection(
                f"y={y} leaves the projection at refinement level {level + 1}")
        active = nxt
    assert len(active) <= 2, "strips overlap only at shared boundaries"
    return [digits for digits, _, _ in active]


def _check_coding(spec: CarpetSpec, coding: Coding) -> None:
    if not coding:
        raise InvalidCoding("coding is empty")
    for i in coding:
        if not 1 <= i <= spec.m:
            raise InvalidCoding(f"row {i} out of range 1..{spec.m}")
        if not spec.rows[i - 1].cells:
            raise InvalidCoding(f"row {i} has no cells, fiber undefined")


def fiber_approx(spec: CarpetSpec, coding: Coding,
                 max_intervals: int | None = None) -> IntervalSet:
    """Union over all column choices of the coding's x-cylinders, merged.

    This is the depth-len(coding) interval cover of the fiber over any y
    whose itinerary starts with the coding.
    """
    coding = tuple(coding)
    _check_coding(spec, coding)
    cap = _max_cylinders(max_intervals)
    count = 1
    for i in coding:
        count *= len(spec.rows[i - 1].cells)
        if count > cap:
            raise BudgetExceeded(f"fiber at depth {len(coding)} exceeds cap {cap}")
    # Compose right to left so each level is one affine pass over the last.
    intervals = [(0.0, 1.0)]
    for i in reversed(coding):
        cells = spec.rows[i - 1].cells
        intervals = [(c.c + c.a * lo, c.c + c.a * hi)
                     for c in cells for lo, hi in intervals]
        intervals = list(IntervalSet.from_pairs(intervals).intervals)
    return IntervalSet(tuple(intervals))


@dataclass(frozen=True)
class HdBoundCheck:
    distance: float
    bound: float
    ok: bool
    shared_prefix: int
    slack: float


def check_hd_bound(spec: CarpetSpec, coding1: Coding, coding2: Coding,
                   depth: int | None = None) -> HdBoundCheck:
    """Hausdorff distance between two fibers against the shared-prefix bound.

    Fibers restricted to any shared-prefix x-cylinder are both nonempty, so
    their Hausdorff distance is at most the widest such cylinder: the product
    of the per-row maximal widths along the shared prefix.  Finite-depth
    approximations add 2 * a_max**depth of slack.
    """
    c1, c2 = tuple(coding1), tuple(coding2)
    _check_coding(spec, c1)
    _check_coding(spec, c2)
    if depth is None:
        depth = min(len(c1), len(c2))
    if depth < 1 or len(c1) < depth or len(c2) < depth:
        raise InvalidCoding(f"both codings must have at least depth={depth} digits")
    c1, c2 = c1[:depth], c2[:depth]
    shared = 0
    while shared < depth and c1[shared] == c2[shared]:
        shared += 1
    if shared == depth:
        raise CodingsNotDiverging(f"codings agree on all {depth} digits")
    bound = 1.0
    for i in c1[:shared]:
        bound *= spec.row_max_width[i - 1]
    slack = 2.0 * spec.a_max ** depth
    distance = hausdorff_distance(fiber_approx(spec, c1), fiber_approx(spec, c2))
    return HdBoundCheck(distance=distance, bound=bound,
                        ok=distance <= bound + slack,
                        shared_prefix=shared, slack=slack)


def row_gap_intervals(spec: CarpetSpec, i: int) -> list[tuple[float, float]]:
    """Maximal open intervals of [0,1] not covered by row i's closed cells."""
    cells = spec.row(i).cells
    gaps = []
    cursor = 0.0
    for cell in cells:
        if cell.c > cursor:
            gaps.append((cursor, cell.c))
        cursor = max(cursor, cell.c + cell.a)
    if cursor < 1.0:
        gaps.append((cursor, 1.0))
    return gaps


def largest_row_gap(spec: CarpetSpec, i: int) -> tuple[float, float] | None:
    """Longest complementary gap of row i (leftmost on ties), None if covered."""
    gaps = row_gap_intervals(spec, i)
    if not gaps:
        return None
    best = max(hi - lo for lo, hi in gaps)
    for lo, hi in gaps:
        if hi - lo == best:
            return (lo, hi)
    return None


def gap_fraction(spec: CarpetSpec) -> float:
    """The factor lambda: find_gap_interval guarantees |J| >= lambda * |I|.

    lambda = a_min * (smallest over nonempty rows of the largest row gap) / 3;
    zero when some nonempty row's cells tile [0,1] completely.
    """
    if not spec.nonempty_rows:
        raise EmptyAttractor("every row is empty")
    smallest = math.inf
    for i in spec.nonempty_rows:
        gap = largest_row_gap(spec, i)
        if gap is None:
            return 0.0
        smallest = min(smallest, gap[1] - gap[0])
    return spec.a_min * smallest / 3.0


def find_gap_interval(spec: CarpetSpec, coding: Coding,
                      interval: tuple[float, float]) -> tuple[float, float]:
    """An open subinterval J of I with J disjoint from the fiber, |J| >= lambda|I|.

    Two-branch construction: if the fiber misses the open middle third of I,
    that middle third is J.  Otherwise descend the coding's x-cylinders to the
    largest one contained in I that still meets the middle third, and map the
    next row's largest complementary gap into it.  The coding must be deep
    enough for the descent (depth ~ log(3/|I|) / log(1/a_max) suffices).
    """
    coding = tuple(coding)
    _check_coding(spec, coding)
    ilo, ihi = float(interval[0]), float(interval[1])
    if not (0.0 <= ilo < ihi <= 1.0):
        raise ValueError(f"I=({ilo}, {ihi}) must be a nonempty open subinterval of [0,1]")
    width = ihi - ilo
    # third + third, not ihi - third: keeps thi exact for I = (0, 1)
    tlo = ilo + width / 3.0
    thi = ilo + 2.0 * (width / 3.0)
    lam = gap_fraction(spec)

    # Disjointness only needs resolution far below the guaranteed gap length,
    # and a truncated coding yields a superset of the fiber, so testing
    # against it is sound.  Cap the interval count as a last resort.
    target = (lam if lam > 0.0 else spec.a_min / 3.0) * width / 100.0
    depth = max(1, math.ceil(math.log(target) / math.log(spec.a_max)))
    depth = min(depth, len(coding))
    count = 1
    for k in range(depth):
        count *= len(spec.rows[coding[k] - 1].cells)
        if count > 1_000_000:
            depth = k + 1
            break
    fiber = fiber_approx(spec, coding[:depth])
    resolution = max(hi - lo for lo, hi in fiber.intervals)

    if not fiber.intersects_open(tlo, thi):
        return (tlo, thi)

    # Largest x-cylinder inside open I that meets the open middle third:
    # a max-heap ordered by length pops it first, since children are shorter.
    heap = [(-1.0, 0.0, 0)]  # (-length, left endpoint, level)
    found = None
    while heap:
        neg_len, lo, level = heapq.heappop(heap)
        s = -neg_len
        hi = lo + s
        if level > 0 and lo > ilo and hi < ihi:
            found = (lo, s, level)
            break
        if level == len(coding):
            continue
        row = spec.rows[coding[level] - 1]
        for cell in row.cells:
            clo = lo + s * cell.c
            cs = s * cell.a
            if clo < thi and clo + cs > tlo:  # keep only middle-third hitters
                heapq.heappush(heap, (-cs, clo, level + 1))
    if found is None:
        raise InvalidCoding(
            f"coding of length {len(coding)} too short to isolate a gap in I=({ilo},{ihi})")

    lo, s, level = found
    next_row = coding[level]  # coding[level] is the (level+1)-th digit
    gap = largest_row_gap(spec, next_row)
    if gap is None:
        raise NoGapFound(f"row {next_row} has no complementary gap")
    j_lo, j_hi = lo + s * gap[0], lo + s * gap[1]

    if j_hi - j_lo < lam * width * (1.0 - 1e-12):
        raise VerificationFailed(
            f"gap interval shorter than lambda*|I|: {j_hi - j_lo} < {lam * width}")
    # A truncated-approximation interval can straddle a true gap endpoint by
    # up to its own length, and J and the fiber are rounded along different
    # float paths, so shrink the tested interval by the realized resolution.
    slack = max(1e-13, resolution)
    if fiber.intersects_open(j_lo + slack, j_hi - slack):
        raise VerificationFailed("constructed gap interval meets the fiber approximation")
    return (j_lo, j_hi)


def row_stopping_words(spec: CarpetSpec, delta: float,
                       max_words: int | None = None) -> list[Coding]:
    """Row words over nonempty rows whose height product first drops <= delta."""
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    rows = spec.nonempty_rows
    if not rows:
        raise EmptyAttractor("every row is empty")
    cap = _max_cylinders(max_words)
    out: list[Coding] = []
    stack: list[tuple[Coding, float]] = [((), 1.0)]
    while stack:
        word, prod = stack.pop()
        if word and prod <= delta:
            if len(out) >= cap:
                raise BudgetExceeded(f"row stopping set at delta={delta} exceeds cap {cap}")
            out.append(word)
            continue
        for i in reversed(rows):
            stack.append((word + (i,), prod * spec.rows[i - 1].b))
    return out


@dataclass(frozen=True)
class DeltaClasses:
    """Partition of the stopping row-words into delta-connected block classes."""

    delta: float
    words: tuple[Coding, ...]
    classes: tuple[tuple[Coding, ...], ...]

    @property
    def l_emp(self) -> int:
        return max(len(cls) for cls in self.classes)


def _interval_union_distance(a, b) -> float:
    """Min distance between two unions of sorted disjoint intervals."""
    best = math.inf
    i = j = 0
    while i < len(a) and j < len(b):
        alo, ahi = a[i]
        blo, bhi = b[j]
        if ahi < blo:
            best = min(best, blo - ahi)
            i += 1
        elif bhi < alo:
            best = min(best, alo - bhi)
            j += 1
        else:
            return 0.0
    return best


def idelta_classes(spec: CarpetSpec, delta: float,
                   max_words: int | None = None) -> DeltaClasses:
    """Union stopping row-words whose projection blocks sit within delta.

    Block distances are exact set distances between interval approximations
    of the projection, refined two decades below delta; pairs are pruned by
    hull distance first.  Comparisons allow 1e-9 relative slack so rational
    gaps exactly equal to delta merge despite floating-point drift.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must be in (0, 1), got {delta}")
    proj = project_F(spec)
    words = sorted(row_stopping_words(spec, delta, max_words))
    b_max = max(proj.ratios)
    depth = max(1, math.ceil(math.log(delta / 100.0) / math.log(b_max)))

    approx_cache: dict[int, tuple[tuple[float, float], ...]] = {}

    def rel_approx(rel: int) -> tuple[tuple[float, float], ...]:
        if rel not in approx_cache:
            approx_cache[rel] = projection_approx(spec, rel).intervals
        return approx_cache[rel]

    blocks = []
    hulls = []
    for word in words:
        s, t = 1.0, 0.0
        for i in word:
            t += s * spec.d[i - 1]
            s *= spec.rows[i - 1].b
        base = rel_approx(max(0, depth - len(word)))
        blocks.append([(t + s * lo, t + s * hi) for lo, hi in base])
        hulls.append((t, t + s))

    threshold = delta * (1.0 + DIST_TIE_REL)
    parent = list(range(len(words)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = sorted(range(len(words)), key=lambda k: hulls[k][0])
    for ai in range(len(order)):
        a = order[ai]
        for bi in range(ai + 1, len(order)):
            b = order[bi]
            if hulls[b][0] - hulls[a][1] > threshold:
                break  # later hulls start even further right
            if _interval_union_distance(blocks[a], blocks[b]) <= threshold:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb

    groups: dict[int, list[Coding]] = {}
    for k, word in enumerate(words):
        groups.setdefault(find(k), []).append(word)
    classes = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    return DeltaClasses(delta=delta, words=tuple(words), classes=classes)


def h_delta(spec: CarpetSpec, delta: float) -> float:
    """Worst width-to-height ratio over stopping row-words at delta.

    Each stopping word contributes the product of (widest cell / height) over
    its rows; all factors are < 1, so a branch is pruned as soon as its
    running product cannot beat the best found.  Tends to 0 as delta does.
    """
    if not 0.0 < delta <= 1.0:
        raise ValueError(f"delta must be in (0, 1], got {delta}")
    rows = spec.nonempty_rows
    if not rows:
        raise EmptyAttractor("every row is empty")
    factors = [(spec.rows[i - 1].b, spec.row_max_width[i - 1] / spec.rows[i - 1].b)
               for i in rows]
    best = 0.0
    stack = [(1.0, 1.0)]  # (height product, ratio product)
    while stack:
        prod, ratio = stack.pop()
        if ratio <= best:
            continue
        for b, r in factors:
            child_prod = prod * b
            child_ratio = ratio * r
            if child_prod <= delta:
                if child_ratio > best:
                    best = child_ratio
            elif child_ratio > best:
                stack.append((child_prod, child_ratio))
    return best
