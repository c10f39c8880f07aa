"""Gap sequences of finite rectangle unions and their scaling fits.

The gap sequence of a compact set lists the thresholds where the count of
delta-connected components jumps, with multiplicities.  For a finite union of
rectangles those thresholds are exactly the positive edge weights of a minimum
spanning tree under the Euclidean set distance between rects (single-linkage
equivalence), with touching rects pre-merged.

Two independent routes compute it: gap_sequence_mst runs Boruvka phases over a
spatial hash grid whose cell size doubles per sweep, switching to exact
cluster-pair scans once few clusters remain; gap_sequence_bruteforce sweeps
the full distance matrix threshold by threshold with a union-find.  Tests pin
the two against each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .approx import approx_set
from .carpet import CarpetSpec, Rect
from .errors import EmptyInput, OracleCapExceeded, TooFewGaps

# Values within this relative tolerance aggregate into one gap entry.
TIE_REL = 1e-9

# Entries of a carpet gap sequence are kept only above this multiple of the
# approximation scale; coarser gaps are stable under further refinement.
SIGMA_STABILITY = 4.0

ORACLE_CAP = 500

# Candidate-pair budget per grid sweep before falling back to exact scans.
_MAX_CANDIDATES = 8_000_000

# Switch from grid sweeps to exact cluster-pair scans below this many clusters.
_CLUSTER_SWITCH = 96


@dataclass(frozen=True)
class GapSequence:
    """Descending (value, multiplicity) entries; value_error bounds the bias
    introduced by computing on a finite approximation (0 for exact inputs)."""

    entries: tuple[tuple[float, int], ...]
    value_error: float = 0.0

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def flat(self, limit: int | None = None) -> list[float]:
        """Expanded nonincreasing sequence alpha_1 >= alpha_2 >= ..."""
        out: list[float] = []
        for value, mult in self.entries:
            out.extend([value] * mult)
            if limit is not None and len(out) >= limit:
                return out[:limit]
        return out


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r2: float
    ratio_band: tuple[float, float]


def rect_distance(r1: Rect, r2: Rect) -> float:
    """Euclidean distance between two closed axis-aligned rectangles."""
    dx = max(0.0, r1.x0 - r2.x1, r2.x0 - r1.x1)
    dy = max(0.0, r1.y0 - r2.y1, r2.y0 - r1.y1)
    return math.hypot(dx, dy)


def _aggregate(weights) -> tuple[tuple[float, int], ...]:
    """Group a weight multiset into descending entries, merging near-ties.

    Groups are anchored at their largest member: a weight joins the current
    group when it is within TIE_REL (relative) of the group head.
    """
    ws = sorted((float(w) for w in weights), reverse=True)
    entries: list[tuple[float, int]] = []
    head, count = None, 0
    for w in ws:
        if head is not None and head - w <= TIE_REL * head:
            count += 1
        else:
            if head is not None:
                entries.append((head, count))
            head, count = w, 1
    if head is not None:
        entries.append((head, count))
    return tuple(entries)


class _Arrays:
    """Column view of a rect list plus vectorized set distances."""

    def __init__(self, rects):
        self.x0 = np.array([r.x0 for r in rects])
        self.y0 = np.array([r.y0 for r in rects])
        self.x1 = np.array([r.x1 for r in rects])
        self.y1 = np.array([r.y1 for r in rects])
        self.n = len(rects)

    def pair_dist(self, i, j) -> np.ndarray:
        dx = np.maximum(0.0, np.maximum(self.x0[i] - self.x1[j],
                                        self.x0[j] - self.x1[i]))
        dy = np.maximum(0.0, np.maximum(self.y0[i] - self.y1[j],
                                        self.y0[j] - self.y1[i]))
        return np.hypot(dx, dy)

    def dist_to_box(self, idx, bx0, by0, bx1, by1) -> np.ndarray:
        dx = np.maximum(0.0, np.maximum(self.x0[idx] - bx1, bx0 - self.x1[idx]))
        dy = np.maximum(0.0, np.maximum(self.y0[idx] - by1, by0 - self.y1[idx]))
        return np.hypot(dx, dy)

    @property
    def max_extent(self) -> float:
        return float(max((self.x1 - self.x0).max(), (self.y1 - self.y0).max()))

    @property
    def bbox_diag(self) -> float:
        return math.hypot(self.x1.max() - self.x0.min(),
                          self.y1.max() - self.y0.min())


class _TooManyCandidates(Exception):
    pass


def _grid_pairs(arrs: _Arrays, g: float,
                max_pairs: int = _MAX_CANDIDATES) -> tuple[np.ndarray, np.ndarray]:
    """Unique candidate pairs from a cell grid of size g.

    Every rect is inserted into all cells its box overlaps, so any pair at
    distance <= g shares a cell or sits in 8-neighbor cells.
    """
    u0 = np.floor(arrs.x0 / g).astype(np.int64)
    u1 = np.floor(arrs.x1 / g).astype(np.int64)
    v0 = np.floor(arrs.y0 / g).astype(np.int64)
    v1 = np.floor(arrs.y1 / g).astype(np.int64)
    cells: dict[tuple[int, int], list[int]] = {}
    for k in range(arrs.n):
        for u in range(u0[k], u1[k] + 1):
            for v in range(v0[k], v1[k] + 1):
                cells.setdefault((u, v), []).append(k)

    pairs_i: list[int] = []
    pairs_j: list[int] = []
    budget = max_pairs

    def emit(left, right):
        nonlocal budget
        budget -= len(left) * len(right) if right is not left else \
            len(left) * (len(left) - 1) // 2
        if budget < 0:
            raise _TooManyCandidates
        if right is left:
            for a, b in itertools.combinations(left, 2):
                pairs_i.append(a)
                pairs_j.append(b)
        else:
            for a in left:
                for b in right:
                    pairs_i.append(a)
                    pairs_j.append(b)

    for (u, v), members in cells.items():
        emit(members, members)
        for du, dv in ((1, 0), (0, 1), (1, 1), (1, -1)):
            other = cells.get((u + du, v + dv))
            if other:
                emit(members, other)

    if not pairs_i:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    i = np.array(pairs_i, dtype=np.int64)
    j = np.array(pairs_j, dtype=np.int64)
    lo = np.minimum(i, j)
    hi = np.maximum(i, j)
    keys = np.unique(lo * arrs.n + hi)
    return keys // arrs.n, keys % arrs.n


class _UnionFind:
    def __init__(self, n: int):
        self.parent = np.arange(n, dtype=np.int64)
        self.components = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = int(p[x])
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.components -= 1
        return True

    def compress(self) -> None:
        p = self.parent
        while True:
            gp = p[p]
            if np.array_equal(gp, p):
                break
            p = gp
        self.parent = p

    def roots(self, idx) -> np.ndarray:
        return self.parent[idx]


def component_labels(rects, delta: float) -> np.ndarray:
    """Component label per rect, joining pairs at set distance <= delta (closed)."""
    if delta < 0.0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if not rects:
        raise EmptyInput("no rects")
    arrs = _Arrays(rects)
    uf = _UnionFind(arrs.n)
    if arrs.n == 1:
        return uf.parent
    g = max(delta, arrs.max_extent, arrs.bbox_diag / 64.0)
    if g == 0.0:  # all rects are the same point
        return np.zeros(arrs.n, dtype=np.int64)
    try:
        i, j = _grid_pairs(arrs, g)
        d = arrs.pair_dist(i, j)
        for a, b in zip(i[d <= delta], j[d <= delta]):
            uf.union(int(a), int(b))
    except _TooManyCandidates:
        # Dense fallback: chunked all-pairs sweep.
        chunk = max(1, _MAX_CANDIDATES // arrs.n)
        for start in range(0, arrs.n, chunk):
            rows = np.arange(start, min(start + chunk, arrs.n))
            cols = np.arange(arrs.n)
            ii, jj = np.meshgrid(rows, cols, indexing="ij")
            mask = ii < jj
            ii, jj = ii[mask], jj[mask]
            d = arrs.pair_dist(ii, jj)
            for a, b in zip(ii[d <= delta], jj[d <= delta]):
                uf.union(int(a), int(b))
    uf.compress()
    return uf.parent.copy()


def n_delta_components(rects, delta: float) -> int:
    """Number of connected components at threshold delta."""
    return len(np.unique(component_labels(rects, delta)))


def _min_dist_clusters(arrs: _Arrays, members_a, members_b, hull_a, hull_b,
                       upper: float) -> float:
    """Exact min distance between two clusters, pruned by hulls and `upper`."""
    if upper < math.inf:
        members_a = members_a[arrs.dist_to_box(members_a, *hull_b) <= upper]
        members_b = members_b[arrs.dist_to_box(members_b, *hull_a) <= upper]
    if len(members_a) == 0 or len(members_b) == 0:
        return math.inf
    best = math.inf
    chunk = max(1, _MAX_CANDIDATES // max(1, len(members_b)))
    for start in range(0, len(members_a), chunk):
        sub = members_a[start:start + chunk]
        ii = np.repeat(sub, len(members_b))
        jj = np.tile(members_b, len(sub))
        best = min(best, float(arrs.pair_dist(ii, jj).min()))
    return best


def _exact_rounds(arrs: _Arrays, uf: _UnionFind, weights: list[float]) -> None:
    """Finish the MST by direct cluster-pair scans (few clusters left)."""
    while uf.components > 1:
        uf.compress()
        roots_all = uf.roots(np.arange(arrs.n))
        order = np.argsort(roots_all, kind="stable")
        sorted_roots = roots_all[order]
        uniq, starts = np.unique(sorted_roots, return_index=True)
        count = len(uniq)
        members = [order[starts[k]: starts[k + 1] if k + 1 < count else arrs.n]
                   for k in range(count)]
        hx0 = np.array([arrs.x0[m].min() for m in members])
        hy0 = np.array([arrs.y0[m].min() for m in members])
        hx1 = np.array([arrs.x1[m].max() for m in members])
        hy1 = np.array([arrs.y1[m].max() for m in members])
        hdx = np.maximum(0.0, np.maximum(hx0[:, None] - hx1[None, :],
                                         hx0[None, :] - hx1[:, None]))
        hdy = np.maximum(0.0, np.maximum(hy0[:, None] - hy1[None, :],
                                         hy0[None, :] - hy1[:, None]))
        hull_d = np.hypot(hdx, hdy)

        # Minimum outgoing edge per cluster, hull-distance pruned.
        chosen: list[tuple[float, int, int]] = []
        for a in range(count):
            near = np.argsort(hull_d[a], kind="stable")
            best = math.inf
            best_b = -1
            for b in near:
                if b == a:
                    continue
                if hull_d[a, b] >= best:
                    break
                d = _min_dist_clusters(arrs, members[a], members[b],
                                       (hx0[a], hy0[a], hx1[a], hy1[a]),
                                       (hx0[b], hy0[b], hx1[b], hy1[b]),
                                       best)
                if d < best or (d == best and (best_b < 0 or b < best_b)):
                    best, best_b = d, int(b)
            if best_b >= 0:
                lo, hi = min(a, best_b), max(a, best_b)
                chosen.append((best, lo, hi))

        merged_any = False
        for d, a, b in sorted(chosen):
            if uf.union(int(uniq[a]), int(uniq[b])):
                merged_any = True
                if d > 0.0:
                    weights.append(d)
        if not merged_any:  # cannot happen: some cluster always has a min edge
            raise AssertionError("exact MST round made no progress")


def gap_sequence_mst(rects) -> GapSequence:
    """Gap sequence of a finite rect union via a grid-accelerated MST.

    Boruvka phases: per sweep, candidate pairs come from a spatial grid of
    cell size g (doubling each sweep); a cluster merges along its minimum
    candidate edge only when that edge's weight is <= g, which guarantees it
    is the cluster's true nearest neighbor.  Touching rects merge silently.
    """
    if not rects:
        raise EmptyInput("no rects")
    if len(rects) == 1:
        return GapSequence(entries=())
    arrs = _Arrays(rects)
    uf = _UnionFind(arrs.n)
    weights: list[float] = []

    g = max(arrs.max_extent, arrs.bbox_diag / 64.0)
    if g == 0.0:
        return GapSequence(entries=())  # all rects are one point

    while uf.components > 1:
        if uf.components <= _CLUSTER_SWITCH:
            _exact_rounds(arrs, uf, weights)
            break
        try:
            i, j = _grid_pairs(arrs, g)
        except _TooManyCandidates:
            _exact_rounds(arrs, uf, weights)
            break
        d = arrs.pair_dist(i, j)
        verified = d <= g  # grid candidates are complete only up to distance g
        i, j, d = i[verified], j[verified], d[verified]
        for a, b in zip(i[d == 0.0], j[d == 0.0]):
            uf.union(int(a), int(b))
        pos = d > 0.0
        i, j, d = i[pos], j[pos], d[pos]

        while uf.components > 1:
            uf.compress()
            ri, rj = uf.roots(i), uf.roots(j)
            cross = ri != rj
            if not cross.any():
                break
            a = np.minimum(ri[cross], rj[cross])
            b = np.maximum(ri[cross], rj[cross])
            w = d[cross]
            order = np.lexsort((b, a, w))
            a, b, w = a[order], b[order], w[order]
            ranks = np.arange(len(w))
            min_rank = np.full(arrs.n, len(w), dtype=np.int64)
            np.minimum.at(min_rank, a, ranks)
            np.minimum.at(min_rank, b, ranks)
            chosen = np.unique(min_rank[min_rank < len(w)])
            for k in chosen:
                if uf.union(int(a[k]), int(b[k])):
                    weights.append(float(w[k]))
        g *= 2.0

    return GapSequence(entries=_aggregate(weights))


def gap_sequence_bruteforce(rects, cap: int = ORACLE_CAP) -> GapSequence:
    """Oracle route: sweep every distinct pairwise distance with a union-find.

    Counts components before and after each threshold; the count drops are the
    multiplicities.  Quadratic, refuses inputs larger than `cap`.
    """
    if not rects:
        raise EmptyInput("no rects")
    if len(rects) > cap:
        raise OracleCapExceeded(f"{len(rects)} rects exceeds oracle cap {cap}")
    if len(rects) == 1:
        return GapSequence(entries=())
    arrs = _Arrays(rects)
    iu, ju = np.triu_indices(arrs.n, k=1)
    d = arrs.pair_dist(iu, ju)
    order = np.lexsort((ju, iu, d))
    iu, ju, d = iu[order], ju[order], d[order]

    uf = _UnionFind(arrs.n)
    jumps: list[tuple[float, int]] = []
    k = 0
    while k < len(d):
        value = d[k]
        before = uf.components
        while k < len(d) and d[k] == value:
            uf.union(int(iu[k]), int(ju[k]))
            k += 1
        drop = before - uf.components
        if value > 0.0 and drop > 0:
            jumps.append((float(value), drop))
    weights = [v for v, mult in jumps for _ in range(mult)]
    return GapSequence(entries=_aggregate(weights))


def gap_sequence_of_carpet(spec: CarpetSpec, delta_res: float,
                           max_cylinders: int | None = None) -> GapSequence:
    """Gap sequence of the delta_res approximation, truncated to stable entries.

    Entries below SIGMA_STABILITY * delta_res are dropped: gaps larger than
    that survive refinement of the cover (refining can move each side by at
    most 2 * delta_res, recorded in value_error).
    """
    rects = approx_set(spec, delta_res, max_cylinders=max_cylinders).rects
    seq = gap_sequence_mst(rects)
    cutoff = SIGMA_STABILITY * delta_res
    kept = tuple((v, m) for v, m in seq.entries if v >= cutoff)
    return GapSequence(entries=kept, value_error=2.0 * delta_res)


def scaling_fit(gapseq: GapSequence, s: float) -> ScalingFit:
    """Fit log(alpha_k) against log(k); compare against the k**(-1/s) law."""
    flat = gapseq.flat()
    if len(flat) < 10:
        raise TooFewGaps(f"need >= 10 gap values, got {len(flat)}")
    alpha = np.array(flat)
    k = np.arange(1, len(flat) + 1, dtype=float)
    slope, intercept = np.polyfit(np.log(k), np.log(alpha), 1)
    fitted = slope * np.log(k) + intercept
    ss_res = float(((np.log(alpha) - fitted) ** 2).sum())
    ss_tot = float(((np.log(alpha) - np.log(alpha).mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    band = alpha * k ** (1.0 / s)
    return ScalingFit(slope=float(slope), intercept=float(intercept), r2=r2,
                      ratio_band=(float(band.min()), float(band.max())))
