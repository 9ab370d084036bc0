"""General position tests and exact gp-number solvers.

Two independent routes compute gp(G):

* :func:`gp_number_naive` walks every subset of ``V(G)`` in binary order,
  extending a feasibility table one vertex at a time. The table is driven
  by the explicit :func:`conflict_triples` list.
* :func:`gp_number_exact` is a branch-and-bound over bitmasks whose
  pruning masks come straight from the distance matrix.

Both return a :class:`GpCertificate` whose witness can be replayed through
:func:`is_general_position`.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from gpcactus.graph import UNREACHABLE, DistanceMatrix, Graph, GraphError, all_pairs_distances, is_connected

NAIVE_LIMIT = 16


class TooLarge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class SolverTimeout(RuntimeError):
    def __init__(self, seconds: float, best: frozenset[int]) -> None:
        super().__init__(f"search exceeded {seconds:g}s (best so far: {len(best)})")
        self.seconds = seconds
        self.best = best


class Method(str, enum.Enum):
    EXACT = "Exact"
    NAIVE = "NaiveOracle"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class GpCertificate:
    value: int
    witness: frozenset[int]
    method: Method
    form: str | None = None
    note: str | None = None

    def __post_init__(self) -> None:
        if len(self.witness) != self.value:
            raise ValueError(f"witness size {len(self.witness)} != value {self.value}")

    @property
    def label(self) -> str:
        if self.method is Method.CLOSED_FORM:
            return f"ClosedForm({self.form})"
        return self.method.value

    def sorted_witness(self) -> list[int]:
        return sorted(self.witness)


class ConflictTriple(NamedTuple):
    outer_a: int
    middle: int
    outer_b: int


def _between(row_a: Sequence[int | None], row_b: Sequence[int | None], m: int, dab: int) -> bool:
    return row_a[m] is not UNREACHABLE and row_a[m] + row_b[m] == dab


def is_general_position(d: DistanceMatrix, s: Iterable[int]) -> bool:
    """True iff no member of ``s`` lies on a geodesic between two others."""
    members = sorted(set(s))
    for x, y, z in combinations(members, 3):
        dx, dy, dz = d[x], d[y], d[z]
        if dx[y] + dy[z] == dx[z] or dy[x] + dx[z] == dy[z] or dx[z] + dz[y] == dx[y]:
            return False
    return True


def conflict_triples(d: DistanceMatrix) -> list[ConflictTriple]:
    """Every three-vertex set that breaks general position, once each.

    The middle vertex of a conflicting triple is unique: two distinct
    middles would force a zero distance between distinct vertices.
    """
    out = []
    for x, y, z in combinations(range(d.n), 3):
        dx, dy = d[x], d[y]
        if dx[y] + dy[z] == dx[z]:
            out.append(ConflictTriple(x, y, z))
        elif dy[x] + dx[z] == dy[z]:
            out.append(ConflictTriple(y, x, z))
        elif dx[z] + d[z][y] == dx[y]:
            out.append(ConflictTriple(x, z, y))
    out.sort()
    return out


def _check_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected("general position is defined here for connected graphs only")


def _trivial(g: Graph, method: Method) -> GpCertificate | None:
    if g.vertex_count <= 2:
        return GpCertificate(g.vertex_count, frozenset(range(g.vertex_count)), method)
    return None


def _subset_table(g: Graph, d: DistanceMatrix) -> bytearray:
    """Feasibility flag for every subset of V(G), indexed by bitmask."""
    n = g.vertex_count
    # blocked[v][a]: vertices u such that {u, v, a} is a conflicting triple
    blocked = [[0] * n for _ in range(n)]
    for a, m, b in conflict_triples(d):
        for p, q, r in ((a, m, b), (a, b, m), (m, b, a)):
            blocked[p][q] |= 1 << r
            blocked[q][p] |= 1 << r
    ok = bytearray(1 << n)
    ok[0] = 1
    for s in range(1, 1 << n):
        v = s.bit_length() - 1
        rest = s ^ (1 << v)
        if not ok[rest]:
            continue
        row = blocked[v]
        r = rest
        while r:
            low = r & -r
            if row[low.bit_length() - 1] & rest:
                break
            r ^= low
        else:
            ok[s] = 1
    return ok


def _mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def gp_number_naive(g: Graph, limit: int = NAIVE_LIMIT) -> GpCertificate:
    """Exhaustive gp-number; the witness is the lexicographically least gp-set."""
    if g.vertex_count > limit:
        raise TooLarge(f"{g.vertex_count} vertices exceeds naive limit {limit}")
    _check_connected(g)
    trivial = _trivial(g, Method.NAIVE)
    if trivial:
        return trivial
    ok = _subset_table(g, all_pairs_distances(g))
    best_size, best = 0, ()
    for s, flag in enumerate(ok):
        if not flag:
            continue
        size = s.bit_count()
        if size > best_size:
            best_size, best = size, tuple(_mask_members(s))
        elif size == best_size:
            cand = tuple(_mask_members(s))
            if cand < best:
                best = cand
    return GpCertificate(best_size, frozenset(best), Method.NAIVE)


def maximum_gp_sets(g: Graph, limit: int = NAIVE_LIMIT) -> tuple[int, list[frozenset[int]]]:
    """All gp-sets of ``g`` (every general position set of maximum size)."""
    if g.vertex_count > limit:
        raise TooLarge(f"{g.vertex_count} vertices exceeds enumeration limit {limit}")
    _check_connected(g)
    if g.vertex_count <= 2:
        return g.vertex_count, [frozenset(range(g.vertex_count))]
    ok = _subset_table(g, all_pairs_distances(g))
    best_size, masks = 0, []
    for s, flag in enumerate(ok):
        if flag:
            size = s.bit_count()
            if size > best_size:
                best_size, masks = size, [s]
            elif size == best_size:
                masks.append(s)
    sets = sorted((tuple(_mask_members(s)) for s in masks))
    return best_size, [frozenset(s) for s in sets]


def branch_order(g: Graph) -> list[int]:
    """Descending degree, ties by index."""
    return sorted(range(g.vertex_count), key=lambda v: (-g.degree(v), v))


def triple_masks(d: DistanceMatrix, labels: Sequence[int] | None = None) -> list[list[int]]:
    """``masks[a][b]`` is the bitmask of vertices that conflict with the pair {a, b}.

    With ``labels``, vertex ``v`` is mapped to bit ``labels[v]`` and rows are
    indexed by label as well.
    """
    n = d.n
    lab = list(range(n)) if labels is None else list(labels)
    # middle[a][b]: vertices strictly inside some a,b-geodesic
    middle = [[0] * n for _ in range(n)]
    for a in range(n):
        ra = d[a]
        for b in range(a + 1, n):
            rb, dab = d[b], ra[b]
            mask = 0
            for m in range(n):
                if m != a and m != b and _between(ra, rb, m, dab):
                    mask |= 1 << lab[m]
            middle[a][b] = middle[b][a] = mask
    masks = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            mask = middle[a][b]
            bit_a, bit_b = 1 << lab[a], 1 << lab[b]
            for u in range(n):
                if u == a or u == b:
                    continue
                if middle[u][b] & bit_a or middle[u][a] & bit_b:
                    mask |= 1 << lab[u]
            masks[lab[a]][lab[b]] = masks[lab[b]][lab[a]] = mask
    return masks


def greedy_general_position(d: DistanceMatrix, order: Sequence[int]) -> frozenset[int]:
    """Scan ``order`` and keep every vertex that leaves the set conflict-free."""
    if sorted(order) != list(range(d.n)):
        raise ValueError("order must be a permutation of all vertices")
    masks = triple_masks(d)
    chosen: list[int] = []
    blocked = 0
    for v in order:
        if blocked >> v & 1:
            continue
        for a in chosen:
            blocked |= masks[v][a]
        chosen.append(v)
    return frozenset(chosen)


def _clique_cover_size(cands: list[int], chosen_mask: int, masks: list[list[int]]) -> int:
    """Greedy partition of candidates into groups that pairwise conflict with the chosen set."""
    groups: list[list[int]] = []
    for u in cands:
        row = masks[u]
        for grp in groups:
            if all(row[w] & chosen_mask for w in grp):
                grp.append(u)
                break
        else:
            groups.append([u])
    return len(groups)


def gp_number_exact(
    g: Graph,
    timeout: float | None = None,
    refine_bound: bool = False,
) -> GpCertificate:
    """Exact gp-number by branch and bound.

    Vertices are considered by descending degree. A node is cut when the
    chosen set plus every remaining candidate cannot beat the incumbent;
    ``refine_bound`` swaps the candidate count for a greedy clique cover of
    the candidates' pairwise conflicts. The incumbent starts as the greedy
    set in branch order, which is the first leaf of the search, so the
    witness is the first optimum met under that order.
    """
    _check_connected(g)
    trivial = _trivial(g, Method.EXACT)
    if trivial:
        return trivial
    d = all_pairs_distances(g)
    order = branch_order(g)
    pos = [0] * g.vertex_count
    for i, v in enumerate(order):
        pos[v] = i
    masks = triple_masks(d, pos)

    seed = greedy_general_position(d, order)
    best_size = len(seed)
    best_bits = [pos[v] for v in seed]
    deadline = None if timeout is None else time.monotonic() + timeout
    nodes = 0
    chosen: list[int] = []

    def search(cands: int, chosen_mask: int) -> None:
        nonlocal best_size, best_bits, nodes
        nodes += 1
        if deadline is not None and nodes & 1023 == 0 and time.monotonic() > deadline:
            raise SolverTimeout(timeout, frozenset(order[b] for b in best_bits))
        size = len(chosen)
        room = cands.bit_count()
        if size + room <= best_size:
            return
        if cands == 0:
            best_size, best_bits = size, list(chosen)
            return
        if refine_bound and room > 2:
            if size + _clique_cover_size(_mask_members(cands), chosen_mask, masks) <= best_size:
                return
        low = cands & -cands
        v = low.bit_length() - 1
        forbidden = 0
        row = masks[v]
        for a in chosen:
            forbidden |= row[a]
        chosen.append(v)
        search((cands ^ low) & ~forbidden, chosen_mask | low)
        chosen.pop()
        search(cands ^ low, chosen_mask)

    search((1 << g.vertex_count) - 1, 0)
    return GpCertificate(best_size, frozenset(order[b] for b in best_bits), Method.EXACT)


def gp_number(g: Graph, method: str = "exact", timeout: float | None = None) -> GpCertificate:
    if method == "naive":
        return gp_number_naive(g)
    if method == "exact":
        return gp_number_exact(g, timeout=timeout)
    raise ValueError(f"unknown method {method!r}")
