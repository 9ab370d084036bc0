"""Cactus recognition, decomposition and the gp bounds that hold on cacti.

A cactus is a connected graph whose blocks are single edges or cycles.
For a cycle of length ``l`` the cut vertices split the cycle into arcs
("gaps"). The cut-path distance ``D_c`` is the shortest arc between two cut
vertices that still carries every other cut vertex, which works out to
``l - max(gaps)``.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Any

from gpcactus.graph import Graph, GraphError, is_connected
from gpcactus.solver import GpCertificate, Method


class NotACactus(GraphError):
    pass


class HasCycle(GraphError):
    pass


class NoCycle(GraphError):
    pass


class FewerThanTwoCuts(ValueError):
    pass


class InvalidCycle(ValueError):
    pass


class InvalidWheel(ValueError):
    pass


class BlockKind(str, enum.Enum):
    BRIDGE = "BridgeEdge"
    CYCLE = "Cycle"
    # any other 2-connected block; never present in a cactus
    OTHER = "Other"


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    kind: BlockKind


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]

    def blocks_of(self, kind: BlockKind) -> list[Block]:
        return [b for b in self.blocks if b.kind is kind]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components and cut vertices (iterative Hopcroft-Tarjan)."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    clock = 0
    cuts: set[int] = set()
    raw_blocks: list[list[tuple[int, int]]] = []

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            v, parent, nbrs = stack[-1]
            advanced = False
            for w in nbrs:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(g.adjacency[w])))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == (parent, v):
                        break
                raw_blocks.append(comp)
        if root_children > 1:
            cuts.add(root)

    blocks = []
    for comp in raw_blocks:
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in comp))
        verts = tuple(sorted({x for e in edges for x in e}))
        if len(edges) == 1:
            kind = BlockKind.BRIDGE
        elif len(edges) == len(verts):
            kind = BlockKind.CYCLE
        else:
            kind = BlockKind.OTHER
        blocks.append(Block(verts, edges, kind))
    blocks.sort(key=lambda b: (b.vertices[0], b.vertices))
    return BlockDecomposition(tuple(blocks), frozenset(cuts))


def is_cactus(g: Graph) -> bool:
    if not is_connected(g):
        return False
    return all(b.kind is not BlockKind.OTHER for b in block_decomposition(g).blocks)


def _cyclic_order(block: Block) -> list[int]:
    nbrs: dict[int, list[int]] = {v: [] for v in block.vertices}
    for u, v in block.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    start = block.vertices[0]
    order = [start]
    prev, cur = start, min(nbrs[start])
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return order


def arc_gaps(length: int, positions: list[int]) -> list[int]:
    """Arc lengths between cyclically consecutive positions on a cycle."""
    pos = sorted(positions)
    if len(pos) < 2:
        return []
    return [pos[i + 1] - pos[i] for i in range(len(pos) - 1)] + [length - pos[-1] + pos[0]]


def good_threshold(length: int) -> int:
    return length // 2 if length % 2 == 0 else length // 2 - 1


def bad_threshold(length: int) -> int:
    return length // 2 - 1 if length % 2 == 0 else length // 2


@dataclass
class CycleRecord:
    vertices: list[int]
    length: int
    cut_vertices: list[int]
    gaps: list[int]
    d_c: int | None = None
    is_end_block: bool = False
    is_good: bool = False
    is_bad: bool = False

    @property
    def is_strictly_good(self) -> bool:
        return self.is_good and not self.is_bad

    def good(self, strict: bool = False) -> bool:
        return self.is_strictly_good if strict else self.is_good

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def cycle_record(vertices: list[int], cut_vertices: set[int] | frozenset[int]) -> CycleRecord:
    """Record for a cycle given in cyclic order, with flags already classified."""
    positions = [i for i, v in enumerate(vertices) if v in cut_vertices]
    rec = CycleRecord(
        vertices=list(vertices),
        length=len(vertices),
        cut_vertices=[vertices[i] for i in positions],
        gaps=arc_gaps(len(vertices), positions),
    )
    if len(positions) >= 2:
        rec.d_c = cut_path_distance(rec)
    return classify_cycle(rec)


def cut_path_distance(rec: CycleRecord) -> int:
    if len(rec.cut_vertices) < 2:
        raise FewerThanTwoCuts(f"cycle has {len(rec.cut_vertices)} cut vertices")
    return rec.length - max(rec.gaps)


def classify_cycle(rec: CycleRecord) -> CycleRecord:
    """Set the end-block, good and bad flags; good and bad are decided separately."""
    rec.is_end_block = len(rec.cut_vertices) <= 1
    if rec.is_end_block:
        rec.is_good, rec.is_bad = True, False
        return rec
    dc = rec.d_c if rec.d_c is not None else cut_path_distance(rec)
    rec.d_c = dc
    rec.is_good = dc <= good_threshold(rec.length)
    rec.is_bad = dc >= bad_threshold(rec.length)
    return rec


def two_core(g: Graph) -> frozenset[int]:
    """Vertices left after repeatedly deleting degree-1 vertices."""
    deg = g.degrees()
    alive = [True] * g.vertex_count
    stack = [v for v in range(g.vertex_count) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return frozenset(v for v in range(g.vertex_count) if alive[v])


def pendant_tree_decomposition(
    g: Graph, p: BlockDecomposition | None = None
) -> list[tuple[int, frozenset[int]]]:
    """Pendant trees as ``(root, vertex set including root)``, sorted by root.

    In a cactus with a cycle, the 2-core is exactly the union of cycles and
    cyclic paths; everything outside it hangs from a single core vertex.
    """
    p = p or block_decomposition(g)
    if not p.blocks_of(BlockKind.CYCLE):
        raise NoCycle("pendant trees need at least one cycle")
    core = two_core(g)
    trees = []
    for root in sorted(core):
        seen = {root}
        frontier = [w for w in g.adjacency[root] if w not in core]
        if not frontier:
            continue
        seen.update(frontier)
        while frontier:
            v = frontier.pop()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        trees.append((root, frozenset(seen)))
    return trees


@dataclass
class CactusProfile:
    n: int
    m: int
    k: int
    t: int
    k1_odd: int
    cycles: list[CycleRecord]
    pendant_trees: list[tuple[int, frozenset[int]]]
    is_chain: bool
    decomposition: BlockDecomposition = field(repr=False)

    def all_good(self, strict: bool = False) -> bool:
        return all(c.good(strict) for c in self.cycles)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "t": self.t,
            "k1_odd": self.k1_odd,
            "is_chain": self.is_chain,
            "cycles": [c.to_dict() for c in self.cycles],
            "pendant_trees": [{"root": r, "vertices": sorted(vs)} for r, vs in self.pendant_trees],
        }


def cactus_profile(g: Graph) -> CactusProfile:
    if not is_connected(g):
        raise NotACactus("graph is not connected")
    dec = block_decomposition(g)
    if any(b.kind is BlockKind.OTHER for b in dec.blocks):
        raise NotACactus("a block is neither an edge nor a cycle")
    cycles = [cycle_record(_cyclic_order(b), dec.cut_vertices) for b in dec.blocks_of(BlockKind.CYCLE)]
    t = sum(1 for d in g.degrees() if d == 1)
    pendant = pendant_tree_decomposition(g, dec) if cycles else []

    per_vertex: dict[int, int] = {}
    chain = True
    for b in dec.blocks:
        inside = [v for v in b.vertices if v in dec.cut_vertices]
        chain = chain and len(inside) <= 2
        for v in inside:
            per_vertex[v] = per_vertex.get(v, 0) + 1
    chain = chain and all(c == 2 for c in per_vertex.values())

    return CactusProfile(
        n=g.vertex_count,
        m=g.edge_count,
        k=len(cycles),
        t=t,
        k1_odd=sum(1 for c in cycles if c.length % 2 == 1),
        cycles=cycles,
        pendant_trees=pendant,
        is_chain=chain,
        decomposition=dec,
    )


def is_b0_shape(g: Graph) -> bool:
    """Triangles and pendant edges all meeting at one hub vertex."""
    if not is_cactus(g) or g.vertex_count < 2:
        return False
    dec = block_decomposition(g)
    ok_blocks = all(b.kind is BlockKind.BRIDGE or len(b.vertices) == 3 for b in dec.blocks)
    common = set(dec.blocks[0].vertices)
    for b in dec.blocks[1:]:
        common &= set(b.vertices)
    return ok_blocks and bool(common)


def tree_gp(g: Graph) -> GpCertificate:
    """gp of a tree: its leaves."""
    if not is_connected(g) or g.edge_count != g.vertex_count - 1:
        raise HasCycle("graph is not a tree")
    if g.vertex_count == 1:
        return GpCertificate(1, frozenset({0}), Method.CLOSED_FORM, "tree", note="single-vertex convention")
    leaves = frozenset(v for v in range(g.vertex_count) if g.degree(v) == 1)
    return GpCertificate(len(leaves), leaves, Method.CLOSED_FORM, "tree")


def cycle_gp(n: int) -> int:
    if n < 3:
        raise InvalidCycle(f"cycle needs at least 3 vertices, got {n}")
    return 2 if n == 4 else 3


def wheel_gp(n: int) -> int:
    """gp of the wheel with ``n`` rim vertices (``n + 1`` vertices overall)."""
    if n < 3:
        raise InvalidWheel(f"wheel rim needs at least 3 vertices, got {n}")
    if n == 3:
        return 4
    if n in (4, 5):
        return 3
    return 2 * n // 3


BOUND_SOURCES = {
    "lower_t": "pendant vertices are in general position",
    "lower_no_pendant": "odd-cycle lower bound for pendant-free cacti",
    "upper_2k_t": "at most two per cycle plus pendant leaves",
    "upper_n_minus_1": "order bound for cacti",
}


@dataclass(frozen=True)
class BoundReport:
    lower_t: int
    lower_no_pendant: int | None
    upper_2k_t: int
    upper_n_minus_1: int
    predicted_exact: int | None
    predicted_source: str | None = None

    def lowers(self) -> list[int]:
        return [x for x in (self.lower_t, self.lower_no_pendant) if x is not None]

    def uppers(self) -> list[int]:
        return [self.upper_2k_t, self.upper_n_minus_1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "lower_t": self.lower_t,
            "lower_no_pendant": self.lower_no_pendant,
            "upper_2k_t": self.upper_2k_t,
            "upper_n_minus_1": self.upper_n_minus_1,
            "predicted_exact": self.predicted_exact,
            "predicted_source": self.predicted_source,
            "sources": dict(BOUND_SOURCES),
        }


def bound_report(p: CactusProfile, strict: bool = False) -> BoundReport:
    """Bounds and, when one applies, a predicted exact value for a cactus.

    ``strict`` counts a cycle as good only when it is good and not bad.
    """
    predicted, source = None, None
    if p.k == 0:
        predicted, source = (1 if p.n == 1 else p.t), "tree"
    elif p.k == 1 and p.t == 0:
        predicted, source = cycle_gp(p.n), "cycle"
    elif p.all_good(strict) and (p.k >= 2 or p.t >= 2):
        predicted, source = 2 * p.k + p.t, "all-good-cycles"
    return BoundReport(
        lower_t=p.t,
        lower_no_pendant=max(4, p.k1_odd + 2) if p.t == 0 and p.k >= 2 else None,
        upper_2k_t=max(3, 2 * p.k + p.t),
        upper_n_minus_1=max(3, p.n - 1),
        predicted_exact=predicted,
        predicted_source=source,
    )
