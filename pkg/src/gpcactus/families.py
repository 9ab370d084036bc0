"""Deterministic generators for the graph families used by tests and audits.

Random families draw from :class:`random.Random` (MT19937) seeded with the
``FamilySpec`` seed, so a spec always rebuilds the same edge list.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from typing import Any, Sequence

from gpcactus.graph import Graph, build_graph


class Infeasible(ValueError):
    def __init__(self, n: int, k: int, t: int, why: str) -> None:
        super().__init__(f"no cactus with n={n}, k={k}, t={t}: {why}")
        self.n, self.k, self.t = n, k, t


class Family(str, enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    RANDOM_TREE = "random-tree"
    WHEEL = "wheel"
    B0 = "b0"
    BOUQUET = "bouquet"
    CHAIN_CACTUS = "chain-cactus"
    RANDOM_CACTUS = "random-cactus"


RANDOM_FAMILIES = {Family.RANDOM_TREE, Family.RANDOM_CACTUS}


def gen_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_star(leaves: int) -> Graph:
    """Hub 0 joined to leaves ``1..leaves``."""
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gen_wheel(n: int) -> Graph:
    """Rim ``0..n-1`` in cyclic order, center ``n``."""
    if n < 3:
        raise ValueError("wheel rim needs at least three vertices")
    rim = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(n + 1, rim + [(i, n) for i in range(n)])


def gen_B0(k: int, p: int) -> Graph:
    """``k`` triangles and ``p`` pendant edges sharing hub 0."""
    if k < 1 or p < 0:
        raise ValueError("B0 needs k >= 1 and p >= 0")
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (a, b), (b, 0)]
    first_leaf = 2 * k + 1
    edges += [(0, first_leaf + j) for j in range(p)]
    return build_graph(2 * k + p + 1, edges)


def gen_bouquet(cycle_lengths: Sequence[int], pendant_count: int) -> Graph:
    """Cycles and pendant edges all passing through hub 0."""
    if any(length < 3 for length in cycle_lengths) or pendant_count < 0:
        raise ValueError("cycle lengths must be >= 3 and pendant count >= 0")
    edges = []
    nxt = 1
    for length in cycle_lengths:
        ring = [0] + list(range(nxt, nxt + length - 1))
        nxt += length - 1
        edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
    edges += [(0, nxt + j) for j in range(pendant_count)]
    return build_graph(nxt + pendant_count, edges)


def gen_chain_cactus(cycle_lengths: Sequence[int], cut_offsets: Sequence[int]) -> Graph:
    """Cycles glued in a row, each sharing one vertex with the next.

    ``cut_offsets[i]`` is the distance along internal cycle ``i + 1`` between
    the vertex shared with its predecessor and the one shared with its
    successor; it must lie in ``[1, floor(l/2)]``.
    """
    lengths = list(cycle_lengths)
    offsets = list(cut_offsets)
    if len(lengths) < 2:
        raise ValueError("a chain needs at least two cycles")
    if any(length < 3 for length in lengths):
        raise ValueError("cycle lengths must be >= 3")
    if len(offsets) != len(lengths) - 2:
        raise ValueError(f"expected {len(lengths) - 2} offsets, got {len(offsets)}")
    for length, off in zip(lengths[1:-1], offsets):
        if not 1 <= off <= length // 2:
            raise ValueError(f"offset {off} outside [1, {length // 2}] for a {length}-cycle")

    edges = []
    ring = list(range(lengths[0]))
    edges += [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    exit_vertex = 0
    nxt = lengths[0]
    for idx, length in enumerate(lengths[1:], start=1):
        ring = [exit_vertex] + list(range(nxt, nxt + length - 1))
        nxt += length - 1
        edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
        if idx < len(lengths) - 1:
            exit_vertex = ring[offsets[idx - 1]]
    return build_graph(nxt, edges)


def gen_random_tree(n: int, seed: int) -> Graph:
    """Random recursive tree: vertex ``i`` attaches to a uniform earlier vertex."""
    if n < 1:
        raise ValueError("tree needs at least one vertex")
    rng = random.Random(seed)
    return build_graph(n, [(rng.randrange(i), i) for i in range(1, n)])


def _feasibility(n: int, k: int, t: int) -> str | None:
    if k < 0 or t < 0:
        return "negative counts"
    if k == 0:
        if n == 1:
            return None if t == 0 else "a single vertex has no pendant edges"
        if n == 2:
            return None if t == 2 else "K2 has exactly two leaves"
        if t < 2:
            return "a tree on n >= 2 vertices has at least two leaves"
        return None if n >= t + 1 else "too few vertices for that many leaves"
    if n < 2 * k + 1 + t:
        return f"needs n >= 2k+t+1 = {2 * k + 1 + t}"
    return None


def gen_random_cactus(n: int, k: int, t: int, seed: int) -> Graph:
    """A connected cactus with exactly ``k`` cycles and ``t`` degree-1 vertices.

    Cycles are grown first as triangles, glued at a shared vertex or through
    a fresh bridge. Pendant vertices then go on random non-leaf vertices, and
    random edges are subdivided until there are ``n`` vertices. Subdivision
    keeps every degree, so ``k`` and ``t`` are exact by construction.
    """
    why = _feasibility(n, k, t)
    if why:
        raise Infeasible(n, k, t, why)
    rng = random.Random(seed)
    edges: list[list[int]] = []
    count = 0

    def new_vertex() -> int:
        nonlocal count
        count += 1
        return count - 1

    if k == 0:
        if n <= 2:
            return build_graph(n, [(0, 1)] if n == 2 else [])
        # P3 supplies the first two leaves
        for _ in range(3):
            new_vertex()
        edges += [[0, 1], [1, 2]]
    else:
        spare = n - (2 * k + 1 + t)
        for i in range(k):
            if i == 0:
                anchor = new_vertex()
            else:
                anchor = rng.randrange(count)
                if spare > 0 and rng.random() < 1 / 3:
                    hop = new_vertex()
                    edges.append([anchor, hop])
                    anchor = hop
                    spare -= 1
            x, y = new_vertex(), new_vertex()
            edges += [[anchor, x], [x, y], [y, anchor]]

    base_leaves = 2 if k == 0 else 0
    deg = [0] * count
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for _ in range(t - base_leaves):
        inner = [v for v in range(count) if deg[v] >= 2]
        host = rng.choice(inner)
        leaf = new_vertex()
        deg.append(1)
        deg[host] += 1
        edges.append([host, leaf])

    while count < n:
        i = rng.randrange(len(edges))
        u, v = edges[i]
        mid = new_vertex()
        edges[i] = [u, mid]
        edges.append([mid, v])
    return build_graph(n, [tuple(e) for e in edges])


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        if self.family in RANDOM_FAMILIES and self.seed is None:
            object.__setattr__(self, "seed", 0)

    def build(self) -> Graph:
        return generate(self)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family.value, "params": list(self.params)}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FamilySpec:
        return cls(Family(data["family"]), tuple(data.get("params", ())), data.get("seed"))

    @classmethod
    def from_json(cls, text: str) -> FamilySpec:
        return cls.from_dict(json.loads(text))


def _expect(spec: FamilySpec, count: int) -> tuple[int, ...]:
    if len(spec.params) != count:
        raise ValueError(f"{spec.family.value} takes {count} parameter(s), got {len(spec.params)}")
    return spec.params


def generate(spec: FamilySpec) -> Graph:
    """Build the graph a spec describes.

    Parameter layouts: ``path/cycle/wheel [n]``, ``star [leaves]``,
    ``b0 [k, p]``, ``random-tree [n]``, ``random-cactus [n, k, t]``,
    ``bouquet [l1, ..., lk, pendants]`` and
    ``chain-cactus [l1, ..., lr, o1, ..., o(r-2)]``.
    """
    fam, ps = spec.family, spec.params
    if fam is Family.PATH:
        return gen_path(*_expect(spec, 1))
    if fam is Family.CYCLE:
        return gen_cycle(*_expect(spec, 1))
    if fam is Family.STAR:
        return gen_star(*_expect(spec, 1))
    if fam is Family.WHEEL:
        return gen_wheel(*_expect(spec, 1))
    if fam is Family.B0:
        return gen_B0(*_expect(spec, 2))
    if fam is Family.RANDOM_TREE:
        return gen_random_tree(*_expect(spec, 1), seed=spec.seed)
    if fam is Family.RANDOM_CACTUS:
        n, k, t = _expect(spec, 3)
        return gen_random_cactus(n, k, t, seed=spec.seed)
    if fam is Family.BOUQUET:
        if not ps:
            raise ValueError("bouquet needs at least the pendant count")
        return gen_bouquet(ps[:-1], ps[-1])
    if fam is Family.CHAIN_CACTUS:
        if len(ps) < 2 or len(ps) % 2:
            raise ValueError("chain-cactus takes r lengths then r-2 offsets (an even count >= 2)")
        r = (len(ps) + 2) // 2
        return gen_chain_cactus(ps[:r], ps[r:])
    raise ValueError(f"unknown family {fam}")  # pragma: no cover
