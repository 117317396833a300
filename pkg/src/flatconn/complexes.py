"""Finite 2-complexes with basepoint: edges, relators, spanning trees, loops.

A complex is a directed multigraph plus a list of relator paths (the 2-cells).
Edges are oriented once; traversing an edge against its orientation is a
sign, not a second edge.  An edge path is a word of (edge id, sign) steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ComplexError
from .words import Word, invert_word, reduce_word

EdgeWord = Word


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int


class BaseComplex:
    """A finite directed multigraph with basepoint and relator paths.

    Construction checks referential integrity only; connectivity and relator
    closure are enforced by :func:`validate_complex` so that malformed inputs
    can be built and then rejected with a precise error.
    """

    __slots__ = ("vertex_count", "edges", "basepoint", "relators", "_by_id", "_pos", "_validated")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Edge],
        basepoint: int = 0,
        relators: Iterable[EdgeWord] = (),
    ):
        if vertex_count < 1:
            raise ComplexError("vertex count must be positive")
        edge_list = sorted(edges, key=lambda e: e.id)
        by_id = {}
        for e in edge_list:
            if e.id in by_id:
                raise ComplexError(f"duplicate edge id {e.id}")
            if not (0 <= e.tail < vertex_count and 0 <= e.head < vertex_count):
                raise ComplexError(f"edge {e.id} references a vertex out of range")
            by_id[e.id] = e
        if not 0 <= basepoint < vertex_count:
            raise ComplexError(f"basepoint {basepoint} out of range")
        rel = []
        for k, w in enumerate(relators):
            for eid, sign in w:
                if eid not in by_id:
                    raise ComplexError(f"relator {k} references unknown edge {eid}")
                if sign not in (1, -1):
                    raise ComplexError(f"relator {k} has invalid sign {sign}")
            rel.append(tuple(w))
        self.vertex_count = vertex_count
        self.edges = tuple(edge_list)
        self.basepoint = basepoint
        self.relators = tuple(rel)
        self._by_id = by_id
        self._pos = {e.id: i for i, e in enumerate(self.edges)}
        self._validated = False

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def free_rank(self) -> int:
        """E - V + 1: the rank of the fundamental group before relators."""
        return len(self.edges) - self.vertex_count + 1

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise ComplexError(f"unknown edge id {eid}") from None

    def edge_pos(self, eid: int) -> int:
        """Position of an edge in the ascending-id ordering."""
        try:
            return self._pos[eid]
        except KeyError:
            raise ComplexError(f"unknown edge id {eid}") from None

    def step_endpoints(self, step: tuple[int, int]) -> tuple[int, int]:
        """(from, to) vertices of a signed step."""
        eid, sign = step
        e = self.edge(eid)
        return (e.tail, e.head) if sign > 0 else (e.head, e.tail)

    def star(self, v: int) -> list[tuple[int, int]]:
        """Edge-ends at a vertex: (edge id, +1) for outgoing, (edge id, -1)
        for incoming; a loop contributes both ends."""
        out = []
        for e in self.edges:
            if e.tail == v:
                out.append((e.id, 1))
            if e.head == v:
                out.append((e.id, -1))
        return out

    def path_vertices(self, w: EdgeWord, start: Optional[int] = None) -> list[int]:
        """Vertex itinerary of an edge word; raises if steps do not chain."""
        if not w:
            if start is None:
                start = self.basepoint
            return [start]
        first_from, _ = self.step_endpoints(w[0])
        if start is not None and start != first_from:
            raise ComplexError(f"path starts at vertex {first_from}, expected {start}")
        verts = [first_from]
        cur = first_from
        for step in w:
            frm, to = self.step_endpoints(step)
            if frm != cur:
                raise ComplexError(f"steps do not compose as a path at vertex {cur}")
            cur = to
            verts.append(cur)
        return verts

    def is_closed_at(self, w: EdgeWord, v: int) -> bool:
        verts = self.path_vertices(w, start=None)
        return verts[0] == v and verts[-1] == v

    def __repr__(self) -> str:
        return (
            f"BaseComplex(V={self.vertex_count}, E={len(self.edges)}, "
            f"relators={len(self.relators)})"
        )


def validate_complex(c: BaseComplex) -> BaseComplex:
    """Check connectivity and relator closure; returns the same complex."""
    if c._validated:
        return c
    reached = {c.basepoint}
    frontier = [c.basepoint]
    neighbors: dict[int, list[int]] = {}
    for e in c.edges:
        neighbors.setdefault(e.tail, []).append(e.head)
        neighbors.setdefault(e.head, []).append(e.tail)
    while frontier:
        v = frontier.pop()
        for u in neighbors.get(v, ()):
            if u not in reached:
                reached.add(u)
                frontier.append(u)
    if len(reached) != c.vertex_count:
        missing = sorted(set(range(c.vertex_count)) - reached)
        raise ComplexError(f"graph is disconnected; unreachable vertices {missing}")
    for k, w in enumerate(c.relators):
        verts = c.path_vertices(w)
        if verts[0] != verts[-1]:
            raise ComplexError(f"relator {k} is not a closed path ({verts[0]} != {verts[-1]})")
    c._validated = True
    return c


def graph_diameter(c: BaseComplex) -> int:
    """Diameter of the underlying undirected graph (validated, connected)."""
    validate_complex(c)
    neighbors: dict[int, set] = {v: set() for v in range(c.vertex_count)}
    for e in c.edges:
        neighbors[e.tail].add(e.head)
        neighbors[e.head].add(e.tail)
    diameter = 0
    for start in range(c.vertex_count):
        dist = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for u in neighbors[v]:
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        nxt.append(u)
            frontier = nxt
        diameter = max(diameter, max(dist.values()))
    return diameter


@dataclass(frozen=True)
class SpanningTreeData:
    """Breadth-first spanning tree rooted at the basepoint.

    ``parent[v]`` is the signed step taken from the parent of v into v (None
    at the root).  ``generators`` lists the non-tree edge ids in ascending
    order; they index the fundamental-group generators everywhere else.
    """

    complex: BaseComplex
    tree_edges: frozenset
    parent: tuple
    order: tuple
    generators: tuple

    def generator_index(self, eid: int) -> int:
        return self.generators.index(eid)

    def path_from_base(self, v: int) -> EdgeWord:
        """The unique reduced tree path basepoint -> v."""
        steps = []
        cur = v
        while self.parent[cur] is not None:
            step = self.parent[cur]
            steps.append(step)
            frm, _ = self.complex.step_endpoints(step)
            cur = frm
        return tuple(reversed(steps))

    def path_to_base(self, v: int) -> EdgeWord:
        return invert_word(self.path_from_base(v))


def spanning_tree(c: BaseComplex) -> SpanningTreeData:
    """Deterministic BFS tree: edges explored in ascending id, forward
    orientation before reverse."""
    validate_complex(c)
    base = c.basepoint
    parent: list = [None] * c.vertex_count
    visited = [False] * c.vertex_count
    visited[base] = True
    order = [base]
    tree = set()
    queue = [base]
    while queue:
        v = queue.pop(0)
        for e in c.edges:
            if e.tail == v and not visited[e.head]:
                visited[e.head] = True
                parent[e.head] = (e.id, 1)
                tree.add(e.id)
                order.append(e.head)
                queue.append(e.head)
            if e.head == v and not visited[e.tail]:
                visited[e.tail] = True
                parent[e.tail] = (e.id, -1)
                tree.add(e.id)
                order.append(e.tail)
                queue.append(e.tail)
    generators = tuple(e.id for e in c.edges if e.id not in tree)
    return SpanningTreeData(
        complex=c,
        tree_edges=frozenset(tree),
        parent=tuple(parent),
        order=tuple(order),
        generators=generators,
    )


def loop_to_generator_word(c: BaseComplex, t: SpanningTreeData, w: EdgeWord) -> Word:
    """Rewrite a loop at the basepoint as a reduced word in the non-tree
    edge generators; tree edges contribute nothing."""
    verts = c.path_vertices(w)
    if verts[0] != c.basepoint or verts[-1] != c.basepoint:
        raise ComplexError("word is not a closed path at the basepoint")
    letters = []
    gen_index = {eid: i for i, eid in enumerate(t.generators)}
    for eid, sign in w:
        if eid in gen_index:
            letters.append((gen_index[eid], sign))
    return reduce_word(tuple(letters))


@dataclass(frozen=True)
class Presentation:
    """Fundamental-group presentation: free generators from non-tree edges,
    relators rewritten through the tree."""

    generators: tuple  # non-tree edge ids, ascending
    relators: tuple  # reduced words over generator indices

    @property
    def rank(self) -> int:
        return len(self.generators)


def pi1_presentation(c: BaseComplex, t: SpanningTreeData) -> Presentation:
    """Present the fundamental group at the basepoint.

    Each relator is conjugated to the basepoint along tree paths before
    rewriting; tree letters vanish, so the rewriting is the non-tree letter
    sequence, freely reduced.
    """
    validate_complex(c)
    rel_words = []
    for w in c.relators:
        if not w:
            continue
        start = c.path_vertices(w)[0]
        conjugated = t.path_from_base(start) + tuple(w) + t.path_to_base(start)
        rw = loop_to_generator_word(c, t, conjugated)
        rel_words.append(rw)
    return Presentation(generators=t.generators, relators=tuple(rel_words))
