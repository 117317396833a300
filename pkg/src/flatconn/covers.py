"""Covering complexes: construction from coset automata and verification.

A covering built from a coset automaton has vertex set (state, base vertex);
tree edges stay within a sheet, and the generator for a non-tree edge moves
sheets by the automaton transition.  Every cover carries an explicit base
lift, the vertex (state 0, basepoint), and all subgroup extraction is
basepointed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .complexes import (
    BaseComplex,
    Edge,
    EdgeWord,
    SpanningTreeData,
    spanning_tree,
    validate_complex,
)
from .errors import ComplexError, IncidenceError, IncompleteAutomatonError
from .subgroups import CosetAutomaton


@dataclass(frozen=True, eq=False)
class ComplexMap:
    """A vertex/edge map between complexes.

    ``vertex_map`` is indexed by source vertex; ``edge_map`` sends source
    edge ids to target edge ids.  Orientation is preserved (a map never
    flips an edge); incidence is checked by :func:`check_incidence`.
    """

    source: BaseComplex
    target: BaseComplex
    vertex_map: tuple
    edge_map: Mapping[int, int]

    def __post_init__(self):
        if len(self.vertex_map) != self.source.vertex_count:
            raise ValueError("vertex map must cover every source vertex")
        for v in self.vertex_map:
            if not 0 <= v < self.target.vertex_count:
                raise ValueError(f"vertex image {v} out of range")
        for e in self.source.edges:
            if e.id not in self.edge_map:
                raise ValueError(f"edge map missing source edge {e.id}")
        for eid, tid in self.edge_map.items():
            self.source.edge(eid)
            self.target.edge(tid)
        object.__setattr__(self, "edge_map", dict(self.edge_map))

    def map_vertex(self, v: int) -> int:
        return self.vertex_map[v]

    def map_step(self, step: tuple[int, int]) -> tuple[int, int]:
        eid, sign = step
        return (self.edge_map[eid], sign)

    def map_word(self, w: EdgeWord) -> EdgeWord:
        return tuple(self.map_step(s) for s in w)


def check_incidence(m: ComplexMap) -> None:
    """Raise IncidenceError unless the map respects tails and heads."""
    for e in m.source.edges:
        img = m.target.edge(m.edge_map[e.id])
        if m.vertex_map[e.tail] != img.tail or m.vertex_map[e.head] != img.head:
            raise IncidenceError(
                f"edge {e.id} -> {img.id} does not respect incidences: "
                f"({m.vertex_map[e.tail]}, {m.vertex_map[e.head]}) vs ({img.tail}, {img.head})"
            )


def compose_complex_maps(f: ComplexMap, g: ComplexMap) -> ComplexMap:
    """g after f; requires f.target is g.source."""
    if f.target is not g.source:
        raise ValueError("maps do not compose: target/source mismatch")
    return ComplexMap(
        source=f.source,
        target=g.target,
        vertex_map=tuple(g.vertex_map[v] for v in f.vertex_map),
        edge_map={eid: g.edge_map[t] for eid, t in f.edge_map.items()},
    )


def is_covering_map(m: ComplexMap) -> bool:
    """Star bijectivity at every source vertex (loops count twice).

    Incidence violations raise; a failed bijection returns False.
    """
    check_incidence(m)
    for v in range(m.source.vertex_count):
        image_star = m.target.star(m.vertex_map[v])
        mapped = [m.map_step(end) for end in m.source.star(v)]
        if len(mapped) != len(set(mapped)):
            return False
        if sorted(mapped) != sorted(image_star):
            return False
    return True


def covering_degree(m: ComplexMap) -> int:
    """Number of sheets; fiber sizes are uniform over a connected target."""
    fiber = [v for v in range(m.source.vertex_count) if m.vertex_map[v] == m.target.basepoint]
    return len(fiber)


def _end_index(m: ComplexMap) -> list[dict]:
    """Per source vertex: (target edge id, sign) -> source edge id."""
    idx: list[dict] = [dict() for _ in range(m.source.vertex_count)]
    for e in m.source.edges:
        idx[e.tail][(m.edge_map[e.id], 1)] = e.id
        idx[e.head][(m.edge_map[e.id], -1)] = e.id
    return idx


def lift_path(m: ComplexMap, w: EdgeWord, start: int, end_index: Optional[list] = None) -> EdgeWord:
    """The unique lift of a target path starting at a given source vertex."""
    if end_index is None:
        end_index = _end_index(m)
    cur = start
    lifted = []
    for eid, sign in w:
        key = (eid, sign)
        try:
            src_edge = end_index[cur][key]
        except KeyError:
            raise ComplexError(
                f"no lift of edge {eid} (sign {sign}) at source vertex {cur}"
            ) from None
        lifted.append((src_edge, sign))
        frm, to = m.source.step_endpoints((src_edge, sign))
        cur = to
    return tuple(lifted)


def path_end(c: BaseComplex, w: EdgeWord, start: int) -> int:
    return c.path_vertices(w, start=start)[-1]


@dataclass(frozen=True, eq=False)
class CoveringComplex:
    """A covering of a base complex built from a coset automaton."""

    base: BaseComplex
    automaton: CosetAutomaton
    tree: SpanningTreeData
    total: BaseComplex
    vertex_to_base: tuple
    edge_to_base: Mapping[int, int]
    base_lift: int

    @property
    def degree(self) -> int:
        return self.automaton.state_count

    def projection(self) -> ComplexMap:
        return ComplexMap(
            source=self.total,
            target=self.base,
            vertex_map=self.vertex_to_base,
            edge_map=dict(self.edge_to_base),
        )

    def vertex_index(self, state: int, v: int) -> int:
        return state * self.base.vertex_count + v

    def vertex_pair(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.base.vertex_count)

    def subgroup_automaton(self) -> CosetAutomaton:
        return subgroup_of_cover(self.projection(), self.base_lift, self.tree)


def build_cover(
    c: BaseComplex,
    a: CosetAutomaton,
    tree: Optional[SpanningTreeData] = None,
) -> CoveringComplex:
    """Assemble the covering complex of a complete coset automaton.

    Relators are traced from every state and must close up (automatic for
    enumeration output, validated for everything else); they are installed
    on the total space as lifted relators.
    """
    if not a.complete:
        raise IncompleteAutomatonError("covering construction requires a complete automaton")
    validate_complex(c)
    if tree is None:
        tree = spanning_tree(c)
    if len(tree.generators) != a.rank:
        raise ValueError("automaton alphabet does not match the non-tree generators")
    gen_index = {eid: i for i, eid in enumerate(tree.generators)}
    n_states = a.state_count
    V, E = c.vertex_count, len(c.edges)

    def fwd_state(eid: int, s: int) -> int:
        g = gen_index.get(eid)
        return s if g is None else a.forward[g][s]

    def bwd_state(eid: int, s: int) -> int:
        g = gen_index.get(eid)
        return s if g is None else a.backward[g][s]

    edges = []
    edge_to_base = {}
    for s in range(n_states):
        for pos, e in enumerate(c.edges):
            lifted_id = s * E + pos
            tail = s * V + e.tail
            head = fwd_state(e.id, s) * V + e.head
            edges.append(Edge(lifted_id, tail, head))
            edge_to_base[lifted_id] = e.id

    lifted_relators = []
    for k, rel in enumerate(c.relators):
        if not rel:
            continue
        start_vertex = c.path_vertices(rel)[0]
        for s in range(n_states):
            cur = s
            steps = []
            for eid, sign in rel:
                pos = c.edge_pos(eid)
                if sign > 0:
                    steps.append((cur * E + pos, 1))
                    cur = fwd_state(eid, cur)
                else:
                    src = bwd_state(eid, cur)
                    steps.append((src * E + pos, -1))
                    cur = src
            if cur != s:
                raise ComplexError(
                    f"relator {k} does not close over state {s}; "
                    "the automaton is not compatible with the relators"
                )
            lifted_relators.append(tuple(steps))

    total = BaseComplex(
        vertex_count=n_states * V,
        edges=edges,
        basepoint=c.basepoint,  # vertex (state 0, basepoint) has index basepoint
        relators=lifted_relators,
    )
    validate_complex(total)
    vertex_to_base = tuple(idx % V for idx in range(n_states * V))
    return CoveringComplex(
        base=c,
        automaton=a,
        tree=tree,
        total=total,
        vertex_to_base=vertex_to_base,
        edge_to_base=edge_to_base,
        base_lift=c.basepoint,
    )


def subgroup_of_cover(
    m: ComplexMap,
    base_lift: int,
    tree: SpanningTreeData,
) -> CosetAutomaton:
    """The subgroup of base loops whose lift at the base lift is closed.

    States are the fiber vertices reachable from the base lift by lifting
    generator loops; the transition for generator g is the endpoint of the
    lift of its loop.  For a connected total space this is the whole fiber.
    """
    if not is_covering_map(m):
        raise IncidenceError("subgroup extraction requires a covering map")
    base = m.target
    if m.vertex_map[base_lift] != base.basepoint:
        raise ValueError("base lift does not sit over the basepoint")
    end_index = _end_index(m)
    loops = []
    for eid in tree.generators:
        e = base.edge(eid)
        loops.append(tree.path_from_base(e.tail) + ((eid, 1),) + tree.path_to_base(e.head))

    rank = len(loops)
    index = {base_lift: 0}
    order = [base_lift]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for loop in loops:
            lifted = lift_path(m, loop, x, end_index)
            y = path_end(m.source, lifted, x)
            if y not in index:
                index[y] = len(order)
                order.append(y)
    n = len(order)
    forward = [[None] * n for _ in range(rank)]
    backward = [[None] * n for _ in range(rank)]
    for i, x in enumerate(order):
        for g, loop in enumerate(loops):
            y = path_end(m.source, lift_path(m, loop, x, end_index), x)
            forward[g][i] = index[y]
    for g in range(rank):
        for i in range(n):
            backward[g][forward[g][i]] = i
    return CosetAutomaton(rank, forward, backward)
