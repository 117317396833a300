"""Derived graphs of voltage assignments: discrete principal bundles.

The total space of a flat voltage has vertex set (base vertex, group
element) and, for every base edge e and element g, one lifted edge from
(tail e, g) to (head e, g * w(e)).  Left translation by any group element is
then a graph automorphism commuting with the projection, which is the
structure-group action.  The connected component of the basepoint lift is
the holonomy bundle: its fiber over the basepoint is exactly the holonomy
group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .complexes import BaseComplex, Edge, validate_complex
from .connections import Voltage, check_flatness
from .covers import ComplexMap, CoveringComplex, is_covering_map
from .errors import FlatnessError
from .groups import GroupTable


@dataclass(frozen=True, eq=False)
class DerivedBundle:
    """Total space of a voltage assignment, with component decomposition.

    Vertex (v, g) has index v * |G| + g and the lift of base edge position p
    at element g has id p * |G| + g, so components, numbered by minimal
    vertex, follow (vertex, element) lexicographic order.  The graph is not
    necessarily connected: there are [|G| : |Hol|] components.
    """

    base: BaseComplex
    group: GroupTable
    voltage: Voltage
    graph: BaseComplex
    components: tuple
    component_of: tuple
    base_lift: int

    def vertex_index(self, v: int, g: int) -> int:
        return v * self.group.order + g

    def vertex_pair(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.group.order)

    def edge_pair(self, eid: int) -> tuple[int, int]:
        """(base edge position, group element) of a lifted edge id."""
        return divmod(eid, self.group.order)

    def projection(self) -> ComplexMap:
        n = self.group.order
        vertex_map = tuple(idx // n for idx in range(self.graph.vertex_count))
        edge_map = {
            e.id: self.base.edges[e.id // n].id for e in self.graph.edges
        }
        return ComplexMap(
            source=self.graph, target=self.base, vertex_map=vertex_map, edge_map=edge_map
        )

    def left_translation(self, g: int) -> tuple:
        """Vertex permutation (v, x) -> (v, g * x); an automorphism over the base."""
        n = self.group.order
        mul = self.group.product
        return tuple(
            (idx // n) * n + mul[g][idx % n] for idx in range(self.graph.vertex_count)
        )


def derived_bundle(c: BaseComplex, g: GroupTable, v: Voltage) -> DerivedBundle:
    """Build the derived graph of a flat voltage and its components."""
    validate_complex(c)
    if v.complex is not c:
        raise ValueError("voltage is not defined on the given complex")
    if v.group is not g:
        raise ValueError("voltage takes values in a different group")
    violations = check_flatness(v)
    if violations:
        raise FlatnessError(violations)
    n = g.order
    V = c.vertex_count
    mul = g.product
    edges = []
    for pos, e in enumerate(c.edges):
        w = v.on_edge(e.id)
        for x in range(n):
            edges.append(
                Edge(pos * n + x, e.tail * n + x, e.head * n + mul[x][w])
            )
    graph = BaseComplex(
        vertex_count=V * n,
        edges=edges,
        basepoint=c.basepoint * n,  # the lift (basepoint, identity)
        relators=(),
    )
    comp = _components(graph)
    groups: dict[int, list[int]] = {}
    for idx, cid in enumerate(comp):
        groups.setdefault(cid, []).append(idx)
    ordered = sorted(groups.values(), key=lambda verts: verts[0])
    relabel = {verts[0]: i for i, verts in enumerate(ordered)}
    component_of = tuple(relabel[groups[comp[idx]][0]] for idx in range(len(comp)))
    components = tuple(tuple(verts) for verts in ordered)
    return DerivedBundle(
        base=c,
        group=g,
        voltage=v,
        graph=graph,
        components=components,
        component_of=component_of,
        base_lift=c.basepoint * n,
    )


def _components(graph: BaseComplex) -> list[int]:
    """Connected components by union-find; roots are minimal vertices."""
    parent = list(range(graph.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges:
        a, b = find(e.tail), find(e.head)
        if a != b:
            if b < a:
                a, b = b, a
            parent[b] = a
    return [find(x) for x in range(graph.vertex_count)]


@dataclass(frozen=True, eq=False)
class ComponentComplex:
    """One component of a derived bundle, renumbered as its own complex."""

    bundle: DerivedBundle
    complex: BaseComplex
    projection: ComplexMap
    global_vertices: tuple
    global_edges: tuple
    vertex_local: dict

    def to_local_vertex(self, global_idx: int) -> int:
        return self.vertex_local[global_idx]


def component_complex(d: DerivedBundle, comp_index: int, basepoint: Optional[int] = None) -> ComponentComplex:
    """Extract a component as a connected complex with projection to the base."""
    verts = d.components[comp_index]
    local = {g: i for i, g in enumerate(verts)}
    n = d.group.order
    edges = []
    global_edges = []
    for e in d.graph.edges:
        if e.tail in local:
            edges.append(Edge(len(edges), local[e.tail], local[e.head]))
            global_edges.append(e.id)
    if basepoint is None:
        basepoint = verts[0]
    sub = BaseComplex(
        vertex_count=len(verts),
        edges=edges,
        basepoint=local[basepoint],
        relators=(),
    )
    validate_complex(sub)
    vertex_map = tuple(g // n for g in verts)
    edge_map = {
        i: d.base.edges[global_edges[i] // n].id for i in range(len(global_edges))
    }
    proj = ComplexMap(source=sub, target=d.base, vertex_map=vertex_map, edge_map=edge_map)
    return ComponentComplex(
        bundle=d,
        complex=sub,
        projection=proj,
        global_vertices=tuple(verts),
        global_edges=tuple(global_edges),
        vertex_local=local,
    )


@dataclass(frozen=True, eq=False)
class HolonomyBundle:
    """The component of the basepoint lift, as a based cover of the base."""

    bundle: DerivedBundle
    complex: BaseComplex
    projection: ComplexMap
    base_lift: int
    fiber_elements: tuple
    component: ComponentComplex

    @property
    def degree(self) -> int:
        return len(self.fiber_elements)


def holonomy_bundle(d: DerivedBundle) -> HolonomyBundle:
    """Extract the holonomy bundle: the basepoint-lift component.

    The fiber elements over the basepoint are returned in ascending order;
    they form the holonomy group of the voltage.  The restricted projection
    is verified to be a covering map.
    """
    comp_index = d.component_of[d.base_lift]
    part = component_complex(d, comp_index, basepoint=d.base_lift)
    if not is_covering_map(part.projection):
        raise AssertionError("holonomy bundle projection failed the covering check")
    n = d.group.order
    fiber = tuple(
        g for g in range(n) if d.component_of[d.base.basepoint * n + g] == comp_index
    )
    return HolonomyBundle(
        bundle=d,
        complex=part.complex,
        projection=part.projection,
        base_lift=part.to_local_vertex(d.base_lift),
        fiber_elements=fiber,
        component=part,
    )


def induced_bundle_map(
    upper: DerivedBundle,
    lower: DerivedBundle,
    cov: CoveringComplex,
) -> ComplexMap:
    """The bundle map over a covering: (v^, g) -> (q(v^), g) on vertices and
    likewise on lifted edges.  ``upper`` must be the derived bundle of the
    pulled-back voltage on ``cov.total`` and ``lower`` the bundle downstairs.
    """
    if upper.base is not cov.total or lower.base is not cov.base:
        raise ValueError("bundles do not sit over the given covering")
    if upper.group is not lower.group:
        raise ValueError("bundles carry different structure groups")
    n = upper.group.order
    vertex_map = []
    for idx in range(upper.graph.vertex_count):
        v_hat, g = divmod(idx, n)
        vertex_map.append(cov.vertex_to_base[v_hat] * n + g)
    edge_map = {}
    for e in upper.graph.edges:
        pos_hat, g = divmod(e.id, n)
        cover_edge = cov.total.edges[pos_hat].id
        base_edge = cov.edge_to_base[cover_edge]
        edge_map[e.id] = lower.base.edge_pos(base_edge) * n + g
    return ComplexMap(
        source=upper.graph,
        target=lower.graph,
        vertex_map=tuple(vertex_map),
        edge_map=edge_map,
    )
