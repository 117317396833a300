"""Graphviz (DOT) export with stable, reproducible naming.

Vertex names: "v{i}" on a base complex, "v{state}_{vertex}" on a covering,
"p{vertex}_{element}" on a derived bundle.  Edges are labeled by base edge
id, plus the voltage label where one applies.
"""

from __future__ import annotations

from typing import Optional

from .bundles import DerivedBundle, HolonomyBundle
from .complexes import BaseComplex
from .connections import Voltage
from .covers import CoveringComplex


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def _digraph(name: str, nodes: list[str], edges: list[tuple[str, str, str]]) -> str:
    lines = [f"digraph {name} {{"]
    for n in nodes:
        lines.append(f"  {_quote(n)};")
    for tail, head, label in edges:
        lines.append(f"  {_quote(tail)} -> {_quote(head)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(c: BaseComplex, voltage: Optional[Voltage] = None, name: str = "base") -> str:
    nodes = [f"v{i}" for i in range(c.vertex_count)]
    edges = []
    for e in c.edges:
        label = f"e{e.id}"
        if voltage is not None:
            label += f" {voltage.group.label(voltage.on_edge(e.id))}"
        edges.append((f"v{e.tail}", f"v{e.head}", label))
    return _digraph(name, nodes, edges)


def cover_dot(cov: CoveringComplex, name: str = "cover") -> str:
    V = cov.base.vertex_count
    nodes = [f"v{idx // V}_{idx % V}" for idx in range(cov.total.vertex_count)]
    edges = []
    for e in cov.total.edges:
        label = f"e{cov.edge_to_base[e.id]}"
        edges.append((nodes[e.tail], nodes[e.head], label))
    return _digraph(name, nodes, edges)


def bundle_dot(d: DerivedBundle, name: str = "bundle") -> str:
    n = d.group.order
    nodes = [f"p{idx // n}_{idx % n}" for idx in range(d.graph.vertex_count)]
    edges = []
    for e in d.graph.edges:
        pos, _ = d.edge_pair(e.id)
        base_edge = d.base.edges[pos]
        label = f"e{base_edge.id} {d.group.label(d.voltage.on_edge(base_edge.id))}"
        edges.append((nodes[e.tail], nodes[e.head], label))
    return _digraph(name, nodes, edges)


def holonomy_bundle_dot(hb: HolonomyBundle, name: str = "holonomy_bundle") -> str:
    d = hb.bundle
    n = d.group.order
    names = {}
    for local, global_idx in enumerate(hb.component.global_vertices):
        names[local] = f"p{global_idx // n}_{global_idx % n}"
    nodes = [names[i] for i in range(hb.complex.vertex_count)]
    edges = []
    for e in hb.complex.edges:
        global_eid = hb.component.global_edges[e.id]
        pos, _ = d.edge_pair(global_eid)
        base_edge = d.base.edges[pos]
        label = f"e{base_edge.id} {d.group.label(d.voltage.on_edge(base_edge.id))}"
        edges.append((names[e.tail], names[e.head], label))
    return _digraph(name, nodes, edges)
