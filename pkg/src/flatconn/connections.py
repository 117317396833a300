"""Flat connections as voltage assignments and their holonomy.

A voltage assigns one group element to each edge (forward orientation);
traversing an edge backwards contributes the inverse.  Path products are
taken left-to-right, matching the permutation composition convention, and a
voltage is flat when every relator path multiplies to the identity; then
the holonomy of a loop depends only on its homotopy class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .complexes import BaseComplex, EdgeWord, SpanningTreeData, validate_complex
from .errors import FlatnessError
from .groups import GroupTable, SubgroupSet, subgroup_closure
from .subgroups import CosetAutomaton, automaton_from_quotient
from .words import Word


@dataclass(frozen=True, eq=False)
class Voltage:
    """An edge -> group element assignment on a validated complex."""

    complex: BaseComplex
    group: GroupTable
    assignment: Mapping[int, int]

    def __post_init__(self):
        validate_complex(self.complex)
        seen = dict(self.assignment)
        for e in self.complex.edges:
            if e.id not in seen:
                raise ValueError(f"voltage missing for edge {e.id}")
            val = seen.pop(e.id)
            if not 0 <= val < self.group.order:
                raise ValueError(f"voltage on edge {e.id} out of range: {val}")
        if seen:
            raise ValueError(f"voltage assigned to unknown edges {sorted(seen)}")
        object.__setattr__(self, "assignment", dict(self.assignment))

    def on_edge(self, eid: int) -> int:
        return self.assignment[eid]

    def on_step(self, step: tuple[int, int]) -> int:
        eid, sign = step
        g = self.assignment[eid]
        return g if sign > 0 else self.group.inverse[g]

    def as_tuple(self) -> tuple:
        """Assignment in ascending edge order; handy as a cache key."""
        return tuple(self.assignment[e.id] for e in self.complex.edges)


@dataclass(frozen=True)
class FlatnessViolation:
    relator_index: int
    product: int
    product_label: str

    def __str__(self) -> str:
        return f"relator {self.relator_index} multiplies to {self.product_label}"


def check_flatness(v: Voltage) -> tuple[FlatnessViolation, ...]:
    """All relators whose path-ordered product is not the identity.

    Violations are reported exhaustively; an empty result means flat.
    """
    out = []
    for k, rel in enumerate(v.complex.relators):
        prod = word_holonomy(v, rel)
        if prod != 0:
            out.append(FlatnessViolation(k, prod, v.group.label(prod)))
    return tuple(out)


def word_holonomy(v: Voltage, w: EdgeWord, start: Optional[int] = None) -> int:
    """Left-to-right product of edge voltages along a path."""
    v.complex.path_vertices(w, start=start)  # validates that w is a path
    acc = 0
    mul = v.group.product
    for step in w:
        acc = mul[acc][v.on_step(step)]
    return acc


@dataclass(frozen=True)
class HolonomyMorphism:
    """The holonomy homomorphism on the fundamental group.

    Images are indexed by the spanning tree's non-tree edge generators; the
    image of generator e is the holonomy of (tree path to tail of e) . e .
    (tree path from head of e back to the basepoint).
    """

    group: GroupTable
    tree: SpanningTreeData
    images: tuple

    def evaluate(self, w: Word) -> int:
        return self.group.evaluate_word(self.images, w)

    @property
    def rank(self) -> int:
        return len(self.images)


def holonomy_morphism(v: Voltage, t: SpanningTreeData) -> HolonomyMorphism:
    """Generator images of the holonomy map; requires a flat voltage."""
    violations = check_flatness(v)
    if violations:
        raise FlatnessError(violations)
    c = v.complex
    images = []
    for eid in t.generators:
        e = c.edge(eid)
        loop = t.path_from_base(e.tail) + ((eid, 1),) + t.path_to_base(e.head)
        images.append(word_holonomy(v, loop, start=c.basepoint))
    return HolonomyMorphism(group=v.group, tree=t, images=tuple(images))


def holonomy_group(h: HolonomyMorphism) -> SubgroupSet:
    """The holonomy group: closure of the generator images."""
    return subgroup_closure(h.group, h.images)


@dataclass(frozen=True)
class GaugeTransform:
    """A vertex -> group element change of fiber trivialization."""

    values: tuple

    def at(self, v: int) -> int:
        return self.values[v]


def apply_gauge(v: Voltage, t: GaugeTransform) -> Voltage:
    """Transformed voltage t(tail)^-1 * w(e) * t(head).

    Loop products telescope, so the holonomy morphism is conjugated by the
    gauge value at the basepoint; flatness is preserved.
    """
    if len(t.values) != v.complex.vertex_count:
        raise ValueError("gauge transform must assign a value to every vertex")
    g = v.group
    new = {}
    for e in v.complex.edges:
        val = g.mul(g.mul(g.inverse[t.at(e.tail)], v.on_edge(e.id)), t.at(e.head))
        new[e.id] = val
    return Voltage(v.complex, g, new)


def kernel_automaton(h: HolonomyMorphism) -> CosetAutomaton:
    """Coset automaton of the holonomy kernel; index equals |Im h|."""
    trivial = subgroup_closure(h.group, ())
    return automaton_from_quotient(h.images, h.group, trivial)
