"""Pulled-back connections and mechanical verification of their structure.

Given a base instance (complex, group, flat voltage) and a finite-index
subgroup of the fundamental group, this module builds the covering, pulls
the voltage back, and checks a catalog of structural claims with exact
finite-group arithmetic:

* ``theorem_1_1``: the induced holonomy image equals the image of the
  covering subgroup under the base holonomy map;
* ``functoriality``: holonomy upstairs equals holonomy of the projected
  word, on sampled closed words;
* ``triviality``: the induced connection is trivial exactly when the
  covering subgroup sits inside the holonomy kernel, and then the bundle
  upstairs splits into |G| sheets;
* ``prop_2_1 / cor_2_2 / prop_2_3 / prop_2_4``: identification of holonomy
  bundles across the cover, under their hypothesis gates.

Claims whose hypotheses fail report "hypotheses-not-met" rather than a
vacuous "holds".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .bundles import (
    DerivedBundle,
    HolonomyBundle,
    derived_bundle,
    holonomy_bundle,
    induced_bundle_map,
)
from .complexes import (
    BaseComplex,
    Presentation,
    SpanningTreeData,
    pi1_presentation,
    spanning_tree,
    validate_complex,
)
from .connections import (
    HolonomyMorphism,
    Voltage,
    check_flatness,
    holonomy_group,
    holonomy_morphism,
    kernel_automaton,
    word_holonomy,
)
from .covers import (
    ComplexMap,
    CoveringComplex,
    build_cover,
    subgroup_of_cover,
)
from .errors import FlatnessError
from .groups import GroupTable, SubgroupSet, subgroup_closure
from .subgroups import (
    CosetAutomaton,
    SubgroupSpec,
    automaton_from_spec,
    automata_equal,
    is_normal_subgroup,
    membership,
    reidemeister_schreier,
)

HOLDS = "holds"
FAILS = "fails"
GATE = "hypotheses-not-met"


@dataclass(frozen=True)
class HypothesisCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one claim check; failures always carry witnesses."""

    claim: str
    verdict: str
    hypotheses: tuple = ()
    witnesses: tuple = ()  # (name, value) pairs
    notes: tuple = ()

    def __post_init__(self):
        if self.verdict not in (HOLDS, FAILS, GATE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAILS and not self.witnesses:
            raise ValueError("a failing verdict must carry a witness")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def gate_passed(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    def to_lines(self) -> list[str]:
        lines = [f"claim: {self.claim}"]
        for h in self.hypotheses:
            status = "ok" if h.passed else "failed"
            detail = f" ({h.detail})" if h.detail else ""
            lines.append(f"hypothesis {h.name}: {status}{detail}")
        lines.append(f"verdict: {self.verdict}")
        for name, value in self.witnesses:
            lines.append(f"witness {name}: {value}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return lines


class Instance:
    """A base instance plus covering datum, with cached derived artifacts.

    The voltage is checked for flatness at construction; everything else
    (tree, holonomy, automata, cover, pullback, bundles) is derived lazily
    and cached.  All artifacts are immutable once built.
    """

    def __init__(
        self,
        complex: BaseComplex,
        group: GroupTable,
        voltage: Voltage,
        covering_spec: Optional[SubgroupSpec] = None,
        name: str = "instance",
        tc_cap: Optional[int] = None,
    ):
        validate_complex(complex)
        if voltage.complex is not complex or voltage.group is not group:
            raise ValueError("voltage does not match the instance complex/group")
        violations = check_flatness(voltage)
        if violations:
            raise FlatnessError(violations)
        self.complex = complex
        self.group = group
        self.voltage = voltage
        self.covering_spec = covering_spec
        self.name = name
        self.tc_cap = tc_cap

    @cached_property
    def tree(self) -> SpanningTreeData:
        return spanning_tree(self.complex)

    @cached_property
    def presentation(self) -> Presentation:
        return pi1_presentation(self.complex, self.tree)

    @cached_property
    def morphism(self) -> HolonomyMorphism:
        return holonomy_morphism(self.voltage, self.tree)

    @cached_property
    def image(self) -> SubgroupSet:
        return holonomy_group(self.morphism)

    @cached_property
    def kernel_aut(self) -> CosetAutomaton:
        return kernel_automaton(self.morphism)

    @cached_property
    def subgroup_aut(self) -> CosetAutomaton:
        if self.covering_spec is None:
            raise ValueError("instance has no covering spec")
        return automaton_from_spec(
            self.covering_spec,
            self.presentation,
            default_group=self.group,
            default_images=self.morphism.images,
            cap=self.tc_cap,
        )

    @cached_property
    def cover(self) -> CoveringComplex:
        return build_cover(self.complex, self.subgroup_aut, self.tree)

    @cached_property
    def pullback(self) -> Voltage:
        return pullback_voltage(self.cover, self.voltage)

    @cached_property
    def cover_tree(self) -> SpanningTreeData:
        return spanning_tree(self.cover.total)

    @cached_property
    def induced_morphism(self) -> HolonomyMorphism:
        return holonomy_morphism(self.pullback, self.cover_tree)

    @cached_property
    def induced_image(self) -> SubgroupSet:
        return holonomy_group(self.induced_morphism)

    @cached_property
    def subgroup_schreier(self) -> list:
        return reidemeister_schreier(self.subgroup_aut, self.presentation)

    @cached_property
    def base_bundle(self) -> DerivedBundle:
        return derived_bundle(self.complex, self.group, self.voltage)

    @cached_property
    def base_nx(self) -> HolonomyBundle:
        return holonomy_bundle(self.base_bundle)

    @cached_property
    def base_nx_subgroup(self) -> CosetAutomaton:
        return subgroup_of_cover(self.base_nx.projection, self.base_nx.base_lift, self.tree)

    @cached_property
    def cover_bundle(self) -> DerivedBundle:
        return derived_bundle(self.cover.total, self.group, self.pullback)

    @cached_property
    def cover_nx(self) -> HolonomyBundle:
        return holonomy_bundle(self.cover_bundle)

    @cached_property
    def bundle_map(self) -> ComplexMap:
        """The induced bundle map from the pulled-back total space down."""
        return induced_bundle_map(self.cover_bundle, self.base_bundle, self.cover)

    @cached_property
    def composite_map(self) -> ComplexMap:
        """The covering N(basepoint lift upstairs) -> base, through the cover."""
        n = self.group.order
        part = self.cover_nx.component
        vertex_map = tuple(
            self.cover.vertex_to_base[g // n] for g in part.global_vertices
        )
        edge_map = {}
        for i, geid in enumerate(part.global_edges):
            pos_hat = geid // n
            cover_eid = self.cover.total.edges[pos_hat].id
            edge_map[i] = self.cover.edge_to_base[cover_eid]
        return ComplexMap(
            source=self.cover_nx.complex,
            target=self.complex,
            vertex_map=vertex_map,
            edge_map=edge_map,
        )

    @cached_property
    def composite_subgroup(self) -> CosetAutomaton:
        return subgroup_of_cover(self.composite_map, self.cover_nx.base_lift, self.tree)

    def holonomy_spans_group(self) -> bool:
        return len(self.image) == self.group.order

    def __repr__(self) -> str:
        return f"Instance({self.name})"


def pullback_voltage(cov: CoveringComplex, v: Voltage) -> Voltage:
    """Pull a voltage back along a covering: each lifted edge inherits the
    value of its image.  Flatness carries over to the lifted relators."""
    if v.complex is not cov.base:
        raise ValueError("voltage is not defined on the covering's base")
    assignment = {eid: v.on_edge(base_eid) for eid, base_eid in cov.edge_to_base.items()}
    return Voltage(cov.total, v.group, assignment)


def induced_holonomy_image(inst: Instance) -> SubgroupSet:
    """Holonomy group of the pulled-back voltage on the cover."""
    return inst.induced_image


def _subgroup_witness(name: str, s: SubgroupSet) -> tuple:
    return (name, "{" + ", ".join(s.label_list()) + "}")


def verify_theorem_1_1(inst: Instance) -> VerificationReport:
    """Check: induced holonomy image equals the base holonomy image of the
    covering subgroup (computed through its Schreier generators)."""
    aut = inst.subgroup_aut
    hyp = [HypothesisCheck("automaton-complete", aut.complete, f"index {aut.state_count}")]
    mapped = [inst.morphism.evaluate(w) for w in inst.subgroup_schreier]
    restricted = subgroup_closure(inst.group, mapped)
    induced = inst.induced_image
    if restricted.members == induced.members:
        return VerificationReport("theorem_1_1", HOLDS, hypotheses=tuple(hyp))
    return VerificationReport(
        "theorem_1_1",
        FAILS,
        hypotheses=tuple(hyp),
        witnesses=(
            _subgroup_witness("h(H)", restricted),
            _subgroup_witness("Im(h-induced)", induced),
        ),
    )


def verify_functoriality(
    inst: Instance, sample_count: int = 100, seed: int = 0
) -> VerificationReport:
    """Check h-induced(w) == h(projection of w) on sampled closed words.

    Words are random walks of length <= 12 on the cover, closed by the tree
    path back to the base lift; sampling is seeded and reproducible.
    """
    rng = random.Random(seed)
    cov = inst.cover
    total = cov.total
    proj = cov.projection()
    stars = [total.star(v) for v in range(total.vertex_count)]
    mismatches = []
    for k in range(sample_count):
        length = rng.randint(0, 12)
        cur = cov.base_lift
        steps = []
        for _ in range(length):
            if not stars[cur]:
                break
            end = rng.choice(stars[cur])
            steps.append(end)
            _, cur = total.step_endpoints(end)
        w = tuple(steps) + inst.cover_tree.path_to_base(cur)
        upstairs = word_holonomy(inst.pullback, w, start=cov.base_lift)
        downstairs = word_holonomy(inst.voltage, proj.map_word(w), start=inst.complex.basepoint)
        if upstairs != downstairs:
            mismatches.append((w, upstairs, downstairs))
    hyp = (HypothesisCheck("automaton-complete", True, f"samples {sample_count}, seed {seed}"),)
    if not mismatches:
        return VerificationReport("functoriality", HOLDS, hypotheses=hyp)
    w, up, down = mismatches[0]
    return VerificationReport(
        "functoriality",
        FAILS,
        hypotheses=hyp,
        witnesses=(
            ("word", str(w)),
            ("holonomy-upstairs", inst.group.label(up)),
            ("holonomy-downstairs", inst.group.label(down)),
        ),
    )


def _product_form(inst: Instance) -> tuple[bool, str]:
    """Does the bundle upstairs split into |G| copies of the cover?"""
    bundle = inst.cover_bundle
    n = inst.group.order
    v_hat = inst.cover.total.vertex_count
    e_hat = len(inst.cover.total.edges)
    if len(bundle.components) != n:
        return False, f"{len(bundle.components)} components, expected {n}"
    for comp in bundle.components:
        if len(comp) != v_hat:
            return False, f"component with {len(comp)} vertices, expected {v_hat}"
    edges_per = {}
    for e in bundle.graph.edges:
        cid = bundle.component_of[e.tail]
        edges_per[cid] = edges_per.get(cid, 0) + 1
    for cid in range(len(bundle.components)):
        if edges_per.get(cid, 0) != e_hat:
            return False, f"component {cid} has {edges_per.get(cid, 0)} edges, expected {e_hat}"
    return True, f"{n} components, each {v_hat} vertices / {e_hat} edges"


def is_induced_trivial(inst: Instance) -> VerificationReport:
    """Triviality criterion, both sides computed independently.

    Side one: the induced holonomy image is trivial.  Side two: every
    Schreier generator of the covering subgroup lies in the holonomy kernel.
    The verdict asserts the biconditional; when trivial, the bundle
    upstairs must additionally split into |G| sheets isomorphic to the
    cover (the product form).
    """
    side_induced = inst.induced_image.members == (0,)
    side_kernel = all(membership(inst.kernel_aut, w) for w in inst.subgroup_schreier)
    hyp = (
        HypothesisCheck(
            "automaton-complete", inst.subgroup_aut.complete, f"index {inst.subgroup_aut.state_count}"
        ),
    )
    notes = [f"trivial: {'yes' if side_induced else 'no'}"]
    witnesses = []
    ok = side_induced == side_kernel
    if not ok:
        witnesses.append(("induced-image-trivial", str(side_induced)))
        witnesses.append(("subgroup-inside-kernel", str(side_kernel)))
        bad = [w for w in inst.subgroup_schreier if not membership(inst.kernel_aut, w)]
        if bad:
            witnesses.append(("kernel-membership-failure", str(bad[0])))
    product_ok = True
    if side_induced:
        product_ok, detail = _product_form(inst)
        notes.append(f"product-form: {detail}")
        if not product_ok:
            witnesses.append(("product-form", detail))
    verdict = HOLDS if ok and product_ok else FAILS
    return VerificationReport(
        "triviality",
        verdict,
        hypotheses=hyp,
        witnesses=tuple(witnesses),
        notes=tuple(notes),
    )


def _gate_full_holonomy(inst: Instance) -> HypothesisCheck:
    ok = inst.holonomy_spans_group()
    return HypothesisCheck(
        "holonomy-spans-group",
        ok,
        f"|Hol| = {len(inst.image)}, |G| = {inst.group.order}",
    )


def _gate_subgroup_is_kernel(inst: Instance) -> HypothesisCheck:
    ok = automata_equal(inst.subgroup_aut, inst.kernel_aut)
    return HypothesisCheck(
        "subgroup-equals-kernel",
        ok,
        f"index {inst.subgroup_aut.state_count} vs kernel index {inst.kernel_aut.state_count}",
    )


def _gate_subgroup_normal(inst: Instance) -> HypothesisCheck:
    ok = is_normal_subgroup(inst.subgroup_aut)
    return HypothesisCheck("subgroup-normal", ok, "regular covering" if ok else "covering not regular")


def _gate_kernel_inside_subgroup(inst: Instance) -> HypothesisCheck:
    kernel_gens = reidemeister_schreier(inst.kernel_aut, inst.presentation)
    bad = [w for w in kernel_gens if not membership(inst.subgroup_aut, w)]
    return HypothesisCheck(
        "kernel-inside-subgroup",
        not bad,
        "" if not bad else f"kernel generator {bad[0]} escapes the subgroup",
    )


def verify_prop_2_1(inst: Instance) -> VerificationReport:
    """When the covering subgroup IS the holonomy kernel (and the covering is
    regular, and holonomy spans the group), the holonomy bundles upstairs
    and downstairs are the same based cover of the base."""
    hyp = (
        _gate_subgroup_is_kernel(inst),
        _gate_subgroup_normal(inst),
        _gate_full_holonomy(inst),
    )
    if not all(h.passed for h in hyp):
        return VerificationReport("prop_2_1", GATE, hypotheses=hyp)
    same = automata_equal(inst.base_nx_subgroup, inst.composite_subgroup)
    if same:
        return VerificationReport("prop_2_1", HOLDS, hypotheses=hyp)
    return VerificationReport(
        "prop_2_1",
        FAILS,
        hypotheses=hyp,
        witnesses=(
            ("base-holonomy-bundle-index", str(inst.base_nx_subgroup.state_count)),
            ("composite-index", str(inst.composite_subgroup.state_count)),
        ),
    )


def verify_cor_2_2(inst: Instance) -> VerificationReport:
    """For any covering whose subgroup contains the holonomy kernel, both
    holonomy bundles define the kernel subgroup over the base.

    Regularity of the covering is reported as a note, not required.
    """
    hyp = (
        _gate_kernel_inside_subgroup(inst),
        _gate_full_holonomy(inst),
    )
    regular = is_normal_subgroup(inst.subgroup_aut) if inst.subgroup_aut.complete else False
    notes = (f"covering-regular: {'yes' if regular else 'no'}",)
    if not all(h.passed for h in hyp):
        return VerificationReport("cor_2_2", GATE, hypotheses=hyp, notes=notes)
    base_ok = automata_equal(inst.base_nx_subgroup, inst.kernel_aut)
    comp_ok = automata_equal(inst.composite_subgroup, inst.kernel_aut)
    if base_ok and comp_ok:
        return VerificationReport("cor_2_2", HOLDS, hypotheses=hyp, notes=notes)
    return VerificationReport(
        "cor_2_2",
        FAILS,
        hypotheses=hyp,
        notes=notes,
        witnesses=(
            ("base-equals-kernel", str(base_ok)),
            ("composite-equals-kernel", str(comp_ok)),
        ),
    )


def verify_prop_2_3(inst: Instance) -> VerificationReport:
    """Over the kernel covering, the bundle upstairs is the product bundle
    and the basepoint component covers the base with the kernel subgroup."""
    hyp = (
        _gate_subgroup_is_kernel(inst),
        _gate_subgroup_normal(inst),
        _gate_full_holonomy(inst),
    )
    if not all(h.passed for h in hyp):
        return VerificationReport("prop_2_3", GATE, hypotheses=hyp)
    product_ok, detail = _product_form(inst)
    base_ok = automata_equal(inst.base_nx_subgroup, inst.kernel_aut)
    comp_ok = automata_equal(inst.composite_subgroup, inst.kernel_aut)
    notes = (f"product-form: {detail}",)
    if product_ok and base_ok and comp_ok:
        return VerificationReport("prop_2_3", HOLDS, hypotheses=hyp, notes=notes)
    return VerificationReport(
        "prop_2_3",
        FAILS,
        hypotheses=hyp,
        notes=notes,
        witnesses=(
            ("product-form", str(product_ok)),
            ("base-equals-kernel", str(base_ok)),
            ("composite-equals-kernel", str(comp_ok)),
        ),
    )


def verify_prop_2_4(inst: Instance) -> VerificationReport:
    """The holonomy bundle over the base defines exactly the kernel subgroup;
    in this discrete model the fiber orbit has trivial loop group, so the
    quotient in the general statement degenerates away (recorded as a note).
    For relator-free bases the rank of the bundle's fundamental group is
    checked against index * (rank - 1) + 1."""
    hyp = (_gate_full_holonomy(inst),)
    notes = ["fiber-orbit loop group is trivial here; the quotient is degenerate"]
    if not all(h.passed for h in hyp):
        return VerificationReport("prop_2_4", GATE, hypotheses=hyp, notes=tuple(notes))
    sub_ok = automata_equal(inst.base_nx_subgroup, inst.kernel_aut)
    rank_ok = True
    if not inst.complex.relators:
        index = inst.kernel_aut.state_count
        expected = index * (inst.presentation.rank - 1) + 1
        actual = inst.base_nx.complex.free_rank
        rank_ok = actual == expected
        notes.append(f"rank pi1(holonomy bundle) = {actual}, expected {expected}")
    if sub_ok and rank_ok:
        return VerificationReport("prop_2_4", HOLDS, hypotheses=hyp, notes=tuple(notes))
    return VerificationReport(
        "prop_2_4",
        FAILS,
        hypotheses=hyp,
        notes=tuple(notes),
        witnesses=(
            ("bundle-subgroup-equals-kernel", str(sub_ok)),
            ("rank-formula", str(rank_ok)),
        ),
    )


@dataclass(frozen=True)
class OracleResult:
    subgroup: SubgroupSet
    stabilized: bool
    max_length: int


def oracle_holonomy(c: BaseComplex, v: Voltage, max_length: int) -> OracleResult:
    """Brute-force holonomy oracle, independent of trees and morphisms.

    Enumerates every closed edge path at the basepoint of length up to
    ``max_length`` by depth-first search, collects the holonomy values and
    returns their closure.  The result is sound; it is complete when the
    stabilization witness holds: the closure is unchanged between lengths
    max_length - 2 and max_length.  (Enumeration stops early once the raw
    values already exhaust the group, which cannot change either closure.)
    """
    if max_length < 2:
        raise ValueError("max_length must be at least 2")
    validate_complex(c)
    g = v.group
    mul = g.product
    order = g.order
    base = c.basepoint
    ends: list[list[tuple[int, int]]] = [[] for _ in range(c.vertex_count)]
    for e in c.edges:
        w = v.on_edge(e.id)
        ends[e.tail].append((e.head, w))
        ends[e.head].append((e.tail, g.inverse[w]))
    short_cut = max_length - 2
    vals_full = {0}
    vals_short = {0}
    stack = [(base, 0, 0)]
    while stack:
        vtx, acc, depth = stack.pop()
        if len(vals_short) == order:
            break
        nd = depth + 1
        row = mul[acc]
        for nv, m in ends[vtx]:
            ng = row[m]
            if nv == base:
                vals_full.add(ng)
                if nd <= short_cut:
                    vals_short.add(ng)
            if nd < max_length:
                stack.append((nv, ng, nd))
    closure_full = subgroup_closure(g, vals_full)
    if len(vals_short) == order:
        return OracleResult(closure_full, True, max_length)
    closure_short = subgroup_closure(g, vals_short)
    return OracleResult(
        closure_full, closure_short.members == closure_full.members, max_length
    )


def standard_reports(
    inst: Instance, seed: int, sample_count: int = 100
) -> list[VerificationReport]:
    """All claim checks for one instance, in the fixed reporting order."""
    return [
        verify_theorem_1_1(inst),
        verify_functoriality(inst, sample_count=sample_count, seed=seed),
        is_induced_trivial(inst),
        verify_prop_2_1(inst),
        verify_cor_2_2(inst),
        verify_prop_2_3(inst),
        verify_prop_2_4(inst),
    ]
