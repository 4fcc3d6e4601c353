"""Structure-preserving maps, ideals, quotients and the functor pair.

A meadow hom is stored as a lattice map plus one ring hom per node; the
elementwise map follows.  Ideals are descriptor-based per node so that
infinite components (like nZ inside Z) stay representable.  Quotients map
component rings back into the closed descriptor family and return a
tagged result: a certified meadow when unique invertibility verifies, or
the bare pre-meadow otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import rings
from .errors import (
    AmbiguousInverse,
    CharacteristicMismatch,
    ForeignElement,
    IdealIsWhole,
    IdealNotKilled,
    InfiniteCarrier,
    NotAHomomorphism,
    NotAZero,
    NotLatticeHom,
    NotSurjective,
    SquareDoesNotCommute,
    TargetMismatch,
    Undecidable,
    UnitNotPreserved,
    ZeroRingInput,
)
from .lattice import DirectedLattice, Lattice
from .meadow import Meadow, MeadowElement, PreMeadow, build_meadow, build_premeadow
from .report import EXHAUSTIVE, ValidationReport, sampled

# ---------------------------------------------------------------------------
# meadow homomorphisms


class MeadowHom:
    """Lattice map plus per-node ring homs; apply() is the element map."""

    def __init__(self, source: PreMeadow, target: PreMeadow, lattice_map: dict, ring_maps: dict):
        self.source = source
        self.target = target
        self.lattice_map = dict(lattice_map)
        self.ring_maps = dict(ring_maps)

    def apply(self, x: MeadowElement) -> MeadowElement:
        if not self.source.contains(x):
            raise ForeignElement(f"{x} is not in the source")
        return MeadowElement(
            self.lattice_map[x.node], rings.hom_apply(self.ring_maps[x.node], x.value)
        )

    def __str__(self):
        return f"meadow hom on {len(self.lattice_map)} nodes"


def _source_pairs(m: PreMeadow, budget: int):
    """Element pairs to probe a hom with; the full square when finite."""
    if m.is_finite():
        elems = m.elements()
        return list(itertools.product(elems, elems)), True
    pool = []
    for node in m.lattice.nodes:
        for v in rings.sample_pool(m.dl.ring_at[node]):
            pool.append(MeadowElement(node, v))
    pairs = list(itertools.islice(itertools.product(pool, pool), budget * 4))
    return pairs, False


def hom_build(
    src: PreMeadow,
    dst: PreMeadow,
    lattice_map: dict,
    ring_maps: dict,
    budget: int = 64,
    seed: int = 0,
) -> MeadowHom:
    """Validate and assemble a meadow hom.

    Checks, in order: node coverage, lattice hom laws (leq, meets, top and
    bottom), ring hom endpoints and laws, commuting squares against the
    transition maps, then the elementwise hom equations (exhaustive on
    finite sources, sampled otherwise).
    """
    L, Ldst = src.lattice, dst.lattice
    for n in L.nodes:
        if n not in lattice_map:
            raise NotLatticeHom(f"node {n!r} has no image")
        if n not in ring_maps:
            raise NotLatticeHom(f"node {n!r} has no ring map")
        if lattice_map[n] not in Ldst.nodes:
            raise NotLatticeHom(f"{n!r} maps to unknown node {lattice_map[n]!r}")

    for a, b in itertools.product(L.nodes, repeat=2):
        if L.leq(a, b) and not Ldst.leq(lattice_map[a], lattice_map[b]):
            raise NotLatticeHom(f"order not preserved on ({a!r}, {b!r})")
        got = lattice_map[L.meet(a, b)]
        want = Ldst.meet(lattice_map[a], lattice_map[b])
        if got != want:
            raise NotLatticeHom(f"meet not preserved on ({a!r}, {b!r}): {got!r} != {want!r}")
    if lattice_map[L.top] != Ldst.top:
        raise NotLatticeHom("top must map to top")
    if lattice_map[L.bottom] != Ldst.bottom:
        raise NotLatticeHom("bottom must map to bottom")

    for z in L.nodes:
        h = ring_maps[z]
        if h.source != src.dl.ring_at[z] or h.target != dst.dl.ring_at[lattice_map[z]]:
            raise TargetMismatch(f"ring map at {z!r} has endpoints {h.source} -> {h.target}")
        sub = rings.hom_validate(h, budget=budget, seed=seed)
        if not sub.ok:
            names = [c.name for c in sub.failures()]
            if "preserves_one" in names:
                raise UnitNotPreserved(f"ring map at {z!r} does not fix 1")
            raise NotAHomomorphism(f"ring map at {z!r} fails: {sub.summary()}")

    for z in L.nodes:
        for z2 in L.nodes:
            if z2 == z or not L.leq(z2, z):
                continue
            down_then_map = rings.compose_homs(src.dl.transition(z, z2), ring_maps[z2])
            map_then_down = rings.compose_homs(
                ring_maps[z], dst.dl.transition(lattice_map[z], lattice_map[z2])
            )
            desc = src.dl.ring_at[z]
            if rings.is_finite(desc):
                inputs = rings.enumerate_ring(desc)
            else:
                inputs, _, _ = rings._validation_inputs(desc, budget, seed)
            for v in inputs:
                if rings.hom_apply(down_then_map, v) != rings.hom_apply(map_then_down, v):
                    raise SquareDoesNotCommute(z, z2, v)

    f = MeadowHom(src, dst, lattice_map, ring_maps)
    if f.apply(src.one) != dst.one:
        raise UnitNotPreserved("1 is not sent to 1")
    pairs, _exhaustive = _source_pairs(src, budget)
    for x, y in pairs:
        if f.apply(src.add(x, y)) != dst.add(f.apply(x), f.apply(y)):
            raise NotAHomomorphism(f"additivity fails at ({x}, {y})")
        if f.apply(src.mul(x, y)) != dst.mul(f.apply(x), f.apply(y)):
            raise NotAHomomorphism(f"multiplicativity fails at ({x}, {y})")
    return f


def identity_hom(m: PreMeadow) -> MeadowHom:
    lattice_map = {n: n for n in m.lattice.nodes}
    ring_maps = {n: rings.identity_hom(m.dl.ring_at[n]) for n in m.lattice.nodes}
    return hom_build(m, m, lattice_map, ring_maps)


def hom_from_carrier_map(src: PreMeadow, dst: PreMeadow, mapping: dict) -> MeadowHom:
    """Lift an elementwise map on a finite carrier into a validated hom."""
    lattice_map = {}
    ring_maps = {}
    by_node: dict = {}
    for x in src.elements():
        by_node.setdefault(x.node, []).append(x)
    for z, elems in by_node.items():
        images = {mapping[x].node for x in elems}
        if len(images) != 1:
            raise NotLatticeHom(f"component at {z!r} is split across nodes {images}")
        lattice_map[z] = next(iter(images))
        pairs = [(x.value, mapping[x].value) for x in elems]
        ring_maps[z] = rings.table_hom(
            src.dl.ring_at[z], dst.dl.ring_at[lattice_map[z]], pairs
        )
    return hom_build(src, dst, lattice_map, ring_maps)


def hom_is_injective(f: MeadowHom):
    """(answer, witness): exhaustive on finite sources, structural otherwise.

    The witness is a colliding pair of nodes or of elements.  Raises
    Undecidable rather than guessing when a structural answer is unknown.
    """
    values = list(f.lattice_map.values())
    if len(set(values)) != len(values):
        seen: dict = {}
        for n, img in f.lattice_map.items():
            if img in seen:
                return False, (seen[img], n)
            seen[img] = n
    if f.source.is_finite():
        seen_el: dict = {}
        for x in f.source.elements():
            img = f.apply(x)
            if img in seen_el:
                return False, (seen_el[img], x)
            seen_el[img] = x
        return True, None
    for z in f.source.lattice.nodes:
        verdict, witness = rings.hom_injective(f.ring_maps[z])
        if verdict is False:
            if witness is None:
                return False, None
            return False, (MeadowElement(z, witness[0]), MeadowElement(z, witness[1]))
        if verdict is None:
            raise Undecidable(f"injectivity of the ring map at {z!r} is not settled")
    return True, None


def kernel(f: MeadowHom, kind="R") -> frozenset:
    """Elements collapsing under f.

    kind "R": x with f(x) equal to its own component zero (an ideal).
    kind "a": x mapped onto the error element.
    kind ("at", z): preimage of one fixed component zero z of the target.
    """
    if not f.source.is_finite():
        raise InfiniteCarrier("explicit kernels need a finite source")
    if kind == "a":
        kind = ("at", f.target.a)
    if kind == "R":
        return frozenset(
            x for x in f.source.elements() if f.apply(x) == f.target.zero_of(f.apply(x))
        )
    tag, z = kind
    if tag != "at":
        raise ValueError(f"unknown kernel kind {kind!r}")
    if f.target.zero_of(z) != z:
        raise NotAZero(f"{z} is not a component zero of the target")
    return frozenset(x for x in f.source.elements() if f.apply(x) == z)


# ---------------------------------------------------------------------------
# ideals


class IdealSpec:
    __slots__ = ()


@dataclass(frozen=True)
class ZeroIdeal(IdealSpec):
    pass


@dataclass(frozen=True)
class WholeRing(IdealSpec):
    pass


@dataclass(frozen=True)
class FiniteSubset(IdealSpec):
    values: frozenset

    def __post_init__(self):
        object.__setattr__(self, "values", frozenset(self.values))


@dataclass(frozen=True)
class NZ(IdealSpec):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("nZ needs n >= 1")


@dataclass
class MeadowIdeal:
    meadow: PreMeadow
    ideal_at: dict

    def spec_at(self, node) -> IdealSpec:
        """Normalized spec: degenerate subsets fold into Zero or Whole."""
        spec = self.ideal_at.get(node, ZeroIdeal())
        desc = self.meadow.dl.ring_at[node]
        if isinstance(spec, NZ) and spec.n == 1:
            return WholeRing()
        if isinstance(spec, FiniteSubset):
            if rings.is_finite(desc) and spec.values == set(rings.enumerate_ring(desc)):
                return WholeRing()
            if spec.values == {rings.zero_value(desc)}:
                return ZeroIdeal()
        return spec

    def contains(self, node, v: rings.RingValue) -> bool:
        spec = self.spec_at(node)
        if isinstance(spec, WholeRing):
            return True
        if isinstance(spec, ZeroIdeal):
            return v == rings.zero_value(self.meadow.dl.ring_at[node])
        if isinstance(spec, FiniteSubset):
            return v in spec.values
        return v.payload % spec.n == 0

    def probe_members(self, node) -> list[rings.RingValue]:
        """Finite witness set; full membership for finite components."""
        spec = self.spec_at(node)
        desc = self.meadow.dl.ring_at[node]
        if isinstance(spec, ZeroIdeal):
            return [rings.zero_value(desc)]
        if isinstance(spec, FiniteSubset):
            return sorted(spec.values, key=repr)
        if isinstance(spec, NZ):
            return [rings.from_int(desc, k * spec.n) for k in range(-3, 4)]
        if rings.is_finite(desc):
            return rings.enumerate_ring(desc)
        return rings.sample_pool(desc)

    def members_by_node(self, node) -> frozenset:
        """Exact member set; finite components only."""
        spec = self.spec_at(node)
        desc = self.meadow.dl.ring_at[node]
        if isinstance(spec, ZeroIdeal):
            return frozenset([rings.zero_value(desc)])
        if isinstance(spec, FiniteSubset):
            return spec.values
        if isinstance(spec, WholeRing):
            return frozenset(rings.enumerate_ring(desc))
        raise InfiniteCarrier("nZ has no finite member set")


def ideal_validate(ideal: MeadowIdeal, budget: int = 64) -> ValidationReport:
    """Per-node ideal axioms, plus transition closure across the lattice."""
    m = ideal.meadow
    L = m.lattice
    report = ValidationReport(subject="meadow ideal", mode=EXHAUSTIVE)

    bottom = L.bottom
    report.add("bottom_is_whole", isinstance(ideal.spec_at(bottom), WholeRing), (bottom,))

    for node in L.nodes:
        spec = ideal.spec_at(node)
        desc = m.dl.ring_at[node]
        if isinstance(spec, NZ) and not isinstance(desc, rings.Integers):
            report.add(f"kind_fits({node})", False, (spec,), note="nZ only applies to Z")
            continue
        if isinstance(spec, FiniteSubset):
            if not rings.is_finite(desc):
                report.add(f"kind_fits({node})", False, (spec,), note="explicit subsets need a finite ring")
                continue
            bad = next((v for v in spec.values if v.ring != desc), None)
            if bad is not None:
                report.add(f"kind_fits({node})", False, (bad,), note="value outside the component")
                continue
        report.add(f"kind_fits({node})", True)

        zero = rings.zero_value(desc)
        if not ideal.contains(node, zero):
            report.add(f"contains_zero({node})", False, (zero,))
            continue
        report.add(f"contains_zero({node})", True)

        if isinstance(spec, FiniteSubset):
            S = spec.values
            bad = next((v for v in S if rings.neg(v) not in S), None)
            report.add(f"closed_under_neg({node})", bad is None, None if bad is None else (bad,))
            bad = next(
                ((v, w) for v in S for w in S if rings.add(v, w) not in S), None
            )
            report.add(f"closed_under_add({node})", bad is None, bad)
            bad = next(
                (
                    (v, r)
                    for v in S
                    for r in rings.enumerate_ring(desc)
                    if rings.mul(v, r) not in S
                ),
                None,
            )
            report.add(f"absorbs_multiplication({node})", bad is None, bad)

    if not report.ok:
        return report

    # a collapsed component forces everything below it to collapse
    for up in L.nodes:
        if not isinstance(ideal.spec_at(up), WholeRing):
            continue
        for lo in L.nodes:
            if lo != up and L.leq(lo, up) and not isinstance(ideal.spec_at(lo), WholeRing):
                report.add("whole_propagates_down", False, (up, lo))
    if report.ok:
        report.add("whole_propagates_down", True)

    for up in L.nodes:
        for lo in L.nodes:
            if lo == up or not L.leq(lo, up):
                continue
            t = m.dl.transition(up, lo)
            probes = ideal.probe_members(up)
            bad = next(
                (v for v in probes if not ideal.contains(lo, rings.hom_apply(t, v))),
                None,
            )
            if not rings.is_finite(m.dl.ring_at[up]):
                report.mode = sampled(len(probes))
            report.add(
                f"transition_closed({up}->{lo})",
                bad is None,
                None if bad is None else (bad,),
                checked=len(probes),
            )
    return report


def radical(m: PreMeadow) -> MeadowIdeal:
    """Smallest ideal whose quotient keeps only the top component."""
    top = m.lattice.top
    ideal_at = {
        node: (ZeroIdeal() if node == top else WholeRing()) for node in m.lattice.nodes
    }
    return MeadowIdeal(m, ideal_at)


# ---------------------------------------------------------------------------
# quotients


def _component_quotient(desc: rings.RingDescriptor, spec: IdealSpec):
    """(quotient descriptor, projection hom) for a non-whole component ideal."""
    import math

    if isinstance(spec, ZeroIdeal):
        return desc, rings.identity_hom(desc)
    if isinstance(spec, NZ):
        return rings.Mod(spec.n), rings.reduce_mod(spec.n)
    if isinstance(spec, FiniteSubset):
        if isinstance(desc, rings.Mod):
            d = desc.n
            for v in spec.values:
                d = math.gcd(d, v.payload)
            if d == desc.n:
                return desc, rings.identity_hom(desc)
            return rings.Mod(d), rings.mod_to_mod(desc.n, d)
        if isinstance(desc, rings.Product):
            kept = []
            for k, factor in enumerate(desc.factors):
                coord = frozenset(v.payload[k] for v in spec.values)
                # a whole factor collapses out of the product
                if coord == set(rings.enumerate_ring(factor)):
                    continue
                qdesc, proj = _component_quotient(factor, FiniteSubset(coord))
                kept.append((k, qdesc, proj))
            if not kept:
                raise IdealIsWhole("component ideal is the whole ring")
            parts = [
                rings.compose_homs(rings.project(desc, k), proj) for k, _q, proj in kept
            ]
            if len(parts) == 1:
                return kept[0][1], parts[0]
            return rings.Product(tuple(q for _k, q, _p in kept)), rings.pair_hom(parts)
    raise ValueError(f"cannot form quotient of {desc} by {spec}")


def _factor_through(proj: rings.RingHom, g: rings.RingHom) -> rings.RingHom:
    """h with h after proj equal to g, for canonical projections proj."""
    if isinstance(proj.rule, rings.Identity):
        return g
    if rings.is_finite(proj.source):
        table: dict = {}
        for v in rings.enumerate_ring(proj.source):
            key = rings.hom_apply(proj, v)
            img = rings.hom_apply(g, v)
            if key in table and table[key] != img:
                raise ValueError(f"map does not factor: {key} has two images")
            table[key] = img
        return rings.table_hom(proj.target, g.target, table.items())
    if isinstance(proj.rule, rings.ReduceIntMod):
        n = proj.target.n
        pairs = [
            (rings.from_int(proj.target, r), rings.hom_apply(g, rings.from_int(proj.source, r)))
            for r in range(n)
        ]
        return rings.table_hom(proj.target, g.target, pairs)
    raise ValueError(f"cannot factor through {proj}")


@dataclass
class QuotientResult:
    quotient: PreMeadow
    collapsed: frozenset
    projection: MeadowHom
    is_meadow: bool


def quotient(m: PreMeadow, ideal: MeadowIdeal, require_meadow: bool = False) -> QuotientResult:
    """Collapse an ideal: whole components land on the error element.

    The result is tagged ``is_meadow=True`` only when unique invertibility
    is certified (exhaustively on finite carriers, structurally for chain
    lattices); otherwise the quotient ships as a plain pre-meadow.
    """
    ideal_validate(ideal).raise_if_failed()
    L = m.lattice
    if isinstance(ideal.spec_at(L.top), WholeRing):
        raise IdealIsWhole("quotient by the whole structure is undefined")

    collapsed = frozenset(
        n for n in L.nodes if isinstance(ideal.spec_at(n), WholeRing)
    )
    kept = [n for n in L.nodes if n not in collapsed]
    bottom = L.bottom

    qnodes = kept + [bottom]
    order = [(a, b) for a in kept for b in kept if a != b and L.leq(a, b)]
    order += [(bottom, k) for k in kept]
    qlat = Lattice(qnodes, order)

    ring_at = {bottom: rings.ZERO}
    projs = {}
    for z in kept:
        qdesc, proj = _component_quotient(m.dl.ring_at[z], ideal.spec_at(z))
        ring_at[z] = qdesc
        projs[z] = proj

    edge_homs = {}
    for up, lo in qlat.covers():
        if lo == bottom:
            continue
        g = rings.compose_homs(m.dl.transition(up, lo), projs[lo])
        edge_homs[(up, lo)] = _factor_through(projs[up], g)
    qdl = DirectedLattice(qlat, ring_at, edge_homs)

    structure: PreMeadow
    certified = False
    if qdl.is_finite():
        try:
            structure = build_meadow(qdl, mode="verify")
            certified = True
        except AmbiguousInverse:
            if require_meadow:
                raise
            structure = build_premeadow(qdl)
    elif qlat.is_chain():
        # a totally ordered support always has a unique maximal unit node
        structure = build_meadow(qdl, mode="verify")
        certified = True
    else:
        structure = build_premeadow(qdl)
        if require_meadow:
            raise Undecidable("cannot certify invertibility of an infinite non-chain quotient")

    lattice_map = {n: (n if n in kept else bottom) for n in L.nodes}
    ring_maps = {
        n: (projs[n] if n in kept else rings.collapse_hom(m.dl.ring_at[n]))
        for n in L.nodes
    }
    rho = hom_build(m, structure, lattice_map, ring_maps)
    return QuotientResult(
        quotient=structure, collapsed=collapsed, projection=rho, is_meadow=certified
    )


def induced_hom(f: MeadowHom, ideal: MeadowIdeal) -> MeadowHom:
    """The unique map out of the quotient agreeing with f.

    Requires f to kill the ideal: every ideal member must land on its own
    component zero (checked on every probe member, exhaustively when the
    components are finite).
    """
    m = f.source
    for node in m.lattice.nodes:
        for v in ideal.probe_members(node):
            x = MeadowElement(node, v)
            if f.apply(x) != f.target.zero_of(f.apply(x)):
                raise IdealNotKilled(f"{x} maps to {f.apply(x)}, not a component zero")
    q = quotient(m, ideal)
    bottom = q.quotient.lattice.bottom
    lattice_map = {}
    ring_maps = {}
    for z in q.quotient.lattice.nodes:
        if z == bottom:
            lattice_map[z] = f.target.lattice.bottom
            ring_maps[z] = rings.identity_hom(rings.ZERO)
        else:
            lattice_map[z] = f.lattice_map[z]
            ring_maps[z] = _factor_through(q.projection.ring_maps[z], f.ring_maps[z])
    return hom_build(q.quotient, f.target, lattice_map, ring_maps)


# ---------------------------------------------------------------------------
# congruences


@dataclass
class CongruenceClasses:
    """Partition of a finite carrier under f(x) = f(y), with induced tables."""

    classes: tuple[frozenset, ...]
    class_of: dict
    add_table: dict
    mul_table: dict
    images: tuple  # images[i] is the target element the i-th class maps onto


def congruence_quotient(f: MeadowHom) -> CongruenceClasses:
    if not (f.source.is_finite() and f.target.is_finite()):
        raise InfiniteCarrier("congruence classes need finite carriers")
    src = f.source.elements()
    image_map = {x: f.apply(x) for x in src}
    targets = f.target.elements()
    if set(image_map.values()) != set(targets):
        raise NotSurjective("congruence quotients need a surjective hom")

    buckets: dict = {t: [] for t in targets}
    for x in src:
        buckets[image_map[x]].append(x)
    images = tuple(targets)
    classes = tuple(frozenset(buckets[t]) for t in images)
    class_of = {x: i for i, cls in enumerate(classes) for x in cls}

    add_table: dict = {}
    mul_table: dict = {}
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            adds = {class_of[f.source.add(x, y)] for x in ci for y in cj}
            muls = {class_of[f.source.mul(x, y)] for x in ci for y in cj}
            if len(adds) != 1 or len(muls) != 1:
                raise NotAHomomorphism(f"operations are not well defined on classes ({i}, {j})")
            add_table[(i, j)] = next(iter(adds))
            mul_table[(i, j)] = next(iter(muls))

    # the induced map on classes must mirror the target operations exactly
    for i, j in itertools.product(range(len(classes)), repeat=2):
        if images[add_table[(i, j)]] != f.target.add(images[i], images[j]):
            raise NotAHomomorphism("induced addition disagrees with the target")
        if images[mul_table[(i, j)]] != f.target.mul(images[i], images[j]):
            raise NotAHomomorphism("induced multiplication disagrees with the target")
    return CongruenceClasses(classes, class_of, add_table, mul_table, images)


# ---------------------------------------------------------------------------
# the functor pair and friends


def adjoin_error(desc: rings.RingDescriptor) -> Meadow:
    """The two-node structure: one ring on top of the error element."""
    if isinstance(desc, rings.Zero):
        raise ZeroRingInput("adjoining the error element to the zero ring is not allowed")
    lat = Lattice(["top", "a"], [("a", "top")])
    dl = DirectedLattice(lat, {"top": desc, "a": rings.ZERO})
    return build_meadow(dl, mode="verify")


def base_ring(m: PreMeadow) -> rings.RingDescriptor:
    return m.dl.ring_at[m.lattice.top]


def adjoin_error_hom(h: rings.RingHom) -> MeadowHom:
    """Functor action on ring homs: extend by fixing the error element."""
    src = adjoin_error(h.source)
    dst = adjoin_error(h.target)
    return hom_build(
        src,
        dst,
        {"top": "top", "a": "a"},
        {"top": h, "a": rings.identity_hom(rings.ZERO)},
    )


def base_ring_hom(f: MeadowHom) -> rings.RingHom:
    """Functor action on meadow homs: restrict to the top components."""
    return f.ring_maps[f.source.lattice.top]


def adjoint_transpose(h: rings.RingHom, m: PreMeadow) -> MeadowHom:
    """Turn a ring hom into the base ring into a meadow hom from R adjoin a."""
    if h.target != base_ring(m):
        raise TargetMismatch(f"hom lands in {h.target}, base ring is {base_ring(m)}")
    rings.hom_validate(h).raise_if_failed()
    src = adjoin_error(h.source)
    return hom_build(
        src,
        m,
        {"top": m.lattice.top, "a": m.lattice.bottom},
        {"top": h, "a": rings.identity_hom(rings.ZERO)},
    )


def initial_hom(m: PreMeadow) -> MeadowHom:
    """The unique map out of the integers-with-error structure."""
    src = adjoin_error(rings.Z)
    return hom_build(
        src,
        m,
        {"top": m.lattice.top, "a": m.lattice.bottom},
        {"top": rings.unit_map(base_ring(m)), "a": rings.identity_hom(rings.ZERO)},
    )


# ---------------------------------------------------------------------------
# products and gluing


def _pairwise_hom(src_desc, left: rings.RingHom, right: rings.RingHom):
    """Edge hom between product-lattice nodes whose source coordinates both live."""
    if isinstance(left.target, rings.Zero):
        # left coordinate collapses: the surviving data is the right coordinate
        return rings.compose_homs(rings.project(src_desc, 1), right)
    if isinstance(right.target, rings.Zero):
        return rings.compose_homs(rings.project(src_desc, 0), left)
    return rings.pair_hom(
        (
            rings.compose_homs(rings.project(src_desc, 0), left),
            rings.compose_homs(rings.project(src_desc, 1), right),
        )
    )


def meadow_product(m: Meadow, n: Meadow) -> Meadow:
    """Componentwise product; node pairs with a zero-ring coordinate survive
    as distinct nodes carrying the other coordinate's ring."""
    Lm, Ln = m.lattice, n.lattice
    bm, bn = Lm.bottom, Ln.bottom
    nodes = [(i, j) for i in Lm.nodes for j in Ln.nodes]
    order = [
        ((i, j), (i2, j2))
        for (i, j) in nodes
        for (i2, j2) in nodes
        if (i, j) != (i2, j2) and Lm.leq(i, i2) and Ln.leq(j, j2)
    ]
    lat = Lattice(nodes, order)

    def ring_of(i, j):
        ri, rj = m.dl.ring_at[i], n.dl.ring_at[j]
        zi, zj = isinstance(ri, rings.Zero), isinstance(rj, rings.Zero)
        if zi and zj:
            return rings.ZERO
        if zi:
            return rj
        if zj:
            return ri
        return rings.Product((ri, rj))

    ring_at = {(i, j): ring_of(i, j) for (i, j) in nodes}

    edge_homs = {}
    for (ui, uj), (li, lj) in lat.covers():
        if (li, lj) == (bm, bn):
            continue  # synthesized collapse
        src_desc = ring_at[(ui, uj)]
        zi = isinstance(m.dl.ring_at[ui], rings.Zero)
        zj = isinstance(n.dl.ring_at[uj], rings.Zero)
        if zi:
            edge_homs[((ui, uj), (li, lj))] = n.dl.transition(uj, lj)
        elif zj:
            edge_homs[((ui, uj), (li, lj))] = m.dl.transition(ui, li)
        else:
            edge_homs[((ui, uj), (li, lj))] = _pairwise_hom(
                src_desc, m.dl.transition(ui, li), n.dl.transition(uj, lj)
            )
    dl = DirectedLattice(lat, ring_at, edge_homs)
    return build_meadow(dl, mode="verify")


def product_projections(p: Meadow, m: Meadow, n: Meadow) -> tuple[MeadowHom, MeadowHom]:
    """The two coordinate maps out of a product built by meadow_product."""

    def build(axis: int, target: Meadow) -> MeadowHom:
        lattice_map = {}
        ring_maps = {}
        for (i, j) in p.lattice.nodes:
            mine = (i, j)[axis]
            other_ring = (n.dl.ring_at[j], m.dl.ring_at[i])[axis]
            own_ring = target.dl.ring_at[mine]
            lattice_map[(i, j)] = mine
            src_desc = p.dl.ring_at[(i, j)]
            if isinstance(own_ring, rings.Zero):
                ring_maps[(i, j)] = rings.collapse_hom(src_desc)
            elif isinstance(other_ring, rings.Zero):
                ring_maps[(i, j)] = rings.identity_hom(src_desc)
            else:
                ring_maps[(i, j)] = rings.project(src_desc, axis)
        return hom_build(p, target, lattice_map, ring_maps)

    return build(0, m), build(1, n)


def glue(m: Meadow, n: Meadow, p: int) -> Meadow:
    """Join two structures of characteristic p under a new Z_p top.

    Cross terms multiply and add to the error element because the only
    common lower node of the two branches is the bottom.
    """
    if not rings._is_prime(p):
        raise CharacteristicMismatch(f"{p} is not prime")
    for structure in (m, n):
        top_ring = base_ring(structure)
        if rings.from_int(top_ring, p) != rings.zero_value(top_ring):
            raise CharacteristicMismatch(f"{top_ring} does not have characteristic {p}")

    zp = rings.Mod(p)
    nodes = ["glue-top", "a"]
    order = []
    ring_at = {"glue-top": zp, "a": rings.ZERO}
    edge_homs = {}

    def graft(prefix: str, structure: Meadow):
        L = structure.lattice
        bottom = L.bottom
        rename = {
            node: ("a" if node == bottom else (prefix, node)) for node in L.nodes
        }
        for node in L.nodes:
            if node == bottom:
                continue
            nodes.append(rename[node])
            ring_at[rename[node]] = structure.dl.ring_at[node]
        for a, b in itertools.product(L.nodes, repeat=2):
            if a != b and L.leq(a, b):
                order.append((rename[a], rename[b]))
        order.append((rename[L.top], "glue-top"))
        for (up, lo), hom in structure.dl.edge_homs.items():
            if lo != bottom:
                edge_homs[(rename[up], rename[lo])] = hom
        top_ring = structure.dl.ring_at[L.top]
        pairs = [
            (rings.from_int(zp, k), rings.from_int(top_ring, k)) for k in range(p)
        ]
        edge_homs[("glue-top", rename[L.top])] = rings.table_hom(zp, top_ring, pairs)

    graft("m", m)
    graft("n", n)
    order.append(("a", "glue-top"))
    lat = Lattice(nodes, order)
    dl = DirectedLattice(lat, ring_at, edge_homs)
    return build_meadow(dl, mode="verify")
