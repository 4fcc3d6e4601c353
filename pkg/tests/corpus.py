"""Shared corpus of finite directed lattices and homs for the test suite.

Every lattice here has at most 6 nodes, components drawn from residue
rings and their products, and a carrier of at most 200 elements.
"""

from __future__ import annotations

import functools

from meadows import rings
from meadows.lattice import DirectedLattice, Lattice
from meadows.meadow import Meadow, build_meadow
from meadows.morphisms import MeadowHom, adjoin_error, glue, hom_from_carrier_map, meadow_product
from meadows.enumeration import enumerate_meadow_hom_maps


def single(desc) -> DirectedLattice:
    lat = Lattice(["top", "a"], [("a", "top")])
    return DirectedLattice(lat, {"top": desc, "a": rings.ZERO})


def chain(*descs_and_homs) -> DirectedLattice:
    """chain(descN, homN, ..., desc0): top ring first, homs going down."""
    descs = descs_and_homs[0::2]
    homs = descs_and_homs[1::2]
    names = [f"n{k}" for k in range(len(descs))] + ["a"]
    order = [(names[k + 1], names[k]) for k in range(len(names) - 1)]
    lat = Lattice(names, order)
    ring_at = {f"n{k}": d for k, d in enumerate(descs)}
    ring_at["a"] = rings.ZERO
    edge_homs = {(f"n{k}", f"n{k+1}"): h for k, h in enumerate(homs)}
    return DirectedLattice(lat, ring_at, edge_homs)


def z6_split_diamond() -> DirectedLattice:
    """Z6 on top, its two residue fields below, meeting at the bottom."""
    lat = Lattice(["t", "l", "r", "a"], [("a", "l"), ("a", "r"), ("l", "t"), ("r", "t")])
    return DirectedLattice(
        lat,
        {"t": rings.Mod(6), "l": rings.Mod(2), "r": rings.Mod(3), "a": rings.ZERO},
        {("t", "l"): rings.mod_to_mod(6, 2), ("t", "r"): rings.mod_to_mod(6, 3)},
    )


def z2_diamond_with_meet() -> DirectedLattice:
    """Four copies of Z2 in a diamond whose meet node sits above the bottom."""
    lat = Lattice(
        ["t", "l", "r", "m", "a"],
        [("a", "m"), ("m", "l"), ("m", "r"), ("l", "t"), ("r", "t")],
    )
    two = rings.Mod(2)
    ident = rings.identity_hom(two)
    return DirectedLattice(
        lat,
        {"t": two, "l": two, "r": two, "m": two, "a": rings.ZERO},
        {("t", "l"): ident, ("t", "r"): ident, ("l", "m"): ident, ("r", "m"): ident},
    )


def field_diamond(p: int = 3) -> DirectedLattice:
    lat = Lattice(
        ["f0", "f1", "f2", "f3", "a"],
        [("a", "f3"), ("f3", "f1"), ("f3", "f2"), ("f1", "f0"), ("f2", "f0")],
    )
    f = rings.Mod(p)
    ident = rings.identity_hom(f)
    return DirectedLattice(
        lat,
        {"f0": f, "f1": f, "f2": f, "f3": f, "a": rings.ZERO},
        {("f0", "f1"): ident, ("f0", "f2"): ident, ("f1", "f3"): ident, ("f2", "f3"): ident},
    )


def two_z3_ambiguous() -> DirectedLattice:
    """Not a meadow: 2 inverts in both incomparable residue fields."""
    lat = Lattice(["t", "b1", "b2", "a"], [("a", "b1"), ("a", "b2"), ("b1", "t"), ("b2", "t")])
    return DirectedLattice(
        lat,
        {"t": rings.Mod(6), "b1": rings.Mod(3), "b2": rings.Mod(3), "a": rings.ZERO},
        {("t", "b1"): rings.mod_to_mod(6, 3), ("t", "b2"): rings.mod_to_mod(6, 3)},
    )


def two_q_ambiguous() -> DirectedLattice:
    lat = Lattice(["z", "q1", "q2", "a"], [("a", "q1"), ("a", "q2"), ("q1", "z"), ("q2", "z")])
    return DirectedLattice(
        lat,
        {"z": rings.Z, "q1": rings.Q, "q2": rings.Q, "a": rings.ZERO},
        {("z", "q1"): rings.include_rationals(), ("z", "q2"): rings.include_rationals()},
    )


def chain_z_q() -> DirectedLattice:
    return chain(rings.Z, rings.include_rationals(), rings.Q)


def broken_square_diamond() -> DirectedLattice:
    """Valid edge homs whose two paths to the meet disagree at (0, 1)."""
    two = rings.Mod(2)
    prod = rings.Product((two, two))
    lat = Lattice(
        ["t", "l", "r", "m", "a"],
        [("a", "m"), ("m", "l"), ("m", "r"), ("l", "t"), ("r", "t")],
    )
    ident = rings.identity_hom(two)
    return DirectedLattice(
        lat,
        {"t": prod, "l": two, "r": two, "m": two, "a": rings.ZERO},
        {
            ("t", "l"): rings.project(prod, 0),
            ("t", "r"): rings.project(prod, 1),
            ("l", "m"): ident,
            ("r", "m"): ident,
        },
    )


def bad_table_diamond() -> DirectedLattice:
    """One edge is a table that is not a ring hom (wrong at 2 = 1 + 1)."""
    lat = Lattice(["t", "l", "r", "m", "a"],
                  [("a", "m"), ("m", "l"), ("m", "r"), ("l", "t"), ("r", "t")])
    four, two = rings.Mod(4), rings.Mod(2)
    bad = rings.table_hom(four, two, [(0, 0), (1, 1), (2, 1), (3, 1)])
    ident = rings.identity_hom(two)
    return DirectedLattice(
        lat,
        {"t": four, "l": two, "r": two, "m": two, "a": rings.ZERO},
        {("t", "l"): rings.mod_to_mod(4, 2), ("t", "r"): bad, ("l", "m"): ident, ("r", "m"): ident},
    )


def valid_finite_lattices() -> list[tuple[str, DirectedLattice]]:
    """At least 20 valid finite directed lattices for the main corpus."""
    out = [(f"z{n}", single(rings.Mod(n))) for n in (2, 3, 4, 5, 6, 7, 8, 9, 12)]
    out += [
        ("z2xz2", single(rings.Product((rings.Mod(2), rings.Mod(2))))),
        ("z2xz3", single(rings.Product((rings.Mod(2), rings.Mod(3))))),
        ("z3xz3", single(rings.Product((rings.Mod(3), rings.Mod(3))))),
        ("z2cube", single(rings.Product((rings.Mod(2),) * 3))),
        ("chain_z4_z2", chain(rings.Mod(4), rings.mod_to_mod(4, 2), rings.Mod(2))),
        ("chain_z6_z2", chain(rings.Mod(6), rings.mod_to_mod(6, 2), rings.Mod(2))),
        ("chain_z6_z3", chain(rings.Mod(6), rings.mod_to_mod(6, 3), rings.Mod(3))),
        (
            "chain_z8_z4_z2",
            chain(
                rings.Mod(8),
                rings.mod_to_mod(8, 4),
                rings.Mod(4),
                rings.mod_to_mod(4, 2),
                rings.Mod(2),
            ),
        ),
        ("chain_z9_z3", chain(rings.Mod(9), rings.mod_to_mod(9, 3), rings.Mod(3))),
        (
            "chain_z12_z6_z3",
            chain(
                rings.Mod(12),
                rings.mod_to_mod(12, 6),
                rings.Mod(6),
                rings.mod_to_mod(6, 3),
                rings.Mod(3),
            ),
        ),
        ("z6_split_diamond", z6_split_diamond()),
        ("z2_diamond", z2_diamond_with_meet()),
        ("field_diamond", field_diamond()),
    ]
    return out


@functools.lru_cache(maxsize=1)
def finite_meadows() -> tuple[tuple[str, Meadow], ...]:
    built = [(name, build_meadow(dl, mode="verify")) for name, dl in valid_finite_lattices()]
    m2 = adjoin_error(rings.Mod(2))
    built.append(("product_z2_z2", meadow_product(m2, m2)))
    built.append(("glue_z2_z2", glue(m2, m2, 2)))
    return tuple(built)


@functools.lru_cache(maxsize=1)
def hom_corpus() -> tuple[tuple[str, MeadowHom], ...]:
    """At least 50 validated homs between finite corpus structures."""
    meadows = dict(finite_meadows())
    out: list[tuple[str, MeadowHom]] = []
    pairs = [
        ("z2", "z2"), ("z3", "z3"), ("z4", "z4"), ("z6", "z6"),
        ("z2", "z2xz2"), ("z2xz2", "z2"), ("z2xz2", "z2xz2"),
        ("z4", "z2"), ("z6", "z2"), ("z6", "z3"), ("z12", "z6"),
        ("z2", "chain_z4_z2"), ("z2", "z2_diamond"),
        ("chain_z4_z2", "z2"), ("chain_z6_z2", "z2"),
        ("chain_z4_z2", "chain_z4_z2"), ("chain_z6_z3", "chain_z6_z3"),
        ("z2_diamond", "z2"), ("z2_diamond", "z2_diamond"),
        ("z2cube", "z2"), ("z2cube", "z2xz2"), ("z2xz3", "z2"), ("z2xz3", "z3"),
        ("field_diamond", "z3"),
    ]
    for src_name, dst_name in pairs:
        src, dst = meadows[src_name], meadows[dst_name]
        for k, mapping in enumerate(enumerate_meadow_hom_maps(src, dst)):
            out.append((f"{src_name}->{dst_name}#{k}", hom_from_carrier_map(src, dst, mapping)))
    return tuple(out)
