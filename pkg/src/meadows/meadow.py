"""Total arithmetic synthesized from a directed lattice of rings.

Elements carry their node, the bottom node holds the absorbing error
element (written ``a``), and the binary operations land at the meet of the
two nodes after pushing both arguments down through the transition maps.
Division is total: an element inverts at the unique maximal node where its
image is a unit, and falls back to the error element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import rings
from .errors import (
    AmbiguousInverse,
    ForeignElement,
    InfiniteCarrier,
    InvalidLattice,
    NotAZero,
)
from .lattice import DirectedLattice, dl_validate, node_key


@dataclass(frozen=True)
class MeadowElement:
    node: object
    value: rings.RingValue

    def __str__(self):
        if isinstance(self.value.ring, rings.Zero):
            return "a"
        return f"{rings.format_value(self.value)} @ {node_key(self.node)}"


@dataclass(frozen=True)
class InverseWitness:
    """Where an element's images become units, and the maximal such nodes."""

    element: MeadowElement
    support: frozenset
    maximal: frozenset


class PreMeadow:
    """Carrier and total operations, without any inverse guarantee."""

    def __init__(self, dl: DirectedLattice):
        self.dl = dl
        self.lattice = dl.lattice
        self._elements: list[MeadowElement] | None = None
        self._add_table: dict | None = None
        self._mul_table: dict | None = None

    # -- construction helpers -------------------------------------------------

    def element(self, node, raw) -> MeadowElement:
        if node not in self.lattice.nodes:
            raise ForeignElement(f"{node!r} is not a node of this structure")
        return MeadowElement(node, rings.ring_value(self.dl.ring_at[node], raw))

    def numeral(self, n: int) -> MeadowElement:
        top = self.lattice.top
        return MeadowElement(top, rings.from_int(self.dl.ring_at[top], n))

    @property
    def a(self) -> MeadowElement:
        bottom = self.lattice.bottom
        return MeadowElement(bottom, rings.RingValue(rings.ZERO, rings.TOK))

    @property
    def zero(self) -> MeadowElement:
        return self.numeral(0)

    @property
    def one(self) -> MeadowElement:
        return self.numeral(1)

    def contains(self, x) -> bool:
        return (
            isinstance(x, MeadowElement)
            and x.node in self.lattice.nodes
            and x.value.ring == self.dl.ring_at[x.node]
        )

    def _member(self, x) -> MeadowElement:
        if not self.contains(x):
            raise ForeignElement(f"{x} does not belong to this structure")
        return x

    # -- carrier ---------------------------------------------------------------

    def is_finite(self) -> bool:
        return self.dl.is_finite()

    def elements(self) -> list[MeadowElement]:
        """The full carrier in deterministic order; finite only."""
        if self._elements is None:
            if not self.is_finite():
                raise InfiniteCarrier("carrier is infinite")
            out = []
            for node in self.lattice.nodes:
                for v in rings.enumerate_ring(self.dl.ring_at[node]):
                    out.append(MeadowElement(node, v))
            self._elements = out
        return list(self._elements)

    def size(self) -> int:
        return len(self.elements())

    # -- operations --------------------------------------------------------------

    def _push(self, x: MeadowElement, node) -> rings.RingValue:
        return rings.hom_apply(self.dl.transition(x.node, node), x.value)

    def add(self, x: MeadowElement, y: MeadowElement) -> MeadowElement:
        self._member(x), self._member(y)
        if self._add_table is not None:
            return self._add_table[(x, y)]
        k = self.lattice.meet(x.node, y.node)
        return MeadowElement(k, rings.add(self._push(x, k), self._push(y, k)))

    def mul(self, x: MeadowElement, y: MeadowElement) -> MeadowElement:
        self._member(x), self._member(y)
        if self._mul_table is not None:
            return self._mul_table[(x, y)]
        k = self.lattice.meet(x.node, y.node)
        return MeadowElement(k, rings.mul(self._push(x, k), self._push(y, k)))

    def neg(self, x: MeadowElement) -> MeadowElement:
        self._member(x)
        return MeadowElement(x.node, rings.neg(x.value))

    def sub(self, x: MeadowElement, y: MeadowElement) -> MeadowElement:
        return self.add(x, self.neg(y))

    def zero_of(self, x: MeadowElement) -> MeadowElement:
        """The zero of the component containing x (not globally zero)."""
        self._member(x)
        return MeadowElement(x.node, rings.zero_value(x.value.ring))

    def component_zero(self, node) -> MeadowElement:
        return MeadowElement(node, rings.zero_value(self.dl.ring_at[node]))

    def zeros_leq(self, z: MeadowElement, z2: MeadowElement) -> bool:
        """Order on component zeros: z <= z2 iff z * z2 = z."""
        for arg in (z, z2):
            self._member(arg)
            if arg != self.zero_of(arg):
                raise NotAZero(f"{arg} is not a component zero")
        return self.mul(z, z2) == z

    # -- finite operation tables ----------------------------------------------

    def freeze_tables(self) -> None:
        """Precompute add/mul tables; speeds up exhaustive law checking."""
        if self._add_table is not None or not self.is_finite():
            return
        elems = self.elements()
        addt, mult = {}, {}
        for x in elems:
            for y in elems:
                addt[(x, y)] = self.add(x, y)
                mult[(x, y)] = self.mul(x, y)
        self._add_table, self._mul_table = addt, mult

    def operation_table(self, op: str) -> dict:
        """Explicit table for add, mul, neg, zero_of or inverse; finite only."""
        elems = self.elements()
        if op in ("add", "mul"):
            f = self.add if op == "add" else self.mul
            return {(x, y): f(x, y) for x in elems for y in elems}
        if op == "neg":
            return {x: self.neg(x) for x in elems}
        if op == "zero_of":
            return {x: self.zero_of(x) for x in elems}
        if op == "inverse":
            return {x: self.inverse(x) for x in elems}
        raise ValueError(f"unknown operation {op!r}")


class Meadow(PreMeadow):
    """A pre-meadow whose inverse is certified (or checked per call)."""

    def __init__(self, dl: DirectedLattice, status: str):
        super().__init__(dl)
        self.status = status  # "verified" (finite, exhaustive) or "lazy"

    def inverse_witness(self, x: MeadowElement) -> InverseWitness:
        """Nodes below x at which its image becomes a unit."""
        self._member(x)
        support = frozenset(
            j
            for j in self.lattice.down_set(x.node)
            if rings.is_unit(self._push(x, j))
        )
        return InverseWitness(x, support, self.lattice.maximal(support))

    def inverse(self, x: MeadowElement) -> MeadowElement:
        w = self.inverse_witness(x)
        if len(w.maximal) != 1:
            raise AmbiguousInverse(x, w.maximal)
        j = next(iter(w.maximal))
        return MeadowElement(j, rings.unit_inverse(self._push(x, j)))

    def div(self, x: MeadowElement, y: MeadowElement) -> MeadowElement:
        return self.mul(x, self.inverse(y))

    def decompose(self) -> "Decomposition":
        """Split into component rings plus transition tables built from +.

        The transitions are recovered from the meadow's own addition
        (x maps to x + z), not read off the source lattice, so a rebuild
        genuinely round-trips the operations.
        """
        elems_by_node = {}
        for x in self.elements():
            elems_by_node.setdefault(x.node, []).append(x)
        zeros = {node: self.component_zero(node) for node in self.lattice.nodes}
        # recover the node order from multiplication of component zeros
        order = [
            (n1, n2)
            for n1, n2 in itertools.product(self.lattice.nodes, repeat=2)
            if n1 != n2 and self.mul(zeros[n1], zeros[n2]) == zeros[n1]
        ]
        transitions = {}
        for lo, up in order:
            pairs = []
            for x in elems_by_node[up]:
                moved = self.add(x, zeros[lo])
                pairs.append((x.value, moved.value))
            transitions[(lo, up)] = rings.table_hom(
                self.dl.ring_at[up], self.dl.ring_at[lo], pairs
            )
        components = {
            node: (self.dl.ring_at[node], tuple(v.value for v in elems_by_node[node]))
            for node in self.lattice.nodes
        }
        return Decomposition(components=components, order=tuple(order), transitions=transitions)


@dataclass
class Decomposition:
    """Component rings indexed by node, with +-derived transition tables."""

    components: dict
    order: tuple[tuple, ...]
    transitions: dict

    def to_directed_lattice(self) -> DirectedLattice:
        from .lattice import Lattice

        nodes = list(self.components)
        lat = Lattice(nodes, self.order)
        ring_at = {n: d for n, (d, _carrier) in self.components.items()}
        edge_homs = {
            (up, lo): self.transitions[(lo, up)]
            for up, lo in lat.covers()
            if (lo, up) in self.transitions
        }
        return DirectedLattice(lat, ring_at, edge_homs)


def build_premeadow(dl: DirectedLattice, validate: bool = True) -> PreMeadow:
    """Total structure from any directed lattice; no inverse certification."""
    if validate:
        dl_validate(dl).raise_if_failed(InvalidLattice)
    return PreMeadow(dl)


def _verify_inverses(pre: Meadow, probes) -> None:
    for x in probes:
        w = pre.inverse_witness(x)
        if len(w.maximal) != 1:
            raise AmbiguousInverse(x, w.maximal)


def build_meadow(dl: DirectedLattice, mode: str = "verify") -> Meadow:
    """Build and, in verify mode, certify unique invertibility.

    Finite carriers are certified exhaustively (status "verified").  On an
    infinite carrier, verify mode probes the fixed sample pool of every
    component and the result stays "lazy": each later inverse call
    re-checks its own element.  Lazy mode skips the upfront scan entirely.
    """
    if mode not in ("verify", "lazy"):
        raise ValueError(f"unknown mode {mode!r}")
    dl_validate(dl).raise_if_failed(InvalidLattice)
    if mode == "lazy":
        return Meadow(dl, status="lazy")
    if dl.is_finite():
        m = Meadow(dl, status="verified")
        _verify_inverses(m, m.elements())
        return m
    m = Meadow(dl, status="lazy")
    probes = [
        MeadowElement(node, v)
        for node in dl.lattice.nodes
        for v in rings.sample_pool(dl.ring_at[node])
    ]
    _verify_inverses(m, probes)
    return m
