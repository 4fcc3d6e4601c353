"""Equational law suites with exhaustive or seeded-sample checking.

Every law is data: a name plus equation text parsed by the expression
parser, so the tables below are simultaneously the documentation and the
executable definition.  Guarded laws carry premises ("x != a"), and a law
may be a disjunction of equations (separated by '|').
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import rings
from .errors import InfiniteCarrier
from .meadow import Meadow, MeadowElement, PreMeadow
from .report import EXHAUSTIVE, AxiomReport, LawResult, sampled
from .terms import Term, Var, eval_term, parse

EXHAUSTIVE_TUPLE_LIMIT = 10_000


@dataclass(frozen=True)
class Law:
    name: str
    variables: tuple[str, ...]
    premises: tuple[tuple[Term, Term, bool], ...]  # (lhs, rhs, must_be_equal)
    alternatives: tuple[tuple[Term, Term], ...]  # law holds if any equation does
    needs_inverse: bool


def _variables(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for f in getattr(t, "__dataclass_fields__", {}):
        v = getattr(t, f)
        if isinstance(v, Term):
            out |= _variables(v)
    return out


def _uses_inverse(t: Term) -> bool:
    from .terms import Div, Inv, Pow

    if isinstance(t, (Div, Inv)):
        return True
    if isinstance(t, Pow) and t.exponent < 0:
        return True
    for f in getattr(t, "__dataclass_fields__", {}):
        v = getattr(t, f)
        if isinstance(v, Term) and _uses_inverse(v):
            return True
    return False


def _split_equation(text: str) -> tuple[Term, Term, bool]:
    if "!=" in text:
        lhs, rhs = text.split("!=")
        return parse(lhs), parse(rhs), False
    lhs, rhs = text.split("=")
    return parse(lhs), parse(rhs), True


def law(name: str, body: str, given: tuple[str, ...] = ()) -> Law:
    premises = tuple(_split_equation(g) for g in given)
    alternatives = tuple(_split_equation(alt)[:2] for alt in body.split("|"))
    names: set[str] = set()
    needs_inv = False
    for lhs, rhs, _ in premises:
        names |= _variables(lhs) | _variables(rhs)
        needs_inv = needs_inv or _uses_inverse(lhs) or _uses_inverse(rhs)
    for lhs, rhs in alternatives:
        names |= _variables(lhs) | _variables(rhs)
        needs_inv = needs_inv or _uses_inverse(lhs) or _uses_inverse(rhs)
    return Law(name, tuple(sorted(names)), premises, alternatives, needs_inv)


PM_LAWS = (
    law("PM1", "(x + y) + z = x + (y + z)"),
    law("PM2", "x + y = y + x"),
    law("PM3", "x + 0 = x"),
    law("PM4", "x + (-x) = 0*x"),
    law("PM5", "(x*y)*z = x*(y*z)"),
    law("PM6", "x*y = y*x"),
    law("PM7", "1*x = x"),
    law("PM8", "x*(y + z) = x*y + x*z"),
    law("PM9", "-(-x) = x"),
    law("PM10", "0*(x + y) = 0*x*y"),
)

CM_LAWS = (
    law("M1", "(x + y) + z = x + (y + z)"),
    law("M2", "x + y = y + x"),
    law("M3", "x + 0 = x"),
    law("M4", "x + (-x) = 0*x"),
    law("M5", "(x*y)*z = x*(y*z)"),
    law("M6", "x*y = y*x"),
    law("M7", "1*x = x"),
    law("M8", "x*(y + z) = x*y + x*z"),
    law("M9", "-(-x) = x"),
    law("M10", "x * x^-1 = 1 + 0*x^-1"),
    law("M11", "(x*y)^-1 = x^-1 * y^-1"),
    law("M12", "(1 + 0*x)^-1 = 1 + 0*x"),
    law("M13", "0^-1 = a"),
    law("M14", "x + a = a"),
)

IDENTITY_LAWS = (
    law("0*0 = 0", "0*0 = 0"),
    law("-0 = 0", "-0 = 0"),
    law("0*x = 0*(-x)", "0*x = 0*(-x)"),
    law("-(x*y) = x*(-y)", "-(x*y) = x*(-y)"),
    law("(-x)*(-y) = x*y", "(-x)*(-y) = x*y"),
    law("(-1)*x = -x", "(-1)*x = -x"),
    law("0*(x*x) = 0*x", "0*(x*x) = 0*x"),
    law("(x*x^-1)*x^-1 = x^-1", "(x*x^-1)*x^-1 = x^-1"),
    law("(-x)^-1 = -(x^-1)", "(-x)^-1 = -(x^-1)"),
    law("(x*x^-1)^-1 = x*x^-1", "(x*x^-1)^-1 = x*x^-1"),
    law("(x^-1)^-1 = x + 0*x^-1", "(x^-1)^-1 = x + 0*x^-1"),
    law("x*a = a", "x*a = a"),
    law("-a = a", "-a = a"),
    law("a^-1 = a", "a^-1 = a"),
    law("0*x = a -> x = a", "x = a", given=("0*x = a",)),
    law("0*x*y = 0 -> 0*x = 0", "0*x = 0", given=("0*x*y = 0",)),
)

ASSEMBLY_ADD_LAWS = (
    law("A1-identity", "x + 0*x = x"),
    law("A1-unique", "0*x + f = 0*x", given=("x + f = x",)),
    law("A2-inverse", "x + (-x) = 0*x"),
    law("A2-stable", "0*(-x) = 0*x"),
    law("A3", "0*(x + y) = 0*x + 0*y"),
)

ASSEMBLY_MUL_LAWS = (
    law("U-closure", "0*(x*y) = 0*((x*y)^-1)"),
    law("A1-identity", "x*(1 + 0*x) = x"),
    law("A1-unique", "(1 + 0*x)*f = 1 + 0*x", given=("x*f = x",)),
    law("A2-inverse", "x * x^-1 = 1 + 0*x"),
    law("A2-stable", "1 + 0*(x^-1) = 1 + 0*x"),
    law("A3", "1 + 0*(x*y) = (1 + 0*x)*(1 + 0*y)"),
)

STRONG_ASSEMBLY_LAWS = (
    law("A3'", "0*(x + y) = 0*x | 0*(x + y) = 0*y"),
)

NVL_LAWS = (law("NVL", "0*x = 0", given=("x != a",)),)
AVL_LAWS = (law("AVL", "0*x = x", given=("x^-1 = a",)),)
CIL_LAWS = (law("CIL", "x * x^-1 = 1", given=("x != 0", "x != a")),)

SUITES: dict[str, tuple[Law, ...]] = {
    "PM": PM_LAWS,
    "CM": CM_LAWS,
    "Identities": IDENTITY_LAWS,
    "AssemblyAdd": ASSEMBLY_ADD_LAWS,
    "AssemblyMul": ASSEMBLY_MUL_LAWS,
    "StrongAssembly": STRONG_ASSEMBLY_LAWS,
    "NVL": NVL_LAWS,
    "AVL": AVL_LAWS,
    "CIL": CIL_LAWS,
}


def _suite_needs_inverse(laws) -> bool:
    return any(l.needs_inverse for l in laws)


def _carrier_pool(m: PreMeadow) -> list[MeadowElement]:
    """Fixed probe elements: full carrier when finite, sample pools otherwise."""
    if m.is_finite():
        return m.elements()
    out = []
    for node in m.lattice.nodes:
        for v in rings.sample_pool(m.dl.ring_at[node]):
            out.append(MeadowElement(node, v))
    return out


def _unit_locus(m: Meadow, pool) -> list[MeadowElement]:
    """Elements whose component zero matches their inverse's component zero."""
    return [x for x in pool if m.zero_of(x) == m.zero_of(m.inverse(x))]


def _check_law(l: Law, m: PreMeadow, pool, exhaustive: bool, budget: int, rng) -> LawResult:
    k = len(l.variables)
    if exhaustive:
        tuples = itertools.product(pool, repeat=k) if k else [()]
    else:
        total = len(pool) ** k if k else 1
        if total <= budget:
            tuples = itertools.product(pool, repeat=k) if k else [()]
        else:
            tuples = (tuple(rng.choice(pool) for _ in range(k)) for _ in range(budget))
    checked = 0
    witness = None
    for combo in tuples:
        checked += 1
        env = dict(zip(l.variables, combo))
        if any(
            (eval_term(p_lhs, m, env) == eval_term(p_rhs, m, env)) != want
            for p_lhs, p_rhs, want in l.premises
        ):
            continue
        if not any(
            eval_term(lhs, m, env) == eval_term(rhs, m, env) for lhs, rhs in l.alternatives
        ):
            witness = combo
            break
    return LawResult(
        name=l.name,
        status="pass" if witness is None else "fail",
        witnesses=[witness] if witness is not None else [],
        checked=checked,
    )


def check_axioms(
    m: PreMeadow,
    suite: str,
    budget: int = 512,
    seed: int = 0,
    exhaustive: bool | None = None,
) -> AxiomReport:
    """Run one named suite over the carrier.

    Finite carriers default to exhaustive checking while the tuple count
    per law stays within EXHAUSTIVE_TUPLE_LIMIT; pass ``exhaustive=True``
    to force a full scan, or ``False`` to force seeded sampling.  Infinite
    carriers always sample a fixed deterministic pool.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; options: {sorted(SUITES)}")
    laws = SUITES[suite]
    if _suite_needs_inverse(laws) and not isinstance(m, Meadow):
        raise ValueError(f"suite {suite!r} uses the inverse and needs a meadow")

    finite = m.is_finite()
    if exhaustive is None:
        max_arity = max((len(l.variables) for l in laws), default=0)
        exhaustive = finite and len(_carrier_pool(m)) ** max_arity <= EXHAUSTIVE_TUPLE_LIMIT
    if exhaustive and not finite:
        raise InfiniteCarrier("exhaustive checking needs a finite carrier")
    if finite:
        m.freeze_tables()

    pool = _carrier_pool(m)
    if suite == "AssemblyMul":
        pool = _unit_locus(m, pool)

    rng = random.Random(seed)
    results = [_check_law(l, m, pool, exhaustive, budget, rng) for l in laws]
    mode = EXHAUSTIVE if exhaustive else sampled(budget)
    return AxiomReport(suite=suite, mode=mode, laws=results)


# ---------------------------------------------------------------------------
# structural characterizations


def _minimal_above_bottom(m: PreMeadow):
    lat = m.lattice
    return lat.minimal([n for n in lat.nodes if n != lat.bottom])


def _two_node_field(m: PreMeadow) -> bool:
    lat = m.lattice
    return len(lat.nodes) == 2 and rings.is_field(m.dl.ring_at[lat.top])


def check_characterizations(m: Meadow, which: str) -> AxiomReport:
    """Compare a syntactic law with its independently computed lattice shape.

    NVL_struct      : NVL holds  iff  the zero lattice has exactly 2 nodes
    AVL_struct      : AVL holds  implies  minimal non-bottom components are fields
    NVL_AVL_struct  : NVL and AVL  iff  two nodes with a field on top
    CIL_struct      : CIL holds  iff  two nodes with a field on top
    """
    if not m.is_finite():
        raise InfiniteCarrier("characterizations are checked on finite carriers")
    report = AxiomReport(suite=which, mode=EXHAUSTIVE, laws=[])

    def syntactic(name: str) -> bool:
        return check_axioms(m, name, exhaustive=True).ok

    if which == "NVL_struct":
        syn = syntactic("NVL")
        struct = len(m.lattice.nodes) == 2
        ok = syn == struct
    elif which == "AVL_struct":
        syn = syntactic("AVL")
        struct = all(
            rings.is_field(m.dl.ring_at[n]) for n in _minimal_above_bottom(m)
        )
        ok = (not syn) or struct
    elif which == "NVL_AVL_struct":
        syn = syntactic("NVL") and syntactic("AVL")
        struct = _two_node_field(m)
        ok = syn == struct
    elif which == "CIL_struct":
        syn = syntactic("CIL")
        struct = _two_node_field(m)
        ok = syn == struct
    else:
        raise ValueError(f"unknown characterization {which!r}")
    report.laws.append(
        LawResult(
            name=which,
            status="pass" if ok else "fail",
            witnesses=[] if ok else [(f"syntactic={syn}", f"structural={struct}")],
            checked=1,
        )
    )
    return report


def find_counterexample(dl, law_name: str, mode_budget: int = 512, seed: int = 0):
    """First witness violating the law on the structure over ``dl``, or None.

    Accepts invalid directed lattices on purpose: this is the regression
    tool for broken transition tables.  The special law name
    "unique-maximal-J_x" scans invertibility supports instead.
    """
    from .meadow import Meadow as _Meadow

    m = _Meadow(dl, status="lazy")
    if law_name == "unique-maximal-J_x":
        for x in _carrier_pool(m):
            w = m.inverse_witness(x)
            if len(w.maximal) != 1:
                return (x,)
        return None
    for suite in SUITES.values():
        for l in suite:
            if l.name == law_name:
                pool = _carrier_pool(m)
                rng = random.Random(seed)
                result = _check_law(l, m, pool, m.is_finite(), mode_budget, rng)
                return tuple(result.witnesses[0]) if result.witnesses else None
    raise ValueError(f"unknown law {law_name!r}")
