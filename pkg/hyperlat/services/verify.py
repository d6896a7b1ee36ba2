"""Self-checks of the laboratory, grouped into suites.

Every suite returns named checks; the fast form of a suite runs in
seconds, ``full`` adds the enumerations that build the Leech lattice,
walk the orbit tree or classify neighbor graphs. A check that raises a
domain error is recorded as failed with the error attached.
"""

import math
import random
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from hyperlat.core.config import settings
from hyperlat.core.exceptions import HyperlatException, ValidationError
from hyperlat.core.health import run_metadata
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.core.utils import to_jsonable
from hyperlat.models.report import CheckResult, SuiteReport
from hyperlat.services import exact
from hyperlat.services.e8orbits import e8_lattice, e8_mod_n_orbits, enumerate_e8, shell_counts
from hyperlat.services.enumerate import count_vectors, minimum, shell
from hyperlat.services.hyperbolic import LeechModel, vinberg
from hyperlat.services.lattice import (
    Lattice,
    characteristic_vector,
    direct_sum,
    discriminant_group,
    dual_basis,
    even_unimodular_lorentzian,
    hyperbolic_plane,
    integer_lattice,
    odd_lorentzian,
    orthogonal_complement,
    root_lattice,
    scaled,
)
from hyperlat.services.leech import (
    NIEMEIER_GLUE,
    NIEMEIER_ROOT_SYSTEMS,
    characteristic_norm_counts,
    halving_chain,
    holy_construction,
    lattice26_noroots,
    leech_lattice,
    niemeier_from_glue,
    niemeier_inventory,
    niemeier_names,
    niemeier_record,
    root_square_sum,
)
from hyperlat.services.neighbor import classify_dimension, graph_checks
from hyperlat.services.orbits25 import check_norm2_identities, enumerate_orbits, tau
from hyperlat.services.rootsys import (
    Component,
    RootDatum,
    fixed_rank,
    identify_roots,
    max_orthogonal_roots,
    s_rho_roots_congruence,
)
from hyperlat.services.tables import (
    e8_row_x,
    e8_rows,
    norm2_row_identities,
    norm2_rows,
    norm4_row_identities,
    norm4_rows,
    row_datum,
)
from hyperlat.services.theta import (
    bimodular_basis,
    bimodular_theta,
    characteristic_counts_from,
    characteristic_theta_counts,
    count_characteristic,
    decompose,
    height_term,
    leech_theta,
    solve_coefficients,
    standard_series,
    theta_series,
)

logger = get_logger(__name__)

Outcome = Tuple[bool, Dict[str, Any]]
Suite = Callable[[bool], List[CheckResult]]

SUITES: Dict[str, Suite] = {}

SMALL_ROOT_LATTICES = ("a1", "a2", "a5", "d4", "d5", "e6", "e7", "e8")


def suite(name: str) -> Callable[[Suite], Suite]:
    def register(func: Suite) -> Suite:
        SUITES[name] = func
        return func
    return register


def _check(name: str, func: Callable[[], Outcome]) -> CheckResult:
    try:
        passed, details = func()
    except HyperlatException as exc:
        logger.warning(f"check {name!r} raised {exc.__class__.__name__}: {exc.detail}")
        return CheckResult(name=name, passed=False, details=to_jsonable({"error": exc.detail, **exc.context}))
    return CheckResult(name=name, passed=bool(passed), details=to_jsonable(details))


def _all_components(max_rank: int = 24) -> List[Component]:
    out = [Component("a", n) for n in range(1, max_rank + 1)]
    out += [Component("d", n) for n in range(4, max_rank + 1)]
    out += [Component("e", n) for n in (6, 7, 8)]
    return out


def _failing(items, predicate) -> List[str]:
    return [str(x) for x in items if not predicate(x)]


# ----------------------------------------------------------------- lattice basics

def _dual_pairing() -> Outcome:
    bad = []
    for name in SMALL_ROOT_LATTICES:
        lat = root_lattice(name)
        if exact.mat_mul(dual_basis(lat), lat.gram) != exact.identity(lat.rank):
            bad.append(name)
    return not bad, {"lattices": list(SMALL_ROOT_LATTICES), "failing": bad}


def _sympy_invariants(lattice: Lattice) -> Tuple[int, List[int]]:
    m = Matrix(lattice.int_gram)
    snf = smith_normal_form(m, domain=ZZ)
    diag = sorted(abs(int(snf[i, i])) for i in range(lattice.rank))
    return int(m.det()), [d for d in diag if d != 1]


def _discriminant_orders() -> Outcome:
    bad = {}
    for name in SMALL_ROOT_LATTICES + ("d4 a2", "a1^3"):
        lat = root_lattice(name)
        group = discriminant_group(lat)
        det, orders = _sympy_invariants(lat)
        if group.order != abs(det) or sorted(abs(d) for d in group.orders) != orders or lat.determinant != det:
            bad[name] = {"orders": list(group.orders), "expected": orders, "det": det}
    return not bad, {"failing": bad}


def _characteristic_norms() -> Outcome:
    lattices = [
        integer_lattice(3), integer_lattice(5), root_lattice("e8"), hyperbolic_plane(),
        odd_lorentzian(9), even_unimodular_lorentzian(9),
    ]
    found = {}
    for lat in lattices:
        pos, neg, _ = lat.signature
        c = characteristic_vector(lat)
        found[lat.label] = {"norm": lat.norm(c), "signature": pos - neg}
    ok = all((v["norm"] - v["signature"]) % 8 == 0 for v in found.values())
    return ok, found


@suite("ch0")
def lattice_basics(full: bool = False) -> List[CheckResult]:
    return [
        _check("dual basis pairs to the identity", _dual_pairing),
        _check("discriminant group matches the Smith form", _discriminant_orders),
        _check("characteristic norm is the signature mod 8", _characteristic_norms),
    ]


# ----------------------------------------------------------------- root systems

def _coxeter_numbers() -> Outcome:
    comps = _all_components()
    bad = _failing(comps, lambda c: c.root_count == c.coxeter_number * c.rank)
    formulas = {"e6": Fraction(78), "e7": Fraction(399, 2), "e8": Fraction(620)}
    bad += [k for k, v in formulas.items() if RootDatum.parse(k).weyl_vector_norm != v]
    bad += _failing(
        [c for c in comps if c.family == "a"],
        lambda c: c.weyl_vector_norm == Fraction(c.rank * (c.rank + 1) * (c.rank + 2), 12),
    )
    return not bad, {"components": len(comps), "failing": bad}


def _congruence() -> Outcome:
    bad = _failing(_all_components(), s_rho_roots_congruence)
    return not bad, {"failing": bad, "example e8": [8, 4 * 620, 120]}


def _fixed_rank() -> Outcome:
    bad = _failing(_all_components(), lambda c: fixed_rank(c) == c.s_invariant)
    return not bad, {"failing": bad}


def _identified_roots() -> Outcome:
    bad = {}
    for name in ("a2", "a3", "d4", "d5", "e6", "a2 a1"):
        lat = root_lattice(name)
        expected = RootDatum.parse(name)
        analysis = identify_roots(lat)
        rho2 = lat.norm(analysis.weyl.rho)
        if analysis.datum != expected or len(analysis.roots) != expected.root_count or rho2 != expected.weyl_vector_norm:
            bad[name] = {"datum": str(analysis.datum), "roots": len(analysis.roots), "rho_norm": rho2}
    return not bad, {"failing": bad}


def _orthogonal_roots() -> Outcome:
    found = {name: len(max_orthogonal_roots(root_lattice(name))) for name in ("a2", "a3", "a4", "d4", "d5")}
    ok = all(v == RootDatum.parse(k).s_invariant for k, v in found.items())
    return ok, found


def _vinberg_ii91() -> Outcome:
    lattice = even_unimodular_lorentzian(9)
    run = vinberg(lattice, (0,) * 8 + (0, 1))
    return len(run.roots) == 10 and run.finite_volume is not False, {
        "roots": len(run.roots), "termination": run.termination,
    }


@suite("ch1")
def root_systems(full: bool = False) -> List[CheckResult]:
    out = [
        _check("coxeter numbers and rho^2 up to rank 24", _coxeter_numbers),
        _check("S + 4 rho^2 + roots/2 = 0 mod 4", _congruence),
        _check("opposition fixed rank equals S", _fixed_rank),
        _check("identified root systems of small lattices", _identified_roots),
        _check("largest orthogonal root sets have S elements", _orthogonal_roots),
    ]
    if full:
        out.append(_check("II_9,1 has 10 simple roots", _vinberg_ii91))
    return out


# ----------------------------------------------------------------- Niemeier lattices

def _niemeier_formulas() -> Outcome:
    bad = []
    for text in NIEMEIER_ROOT_SYSTEMS:
        d = RootDatum.parse(text)
        if d.is_empty:
            continue
        h = d.common_coxeter_number
        ok = (
            h is not None and d.rank == 24 and d.root_count == 24 * h
            and d.weyl_vector_norm == 2 * h * (h + 1) and math.isqrt(d.determinant) ** 2 == d.determinant
        )
        if not ok:
            bad.append(text)
    names = niemeier_names()
    return not bad and len(set(names)) == 24, {"names": names, "failing": bad}


def _e8_cubed(rng: random.Random) -> Outcome:
    record = niemeier_record(root_lattice("e8^3"))
    sums = []
    for _ in range(5):
        y = [rng.randint(-2, 2) for _ in range(24)]
        total, expected = root_square_sum(record, y)
        sums.append(total == expected)
    leech = holy_construction(record)
    chain = halving_chain(record)
    checks = record.checks()
    ok = all(checks.values()) and all(sums) and minimum(leech) == 4 and chain[-1].h == 0
    return ok, {"checks": checks, "root square sums": sums, "chain": [r.name for r in chain]}


def _leech_shell() -> Outcome:
    leech = leech_lattice()
    count = len(shell(leech, 4))
    return count == 196560 and not shell(leech, 2), {"norm 4 vectors": count}


def _neighbor_graph_8() -> Outcome:
    graph = classify_dimension(8, root_lattice("e8"), rng=random.Random(settings.random_seed))
    checks = graph_checks(graph)
    return all(checks.values()) and len(graph.even_nodes) == 1, {"checks": checks, "nodes": len(graph.nodes)}


@suite("ch2")
def niemeier(full: bool = False) -> List[CheckResult]:
    out = [_check("Niemeier root systems: roots = 24h, rho^2 = 2h(h+1)", _niemeier_formulas)]
    if full:
        rng = random.Random(settings.random_seed)
        out += [
            _check("e8^3: record, holy construction and halving", lambda: _e8_cubed(rng)),
            _check("Leech lattice has 196560 minimal vectors", _leech_shell),
            _check("neighbor graph of dimension 8", _neighbor_graph_8),
        ]
    return out


# ----------------------------------------------------------------- the involution tau

def tau_witnesses(model: LeechModel, count: int, rng: random.Random) -> List[Tuple[tuple, tuple]]:
    """Random (u, v) with u of norm -2 or -4 and positive height."""
    out: List[Tuple[tuple, tuple]] = []
    while len(out) < count:
        lam = [rng.randint(-2, 2) for _ in range(model.dim)]
        a = rng.randint(1, 3)
        target = rng.choice((2, 4))
        num = model.leech.norm(lam) + target
        if num % (2 * a):
            continue
        u = model.vector(lam, a, num // (2 * a))
        v = tuple(rng.randint(-3, 3) for _ in range(model.dim + 2))
        out.append((u, v))
    return out


def _tau_identities(model: LeechModel, witnesses) -> Outcome:
    bad = []
    for u, v in witnesses:
        image = tau(u, v, model)
        if tau(u, image, model) != tuple(v) or model.inner(u, v) + model.inner(u, image) != model.norm(u):
            bad.append({"u": u, "v": v})
    return not bad, {"witnesses": len(witnesses), "failing": bad[:5]}


def _sphere_pairings(model: LeechModel, witnesses) -> Outcome:
    bad = []
    for u, _ in witnesses:
        for i in range(3):
            for lam in model.ri_points(u, i):
                if model.inner(model.simple_root(lam), u) != -i:
                    bad.append({"u": u, "i": i, "lambda": lam})
    return not bad, {"failing": bad[:5]}


def _reduction(model: LeechModel, witnesses) -> Outcome:
    bad = []
    for u, _ in witnesses:
        reduced, _ = model.reduce_to_domain(u)
        again, steps = model.reduce_to_domain(reduced)
        if not model.in_domain(reduced) or steps or again != reduced or model.norm(reduced) != model.norm(u):
            bad.append(u)
    return not bad, {"failing": bad[:5]}


def small_model() -> LeechModel:
    """e8(2) + U: minimal norm 4 like the Leech lattice, so its simple roots pair nonpositively."""
    return LeechModel(scaled(root_lattice("e8"), 2).with_label("e8(2)"))


@suite("ch3")
def involution(full: bool = False) -> List[CheckResult]:
    rng = random.Random(settings.random_seed)
    model = LeechModel(leech_lattice()) if full else small_model()
    witnesses = tau_witnesses(model, 100 if full else 25, rng)
    return [
        _check("tau is an involution with (u, v) + (u, tau v) = u^2", lambda: _tau_identities(model, witnesses)),
        _check("simple roots of R_i(u) pair to -i with u", lambda: _sphere_pairings(model, witnesses)),
        _check("reduction lands in the fundamental domain", lambda: _reduction(model, witnesses)),
    ]


# ----------------------------------------------------------------- orbit tables

def _table_identities(rows, identities, name_of) -> List[CheckResult]:
    failing: Dict[str, List[str]] = {}
    for row in rows:
        for key, ok in identities(row).items():
            failing.setdefault(key, [])
            if not ok:
                failing[key].append(name_of(row))
    return [CheckResult(name=key, passed=not bad, details={"failing": bad}) for key, bad in failing.items()]


def _enumerated_norm2(max_height: int) -> Outcome:
    rng = random.Random(settings.random_seed)
    model = LeechModel(leech_lattice())
    inventory = niemeier_inventory(model.leech, rng=rng)
    records = enumerate_orbits(-2, max_height, inventory=inventory, model=model, rng=rng)
    found = sorted((r.height, str(r.datum)) for r in records)
    published = sorted((r.height, str(row_datum(r.roots))) for r in norm2_rows() if r.height <= max_height)
    identities = [k for r in records for k, ok in check_norm2_identities(r).items() if not ok]
    subset = all(f in published for f in found)
    ok = subset and not identities and (found == published or not inventory.seeded)
    return ok, {
        "found": len(found), "published": len(published), "inventory_complete": inventory.seeded,
        "failing identities": identities,
    }


@suite("ch4")
def orbit_tables(full: bool = False) -> List[CheckResult]:
    out = _table_identities(norm2_rows(), norm2_row_identities, lambda r: r.name)
    out += _table_identities(norm4_rows(), norm4_row_identities, lambda r: f"{r.height}/{r.dim_label}/{r.roots}")
    if full:
        out.append(_check("enumerated norm -2 orbits up to height 6 are published rows", lambda: _enumerated_norm2(6)))
    return out


# ----------------------------------------------------------------- theta functions

def _e8_decomposition() -> Outcome:
    a = decompose(root_lattice("e8")).a
    return a == [1, -16], {"a": a}


def _leech_series() -> Outcome:
    # theta_Λ = theta_E8^3 - 720 Delta(q^2), with theta_E8 enumerated
    e8 = theta_series(root_lattice("e8"), 6)
    built = (e8 ** 3 - standard_series("tau", 7) * 720).truncate(7)
    solved = leech_theta(7)
    expected = [1, 0, 0, 0, 196560, 0, 16773120]
    ok = [built[k] for k in range(7)] == [solved[k] for k in range(7)] == expected
    return ok, {"from e8": built.coefficients(), "solved": solved.coefficients()}


def _leech_shells() -> Outcome:
    counts = count_vectors(leech_lattice(), 6, budget=10**8)
    series = leech_theta(7)
    ok = all(counts.get(k, 0) == series[k] for k in range(7)) and counts.get(6) == 16773120
    return ok, {"counts": counts}


def _bimodular_basis() -> Outcome:
    basis = bimodular_basis(5)
    a, c = basis["theta_a"], basis["theta_c"]
    ok = [a[0], a[2], a[4]] == [1, -18, 143496] and [c[0], c[2], c[4]] == [0, 1, -22]
    return ok, {k: v.coefficients() for k, v in basis.items()}


def _height_term() -> Outcome:
    return height_term(-2) == bimodular_basis(9)["theta_c"] * 12, {}


def _leech_plus_a1() -> Outcome:
    theta_a1 = standard_series("theta1", 5).substitute(2)
    return bimodular_theta(1, 2) == leech_theta(9) * theta_a1, {}


def _type2_norm4_counts() -> Outcome:
    found = {t: bimodular_theta(t, 0)[4] for t in range(4, 11)}
    return all(v == 143496 - 264 * t for t, v in found.items()), found


def _no_roots_26() -> Outcome:
    a = solve_coefficients(26, [1, 0, 0], known={3: 0})
    counts = characteristic_counts_from(26, a)
    return a == [1, -52, 156, 0] and counts == {2: 0, 10: 624}, {"a": a, "counts": counts}


def _norm4_characteristic() -> Outcome:
    found = {}
    for t in range(3, 12):
        a = solve_coefficients(25, [1, 0, 8 * t - 20], known={3: 0})
        found[t] = characteristic_counts_from(25, a).get(Fraction(9))
    return all(v == 16 * t + 160 for t, v in found.items()), found


def _characteristic_direct() -> Outcome:
    lattice = direct_sum(root_lattice("e8^3"), integer_lattice(2))
    predicted = characteristic_theta_counts(lattice)
    direct = count_characteristic(lattice, 2)
    return predicted.get(Fraction(2)) == direct == 4, {"predicted": predicted, "direct": direct}


def _norm2_perp_roots() -> List[int]:
    """Root counts of u^perp for a few norm -2 vectors u of e8^3 (+) U."""
    ambient = direct_sum(root_lattice("e8^3"), hyperbolic_plane())
    r = [1] + [0] * 23
    x = [1] + [0] * 7 + [1] + [0] * 15  # norm 4, across two e8 components
    counts = []
    for u in ([0] * 24 + [1, 1], r + [1, 2], x + [1, 3]):
        if ambient.norm(u) != -2:
            raise ValidationError(detail=f"{u} does not have norm -2")
        perp, _ = orthogonal_complement(ambient, [u])
        counts.append(len(shell(perp, 2)))
    return counts


def _root_counts_mod4() -> Outcome:
    computed = _norm2_perp_roots()
    bad = [r.name for r in norm2_rows() if row_datum(r.roots).root_count % 4 != 2]
    ok = not bad and all(c % 4 == 2 for c in computed)
    return ok, {"computed": computed, "failing rows": bad}


def _lattice26() -> Outcome:
    components, words = next(entry for entry in NIEMEIER_GLUE if entry[0] == "a4^6")
    result = lattice26_noroots(record=niemeier_record(niemeier_from_glue(components, words)))
    counts = characteristic_norm_counts(result.lattice, 10)
    return dict(counts) == {10: 624}, {"characteristic": result.characteristic, "counts": counts}


@suite("ch5")
def theta_functions(full: bool = False) -> List[CheckResult]:
    out = [
        _check("e8 decomposes as theta^8 - 16 delta8", _e8_decomposition),
        _check("Leech theta series from e8 cubed and Delta", _leech_series),
        _check("bimodular basis series", _bimodular_basis),
        _check("norm -2 height term is 12 theta_c", _height_term),
        _check("Leech + a1 theta series", _leech_plus_a1),
        _check("type 2 perp lattices have 143496 - 264t norm 4 vectors", _type2_norm4_counts),
        _check("26 dimensions without roots: 624 characteristic vectors of norm 10", _no_roots_26),
        _check("norm -4 without norm 1 vectors: 16t + 160 characteristic vectors of norm 9", _norm4_characteristic),
        _check("characteristic counts from theta agree with enumeration", _characteristic_direct),
        _check("norm -2 root counts are 2 mod 4", _root_counts_mod4),
    ]
    if full:
        out.append(_check("Leech lattice shells of norm 4 and 6 by enumeration", _leech_shells))
        out.append(_check("26 dimensions without roots: 624 enumerated characteristic vectors of norm 10", _lattice26))
    return out


# ----------------------------------------------------------------- e8 orbits

def _published_rows(max_n: int) -> Outcome:
    rows = enumerate_e8(max_n)
    table = {row.x: row for row in e8_rows()}
    bad = []
    computed = [r for r in rows if r.n_of_x >= 1]
    for r in computed:
        pub = table.get(r.label)
        if pub is None or (pub.n, pub.norm, pub.size, pub.nearest) != (r.n_of_x, r.norm, r.orbit_size, r.nearest):
            bad.append(r.label)
    bad += [x for x, row in table.items() if row.n <= max_n and e8_row_x(row) not in {r.x for r in rows}]
    return not bad and len(computed) == sum(1 for row in table.values() if row.n <= max_n), {"failing": bad}


def _mod_n(max_n: int) -> Outcome:
    rows = enumerate_e8(max_n)
    counts = {n: len(e8_mod_n_orbits(n, rows)) for n in range(1, max_n + 1)}
    return counts.get(3) == 5, {"orbits": counts}


def _shells(max_norm: int) -> Outcome:
    rows = enumerate_e8(max_norm // 2 + 1)
    from_orbits = shell_counts(rows, max_norm)
    direct = count_vectors(e8_lattice(), max_norm)
    return from_orbits == direct, {"orbits": from_orbits, "enumerated": direct}


@suite("e8")
def e8_orbits(full: bool = False) -> List[CheckResult]:
    return [
        _check("alcove rows match the published table", lambda: _published_rows(6)),
        _check("orbits on e8/n e8 add up to n^8", lambda: _mod_n(6)),
        _check("orbit sizes give the e8 shells", lambda: _shells(12 if full else 8)),
    ]


# ----------------------------------------------------------------- driver

def run_suite(name: str, full: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise ValidationError(detail=f"unknown suite {name!r}", context={"suites": sorted(SUITES)})
    start = time.perf_counter()
    checks = SUITES[name](full)
    report = SuiteReport(
        suite=name,
        full=full,
        passed=all(c.passed for c in checks),
        checks=checks,
        seconds=round(time.perf_counter() - start, 3),
        metadata=run_metadata(include_system=False),
    )
    log_structured(logger, "info" if report.passed else "warning", "verify suite", {
        "suite": name, "full": full, "checks": len(checks), "failures": [c.name for c in report.failures],
    })
    return report


def run_all(full: bool = False, names: Optional[List[str]] = None) -> List[SuiteReport]:
    return [run_suite(name, full) for name in (names or list(SUITES))]
