"""Leech and Niemeier lattices.

Every Niemeier lattice N is w^perp / w for a primitive norm 0 vector w of
II_{25,1}. With II_{25,1} = N (+) U and rho the Weyl vector of N, the
vector (rho, h, h+1) has norm 0 and corresponds to the Leech lattice;
conversely the norm 0 vectors of the fundamental domain of Λ (+) U sit over
the deep holes of Λ.

Sign conventions: simple roots are outward, (rho, r) = -1 for each of
them, and the highest root theta has (theta, rho) = h - 1.
"""

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from hyperlat.core.config import settings
from hyperlat.core.exceptions import ConstructionError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.services import exact
from hyperlat.services.corpus import CorpusStore, get_or_build
from hyperlat.services.enumerate import EnumerationRequest, closest_vectors, lll_reduce, shell
from hyperlat.services.hyperbolic import LeechModel, norm0_classify, pairing_partner
from hyperlat.services.lattice import (
    Lattice,
    change_basis,
    cartan_matrix,
    characteristic_vectors,
    direct_sum,
    glue,
    hyperbolic_plane,
    integer_lattice,
    isotropic_quotient,
    negated,
    root_lattice,
    sublattice,
)
from hyperlat.services.neighbor import classify_dimension, even_neighbor_bases, reduce_mod_2
from hyperlat.services.rootsys import RootAnalysis, RootDatum, affine_datum, identify_roots

logger = get_logger(__name__)

NIEMEIER_ROOT_SYSTEMS = (
    "", "a1^24", "a2^12", "a3^8", "a4^6", "a5^4 d4", "d4^6", "a6^4", "a7^2 d5^2", "a8^3",
    "a9^2 d6", "d6^4", "e6^4", "a11 d7 e6", "a12^2", "d8^3", "a15 d9", "a17 e7",
    "d10 e7^2", "d12^2", "a24", "d16 e8", "e8^3", "d24",
)


def niemeier_names() -> List[str]:
    return [RootDatum.parse(s).niemeier_name() for s in NIEMEIER_ROOT_SYSTEMS]


def _even_permutation(p: Sequence) -> bool:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]) % 2 == 0


def _cyclic(head: str, body: str, tail: str = "") -> Tuple[str, ...]:
    """``head`` + every cyclic shift of ``body`` + ``tail``."""
    return tuple(head + body[i:] + body[:i] + tail for i in range(len(body)))


# Glue codes of the Niemeier lattices with roots, one digit per component.
# A digit k is k times the first fundamental weight of a_n or the minuscule
# weight of e6 and e7; for d_n the digits 1, 2, 3 are the classes s, v, c.
NIEMEIER_GLUE: Tuple[Tuple[str, Tuple[str, ...]], ...] = (
    ("d24", ("1",)),
    ("d16 e8", ("10",)),
    ("e8^3", ()),
    ("a24", ("5",)),
    ("d12^2", ("12", "21")),
    ("a17 e7", ("31",)),
    ("d10 e7^2", ("110", "301")),
    ("a15 d9", ("21",)),
    ("d8^3", ("122", "212", "221")),
    ("a12^2", ("15",)),
    ("a11 d7 e6", ("111",)),
    ("e6^4", _cyclic("1", "012")),
    ("a9^2 d6", ("240", "501", "053")),
    ("d6^4", tuple("".join(p) for p in itertools.permutations("0123") if _even_permutation(p))),
    ("a8^3", _cyclic("", "114")),
    ("a7^2 d5^2", ("1112", "1721")),
    ("a6^4", _cyclic("1", "216")),
    ("a5^4 d4", _cyclic("2", "024", "0") + ("33001", "30302", "30033")),
    ("d4^6", ("111111",) + _cyclic("0", "02332")),
    ("a4^6", _cyclic("1", "01441")),
    ("a3^8", _cyclic("3", "2001011")),
    ("a2^12", _cyclic("2", "11211122212")),
    ("a1^24", _cyclic("1", "00000101001100110101111")),
)


def _components(text: str) -> List[Tuple[str, int]]:
    out: List[Tuple[str, int]] = []
    for token in text.split():
        name, _, power = token.partition("^")
        out += [(name[0], int(name[1:]))] * int(power or 1)
    return out


def _class_weight(family: str, n: int, k: int) -> List[Fraction]:
    """A dual vector in the k-th glue class of one component, in simple root coordinates."""
    if k == 0:
        return [Fraction(0)] * n
    weights = exact.inverse(cartan_matrix(family, n))
    if family == "a":
        return [k * x for x in weights[0]]
    if family == "d":
        return list(weights[{1: n - 1, 2: 0, 3: n - 2}[k]])
    return [k * x for x in weights[0 if n == 6 else 6]]


def niemeier_from_glue(components: str, words: Sequence[str]) -> Lattice:
    """Even unimodular overlattice of a root lattice spanned by glue words (see NIEMEIER_GLUE)."""
    comps = _components(components)
    base = direct_sum(*(Lattice(cartan_matrix(f, n)) for f, n in comps))
    vectors = []
    for word in words:
        if len(word) != len(comps):
            raise ValidationError(detail=f"glue word {word} does not match {components}")
        vectors.append([x for (f, n), k in zip(comps, word) for x in _class_weight(f, n, int(k))])
    glued = glue(base, vectors)
    lattice = lll_reduce(glued.lattice)[0]
    if lattice.rank != 24 or not (lattice.is_even and lattice.is_unimodular):
        raise ConstructionError(
            detail=f"glue for {components} does not give an even unimodular lattice",
            context={"index": glued.index},
        )
    return lattice


def _check_niemeier(lattice: Lattice) -> None:
    if not (lattice.rank == 24 and lattice.is_even and lattice.is_unimodular and lattice.is_positive_definite):
        raise ValidationError(detail="expected a 24-dimensional even unimodular positive definite lattice")


def _integral(v: Sequence, what: str) -> Tuple[int, ...]:
    try:
        return tuple(exact.to_int_vector(v))
    except ValueError as e:
        raise ConstructionError(detail=f"{what} is not a lattice vector") from e


# ----------------------------------------------------------------- Niemeier records

@dataclass
class NiemeierRecord:
    lattice: Lattice
    datum: RootDatum
    h: int
    rho: Tuple[Fraction, ...]
    glue_index: int
    analysis: Optional[RootAnalysis] = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return self.datum.niemeier_name()

    @property
    def root_count(self) -> int:
        return len(self.analysis.roots) if self.analysis else self.datum.root_count

    def checks(self) -> Dict[str, bool]:
        """#roots = 24h, rho^2 = 2h(h+1), rho in N and glue index^2 = det R."""
        rho2 = self.lattice.norm(self.rho) if self.rho else Fraction(0)
        return {
            "roots = 24h": self.root_count == 24 * self.h,
            "rho^2 = 2h(h+1)": rho2 == 2 * self.h * (self.h + 1),
            "rho in N": all(Fraction(x).denominator == 1 for x in self.rho),
            "root rank 0 or 24": self.datum.rank in (0, 24),
            "glue index^2 = det R": self.glue_index ** 2 == self.datum.determinant,
        }

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "root_system": str(self.datum),
            "coxeter_number": self.h,
            "roots": self.root_count,
            "glue_index": self.glue_index,
            "rho_norm": self.lattice.norm(self.rho) if self.rho else 0,
            "checks": self.checks(),
        }


def niemeier_record(lattice: Lattice) -> NiemeierRecord:
    _check_niemeier(lattice)
    analysis = identify_roots(lattice)
    datum = analysis.datum
    h = datum.common_coxeter_number
    if h is None:
        raise ConstructionError(detail=f"root system {datum} has mixed Coxeter numbers", context={"datum": str(datum)})
    glue = math.isqrt(datum.determinant)
    rho = tuple(analysis.weyl.rho) if datum.rank else tuple(Fraction(0) for _ in range(24))
    return NiemeierRecord(lattice.with_label(datum.niemeier_name()), datum, h, rho, glue, analysis)


def root_square_sum(record: NiemeierRecord, y: Sequence[int]) -> Tuple[Fraction, Fraction]:
    """(sum over roots r of (y, r)^2, 2 y^2 h); the two agree for every y."""
    lat = record.lattice
    gy = lat.gram_times(y)
    total = sum((sum(a * b for a, b in zip(r, gy)) ** 2 for r in record.analysis.roots), Fraction(0))
    return total, 2 * lat.norm(y) * record.h


def leech_vector(record: NiemeierRecord) -> Tuple[int, ...]:
    """(rho, h, h+1) in N (+) U coordinates."""
    rho = _integral(record.rho, "the Weyl vector")
    return rho + (record.h, record.h + 1)


# ----------------------------------------------------------------- the Leech lattice

def leech_from_small(small: Optional[Lattice] = None) -> Lattice:
    """Leech lattice from a unimodular lattice A1 of dimension at most 23 without norm 1 vectors.

    With A = A1 (+) I^n (n = 25 - dim A1) and rho the Weyl vector of the
    norm 2 roots of A, rho^2 = (h + n - 1)^2 and w = (rho, h + n - 1) is a
    norm 0 vector of A (+) (-1) whose quotient in an even neighbor is Λ.
    """
    d = small.rank if small is not None else 0
    if d > 23:
        raise ValidationError(detail="the small lattice must have dimension at most 23")
    parts: List[Lattice] = []
    rho: List[Fraction] = []
    if d:
        if not (small.is_integral and small.is_unimodular and small.is_positive_definite):
            raise ValidationError(detail="the small lattice must be positive definite unimodular")
        if small.is_odd and shell(small, 1):
            raise ValidationError(detail="the small lattice must not have norm 1 vectors")
        analysis = identify_roots(small)
        rho = list(analysis.weyl.rho) if analysis.datum.rank else [Fraction(0)] * d
        parts.append(small)
    n = 25 - d
    parts += [integer_lattice(n), negated(integer_lattice(1))]
    rho += [Fraction(k) for k in range(n)]
    rho2 = Fraction(0)
    if d:
        rho2 += small.norm(rho[:d])
    rho2 += sum(k * k for k in range(n))
    s = math.isqrt(int(rho2)) if rho2.denominator == 1 and rho2 >= 0 else -1
    if s < 0 or s * s != rho2:
        raise ConstructionError(detail=f"rho^2 = {rho2} is not a perfect square", context={"dimension": d})
    h = s - n + 1
    lorentz = direct_sum(*parts)
    w = list(_integral(rho, "the Weyl vector")) + [s]
    log_structured(logger, "info", "leech construction", {"small_dim": d, "h": h, "rho_norm": s * s})
    neighbor, basis = even_neighbor_bases(lorentz)[0]
    coords = exact.vec_mat(w, exact.inverse(basis))
    z = exact.primitive_part(_integral(coords, "w"))
    quotient = isotropic_quotient(neighbor, z)
    reduced = lll_reduce(quotient)[0]
    if reduced.rank != 24 or not (reduced.is_even and reduced.is_unimodular) or shell(reduced, 2):
        raise ConstructionError(detail="the quotient is not a root-free Niemeier lattice")
    return reduced.with_label("leech")


def leech_lattice(store: Optional[CorpusStore] = None) -> Lattice:
    """The Leech lattice from the corpus, built by the (0, 1, ..., 24 | 70) construction on a miss."""
    return get_or_build("leech", leech_from_small, inputs={"small": None}, store=store)


# ----------------------------------------------------------------- halving

def halve_step(record: NiemeierRecord) -> NiemeierRecord:
    """The Niemeier lattice of (rho, h, h+1) in N (+) U; its Coxeter number is at most h/2."""
    if record.h == 0:
        raise ValidationError(detail="halving needs a Niemeier lattice with roots")
    ambient = direct_sum(record.lattice, hyperbolic_plane())
    result = niemeier_record(norm0_classify(ambient, leech_vector(record)))
    if 2 * result.h > record.h:
        raise ConstructionError(detail=f"halving gave h' = {result.h} > {record.h}/2")
    log_structured(logger, "info", "halving step", {
        "from": record.name, "h": record.h, "to": result.name, "h_new": result.h, "no_roots": result.h == 0,
    })
    return result


def halving_chain(record: NiemeierRecord, max_steps: int = 8) -> List[NiemeierRecord]:
    chain = [record]
    while chain[-1].h:
        if len(chain) > max_steps:
            raise ConstructionError(detail=f"halving did not reach a root-free lattice in {max_steps} steps")
        chain.append(halve_step(chain[-1]))
    return chain


# ----------------------------------------------------------------- holy constructions

def holy_generators(record: NiemeierRecord) -> Tuple[List[Tuple[Fraction, ...]], List[Tuple[Fraction, ...]]]:
    """(f_i, g_i): the extended diagram and the glue vectors v - rho/h closest to -rho/h.

    The v are the lattice points nearest to rho/h, at squared distance
    2(1 + 1/h); one per class of N/R.
    """
    if record.h == 0:
        raise ValidationError(detail="the holy construction needs roots")
    an = record.analysis
    f = [tuple(Fraction(x) for x in r) for r in an.simple.roots]
    f += [tuple(c.highest_root) for c in an.weyl.components]
    center = [Fraction(x) / record.h for x in record.rho]
    found = closest_vectors(EnumerationRequest(record.lattice, 0, center=center))
    expected = 2 + Fraction(2, record.h)
    if found.norm != expected:
        raise ConstructionError(detail=f"closest points to rho/h at {found.norm}, expected {expected}")
    g = [tuple(Fraction(x) - c for x, c in zip(v, center)) for v in found.vectors]
    if len(g) != record.glue_index:
        raise ConstructionError(detail=f"{len(g)} glue vectors, expected {record.glue_index}")
    return f, g


def holy_construction(record: NiemeierRecord) -> Lattice:
    """Λ as the sums of f_i and g_i with coefficients adding up to 0."""
    f, g = holy_generators(record)
    gens = f + g
    diffs = [exact.sub(x, gens[0]) for x in gens[1:]]
    lattice, _ = sublattice(record.lattice, diffs)
    if lattice.rank != 24:
        raise ConstructionError(detail=f"holy generators span rank {lattice.rank}")
    reduced = lll_reduce(lattice)[0]
    if not (reduced.is_even and reduced.is_unimodular) or shell(reduced, 2):
        raise ConstructionError(detail=f"holy construction for {record.name} is not root-free even unimodular")
    return reduced.with_label("leech")


# ----------------------------------------------------------------- frames and deep holes

class LeechFrame:
    """An even unimodular Lorentzian lattice split as K (+) <v, v'> for a primitive norm 0 v.

    Coordinates x -> (k, m, n) satisfy x^2 = k^2 - 2mn, so K (+) U is the
    Leech model whenever v corresponds to Λ.
    """

    def __init__(self, lattice: Lattice, v: Sequence[int]):
        self.lattice = lattice
        self.v = tuple(int(x) for x in v)
        if lattice.norm(self.v) != 0:
            raise ValidationError(detail="the frame vector must have norm 0")
        p = pairing_partner(lattice, self.v)
        half = lattice.norm(p) / 2
        self.vp = _integral([a + half * b for a, b in zip(p, self.v)], "the partner")
        self.basis = exact.integer_kernel([lattice.gram_times(self.v), lattice.gram_times(self.vp)])
        self.K = change_basis(lattice, self.basis)
        bbt = exact.mat_mul(self.basis, exact.transpose(self.basis))
        self._solve = exact.inverse(bbt)

    def coordinates(self, x: Sequence) -> Tuple[Tuple[Fraction, ...], Fraction, Fraction]:
        xv = self.lattice.inner(x, self.v)
        xvp = self.lattice.inner(x, self.vp)
        k = [Fraction(a) + xvp * b + xv * c for a, b, c in zip(x, self.v, self.vp)]
        coords = exact.vec_mat(exact.mat_vec(self.basis, k), self._solve)
        return tuple(coords), -xv, -xvp

    def model(self) -> LeechModel:
        return LeechModel(self.K.with_label("leech"))

    def to_model(self, x: Sequence) -> tuple:
        k, m, n = self.coordinates(x)
        return tuple(k) + (m, n)


@dataclass
class HoleRecord:
    niemeier: str
    center: Tuple[Fraction, ...]
    radius_sq: Fraction
    vertices: List[Tuple[int, ...]]
    vertex_datum: RootDatum
    leech: Lattice = field(repr=False)
    height: int = 0

    def checks(self, expected: Optional[RootDatum] = None) -> Dict[str, bool]:
        d = self.vertex_datum
        out = {
            "radius^2 = 2": self.radius_sq == 2,
            "vertices = rank + components": len(self.vertices) == d.rank + len(d),
            "height = Coxeter number": self.height == (d.common_coxeter_number or 0),
        }
        if expected is not None:
            out["vertex diagram = extended datum"] = d == expected
        return out

    def to_dict(self) -> dict:
        return {
            "niemeier": self.niemeier,
            "center": list(self.center),
            "radius_sq": self.radius_sq,
            "vertex_count": len(self.vertices),
            "vertex_diagram": str(self.vertex_datum),
            "height": self.height,
        }


def _hole(leech: Lattice, center: Sequence[Fraction], height: int) -> HoleRecord:
    found = closest_vectors(EnumerationRequest(leech, 0, center=list(center)))
    verts = sorted(found.vectors)
    gram = [[2 - leech.norm(exact.sub(a, b)) / 2 for b in verts] for a in verts]
    datum = affine_datum(gram)
    return HoleRecord(datum.niemeier_name(), tuple(center), found.norm, verts, datum, leech, height)


def deep_hole(record: NiemeierRecord) -> HoleRecord:
    """The deep hole belonging to N, in the copy of Λ given by the Leech frame of (rho, h, h+1).

    The norm 0 vector (0, 0, 1) of N (+) U, seen from the Leech frame of
    (rho, h, h+1), is (λ, h, *) with λ/h the hole center.
    """
    ambient = direct_sum(record.lattice, hyperbolic_plane())
    frame = LeechFrame(ambient, leech_vector(record))
    z = (0,) * 24 + (0, 1)
    k, m, _ = frame.coordinates(z)
    if m != record.h:
        raise ConstructionError(detail=f"height of the cusp is {m}, expected h = {record.h}")
    hole = _hole(frame.K, [x / m for x in k], record.h)
    if hole.radius_sq != 2:
        raise ConstructionError(detail=f"hole for {record.name} has radius^2 {hole.radius_sq}")
    return hole


def deep_holes(records: Sequence[NiemeierRecord]) -> List[HoleRecord]:
    """One deep hole per Niemeier lattice with roots."""
    holes = []
    for rec in sorted(records, key=lambda r: (r.h, r.name)):
        if rec.h:
            hole = deep_hole(rec)
            log_structured(logger, "info", "deep hole", {"niemeier": rec.name, "vertices": len(hole.vertices)})
            holes.append(hole)
    return holes


def z_map(u: Sequence, model: Optional[LeechModel] = None) -> Optional[Tuple[Fraction, ...]]:
    """λ/m for u = (λ, m, n); None is the point at infinity."""
    model = model or LeechModel(leech_lattice())
    return model.z_map(u)


# ----------------------------------------------------------------- cusps of Λ (+) U

def random_isotropic(model: LeechModel, rng: random.Random, max_a: int = 48, spread: int = 2) -> tuple:
    """A random primitive norm 0 vector (λ, a, λ^2/2a) with 2 <= a <= max_a."""
    leech = model.leech
    while True:
        lam = [rng.randint(-spread, spread) for _ in range(leech.rank)]
        k = int(leech.norm(lam) / 2)
        if k < 2:
            continue
        divisors = [a for a in range(2, min(k, max_a) + 1) if k % a == 0]
        if not divisors:
            continue
        a = rng.choice(divisors)
        if math.gcd(exact.content(lam), a, k // a) != 1:
            continue
        return model.vector(lam, a, k // a)


def sample_cusps(
    model: LeechModel,
    samples: int,
    rng: Optional[random.Random] = None,
    wanted: Optional[Sequence[str]] = None,
) -> Dict[str, tuple]:
    """Niemeier name -> a norm 0 vector of the fundamental domain of that type.

    Random isotropic vectors are reflected into the domain and classified
    by z^perp / z. Stops early once every name in ``wanted`` is found.
    """
    rng = rng or random.Random(settings.random_seed)
    found: Dict[str, tuple] = {}
    for _ in range(samples):
        z, _ = model.reduce_to_domain(random_isotropic(model, rng), rng)
        if model.is_w_multiple(z):
            continue
        name = norm0_classify(model.lattice, z).label
        if name not in found:
            found[name] = z
            logger.debug(f"cusp of type {name} at height {model.height(z)}")
        if wanted and all(w in found for w in wanted):
            break
    return found


@dataclass
class NiemeierInventory:
    records: Dict[str, NiemeierRecord] = field(default_factory=dict)
    cusps: Dict[str, tuple] = field(default_factory=dict)
    source: str = ""

    def missing(self) -> List[str]:
        """Listed Niemeier root systems that were not derived."""
        return [n for n in niemeier_names() if n not in self.records]

    def missing_cusps(self) -> List[str]:
        return [n for n in self.records if n != "Leech" and n not in self.cusps]

    @property
    def complete(self) -> bool:
        return not self.missing()

    @property
    def seeded(self) -> bool:
        """Every listed root system was derived and has a cusp."""
        return self.complete and not self.missing_cusps()

    def checks(self) -> Dict[str, bool]:
        return {
            "24 classes": len(self.records) == 24,
            "root systems as listed": sorted(self.records) == sorted(niemeier_names()),
            "record checks": all(all(r.checks().values()) for r in self.records.values()),
        }

    def add(self, lattice: Lattice) -> NiemeierRecord:
        rec = niemeier_record(lll_reduce(lattice)[0])
        self.records.setdefault(rec.name, rec)
        return self.records[rec.name]


def niemeier_inventory(
    leech: Optional[Lattice] = None,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
    extra: Sequence[Lattice] = (),
    source: Optional[str] = None,
    time_budget: Optional[float] = None,
) -> NiemeierInventory:
    """The Niemeier lattices, derived and then compared with NIEMEIER_ROOT_SYSTEMS.

    ``source="neighbors"`` closes e8^3 under the neighbor method until 24
    even classes are known; ``source="glue"`` builds the lattices with roots
    from NIEMEIER_GLUE. Afterwards ``samples`` random norm 0 vectors of
    Λ (+) U are classified to find a cusp for each derived root system.
    """
    source = source or settings.niemeier_source
    leech = leech or leech_lattice()
    inventory = NiemeierInventory(source=source)
    inventory.add(leech)
    if source == "neighbors":
        graph = classify_dimension(
            24,
            root_lattice("e8^3"),
            max_nodes=1000,
            rng=rng,
            time_budget=time_budget or settings.classification_time_budget,
            target_even=24,
        )
        for node in graph.even_nodes:
            inventory.add(node.lattice)
    elif source == "glue":
        for components, words in NIEMEIER_GLUE:
            inventory.add(niemeier_from_glue(components, words))
    else:
        raise ValidationError(detail=f"unknown Niemeier source {source!r}")
    for lattice in extra:
        inventory.add(lattice)

    samples = samples if samples is not None else 40 * settings.neighbor_samples
    if samples:
        model = LeechModel(leech)
        wanted = [n for n in inventory.records if n != "Leech"]
        for name, z in sample_cusps(model, samples, rng, wanted).items():
            if name not in inventory.records:
                logger.warning(f"cusp of type {name} has no derived Niemeier lattice")
                inventory.add(norm0_classify(model.lattice, z))
            inventory.cusps[name] = z
    log_structured(logger, "info", "niemeier inventory", {
        "source": source,
        "found": len(inventory.records),
        "missing": inventory.missing(),
        "cusps": len(inventory.cusps),
    })
    return inventory


# ----------------------------------------------------------------- 26 dimensions

@dataclass
class Unimodular26:
    lattice: Lattice
    characteristic: Tuple[int, ...]  # norm 10, in coordinates of ``lattice``
    u: tuple


def unimodular26_from_norm10(model_lattice: Lattice, u: Sequence[int]) -> Unimodular26:
    """The 26-dimensional unimodular L with a norm 10 characteristic c and c^perp = u^perp.

    In II_{25,1} (+) <1> the vector n = (u, 3) has norm -1, so n^perp is
    unimodular; c = (3u, 10) lies in it with norm 10.
    """
    if model_lattice.norm(u) != -10:
        raise ValidationError(detail=f"u has norm {model_lattice.norm(u)}, expected -10")
    ambient = direct_sum(model_lattice, integer_lattice(1))
    n = list(u) + [3]
    basis = exact.integer_kernel([ambient.gram_times(n)])
    lattice = change_basis(ambient, basis)
    reduced, h = lll_reduce(lattice)
    full = exact.mat_mul(h, basis)
    c = [3 * x for x in u] + [10]
    gram_inv = exact.inverse(exact.mat_mul(full, exact.transpose(full)))
    coords = _integral(exact.vec_mat(exact.mat_vec(full, c), gram_inv), "the characteristic vector")
    if reduced.norm(coords) != 10 or not reduced.is_unimodular:
        raise ConstructionError(detail="norm 10 correspondence failed")
    return Unimodular26(reduced, coords, tuple(u))


def lattice26_noroots(
    model: Optional[LeechModel] = None,
    z: Optional[Sequence] = None,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
    record: Optional[NiemeierRecord] = None,
) -> Unimodular26:
    """The 26-dimensional unimodular lattice without roots, from u = z + w with z of type A4^6.

    Given the A4^6 ``record`` N, the computation happens in N (+) U where
    z = (0, 0, 1) and w = (rho, 5, 6), so no cusp has to be sampled.
    """
    if record is not None:
        if record.h != 5:
            raise ValidationError(detail=f"expected the Niemeier lattice A4^6 (h = 5), got {record.name}")
        ambient = direct_sum(record.lattice, hyperbolic_plane())
        u = tuple(a + b for a, b in zip(leech_vector(record), (0,) * 25 + (1,)))
        result = unimodular26_from_norm10(ambient, u)
    else:
        model = model or LeechModel(leech_lattice())
        if z is None:
            target = RootDatum.parse("a4^6").niemeier_name()
            found = sample_cusps(model, samples or 40 * settings.neighbor_samples, rng, [target])
            if target not in found:
                raise ConstructionError(detail="no norm 0 vector of type A4^6 found; raise the sample count")
            z = found[target]
        if model.height(z) != 5 or model.norm(z) != 0:
            raise ValidationError(detail="z must be a norm 0 vector of height 5")
        u = tuple(a + b for a, b in zip(z, model.w))
        result = unimodular26_from_norm10(model.lattice, u)
    lat = result.lattice.with_label("26-dim no roots")
    if shell(lat, 1) or shell(lat, 2):
        raise ConstructionError(detail="the 26-dimensional lattice has roots")
    return Unimodular26(lat, result.characteristic, u)


def norm10_characteristic_exists(lattice: Lattice) -> bool:
    """A 26-dimensional unimodular lattice without norm 1 vectors has a characteristic vector of norm 10."""
    return any(lattice.norm(c) == 10 for c in characteristic_vectors(lattice, 10))


def characteristic_norm_counts(lattice: Lattice, norm_bound) -> Counter:
    """Norm -> number of characteristic vectors, by enumeration."""
    return Counter(lattice.norm(c) for c in characteristic_vectors(lattice, norm_bound))


# ----------------------------------------------------------------- spot checks

def mod2_class_norms(leech: Lattice, samples: int, rng: Optional[random.Random] = None) -> Counter:
    """Minimal norms of random classes of Λ/2Λ; all are 0, 4, 6 or 8."""
    rng = rng or random.Random(settings.random_seed)
    out: Counter = Counter()
    for _ in range(samples):
        raw = [rng.randrange(2) for _ in range(leech.rank)]
        _, n = reduce_mod_2(leech, raw)
        out[int(n)] += 1
    return out


def covering_radius_spot_check(leech: Lattice, samples: int, rng: Optional[random.Random] = None,
                               denominator: int = 12) -> Fraction:
    """Largest squared distance to Λ over random rational points; at most 2."""
    rng = rng or random.Random(settings.random_seed)
    worst = Fraction(0)
    for _ in range(samples):
        p = [Fraction(rng.randrange(denominator), denominator) for _ in range(leech.rank)]
        found = closest_vectors(EnumerationRequest(leech, 0, center=p))
        worst = max(worst, found.norm)
    return worst
