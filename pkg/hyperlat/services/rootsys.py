"""Simply laced root systems.

Sign convention: simple roots point *out of* the Weyl chamber, so that
the Weyl vector rho has inner product -1 with every simple root and the
chamber is {x : (x, r) <= 0}. With these simple roots r_i the highest
root is -sum m_i r_i, and the extended diagram adds the highest root
itself as the extra node of weight 1.

Components are named by lowercase family and rank; a root datum is a
multiset of components written ``"a1^24"`` or ``"d16 e8"``.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from hyperlat.core.exceptions import ValidationError
from hyperlat.core.logging import get_logger
from hyperlat.services import exact
from hyperlat.services.lattice import Lattice, cartan_matrix, direct_sum

logger = get_logger(__name__)

FAMILY_ORDER = {"a": 0, "d": 1, "e": 2}

_E_COXETER = {6: 12, 7: 18, 8: 30}
_E_WEYL_ORDER = {6: 51840, 7: 2903040, 8: 696729600}
_E_WEIGHTS = {
    6: [1, 2, 2, 3, 2, 1],
    7: [2, 2, 3, 4, 3, 2, 1],
    8: [2, 3, 4, 6, 5, 4, 3, 2],
}


@total_ordering
@dataclass(frozen=True)
class Component:
    """One irreducible simply laced root system a_n, d_n (n >= 4) or e_n."""
    family: str
    rank: int

    def __post_init__(self):
        ok = (
            (self.family == "a" and self.rank >= 1)
            or (self.family == "d" and self.rank >= 4)
            or (self.family == "e" and self.rank in (6, 7, 8))
        )
        if not ok:
            raise ValidationError(detail=f"no simply laced component {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def __lt__(self, other: "Component") -> bool:
        return (FAMILY_ORDER[self.family], self.rank) < (FAMILY_ORDER[other.family], other.rank)

    @property
    def coxeter_number(self) -> int:
        if self.family == "a":
            return self.rank + 1
        if self.family == "d":
            return 2 * self.rank - 2
        return _E_COXETER[self.rank]

    @property
    def root_count(self) -> int:
        return self.coxeter_number * self.rank

    @property
    def weyl_vector_norm(self) -> Fraction:
        h = self.coxeter_number
        return Fraction(h * (h + 1) * self.rank, 12)

    @property
    def determinant(self) -> int:
        if self.family == "a":
            return self.rank + 1
        if self.family == "d":
            return 4
        return 9 - self.rank

    @property
    def weyl_group_order(self) -> int:
        n = self.rank
        if self.family == "a":
            return math.factorial(n + 1)
        if self.family == "d":
            return 2 ** (n - 1) * math.factorial(n)
        return _E_WEYL_ORDER[n]

    @property
    def opposition_is_flip(self) -> bool:
        return (self.family == "a" and self.rank >= 2) or (self.family == "d" and self.rank % 2 == 1) or (
            self.family == "e" and self.rank == 6
        )

    @property
    def s_invariant(self) -> int:
        n = self.rank
        if self.family == "a":
            return (n + 1) // 2
        if self.family == "d":
            return 2 * (n // 2)
        return {6: 4, 7: 7, 8: 8}[n]

    @property
    def highest_root_weights(self) -> List[int]:
        """Weights m_i of the nodes, in the node order of :meth:`cartan`."""
        n = self.rank
        if self.family == "a":
            return [1] * n
        if self.family == "d":
            return [1] + [2] * (n - 3) + [1, 1]
        return list(_E_WEIGHTS[n])

    def cartan(self) -> List[List[int]]:
        return cartan_matrix(self.family, self.rank)

    def graph(self) -> nx.Graph:
        return diagram_graph(self.cartan())

    def orthogonal_to_root(self) -> "RootDatum":
        """Root system of the roots orthogonal to a fixed root (x* in tables)."""
        n = self.rank
        if self.family == "a":
            return RootDatum.of("a", n - 2)
        if self.family == "d":
            return RootDatum.of("a", 1) + RootDatum.of("d", n - 2)
        return RootDatum.parse({6: "a5", 7: "d6", 8: "e7"}[n])


def components_for(family: str, rank: int) -> List[Component]:
    """Canonical components for a possibly degenerate name (d2 = a1^2, d3 = a3, a0 = d1 = empty)."""
    family = family.lower()
    if rank <= 0 or (family == "d" and rank == 1):
        return []
    if family == "d" and rank == 2:
        return [Component("a", 1), Component("a", 1)]
    if family == "d" and rank == 3:
        return [Component("a", 3)]
    return [Component(family, rank)]


_TOKEN = re.compile(r"([ade])_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?")


@dataclass(frozen=True)
class RootDatum:
    """Multiset of ADE components, kept sorted."""
    components: Tuple[Component, ...] = ()

    @classmethod
    def from_components(cls, comps: Iterable[Component]) -> "RootDatum":
        return cls(tuple(sorted(comps)))

    @classmethod
    def of(cls, family: str, rank: int, multiplicity: int = 1) -> "RootDatum":
        return cls.from_components(components_for(family, rank) * multiplicity)

    @classmethod
    def parse(cls, text: str) -> "RootDatum":
        """Parse ``"a1^24"``, ``"d16 e8"``, ``"A11D7E6"`` or TeX-ish ``"a_1^{24}"``."""
        s = (text or "").strip().lower()
        if s in ("", "0", "empty", "none", "-", "∅"):
            return cls()
        comps: List[Component] = []
        for fam, rank, mult in _TOKEN.findall(s):
            comps.extend(components_for(fam, int(rank)) * (int(mult) if mult else 1))
        leftover = _TOKEN.sub("", s)
        if re.sub(r"[\s,+*]", "", leftover):
            raise ValidationError(detail=f"cannot parse root datum {text!r}")
        return cls.from_components(comps)

    def __str__(self) -> str:
        if not self.components:
            return ""
        counts = Counter(self.components)
        parts = []
        for comp in sorted(counts):
            k = counts[comp]
            parts.append(f"{comp}^{k}" if k > 1 else str(comp))
        return " ".join(parts)

    def __add__(self, other: "RootDatum") -> "RootDatum":
        return RootDatum.from_components(self.components + other.components)

    def __len__(self) -> int:
        return len(self.components)

    def expanded(self) -> List[Component]:
        return list(self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def root_count(self) -> int:
        return sum(c.root_count for c in self.components)

    @property
    def weyl_vector_norm(self) -> Fraction:
        return sum((c.weyl_vector_norm for c in self.components), Fraction(0))

    @property
    def s_invariant(self) -> int:
        return sum(c.s_invariant for c in self.components)

    @property
    def determinant(self) -> int:
        return math.prod(c.determinant for c in self.components)

    @property
    def weyl_group_order(self) -> int:
        return math.prod(c.weyl_group_order for c in self.components)

    @property
    def coxeter_numbers(self) -> List[int]:
        return [c.coxeter_number for c in self.components]

    @property
    def common_coxeter_number(self) -> Optional[int]:
        """The shared Coxeter number, 0 for the empty datum, None if mixed."""
        hs = set(self.coxeter_numbers)
        if not hs:
            return 0
        return hs.pop() if len(hs) == 1 else None

    def niemeier_name(self) -> str:
        """Upper-case compact form used for Niemeier lattices, e.g. ``A1^24`` or ``D16E8``."""
        return str(self).replace(" ", "").upper() or "Leech"


def parse_orbits(text: str) -> List[RootDatum]:
    """One datum per token: ``"a_1^{16}a_1^2"`` is two orbits of roots, a1^16 and a1^2."""
    return [RootDatum.of(fam, int(rank), int(mult) if mult else 1) for fam, rank, mult in _TOKEN.findall((text or "").lower())]


# ----------------------------------------------------------------- formulas

def coxeter_number(component) -> int:
    return _component(component).coxeter_number


def root_count(datum) -> int:
    return _datum(datum).root_count


def highest_root_weights(component) -> List[int]:
    return _component(component).highest_root_weights


def weyl_group_order(datum) -> int:
    return _datum(datum).weyl_group_order


def weyl_vector_norm(datum) -> Fraction:
    """rho^2 = sum over components of h(h+1)n/12."""
    return _datum(datum).weyl_vector_norm


def s_invariant(datum) -> int:
    return _datum(datum).s_invariant


def fixed_rank(datum) -> int:
    """Dimension of the fixed space of the opposition involution on the root span.

    Equal to the S invariant: flipped diagram nodes pair up.
    """
    total = 0
    for comp in _datum(datum).components:
        if comp.opposition_is_flip:
            moved = 2 * (comp.rank // 2) if comp.family == "a" else (2 if comp.family == "d" else 4)
            total += comp.rank - moved + moved // 2
        else:
            total += comp.rank
    return total


def opposition_involution(datum) -> List[Tuple[str, str]]:
    """(component, "identity" | "flip") for every component."""
    return [(str(c), "flip" if c.opposition_is_flip else "identity") for c in _datum(datum).components]


def s_rho_roots_congruence(datum) -> bool:
    """S + 4 rho^2 + (number of roots)/2 = 0 mod 4."""
    d = _datum(datum)
    value = d.s_invariant + 4 * d.weyl_vector_norm + Fraction(d.root_count, 2)
    return value.denominator == 1 and value.numerator % 4 == 0


def root_lattice_gram(datum) -> List[List[int]]:
    blocks = [Lattice(c.cartan()) for c in _datum(datum).components]
    if not blocks:
        return []
    return direct_sum(*blocks).int_gram


def _datum(datum) -> RootDatum:
    if isinstance(datum, RootDatum):
        return datum
    if isinstance(datum, Component):
        return RootDatum((datum,))
    return RootDatum.parse(str(datum))


def _component(component) -> Component:
    if isinstance(component, Component):
        return component
    d = _datum(component)
    if len(d) != 1:
        raise ValidationError(detail=f"{component!r} is not a simple root system")
    return d.components[0]


# ----------------------------------------------------------------- diagrams

def diagram_graph(gram: Sequence[Sequence], nodes: Optional[Sequence[int]] = None) -> nx.Graph:
    """Coxeter-Dynkin graph: an edge of weight -(r_i, r_j) for every nonzero product."""
    idx = list(range(len(gram))) if nodes is None else list(nodes)
    g = nx.Graph()
    for i in idx:
        g.add_node(i, norm=Fraction(gram[i][i]))
    for a, i in enumerate(idx):
        for j in idx[a + 1:]:
            if gram[i][j] != 0:
                g.add_edge(i, j, weight=-Fraction(gram[i][j]))
    return g


@dataclass(frozen=True)
class DiagramComponent:
    family: str
    rank: int
    affine: bool
    nodes: Tuple[int, ...]

    @property
    def component(self) -> Component:
        return Component(self.family, self.rank)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}" + ("~" if self.affine else "")


def _arms(g: nx.Graph, branch: int) -> List[int]:
    rest = g.copy()
    rest.remove_node(branch)
    return sorted(len(c) for c in nx.connected_components(rest))


def _identify_connected(g: nx.Graph) -> Optional[Tuple[str, int, bool]]:
    k = g.number_of_nodes()
    if any(norm != 2 for _, norm in g.nodes(data="norm")):
        return None
    weights = [w for _, _, w in g.edges(data="weight")]
    if any(w not in (1, 2) for w in weights):
        return None
    if any(w == 2 for w in weights):
        return ("a", 1, True) if k == 2 and len(weights) == 1 else None
    degrees = sorted((d for _, d in g.degree()), reverse=True)
    edges = g.number_of_edges()
    if edges == k and k >= 3 and all(d == 2 for d in degrees):
        return "a", k - 1, True
    if edges != k - 1:
        return None
    if k == 1 or degrees[0] <= 2:
        return "a", k, False
    if degrees[0] == 4:
        return ("d", 4, True) if k == 5 else None
    branches = [v for v, d in g.degree() if d == 3]
    if len(branches) == 2:
        return "d", k - 1, True
    if len(branches) != 1:
        return None
    arms = _arms(g, branches[0])
    if arms[0] == 1 and arms[1] == 1:
        return "d", k, False
    table = {
        (1, 2, 2): ("e", 6, False),
        (1, 2, 3): ("e", 7, False),
        (1, 2, 4): ("e", 8, False),
        (2, 2, 2): ("e", 6, True),
        (1, 3, 3): ("e", 7, True),
        (1, 2, 5): ("e", 8, True),
    }
    return table.get(tuple(arms))


def classify_diagram(gram: Sequence[Sequence], nodes: Optional[Sequence[int]] = None) -> List[DiagramComponent]:
    """Split a diagram of norm 2 nodes into spherical and affine ADE components.

    Raises ValidationError for a component that is neither.
    """
    g = diagram_graph(gram, nodes)
    out = []
    for comp_nodes in nx.connected_components(g):
        sub = g.subgraph(comp_nodes)
        kind = _identify_connected(sub)
        if kind is None:
            raise ValidationError(detail=f"nodes {sorted(comp_nodes)} do not form an ADE diagram")
        out.append(DiagramComponent(kind[0], kind[1], kind[2], tuple(sorted(comp_nodes))))
    out.sort(key=lambda c: (c.affine, FAMILY_ORDER[c.family], c.rank, c.nodes))
    return out


def diagram_kinds(gram: Sequence[Sequence], nodes: Optional[Sequence[int]] = None) -> Optional[List[DiagramComponent]]:
    """Like :func:`classify_diagram`, but None for a diagram that is not of ADE type."""
    try:
        return classify_diagram(gram, nodes)
    except ValidationError:
        return None


def diagram_datum(gram: Sequence[Sequence], nodes: Optional[Sequence[int]] = None) -> RootDatum:
    """Datum of a spherical diagram (affine components are rejected)."""
    comps = classify_diagram(gram, nodes)
    if any(c.affine for c in comps):
        raise ValidationError(detail="diagram has affine components")
    return RootDatum.from_components(c.component for c in comps)


def affine_datum(gram: Sequence[Sequence], nodes: Optional[Sequence[int]] = None) -> RootDatum:
    """Datum whose extended diagram is the given affine diagram."""
    comps = classify_diagram(gram, nodes)
    if not all(c.affine for c in comps):
        raise ValidationError(detail="diagram has spherical components")
    return RootDatum.from_components(c.component for c in comps)


def sub_diagram_type(gram: Sequence[Sequence]) -> Component:
    """Type of a connected spherical diagram given by its Cartan-type matrix."""
    comps = classify_diagram(gram)
    if len(comps) != 1 or comps[0].affine:
        raise ValidationError(detail="not a connected spherical diagram")
    return comps[0].component


def dynkin_dot(gram: Sequence[Sequence], labels: Optional[Sequence[str]] = None, name: str = "dynkin") -> str:
    """DOT text for a diagram; edge labels carry the bond -(r, s) when it is not 1."""
    g = diagram_graph(gram)
    lines = [f"graph {name} {{"]
    for i in g.nodes:
        label = labels[i] if labels else str(i)
        shape = "circle" if g.nodes[i]["norm"] == 2 else "doublecircle"
        lines.append(f'  n{i} [label="{label}", shape={shape}];')
    for i, j, w in g.edges(data="weight"):
        attrs = "" if w == 1 else f' [label="{w}", penwidth=2]' if w > 0 else f' [label="{w}", style=dashed]'
        lines.append(f"  n{i} -- n{j}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- simple roots in a lattice

def _lex_positive(v: Sequence[int]) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def positive_and_simple(roots: Iterable[Sequence[int]]) -> Tuple[List[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """Positive roots for lexicographic positivity and the simple roots among them.

    The returned simple roots are the usual ones (pointing into the chamber);
    a positive root is simple when it is not a sum of two positive roots.
    """
    pos = sorted({tuple(int(x) for x in r) for r in roots if _lex_positive(r)})
    pos_set = set(pos)
    simple = []
    for a in pos:
        if not any(tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos if b != a):
            simple.append(a)
    return pos, simple


@dataclass
class SimpleRootSet:
    """Simple roots (outward sign) of a root system inside an ambient lattice."""
    lattice: Lattice
    roots: List[Tuple]
    gram: List[List[Fraction]] = field(default_factory=list)
    components: List[Tuple[Component, Tuple[int, ...]]] = field(default_factory=list)

    @classmethod
    def from_roots(cls, lattice: Lattice, simple: Sequence[Sequence]) -> "SimpleRootSet":
        roots = [tuple(r) for r in simple]
        gram = [[lattice.inner(a, b) for b in roots] for a in roots]
        comps = classify_diagram(gram) if roots else []
        for c in comps:
            if c.affine:
                raise ValidationError(detail="simple roots of a definite root system cannot form an affine diagram")
        return cls(lattice, roots, gram, [(c.component, c.nodes) for c in comps])

    @property
    def datum(self) -> RootDatum:
        return RootDatum.from_components(c for c, _ in self.components)

    def graph(self) -> nx.Graph:
        return diagram_graph(self.gram)

    def node_weights(self) -> Dict[int, int]:
        """Highest-root weight of every node, via an isomorphism onto the standard diagram."""
        out: Dict[int, int] = {}
        g = self.graph()
        for comp, nodes in self.components:
            mapping = _standard_mapping(g.subgraph(nodes), comp)
            weights = comp.highest_root_weights
            for node, std in mapping.items():
                out[node] = weights[std]
        return out

    def to_dot(self, name: str = "dynkin") -> str:
        return dynkin_dot(self.gram, [str(i) for i in range(len(self.roots))], name)


def _standard_mapping(sub: nx.Graph, comp: Component) -> Dict[int, int]:
    gm = GraphMatcher(sub, comp.graph())
    try:
        return next(gm.isomorphisms_iter())
    except StopIteration:
        raise ValidationError(detail=f"diagram is not of type {comp}") from None


@dataclass
class ComponentWeyl:
    component: Component
    nodes: Tuple[int, ...]
    coxeter_number: int
    rho: List[Fraction]
    highest_root: List[Fraction]
    weights: List[int]


@dataclass
class WeylData:
    components: List[ComponentWeyl]
    rho: List[Fraction]


def weyl_data(simple: SimpleRootSet) -> WeylData:
    """Coxeter numbers, Weyl vectors, highest roots and node weights."""
    n = simple.lattice.rank
    weights = simple.node_weights()
    total_rho = [Fraction(0)] * n
    comps = []
    for comp, nodes in simple.components:
        sub = [[simple.gram[i][j] for j in nodes] for i in nodes]
        # rho = sum c_i r_i with (rho, r_j) = -1
        coeffs = exact.solve(sub, [-1] * len(nodes))
        rho = [Fraction(0)] * n
        theta = [Fraction(0)] * n
        for c, i in zip(coeffs, nodes):
            rho = exact.add(rho, exact.scale(simple.roots[i], c))
            theta = exact.add(theta, exact.scale(simple.roots[i], -weights[i]))
        total_rho = exact.add(total_rho, rho)
        comps.append(ComponentWeyl(comp, nodes, comp.coxeter_number, rho, theta, [weights[i] for i in nodes]))
    return WeylData(comps, total_rho)


@dataclass
class RootAnalysis:
    """Result of :func:`identify_roots`; unpacks as (datum, simple, weyl)."""
    datum: RootDatum
    simple: SimpleRootSet
    weyl: WeylData
    roots: List[Tuple[int, ...]]
    positive: List[Tuple[int, ...]]

    def __iter__(self) -> Iterator:
        return iter((self.datum, self.simple, self.weyl))

    def component_of(self, root: Sequence) -> int:
        """Index into ``simple.components`` of the component containing ``root``."""
        lat = self.simple.lattice
        for k, (_, nodes) in enumerate(self.simple.components):
            if any(lat.inner(root, self.simple.roots[i]) != 0 for i in nodes):
                return k
        raise ValidationError(detail="vector is orthogonal to every simple root")

    def roots_by_component(self) -> Dict[int, List[Tuple[int, ...]]]:
        out: Dict[int, List[Tuple[int, ...]]] = {k: [] for k in range(len(self.simple.components))}
        for r in self.roots:
            out[self.component_of(r)].append(r)
        return out


def identify_roots(lattice: Lattice, roots: Optional[Sequence[Sequence[int]]] = None) -> RootAnalysis:
    """Root system of the norm 2 vectors of a positive definite lattice.

    The chamber is fixed by lexicographic positivity of coordinates.
    """
    if roots is None:
        from hyperlat.services.enumerate import shell

        roots = shell(lattice, 2)
    roots = sorted({tuple(int(x) for x in r) for r in roots})
    pos, simple_std = positive_and_simple(roots)
    simple = SimpleRootSet.from_roots(lattice, [tuple(-x for x in a) for a in simple_std])
    weyl = weyl_data(simple)
    logger.debug(f"identified {len(roots)} roots, datum {simple.datum or 'empty'}")
    return RootAnalysis(simple.datum, simple, weyl, roots, pos)


def root_subsystem(lattice: Lattice, roots: Sequence[Sequence[int]]) -> RootAnalysis:
    """Analysis of an explicit root subsystem (closed under negation)."""
    return identify_roots(lattice, roots)


# ----------------------------------------------------------------- opposition involution on vectors

def _diagram_flip(sub: nx.Graph) -> Dict[int, int]:
    for iso in GraphMatcher(sub, sub).isomorphisms_iter():
        if any(k != v for k, v in iso.items()):
            return iso
    return {v: v for v in sub.nodes}


def opposition_map(simple: SimpleRootSet) -> Callable[[Sequence], List[Fraction]]:
    """sigma = -w0: permutes the simple roots by the opposition symmetry, -1 off the root span."""
    lat = simple.lattice
    k = len(simple.roots)
    perm = list(range(k))
    g = simple.graph()
    for comp, nodes in simple.components:
        if comp.opposition_is_flip:
            for a, b in _diagram_flip(g.subgraph(nodes)).items():
                perm[a] = b
    inv_gram = exact.inverse(simple.gram) if k else []

    def sigma(v: Sequence) -> List[Fraction]:
        v = [Fraction(x) for x in v]
        if not k:
            return [-x for x in v]
        coeffs = exact.mat_vec(inv_gram, [lat.inner(v, r) for r in simple.roots])
        span = [Fraction(0)] * lat.rank
        image = [Fraction(0)] * lat.rank
        for i, c in enumerate(coeffs):
            if c:
                span = exact.add(span, exact.scale(simple.roots[i], c))
                image = exact.add(image, exact.scale(simple.roots[perm[i]], c))
        return exact.sub(image, exact.sub(v, span))

    return sigma


def dominant(lattice: Lattice, simple: SimpleRootSet, v: Sequence) -> List[Fraction]:
    """Reflect v into the chamber {x : (x, r) <= 0 for all simple r}."""
    v = [Fraction(x) for x in v]
    changed = True
    while changed:
        changed = False
        for r in simple.roots:
            p = lattice.inner(v, r)
            if p > 0:
                v = exact.sub(v, exact.scale(r, Fraction(2) * p / lattice.norm(r)))
                changed = True
    return v


# ----------------------------------------------------------------- minimal vectors, sub-systems

def minimal_vectors(datum) -> List[Tuple[Tuple[Fraction, ...], Fraction]]:
    """One minimal vector per class of R'/R, in simple-root coordinates, with its norm."""
    comp = _component(datum)
    cartan = comp.cartan()
    inv = exact.inverse(cartan)
    out = [(tuple(Fraction(0) for _ in range(comp.rank)), Fraction(0))]
    for i, m in enumerate(comp.highest_root_weights):
        if m == 1:
            v = tuple(-x for x in inv[i])
            out.append((v, inv[i][i]))
    out.sort(key=lambda item: (item[1], item[0]))
    return out


@dataclass
class ExtendedDiagram:
    """Extended Dynkin diagram as simple roots of R (+) O^k."""
    datum: RootDatum
    simple: SimpleRootSet
    weights: List[int]
    extended_nodes: List[int]


def extended_diagram(datum) -> ExtendedDiagram:
    """Add the highest root of every component as an extra node of weight 1.

    Each extra node is the highest root plus a basis vector of its own
    null summand, so the nodes stay linearly independent.
    """
    d = _datum(datum)
    comps = d.components
    base = sum(c.rank for c in comps)
    size = base + len(comps)
    gram = [[Fraction(0)] * size for _ in range(size)]
    offset = 0
    for c in comps:
        cm = c.cartan()
        for i in range(c.rank):
            for j in range(c.rank):
                gram[offset + i][offset + j] = Fraction(cm[i][j])
        offset += c.rank
    lattice = Lattice(gram, f"{d} + O^{len(comps)}")
    roots: List[Tuple[int, ...]] = []
    weights: List[int] = []
    extended: List[int] = []
    offset = 0
    for c in comps:
        for i in range(c.rank):
            e = [0] * size
            e[offset + i] = 1
            roots.append(tuple(e))
        weights.extend(c.highest_root_weights)
        offset += c.rank
    offset = 0
    for k, c in enumerate(comps):
        top = [0] * size
        for i, m in enumerate(c.highest_root_weights):
            top[offset + i] = -m
        top[base + k] = 1
        extended.append(len(roots))
        roots.append(tuple(top))
        weights.append(1)
        offset += c.rank
    node_gram = [[lattice.inner(a, b) for b in roots] for a in roots]
    comps_found = classify_diagram(node_gram) if roots else []
    simple = SimpleRootSet(lattice, roots, node_gram, [])
    simple.components = [(c.component, c.nodes) for c in comps_found]
    return ExtendedDiagram(d, simple, weights, extended)


@dataclass(frozen=True)
class MaximalSubsystem:
    datum: RootDatum
    kind: str  # "prime" or "corank-1"
    prime: Optional[int]
    deleted: Tuple[int, ...]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def maximal_subsystems(datum) -> List[MaximalSubsystem]:
    """Maximal sub root systems of a simple root system.

    Either one point of prime weight p is deleted from the extended
    diagram (index p), or two points of weight 1 (corank 1).
    """
    comp = _component(datum)
    ext = extended_diagram(comp)
    gram, weights = ext.simple.gram, ext.weights
    nodes = list(range(len(weights)))
    seen: Dict[Tuple[str, str, Optional[int]], MaximalSubsystem] = {}

    def add(deleted, kind, p):
        rest = [i for i in nodes if i not in deleted]
        sub = diagram_datum(gram, rest)
        key = (str(sub), kind, p)
        if key not in seen:
            seen[key] = MaximalSubsystem(sub, kind, p, tuple(deleted))

    for i in nodes:
        if _is_prime(weights[i]):
            add((i,), "prime", weights[i])
    ones = [i for i in nodes if weights[i] == 1]
    for pair in combinations(ones, 2):
        add(pair, "corank-1", None)
    return sorted(seen.values(), key=lambda s: (s.kind, s.prime or 0, str(s.datum)))


def deleted_points_pairing(datum, deleted: Sequence[int]) -> Tuple[Fraction, int]:
    """(sum w_i r_i, rho') for deleted points of the extended diagram, and h - sum w_i.

    rho' is the Weyl vector of the diagram with those points removed.
    """
    comp = _component(datum)
    ext = extended_diagram(comp)
    gram, weights = ext.simple.gram, ext.weights
    rest = [i for i in range(len(weights)) if i not in deleted]
    sub = [[gram[i][j] for j in rest] for i in rest]
    coeffs = exact.solve(sub, [-1] * len(rest))
    value = sum(
        (weights[d] * c * gram[d][j] for d in deleted for c, j in zip(coeffs, rest)),
        Fraction(0),
    )
    return value, comp.coxeter_number - sum(weights[d] for d in deleted)


def index_two_pairings(datum) -> List[Tuple[Tuple[int, ...], int, Fraction, Fraction]]:
    """For every deletion of total weight 1, 1+1 or 2: (deleted, m, (r, rho), h/m - 1)."""
    comp = _component(datum)
    ext = extended_diagram(comp)
    weights = ext.weights
    nodes = range(len(weights))
    choices: List[Tuple[int, ...]] = [(i,) for i in nodes if weights[i] in (1, 2)]
    choices += [p for p in combinations(nodes, 2) if weights[p[0]] == weights[p[1]] == 1]
    out = []
    gram = ext.simple.gram
    for deleted in choices:
        m = sum(weights[d] for d in deleted)
        rest = [i for i in nodes if i not in deleted]
        sub = [[gram[i][j] for j in rest] for i in rest]
        coeffs = exact.solve(sub, [-1] * len(rest))
        r = deleted[0]
        value = sum((c * gram[r][j] for c, j in zip(coeffs, rest)), Fraction(0))
        out.append((deleted, m, value, Fraction(comp.coxeter_number, m) - 1))
    return out


def max_orthogonal_roots(lattice: Lattice, roots: Optional[Sequence[Sequence[int]]] = None) -> List[Tuple[int, ...]]:
    """A largest set of pairwise orthogonal roots (maximum clique search)."""
    if roots is None:
        roots = identify_roots(lattice).positive
    else:
        roots = [tuple(r) for r in roots if _lex_positive(r)]
    g = nx.Graph()
    g.add_nodes_from(range(len(roots)))
    for i, j in combinations(range(len(roots)), 2):
        if lattice.inner(roots[i], roots[j]) == 0:
            g.add_edge(i, j)
    clique, _ = nx.max_weight_clique(g, weight=None)
    return [roots[i] for i in sorted(clique)]


# ----------------------------------------------------------------- norm 4 vectors

@dataclass(frozen=True)
class Norm4Row:
    """One row of the norm 4 classification.

    ``R`` is the set of components meeting r with product 2; ``R1`` the
    component of the roots orthogonal to such a root s that contains r - s;
    ``R2`` the roots of R orthogonal to r; ``n`` the orbit size under W(R);
    ``t`` the maximal height of r; ``m`` the number of roots with (r, s) = 2.
    """
    R: str
    R1: Optional[str]
    R2: Optional[str]
    n: Optional[int]
    t: Optional[int]
    m: int
    c: Optional[Fraction]
    minimal: bool = False
    cross: bool = False
    orbits: int = 1


def norm4_c(t: int, m: int) -> Fraction:
    """c with t = m + 2^(m/2 - 2) c."""
    return Fraction(t - m) / Fraction(2) ** (m // 2 - 2)


def norm4_table_rows(component) -> List[Norm4Row]:
    """Closed forms of the norm 4 table for one component type."""
    comp = _component(component)
    n = comp.rank
    rows = []
    if comp.family == "a" and n >= 3:
        rows.append(
            Norm4Row(str(comp), str(RootDatum.of("a", n - 2)), str(RootDatum.of("a", 1, 2) + RootDatum.of("a", n - 4)),
                     math.factorial(n + 1) // (4 * math.factorial(n - 3)), 2 * (n - 1), 4, Fraction(2 * (n - 3)))
        )
    elif comp.family == "d" and n == 4:
        rows.append(Norm4Row("d4", "a1", "a3", 8, 6, 6, Fraction(0), orbits=3))
    elif comp.family == "d":
        rows.append(Norm4Row(str(comp), "a1", str(RootDatum.of("a", n - 1)), 2 * n, 2 * (n - 1), 2 * (n - 1), Fraction(0)))
        rows.append(
            Norm4Row(str(comp), str(RootDatum.of("d", n - 2)), str(RootDatum.of("d", n - 4) + RootDatum.of("a", 3)),
                     2 * math.factorial(n) // (3 * math.factorial(n - 4)), 2 * (2 * n - 5), 6, Fraction(2 * (n - 4)))
        )
    elif comp.family == "e":
        table = {
            6: ("a5", "d4", 270, 16, 8, 2),
            7: ("d6", "a1 d5", 756, 26, 10, 2),
            8: ("e7", "d7", 2160, 46, 14, 1),
        }
        r1, r2, size, t, m, c = table[n]
        rows.append(Norm4Row(str(comp), r1, r2, size, t, m, Fraction(c)))
    return rows


def norm4_cross_row(x, y) -> Norm4Row:
    """The row for r = s1 + s2 with roots in two different components x, y."""
    cx, cy = _component(x), _component(y)
    hx, hy = cx.coxeter_number, cy.coxeter_number
    r2 = cx.orthogonal_to_root() + cy.orthogonal_to_root()
    return Norm4Row(str(RootDatum.from_components((cx, cy))), None, str(r2),
                    cx.root_count * cy.root_count, hx + hy - 2, 2, Fraction(2 * (hx + hy - 4)), cross=True)


def classify_norm4(lattice: Lattice, r: Sequence[int], analysis: Optional[RootAnalysis] = None) -> Norm4Row:
    """Classify a norm 4 vector of a positive definite lattice by its roots."""
    r = tuple(int(x) for x in r)
    if lattice.norm(r) != 4:
        raise ValidationError(detail=f"vector has norm {lattice.norm(r)}, not 4")
    analysis = analysis or identify_roots(lattice)
    meeting = [s for s in analysis.roots if lattice.inner(r, s) == 2]
    m = len(meeting)
    if m == 0:
        return Norm4Row("", None, None, None, None, 0, None, minimal=True)
    by_comp = analysis.roots_by_component()
    comp_ids = sorted({analysis.component_of(s) for s in meeting})
    r_roots = [s for k in comp_ids for s in by_comp[k]]
    R = root_subsystem(lattice, r_roots)
    r2 = root_subsystem(lattice, [s for s in r_roots if lattice.inner(s, r) == 0])
    s0 = meeting[0]
    rest = tuple(a - b for a, b in zip(r, s0))
    star = root_subsystem(lattice, [s for s in r_roots if lattice.inner(s, s0) == 0])
    r1 = None
    if star.roots:
        k = star.component_of(rest)
        r1 = star.simple.components[k][0]
    size = R.datum.weyl_group_order // r2.datum.weyl_group_order
    top = dominant(lattice, R.simple, r)
    t = int(lattice.inner(top, R.weyl.rho))
    return Norm4Row(
        str(R.datum),
        str(r1) if r1 else None,
        str(r2.datum),
        size,
        t,
        m,
        norm4_c(t, m),
        cross=len(comp_ids) > 1,
    )
