"""q-series and theta functions of lattices.

The theta function of an n dimensional unimodular lattice is

    theta_L = sum_{r <= n/8} a_r theta(q)^{n - 8r} Delta_8(q)^r

with theta(q) = 1 + 2q + 2q^4 + ... and Delta_8 = q prod (1 - q^{2m-1})^8 (1 - q^{4m})^8,
so a handful of vector counts fix the whole series. The bimodular and
norm -4 series below are derived that way from the 26 and 25 dimensional
unimodular lattices they live in, with the top coefficient fixed by a
count of characteristic vectors.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from hyperlat.core.exceptions import ConstructionError, ValidationError
from hyperlat.core.logging import get_logger, log_structured
from hyperlat.services import exact
from hyperlat.services.enumerate import vectors_in_ball
from hyperlat.services.lattice import Lattice, characteristic_vectors

logger = get_logger(__name__)

Number = Union[int, Fraction]

# exponents of every series live in (1/4)Z
MAX_EXPONENT_DENOMINATOR = 4


def _exponent(e: Number) -> Fraction:
    e = Fraction(e)
    if MAX_EXPONENT_DENOMINATOR % e.denominator:
        raise ValidationError(detail=f"exponent {e} has denominator larger than {MAX_EXPONENT_DENOMINATOR}")
    return e


class QSeries:
    """Truncated power series in q with integer coefficients, exact below ``precision``."""

    def __init__(self, coeffs: Optional[Dict[Number, int]] = None, precision: Number = 0):
        self.precision = Fraction(precision)
        self.coeffs: Dict[Fraction, int] = {}
        for e, c in (coeffs or {}).items():
            e = _exponent(e)
            if c and e < self.precision:
                self.coeffs[e] = int(c)

    @classmethod
    def from_list(cls, values: Sequence[int], start: Number = 0) -> "QSeries":
        """Coefficients of q^start, q^(start+1), ..."""
        start = Fraction(start)
        return cls({start + i: c for i, c in enumerate(values)}, start + len(values))

    @classmethod
    def one(cls, precision: Number) -> "QSeries":
        return cls({0: 1}, precision)

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}q^{e}" for e, c in sorted(self.coeffs.items())[:6])
        return f"<QSeries {terms or 0} + O(q^{self.precision})>"

    def __getitem__(self, e: Number) -> int:
        e = Fraction(e)
        if e >= self.precision:
            raise ValidationError(detail=f"coefficient of q^{e} is beyond the precision {self.precision}")
        return self.coeffs.get(e, 0)

    def coefficients(self, up_to: Optional[Number] = None) -> List[int]:
        """Integer exponent coefficients 0, 1, ... up to (excluding) ``up_to``."""
        top = self.precision if up_to is None else min(Fraction(up_to), self.precision)
        return [self.coeffs.get(Fraction(k), 0) for k in range(int(-(-top // 1)))]

    @property
    def valuation(self) -> Optional[Fraction]:
        return min(self.coeffs) if self.coeffs else None

    def truncate(self, precision: Number) -> "QSeries":
        return QSeries(self.coeffs, min(self.precision, Fraction(precision)))

    def __eq__(self, other) -> bool:
        """Equal on the common precision."""
        if not isinstance(other, QSeries):
            return NotImplemented
        p = min(self.precision, other.precision)
        keys = {e for e in self.coeffs if e < p} | {e for e in other.coeffs if e < p}
        return all(self.coeffs.get(e, 0) == other.coeffs.get(e, 0) for e in keys)

    def __add__(self, other: Union["QSeries", int]) -> "QSeries":
        if isinstance(other, int):
            other = QSeries({0: other}, self.precision)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, min(self.precision, other.precision))

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.precision)

    def __sub__(self, other: Union["QSeries", int]) -> "QSeries":
        return self + (-other)

    def __rsub__(self, other: int) -> "QSeries":
        return (-self) + other

    def __mul__(self, other: Union["QSeries", int]) -> "QSeries":
        if isinstance(other, int):
            return QSeries({e: c * other for e, c in self.coeffs.items()}, self.precision)
        va, vb = self.valuation, other.valuation
        if va is None or vb is None:
            return QSeries({}, min(self.precision + (vb or 0), other.precision + (va or 0)))
        precision = min(self.precision + vb, other.precision + va)
        out: Dict[Fraction, int] = {}
        for e1, c1 in self.coeffs.items():
            if e1 + vb >= precision:
                continue
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < precision:
                    out[e] = out.get(e, 0) + c1 * c2
        return QSeries(out, precision)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return QSeries.one(self.precision)
        result: Optional[QSeries] = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_divide(self, k: int) -> "QSeries":
        if any(c % k for c in self.coeffs.values()):
            raise ConstructionError(detail=f"series is not divisible by {k}")
        return QSeries({e: c // k for e, c in self.coeffs.items()}, self.precision)

    def inverse(self) -> "QSeries":
        """1/f for a series whose leading coefficient is +-1 and whose exponents are integral."""
        v = self.valuation
        if v is None or abs(self.coeffs[v]) != 1:
            raise ValidationError(detail="only series with leading coefficient +-1 are invertible over Z")
        if any(e.denominator != 1 for e in self.coeffs):
            raise ValidationError(detail="inverse needs integral exponents")
        lead = self.coeffs[v]
        n = int(self.precision - v)
        f = [self.coeffs.get(v + i, 0) for i in range(n)]
        g = [0] * n
        for i in range(n):
            s = (1 if i == 0 else 0) - sum(f[j] * g[i - j] for j in range(1, i + 1))
            g[i] = s * lead
        return QSeries({-v + i: c for i, c in enumerate(g)}, -v + n)

    def substitute(self, k: int) -> "QSeries":
        """f(q^k)."""
        return QSeries({e * k: c for e, c in self.coeffs.items()}, self.precision * k)

    def even_part(self) -> "QSeries":
        """Terms with even integer exponents."""
        return QSeries({e: c for e, c in self.coeffs.items() if e.denominator == 1 and e.numerator % 2 == 0}, self.precision)

    def to_dict(self) -> dict:
        return {"precision": self.precision, "coeffs": {str(e): c for e, c in sorted(self.coeffs.items())}}


# ----------------------------------------------------------------- standard series

def _product(factors: Iterable[Tuple[int, int]], precision: int) -> QSeries:
    """prod (1 - q^e)^p over (e, p) with e >= 1."""
    out = QSeries.one(precision)
    for e, p in factors:
        if e >= precision or p == 0:
            continue
        if p > 0:
            factor = QSeries({0: 1, e: -1}, precision)
        else:
            factor = QSeries({k * e: 1 for k in range(precision // e + 1)}, precision)
        for _ in range(abs(p)):
            out = out * factor
    return out


@lru_cache(maxsize=None)
def _theta1(precision: int) -> QSeries:
    coeffs = {0: 1}
    n = 1
    while n * n < precision:
        coeffs[n * n] = 2
        n += 1
    return QSeries(coeffs, precision)


@lru_cache(maxsize=None)
def _delta8(precision: int) -> QSeries:
    factors = []
    for m in range(1, precision + 1):
        factors.append((2 * m - 1, 8))
        factors.append((4 * m, 8))
    return QSeries({1: 1}, precision + 1) * _product(factors, precision)


@lru_cache(maxsize=None)
def _delta(precision: int) -> QSeries:
    """q prod (1 - q^n)^24 = sum tau(n) q^n."""
    return QSeries({1: 1}, precision + 1) * _product(((n, 24) for n in range(1, precision + 1)), precision)


def standard_series(name: str, precision: int) -> QSeries:
    """Named series, exact below q^precision.

    * ``theta1``: 1 + 2q + 2q^4 + ...
    * ``delta8``: q prod (1 - q^{2m-1})^8 (1 - q^{4m})^8 = q - 8q^2 + 28q^3 - ...
    * ``delta_inv``: q^{-1} prod (1 - q^n)^{-24} = q^{-1} + 24 + 324q + ...
    * ``tau``: sum tau(n) q^{2n} = q^2 - 24q^4 + ...
    """
    if precision < 1:
        raise ValidationError(detail="precision must be positive")
    if name == "theta1":
        return _theta1(precision)
    if name == "delta8":
        return _delta8(precision)
    if name == "delta_inv":
        return _delta(precision + 2).inverse().truncate(precision)
    if name == "tau":
        return _delta(precision // 2 + 1).substitute(2).truncate(precision)
    raise ValidationError(detail=f"unknown series {name!r}; expected theta1, delta8, delta_inv or tau")


# ----------------------------------------------------------------- theta of lattices

def theta_series(lattice: Lattice, max_norm: Number, budget: Optional[int] = None) -> QSeries:
    """Counts of vectors of each norm up to ``max_norm``."""
    if not lattice.is_positive_definite:
        raise ValidationError(detail="theta series needs a positive definite lattice")
    max_norm = Fraction(max_norm)
    top = Fraction(int(max_norm * MAX_EXPONENT_DENOMINATOR), MAX_EXPONENT_DENOMINATOR)
    counts: Dict[Fraction, int] = {}
    for _, d in vectors_in_ball(lattice, top, budget=budget, with_norms=True):
        counts[d] = counts.get(d, 0) + 1
    log_structured(logger, "debug", "theta series", {"rank": lattice.rank, "max_norm": top, "vectors": sum(counts.values())})
    return QSeries(counts, top + Fraction(1, MAX_EXPONENT_DENOMINATOR))


def theta_of_dual(lattice: Lattice, max_norm: Number, budget: Optional[int] = None) -> QSeries:
    """Theta series of L', fractional exponents included."""
    if lattice.determinant == 0:
        raise ValidationError(detail="dual of a degenerate lattice")
    return theta_series(Lattice(exact.inverse(lattice.gram), f"{lattice.label or 'L'}'"), max_norm, budget)


def unimodular_theta(n: int, a: Sequence[int], precision: int) -> QSeries:
    """sum a_r theta^{n-8r} Delta_8^r."""
    theta, delta8 = _theta1(precision), _delta8(precision)
    out = QSeries({}, precision)
    for r, ar in enumerate(a):
        if ar:
            out = out + (theta ** (n - 8 * r)) * (delta8 ** r) * ar
    return out.truncate(precision)


def solve_coefficients(n: int, counts: Sequence[int], known: Optional[Dict[int, int]] = None) -> List[int]:
    """a_0 .. a_{n//8} from the numbers of vectors of norm 0, 1, ...

    ``known`` fixes some a_r directly; their counts may then be omitted.
    """
    known = known or {}
    top = n // 8
    precision = top + 1
    theta, delta8 = _theta1(precision), _delta8(precision)
    basis = [(theta ** (n - 8 * r)) * (delta8 ** r) for r in range(top + 1)]
    a: List[int] = []
    for r in range(top + 1):
        if r in known:
            a.append(int(known[r]))
            continue
        if r >= len(counts):
            raise ValidationError(detail=f"need the number of norm {r} vectors to fix a_{r}")
        a.append(counts[r] - sum(a[s] * basis[s][r] for s in range(r)))
    return a


@dataclass
class ThetaDecomposition:
    """a_0 .. a_{n//8} for an n dimensional unimodular lattice."""
    n: int
    a: List[int]
    theta: Optional[QSeries] = field(default=None, repr=False)

    def reconstruct(self, precision: int) -> QSeries:
        return unimodular_theta(self.n, self.a, precision)

    def characteristic_counts(self) -> Dict[Fraction, int]:
        return characteristic_counts_from(self.n, self.a)

    def to_dict(self) -> dict:
        out = {"n": self.n, "a": self.a}
        if self.theta is not None:
            out["coeffs"] = self.theta.to_dict()
        return out


def decompose(lattice: Lattice, max_norm: Optional[int] = None, budget: Optional[int] = None) -> ThetaDecomposition:
    """Solve for a_r from the theta series and check the rest of it.

    Raises:
        ValidationError: lattice is not unimodular, or too large
        ConstructionError: the series is not of the expected shape
    """
    if not (lattice.is_integral and lattice.is_unimodular and lattice.is_positive_definite):
        raise ValidationError(detail="decomposition needs a positive definite unimodular lattice")
    n = lattice.rank
    if n > 32:
        raise ValidationError(detail="decomposition is only set up for dimension at most 32")
    top = n // 8
    max_norm = max_norm if max_norm is not None else 2 * top + 2
    if max_norm < top:
        raise ValidationError(detail=f"need vectors up to norm {top} to solve for a_0 .. a_{top}")
    theta = theta_series(lattice, max_norm, budget)
    a = solve_coefficients(n, theta.coefficients(top + 1))
    if a[0] != 1:
        raise ConstructionError(detail=f"a_0 = {a[0]}, expected 1")
    rebuilt = unimodular_theta(n, a, max_norm + 1)
    if rebuilt != theta.truncate(max_norm + 1):
        raise ConstructionError(detail="theta series does not match its decomposition", context={"a": a})
    log_structured(logger, "info", "theta decomposition", {"n": n, "a": a, "checked_to": max_norm})
    return ThetaDecomposition(n, a, theta)


def characteristic_counts_from(n: int, a: Sequence[int]) -> Dict[Fraction, int]:
    """Numbers of characteristic vectors of norm n - 24 (and n - 16 when the first is 0).

    Only for 24 <= n < 32.
    """
    if n // 8 != 3:
        raise ValidationError(detail="characteristic counts are only set up for 24 <= n < 32")
    a = list(a) + [0] * (4 - len(a))
    low = -Fraction(2) ** (n - 36) * a[3]
    out = {Fraction(n - 24): low}
    if low == 0:
        out[Fraction(n - 16)] = Fraction(2) ** (n - 24) * a[2]
    for k, v in out.items():
        if v.denominator != 1 or v < 0:
            raise ConstructionError(detail=f"characteristic count {v} at norm {k} is not a non-negative integer")
    return {k: int(v) for k, v in out.items()}


def characteristic_theta_counts(lattice: Lattice, budget: Optional[int] = None) -> Dict[Fraction, int]:
    """Characteristic vector counts predicted by the theta decomposition of L."""
    return decompose(lattice, max_norm=3, budget=budget).characteristic_counts()


def count_characteristic(lattice: Lattice, norm: Number, budget: Optional[int] = None) -> int:
    """Direct count of characteristic vectors of the given norm."""
    norm = Fraction(norm)
    return sum(1 for c in characteristic_vectors(lattice, norm, budget) if lattice.norm(c) == norm)


# ----------------------------------------------------------------- 25 dimensional lattices from II_{25,1}

@lru_cache(maxsize=None)
def _bimodular(t: int, z1: int, precision: int) -> QSeries:
    # M = the 26 dimensional unimodular lattice containing u^perp + a1: 2 z1 norm 1
    # vectors, 12t - 16 + 4 z1 norm 2 vectors, 2 + z1 characteristic vectors of norm 2
    a = solve_coefficients(26, [1, 2 * z1, 12 * t - 16 + 4 * z1], known={3: -1024 * (2 + z1)})
    even = unimodular_theta(26, a, precision).even_part()
    return (even * _theta1(precision).substitute(2).truncate(precision).inverse()).truncate(precision)


def bimodular_theta(t: int, z1: int, precision: int = 9) -> QSeries:
    """theta_a + z1 theta_b + 12t theta_c: the theta function of u^perp for u of norm -2, height t."""
    if z1 not in (0, 2):
        raise ValidationError(detail="z1 is 0 or 2 for a norm -2 vector")
    return _bimodular(t, z1, precision)


def bimodular_basis(precision: int = 9) -> Dict[str, QSeries]:
    """theta_a, theta_b and theta_c."""
    a = _bimodular(0, 0, precision)
    b = (_bimodular(0, 2, precision) - a).exact_divide(2)
    c = (_bimodular(1, 0, precision) - a).exact_divide(12)
    return {"theta_a": a, "theta_b": b, "theta_c": c}


def unimodular25_theta(t: int, z1: int, z2: int, precision: int = 9) -> QSeries:
    """Theta function of the odd unimodular A with A_even = u^perp, u of norm -4 and height t.

    A has z2 norm 1 vectors, 8t - 20 + 2 z2 + 8 z1 norm 2 vectors and 2 z1
    characteristic vectors of norm 1.
    """
    if z1 < 0 or z2 < 0:
        raise ValidationError(detail="z1 and z2 are counts")
    a = solve_coefficients(25, [1, z2, 8 * t - 20 + 2 * z2 + 8 * z1], known={3: -4096 * z1})
    return unimodular_theta(25, a, precision)


def height_term(norm: int, precision: int = 9) -> QSeries:
    """The series multiplying the height t in the theta function of u^perp."""
    tau = standard_series("tau", precision)
    if norm == -2:
        return (tau * _theta1(precision).substitute(2).truncate(precision)) * 12
    if norm == -4:
        return (tau * _theta1(precision).substitute(4).truncate(precision)) * 8
    raise ValidationError(detail="height terms are known for norms -2 and -4")


def leech_theta(precision: int) -> QSeries:
    """1 + 196560 q^4 + ..., fixed by having no vectors of norm 1, 2 or 3."""
    return unimodular_theta(24, solve_coefficients(24, [1, 0, 0, 0]), precision)


def height_linearity_report(samples: Sequence[Tuple[QSeries, int]]) -> Dict[str, object]:
    """Whether theta series of u^perp for samples (theta, height) lie on a line in t.

    Only reported; nothing about it is asserted.
    """
    if len(samples) < 3:
        return {"samples": len(samples), "linear": None}
    (th0, t0), (th1, t1) = samples[0], samples[1]
    if t0 == t1:
        return {"samples": len(samples), "linear": None}
    slope_num, slope_den = th1 - th0, t1 - t0
    mismatches = []
    for th, t in samples[2:]:
        lhs = (th - th0) * slope_den
        rhs = slope_num * (t - t0)
        if lhs != rhs:
            mismatches.append(t)
    return {"samples": len(samples), "linear": not mismatches, "mismatched_heights": mismatches}
