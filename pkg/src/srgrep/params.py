"""Parameter arithmetic for strongly regular graphs.

Eigenvalues, multiplicities and cosine sequences are computed in exact
arithmetic.  When the discriminant ``(lambda - mu)**2 + 4*(k - mu)`` is not a
perfect square the nontrivial eigenvalues are quadratic irrationals; they are
carried as :class:`QuadraticSurd` values so that the feasibility screens stay
exact, but no representation is built for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import InputError, SrgError


class RangeViolation(InputError):
    pass


class IdentityViolation(InputError):
    def __init__(self, lhs: int, rhs: int):
        super().__init__(f"k(k-lambda-1) = {lhs} != (v-k-1)mu = {rhs}")
        self.lhs = lhs
        self.rhs = rhs


class NonIntegralMultiplicity(SrgError):
    pass


class NotAnEigenvalue(InputError):
    pass


class NonIntegralEigenvalue(SrgError):
    pass


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``a + b*sqrt(d)`` with rational ``a, b`` and squarefree-ish ``d > 0``."""

    a: Fraction
    b: Fraction
    d: int

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.d != self.d and other.b != 0 and self.b != 0:
                raise ValueError("surds over different radicands")
            return other
        return QuadraticSurd(Fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticSurd(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign, comparing ``a**2`` against ``b**2 * d`` when signs differ."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"({self.a} {sign} {abs(self.b)}*sqrt({self.d}))"


Number = Union[Fraction, QuadraticSurd]


@dataclass(frozen=True)
class SrgParams:
    """A parameter quadruple.  Construct through :func:`validate_params` to check it."""

    v: int
    k: int
    lam: int
    mu: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def complement(self) -> "SrgParams":
        v, k, lam, mu = self.as_tuple()
        return SrgParams(v, v - k - 1, v - 2 - 2 * k + mu, v - 2 * k + lam)

    def identity_sides(self) -> tuple[int, int]:
        return self.k * (self.k - self.lam - 1), (self.v - self.k - 1) * self.mu

    def __str__(self) -> str:
        return f"srg{self.as_tuple()}"


@dataclass(frozen=True)
class IntersectionArray:
    b0: int
    b1: int
    c1: int
    c2: int
    a1: int
    a2: int

    @classmethod
    def from_params(cls, p: SrgParams) -> "IntersectionArray":
        return cls(b0=p.k, b1=p.k - p.lam - 1, c1=1, c2=p.mu, a1=p.lam, a2=p.k - p.mu)


@dataclass(frozen=True)
class Spectrum:
    k: int
    theta_plus: Number
    theta_minus: Number
    mult_plus: int
    mult_minus: int
    discriminant: int
    integral: bool
    mult_k: int = 1

    def eigenvalues(self) -> dict:
        """Map eigenvalue -> multiplicity (integral spectra only)."""
        if not self.integral:
            raise NonIntegralEigenvalue("spectrum is not integral")
        return {
            self.k: self.mult_k,
            int(self.theta_plus): self.mult_plus,
            int(self.theta_minus): self.mult_minus,
        }

    def multiplicity(self, theta: int) -> int:
        return self.eigenvalues()[theta]


@dataclass(frozen=True)
class CosineSequence:
    w0: Fraction
    w1: Fraction
    w2: Fraction
    eigenvalue: int

    def __iter__(self):
        return iter((self.w0, self.w1, self.w2))

    def at_distance(self, d: int) -> Fraction:
        return (self.w0, self.w1, self.w2)[d]


@dataclass
class FeasibilityReport:
    params: SrgParams
    identity_ok: bool
    integrality_ok: bool
    krein_ok: bool
    absolute_bound_ok: bool
    details: list[tuple[str, dict]] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.identity_ok and self.integrality_ok and self.krein_ok and self.absolute_bound_ok


def validate_params(v: int, k: int, lam: int, mu: int) -> SrgParams:
    for name, x in (("v", v), ("k", k), ("lambda", lam), ("mu", mu)):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RangeViolation(f"{name} must be an integer, got {x!r}")
        if x < 0:
            raise RangeViolation(f"{name} must be nonnegative, got {x}")
    if not 0 < k < v:
        raise RangeViolation(f"need 0 < k < v, got k={k}, v={v}")
    if k == v - 1:
        raise RangeViolation("complete graph: no non-adjacent pairs, mu is undefined")
    if not lam < k:
        raise RangeViolation(f"need lambda < k, got lambda={lam}, k={k}")
    if not 0 < mu <= k:
        raise RangeViolation(f"need 0 < mu <= k, got mu={mu}, k={k}")
    p = SrgParams(v, k, lam, mu)
    lhs, rhs = p.identity_sides()
    if lhs != rhs:
        raise IdentityViolation(lhs, rhs)
    return p


def _exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _eigen_data(p: SrgParams):
    """Eigenvalues and (possibly fractional or irrational) multiplicities, no checks."""
    v, k, lam, mu = p.as_tuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = _exact_sqrt(disc)
    skew = 2 * k + (v - 1) * (lam - mu)
    if root is not None:
        r = Fraction(lam - mu + root, 2)
        s = Fraction(lam - mu - root, 2)
        f = Fraction(v - 1, 2) - Fraction(skew, 2 * root)
        g = Fraction(v - 1, 2) + Fraction(skew, 2 * root)
    else:
        half = Fraction(1, 2)
        r = QuadraticSurd(Fraction(lam - mu, 2), half, disc)
        s = QuadraticSurd(Fraction(lam - mu, 2), -half, disc)
        f = QuadraticSurd(Fraction(v - 1, 2), Fraction(-skew, 2 * disc), disc)
        g = QuadraticSurd(Fraction(v - 1, 2), Fraction(skew, 2 * disc), disc)
        if skew == 0:
            f = g = Fraction(v - 1, 2)
    return disc, root, r, s, f, g


def _is_integer(x) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1


def spectrum(params: SrgParams) -> Spectrum:
    disc, root, r, s, f, g = _eigen_data(params)
    if not (_is_integer(f) and _is_integer(g)) or f <= 0 or g <= 0:
        raise NonIntegralMultiplicity(
            f"multiplicities {f} and {g} are not positive integers for {params}"
        )
    return Spectrum(
        k=params.k,
        theta_plus=r,
        theta_minus=s,
        mult_plus=int(f),
        mult_minus=int(g),
        discriminant=disc,
        integral=root is not None,
    )


def _second_cosine(params: SrgParams, theta: int) -> tuple[Fraction, Fraction]:
    """Solve ``theta*w1 = c1*w0 + a1*w1 + b1*w2`` for ``w2`` with ``w1 = theta/k``."""
    ia = IntersectionArray.from_params(params)
    w1 = Fraction(theta, params.k)
    w2 = (theta * w1 - ia.c1 - ia.a1 * w1) / ia.b1
    return w1, w2


def cosine_sequence(params: SrgParams, theta: int) -> CosineSequence:
    sp = spectrum(params)
    if not sp.integral:
        raise NonIntegralEigenvalue(
            f"eigenvalues of {params} are irrational (discriminant {sp.discriminant})"
        )
    if theta == params.k:
        raise NotAnEigenvalue("the valency is the trivial eigenvalue")
    if theta not in (sp.theta_plus, sp.theta_minus):
        raise NotAnEigenvalue(
            f"{theta} is not an eigenvalue of {params}; "
            f"nontrivial ones are {sp.theta_plus} and {sp.theta_minus}"
        )
    w1, w2 = _second_cosine(params, theta)
    return CosineSequence(Fraction(1), w1, w2, theta)


def feasibility_report(params: SrgParams) -> FeasibilityReport:
    """Run identity, integrality, Krein and absolute-bound screens; never short-circuits."""
    v, k, lam, mu = params.as_tuple()
    details: list[tuple[str, dict]] = []

    lhs, rhs = params.identity_sides()
    identity_ok = lhs == rhs
    details.append(("identity", {"k(k-lambda-1)": lhs, "(v-k-1)mu": rhs}))

    disc, root, r, s, f, g = _eigen_data(params)
    integrality_ok = all(_is_integer(x) and x > 0 for x in (f, g))
    details.append(
        ("integrality", {"discriminant": disc, "f": f, "g": g, "r": r, "s": s})
    )

    # Krein: (r+1)(k+r+2rs) <= (k+r)(s+1)^2 and (s+1)(k+s+2rs) <= (k+s)(r+1)^2
    k1_lhs = (r + 1) * (k + r + 2 * r * s)
    k1_rhs = (k + r) * ((s + 1) * (s + 1))
    k2_lhs = (s + 1) * (k + s + 2 * r * s)
    k2_rhs = (k + s) * ((r + 1) * (r + 1))
    krein1 = k1_lhs <= k1_rhs
    krein2 = k2_lhs <= k2_rhs
    krein_ok = bool(krein1 and krein2)
    details.append(("krein-1", {"lhs": k1_lhs, "rhs": k1_rhs, "ok": bool(krein1)}))
    details.append(("krein-2", {"lhs": k2_lhs, "rhs": k2_rhs, "ok": bool(krein2)}))

    abs_ok = True
    for name, m in (("f", f), ("g", g)):
        bound = m * (m + 3) * Fraction(1, 2)
        ok = bool(bound >= v)
        abs_ok = abs_ok and ok
        details.append((f"absolute-bound-{name}", {"m(m+3)/2": bound, "v": v, "ok": ok}))

    return FeasibilityReport(
        params=params,
        identity_ok=identity_ok,
        integrality_ok=integrality_ok,
        krein_ok=krein_ok,
        absolute_bound_ok=abs_ok,
        details=details,
    )
