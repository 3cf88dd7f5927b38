"""Exact arithmetic kernel.

Everything downstream computes with elements of (cyclotomic rationals)[v, v^-1]
where v^2 = q.  Working in the half-power v keeps every exponent integral even
when operators contribute q^{1/2}-shifts.  The kernel has three layers:

  * Cyclo        -- an element of Q[x]/Phi_N(x), x mapped to a primitive N-th
                    root of unity; rationals are the N = 1 case.
  * Laurent      -- finitely supported map (v-exponent -> Cyclo).
  * TruncSeries  -- dense truncated power series in one auxiliary variable
                    with Laurent coefficients.

All values are immutable after construction.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import gcd

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# --------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # dense exact division over Z (cyclotomic factors are monic up to sign)
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c, rem = divmod(num[i + len(den) - 1], den[-1])
        if rem:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _cyclotomic_poly(n: int) -> list[int]:
    if n in _PHI_CACHE:
        return _PHI_CACHE[n]
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, _cyclotomic_poly(d))
    _PHI_CACHE[n] = poly
    return poly


_PHI_CACHE: dict[int, list[int]] = {}
_RED_CACHE: dict[int, list[tuple[int, ...]]] = {}


def _reduction_rows(n: int) -> list[tuple[int, ...]]:
    """Vectors of x^k mod Phi_n for k = deg .. max(2*deg-2, n-1)."""
    if n in _RED_CACHE:
        return _RED_CACHE[n]
    phi = _cyclotomic_poly(n)
    deg = len(phi) - 1
    top_k = max(2 * deg - 2, n - 1)
    rows: list[tuple[int, ...]] = []
    # x^deg = -(phi[0] + ... + phi[deg-1] x^{deg-1})  (phi is monic)
    cur = [-c for c in phi[:deg]]
    rows.append(tuple(cur))
    for _ in range(top_k - deg):
        shifted = [0] + cur[: deg - 1]
        top = cur[deg - 1]
        if top:
            for j in range(deg):
                shifted[j] += top * rows[0][j]
        cur = shifted
        rows.append(tuple(cur))
    _RED_CACHE[n] = rows
    return rows


def _euler_phi(n: int) -> int:
    return len(_cyclotomic_poly(n)) - 1


def _reduce_mod_phi(n: int, coeffs) -> tuple:
    deg = _euler_phi(n)
    if len(coeffs) <= deg:
        return tuple(coeffs) + (0,) * (deg - len(coeffs))
    if len(coeffs) > n:  # fold by x^n = 1, which holds mod Phi_n
        folded = [0] * n
        for k, c in enumerate(coeffs):
            if c:
                folded[k % n] += c
        coeffs = folded
        if len(coeffs) <= deg:
            return tuple(coeffs) + (0,) * (deg - len(coeffs))
    rows = _reduction_rows(n)
    out = list(coeffs[:deg])
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            row = rows[k - deg]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


class Cyclo:
    """Element of Q[x]/Phi_N represented on the power basis 1, z, ..., z^{phi(N)-1}.

    Purely rational values are normalised to conductor 1 so that cheap Fraction
    arithmetic handles the common case.
    """

    __slots__ = ("N", "c")

    def __init__(self, n: int, coeffs, _reduced: bool = False):
        if not _reduced:
            coeffs = _reduce_mod_phi(n, list(coeffs))
        if n > 1 and not any(coeffs[1:]):
            n, coeffs = 1, (coeffs[0],)
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "c", tuple(coeffs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Cyclo is immutable")

    # -- constructors

    @staticmethod
    def rational(x) -> "Cyclo":
        if not isinstance(x, (int, Fraction)):
            x = Fraction(x)
        return Cyclo(1, (x,), _reduced=True)

    @staticmethod
    def root(n: int, k: int = 1) -> "Cyclo":
        """zeta_n^k."""
        k %= n
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        return Cyclo(n, coeffs)

    # -- structure

    @property
    def is_zero(self) -> bool:
        return not any(self.c)

    @property
    def is_rational(self) -> bool:
        return self.N == 1

    def as_rational(self) -> Fraction:
        if self.N != 1:
            raise ValueError(f"not a rational value: {self}")
        return self.c[0]

    def lift(self, m: int) -> "Cyclo":
        """Rewrite at conductor m (self.N must divide m); canonical shrink applies."""
        return Cyclo(m, self._lift_coeffs(m))

    def _lift_coeffs(self, m: int) -> tuple[Fraction, ...]:
        """Raw coefficient vector of self at conductor m (self.N | m)."""
        if m == self.N:
            return self.c
        if m % self.N:
            raise ValueError("conductor must be a multiple")
        step = m // self.N
        out = [0] * (max(step * (len(self.c) - 1), 0) + 1)
        for i, x in enumerate(self.c):
            if x:
                out[step * i] += x
        return _reduce_mod_phi(m, out)

    def _match(self, other: "Cyclo") -> tuple[int, tuple, tuple]:
        if self.N == other.N:
            return self.N, self.c, other.c
        m = self.N * other.N // gcd(self.N, other.N)
        return m, self._lift_coeffs(m), other._lift_coeffs(m)

    # -- arithmetic

    def __add__(self, other):
        other = _as_cyclo(other)
        if self.N == 1 and other.N == 1:
            return Cyclo(1, (self.c[0] + other.c[0],), _reduced=True)
        n, ca, cb = self._match(other)
        return Cyclo(n, tuple(x + y for x, y in zip(ca, cb)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.N, tuple(-x for x in self.c), _reduced=True)

    def __sub__(self, other):
        return self + (-_as_cyclo(other))

    def __rsub__(self, other):
        return _as_cyclo(other) + (-self)

    def __mul__(self, other):
        other = _as_cyclo(other)
        if self.N == 1 and other.N == 1:
            return Cyclo(1, (self.c[0] * other.c[0],), _reduced=True)
        if self.is_zero or other.is_zero:
            return Cyclo.rational(0)
        n, ca, cb = self._match(other)
        prod = [0] * (len(ca) + len(cb) - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        prod[i + j] += x * y
        return Cyclo(n, _reduce_mod_phi(n, prod), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero:
            raise ZeroDivisionError("cyclotomic inverse of zero")
        if self.N == 1:
            return Cyclo(1, (1 / Fraction(self.c[0]),), _reduced=True)
        # extended Euclid on (self, Phi_N) over Q[x]
        phi = _cyclotomic_poly(self.N)
        r0, r1 = [Fraction(x) for x in phi], [Fraction(x) for x in self.c]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0]:
            while len(r1) > 1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1 and r1[0]:
                inv = 1 / r1[0]
                return Cyclo(self.N, [x * inv for x in s1])
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for i in range(len(rem) - len(r1), -1, -1):
                c = rem[i + len(r1) - 1] / r1[-1]
                q[i] = c
                if c:
                    for j, d in enumerate(r1):
                        rem[i + j] -= c * d
            while len(rem) > 1 and not rem[-1]:
                rem.pop()
            # s_new = s0 - q*s1
            qs = [Fraction(0)] * (len(q) + len(s1) - 1)
            for i, x in enumerate(q):
                if x:
                    for j, y in enumerate(s1):
                        qs[i + j] += x * y
            s_new = [Fraction(0)] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                s_new[i] += x
            for i, x in enumerate(qs):
                s_new[i] -= x
            r0, r1, s0, s1 = r1, rem, s1, s_new
        raise ZeroDivisionError("not invertible")  # pragma: no cover

    def subst_root_power(self, s: int) -> "Cyclo":
        """Apply the field map zeta_N -> zeta_N^s (s coprime to N)."""
        if self.N == 1:
            return self
        out = [0] * (((self.N - 1) * (len(self.c) - 1)) + 1)
        for i, x in enumerate(self.c):
            if x:
                out[(s * i) % self.N] += x
        return Cyclo(self.N, out)

    def conj(self) -> "Cyclo":
        """zeta_N -> zeta_N^{-1} (complex conjugation)."""
        if self.N == 1:
            return self
        return self.subst_root_power(self.N - 1)

    def eval_complex(self) -> complex:
        if self.N == 1:
            return complex(self.c[0])
        w = cmath.exp(2j * cmath.pi / self.N)
        return sum(complex(x) * w**i for i, x in enumerate(self.c) if x)

    # -- comparison / io

    def __eq__(self, other):
        if not isinstance(other, (Cyclo, int, Fraction)):
            return NotImplemented
        other = _as_cyclo(other)
        if self.N == other.N:
            return self.c == other.c
        n, ca, cb = self._match(other)
        return ca == cb

    def __hash__(self):
        if self.N == 1:
            return hash(self.c[0])
        return hash((self.N, self.c))

    def __repr__(self):
        if self.N == 1:
            return str(self.c[0])
        parts = []
        for i, x in enumerate(self.c):
            if x:
                parts.append(f"{x}*z{self.N}^{i}" if i else str(x))
        return " + ".join(parts) if parts else "0"

    def to_obj(self):
        return [self.N, [[i, str(x)] for i, x in enumerate(self.c) if x]]

    @staticmethod
    def from_obj(obj) -> "Cyclo":
        n, pairs = obj
        coeffs = [Fraction(0)] * _euler_phi(n)
        for i, x in pairs:
            coeffs[i] = Fraction(x)
        return Cyclo(n, coeffs)

    def _single_term(self):
        """(index, coeff) when exactly one coordinate is nonzero, else None."""
        idx = -1
        for i, x in enumerate(self.c):
            if x:
                if idx >= 0:
                    return None
                idx = i
        return None if idx < 0 else (idx, self.c[idx])


def _as_cyclo(x) -> Cyclo:
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; use Fraction")
    return Cyclo.rational(x)


CYC_ZERO = Cyclo.rational(0)
CYC_ONE = Cyclo.rational(1)


# --------------------------------------------------------------------------
# Laurent scalars in v, with v^2 = q


class Laurent:
    """Finitely supported map v-exponent -> Cyclo; v^2 = q.

    Integer q-powers sit at even v-exponents; the q^{1/2}-shifts of vertex
    operator calculus occupy the odd ones.
    """

    __slots__ = ("t",)

    def __init__(self, terms: dict[int, Cyclo] | None = None, _clean: bool = False):
        if terms is None:
            terms = {}
        if not _clean:
            terms = {e: c for e, c in terms.items() if not c.is_zero}
        object.__setattr__(self, "t", terms)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Laurent is immutable")

    # -- constructors

    @staticmethod
    def zero() -> "Laurent":
        return Laurent({}, _clean=True)

    @staticmethod
    def of(x) -> "Laurent":
        """Constant scalar from int / Fraction / Cyclo."""
        c = _as_cyclo(x)
        return Laurent({} if c.is_zero else {0: c}, _clean=True)

    @staticmethod
    def one() -> "Laurent":
        return Laurent({0: CYC_ONE}, _clean=True)

    @staticmethod
    def v_pow(e: int, coeff=1) -> "Laurent":
        c = _as_cyclo(coeff)
        return Laurent({} if c.is_zero else {e: c}, _clean=True)

    @staticmethod
    def q_pow(k: int, coeff=1) -> "Laurent":
        return Laurent.v_pow(2 * k, coeff)

    # -- inspection

    @property
    def is_zero(self) -> bool:
        return not self.t

    def support(self) -> list[int]:
        return sorted(self.t)

    def coeff(self, e: int) -> Cyclo:
        return self.t.get(e, CYC_ZERO)

    def constant_term(self) -> Cyclo:
        return self.t.get(0, CYC_ZERO)

    def as_constant(self) -> Cyclo:
        if not self.t:
            return CYC_ZERO
        if set(self.t) != {0}:
            raise ValueError(f"not a constant: {self}")
        return self.t[0]

    # -- arithmetic

    def __add__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            return NotImplemented
        if not self.t:
            return other
        if not other.t:
            return self
        out = dict(self.t)
        for e, c in other.t.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s.is_zero:
                    del out[e]
                else:
                    out[e] = s
        return Laurent(out, _clean=True)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.t.items()}, _clean=True)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return self.scale(other)
        if not self.t or not other.t:
            return Laurent.zero()
        out: dict[int, Cyclo] = {}
        for e1, c1 in self.t.items():
            for e2, c2 in other.t.items():
                e = e1 + e2
                p = c1 * c2
                if p.is_zero:
                    continue
                s = out.get(e)
                if s is None:
                    out[e] = p
                else:
                    s = s + p
                    if s.is_zero:
                        del out[e]
                    else:
                        out[e] = s
        return Laurent(out, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, x) -> "Laurent":
        c = _as_cyclo(x)
        if c.is_zero or not self.t:
            return Laurent.zero()
        return Laurent({e: c * v for e, v in self.t.items()}, _clean=True)

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            raise ValueError("negative Laurent power; use exact_div")
        out = Laurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "Laurent":
        """v -> v^-1 together with cyclotomic conjugation of coefficients."""
        return Laurent({-e: c.conj() for e, c in self.t.items()}, _clean=True)

    def bar_q(self) -> "Laurent":
        """v -> v^-1 only; coefficients untouched (the antipode on values)."""
        return Laurent({-e: c for e, c in self.t.items()}, _clean=True)

    def subs_pow(self, m: int) -> "Laurent":
        """q -> q^m, i.e. scale every v-exponent by m (m != 0)."""
        if m == 0:
            raise ValueError("q -> q^0 collapses the ring")
        if m == 1:
            return self
        return Laurent({e * m: c for e, c in self.t.items()}, _clean=True)

    def exact_div(self, den: "Laurent") -> "Laurent":
        """Exact quotient self/den; raises if the division leaves a remainder."""
        if den.is_zero:
            raise ZeroDivisionError
        if self.is_zero:
            return Laurent.zero()
        dmin, dmax = min(den.t), max(den.t)
        emin = min(self.t) - dmin  # lowest possible quotient exponent
        lead_inv = den.t[dmax].inverse()
        rem = dict(self.t)
        out: dict[int, Cyclo] = {}
        while rem:
            e = max(rem) - dmax
            if e < emin:
                raise ArithmeticError("inexact Laurent division")
            c = rem[max(rem)] * lead_inv
            out[e] = out.get(e, CYC_ZERO) + c
            for de, dc in den.t.items():
                k = e + de
                s = rem.get(k, CYC_ZERO) - c * dc
                if s.is_zero:
                    rem.pop(k, None)
                else:
                    rem[k] = s
        return Laurent(out)

    def eval_real(self, t: float) -> complex:
        """Substitute v = sqrt(t) (t > 0) and zeta_N = exp(2*pi*i/N)."""
        if t <= 0:
            raise ValueError("real evaluation needs t > 0")
        v = t**0.5
        return sum(c.eval_complex() * v**e for e, c in self.t.items())

    # -- comparison / io

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.of(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        if set(self.t) != set(other.t):
            return False
        return all(other.t[e] == c for e, c in self.t.items())

    def __hash__(self):
        return hash(tuple(sorted(self.t.items(), key=lambda p: p[0])))

    def __repr__(self):
        return laurent_str(self)

    def to_obj(self):
        return [[e, self.coeff(e).to_obj()] for e in self.support()]

    @staticmethod
    def from_obj(obj) -> "Laurent":
        return Laurent({e: Cyclo.from_obj(c) for e, c in obj})


def laurent_str(f: Laurent) -> str:
    """Human rendering; integral q-powers print in q, otherwise fall back to v."""
    if f.is_zero:
        return "0"
    use_q = all(e % 2 == 0 for e in f.t)
    sym, div = ("q", 2) if use_q else ("v", 1)
    parts = []
    for e in sorted(f.t, reverse=True):
        c = f.t[e]
        cs = repr(c)
        if "+" in cs or ("-" in cs[1:]) or "*" in cs:
            cs = f"({cs})"
        p = e // div
        if p == 0:
            parts.append(cs)
        else:
            mon = sym if p == 1 else f"{sym}^{p}"
            parts.append(mon if cs == "1" else f"-{mon}" if cs == "-1" else f"{cs}*{mon}")
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


L_ZERO = Laurent.zero()
L_ONE = Laurent.one()
L_Q = Laurent.q_pow(1)
L_QINV = Laurent.q_pow(-1)


def qint(n: int) -> Laurent:
    """[n] = (q^n - q^-n)/(q - q^-1) = q^{n-1} + q^{n-3} + ... + q^{-n+1}."""
    if n == 0:
        return Laurent.zero()
    if n < 0:
        return -qint(-n)
    return Laurent({2 * e: CYC_ONE for e in range(-(n - 1), n, 2)}, _clean=True)


def qfact(n: int) -> Laurent:
    out = Laurent.one()
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def qbinom(a: int, m: int) -> Laurent:
    """Gaussian binomial [a; m] for integer a (possibly negative), m >= 0."""
    if m < 0:
        raise ValueError("m >= 0 required")
    num = Laurent.one()
    for i in range(m):
        num = num * qint(a - i)
    return num.exact_div(qfact(m))


def eval_at_one(f: Laurent) -> Cyclo:
    """Exact specialisation v = 1 (hence q = 1)."""
    out = CYC_ZERO
    for c in f.t.values():
        out = out + c
    return out


# --------------------------------------------------------------------------
# truncated power series with Laurent coefficients


class TruncSeries:
    """Dense series sum_{m=0..order} coeffs[m] z^m, arithmetic closed at order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = list(coeffs) if coeffs is not None else []
        cs = cs[: order + 1]
        cs += [L_ZERO] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("TruncSeries is immutable")

    @staticmethod
    def one(order: int) -> "TruncSeries":
        return TruncSeries(order, [L_ONE])

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        d = min(self.order, other.order)
        return TruncSeries(d, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        d = min(self.order, other.order)
        return TruncSeries(d, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        d = min(self.order, other.order)
        out = [L_ZERO] * (d + 1)
        for i, a in enumerate(self.coeffs[: d + 1]):
            if a.is_zero:
                continue
            for j in range(d + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(d, out)

    def scale(self, x) -> "TruncSeries":
        f = x if isinstance(x, Laurent) else Laurent.of(x)
        return TruncSeries(self.order, [c * f for c in self.coeffs])

    def shift_var(self, s: Laurent) -> "TruncSeries":
        """Substitute z -> s*z for a Laurent scalar s."""
        out, p = [], L_ONE
        for c in self.coeffs:
            out.append(c * p)
            p = p * s
        return TruncSeries(self.order, out)

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if len(c0.t) != 1:
            raise ValueError("series inverse needs a monomial constant term")
        ((e0, a0),) = c0.t.items()
        inv0 = Laurent.v_pow(-e0, a0.inverse())
        out = [inv0]
        for m in range(1, self.order + 1):
            acc = L_ZERO
            for j in range(1, m + 1):
                acc = acc + self.coeffs[j] * out[m - j]
            out.append(-(inv0 * acc))
        return TruncSeries(self.order, out)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        d = min(self.order, other.order)
        return self.coeffs[: d + 1] == other.coeffs[: d + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"({laurent_str(c)})*z^{m}" for m, c in enumerate(self.coeffs) if not c.is_zero]
        return " + ".join(terms) if terms else "0"


def series_exp(exponent: TruncSeries) -> TruncSeries:
    """exp of a series with vanishing constant term, via E' = F' E."""
    if not exponent.coeffs[0].is_zero:
        raise ValueError("exp needs zero constant term")
    d = exponent.order
    out = [L_ONE] + [L_ZERO] * d
    for m in range(1, d + 1):
        acc = L_ZERO
        for j in range(1, m + 1):
            acc = acc + exponent.coeffs[j].scale(j) * out[m - j]
        out[m] = acc.scale(Fraction(1, m))
    return TruncSeries(d, out)
