"""Exact arithmetic in cyclotomic fields Q(zeta_k).

An element is stored as its unique coefficient vector in the power basis
1, zeta, ..., zeta^(phi(k)-1) modulo the k-th cyclotomic polynomial, with
exact rational coefficients.  All operations are pure and every value is
immutable, so values can be shared freely between threads.

Conductors unify automatically: binary operations lift both operands to the
lcm of their conductors.  Results are not down-normalized unless
``reduce_conductor`` is called explicitly.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

#: Comparison tolerance for the floating-point debugging embedding only.
#: Never used on a correctness path.
FLOAT_TOLERANCE = 1e-9


class FieldError(ValueError):
    """Raised for invalid field operations (division by zero, bad lifts)."""


@functools.lru_cache(maxsize=None)
def euler_phi(k: int) -> int:
    if k < 1:
        raise ValueError(f"conductor must be positive, got {k}")
    return sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials, coefficients ascending."""
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c, lead = num[shift + len(den) - 1], den[-1]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        quot[shift] = q
        for i, d in enumerate(den):
            num[shift + i] -= q * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the k-th cyclotomic polynomial Phi_k."""
    if k < 1:
        raise ValueError(f"conductor must be positive, got {k}")
    if k == 1:
        return (-1, 1)
    # Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d
    num = [0] * (k + 1)
    num[0], num[k] = -1, 1
    for d in range(1, k):
        if k % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert rem == [0]
    poly = tuple(num)
    assert len(poly) == euler_phi(k) + 1 and poly[-1] == 1
    return poly


@functools.lru_cache(maxsize=None)
def _reduction_rows(k: int) -> tuple[tuple[int, ...], ...]:
    """Row t is the power-basis vector of zeta^(phi+t), 0 <= t <= phi-2."""
    phi = euler_phi(k)
    poly = cyclotomic_polynomial(k)
    rows = []
    cur = [-c for c in poly[:phi]]  # zeta^phi
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
        rows.append(tuple(cur))
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def _zeta_power_vec(k: int, t: int) -> tuple[Fraction, ...]:
    """Power-basis vector of zeta_k^t."""
    phi = euler_phi(k)
    t %= k
    if t < phi:
        return tuple(Fraction(1) if i == t else Fraction(0) for i in range(phi))
    rows = _reduction_rows(k)
    if t - phi < len(rows):
        return tuple(Fraction(c) for c in rows[t - phi])
    # t can reach k-1 > 2*phi-2 for non-prime-power k; reduce step by step.
    prev = _zeta_power_vec(k, t - 1)
    out = [Fraction(0)] * phi
    top = prev[-1]
    for i in range(phi - 1):
        out[i + 1] += prev[i]
    if top:
        row = rows[0]
        for i in range(phi):
            out[i] += top * row[i]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _trace_vec(k: int) -> tuple[Fraction, ...]:
    """Linear functional computing Tr_{E/Q} in the power basis."""
    phi = euler_phi(k)
    out = []
    for p in range(phi):
        tot = [Fraction(0)] * phi
        for j in range(1, k + 1):
            if math.gcd(j, k) == 1:
                vec = _zeta_power_vec(k, (p * j) % k)
                for i in range(phi):
                    tot[i] += vec[i]
        # Tr(zeta^p) is rational, so the summed vector is concentrated on
        # the constant coordinate.
        assert not any(tot[1:])
        out.append(tot[0])
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _galois_images(k: int, j: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis images of each basis power under zeta -> zeta^j."""
    if math.gcd(j, k) != 1:
        raise FieldError(f"galois exponent {j} not coprime to conductor {k}")
    return tuple(_zeta_power_vec(k, (p * j) % k) for p in range(euler_phi(k)))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class CycNum:
    """An element of Q(zeta_k) in the power basis."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[Fraction | int]):
        phi = euler_phi(conductor)
        cs = tuple(_as_fraction(c) for c in coeffs)
        if len(cs) != phi:
            raise ValueError(
                f"conductor {conductor} needs {phi} coefficients, got {len(cs)}"
            )
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(value, conductor: int = 1) -> CycNum:
        q = _as_fraction(value)
        phi = euler_phi(conductor)
        return CycNum(conductor, (q,) + (Fraction(0),) * (phi - 1))

    @staticmethod
    def zero(conductor: int = 1) -> CycNum:
        return CycNum.rational(0, conductor)

    @staticmethod
    def one(conductor: int = 1) -> CycNum:
        return CycNum.rational(1, conductor)

    # -- conductor handling ------------------------------------------------

    def lift(self, conductor: int) -> CycNum:
        """Lossless lift into Q(zeta_k') for k | k'."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise FieldError(
                f"cannot lift conductor {self.conductor} into {conductor}"
            )
        step = conductor // self.conductor
        phi = euler_phi(conductor)
        out = [Fraction(0)] * phi
        for p, c in enumerate(self.coeffs):
            if c:
                vec = _zeta_power_vec(conductor, p * step)
                for i in range(phi):
                    out[i] += c * vec[i]
        return CycNum(conductor, out)

    def reduce_conductor(self) -> CycNum:
        """Down-normalize to the smallest divisor conductor containing self."""
        k = self.conductor
        for k2 in sorted(d for d in range(1, k) if k % d == 0):
            down = self._try_descend(k2)
            if down is not None:
                return down
        return self

    def _try_descend(self, k2: int) -> Optional[CycNum]:
        k = self.conductor
        step = k // k2
        phi2 = euler_phi(k2)
        phi = euler_phi(k)
        # Solve sum_t x_t * lift(zeta_{k2}^t) = self.
        cols = [_zeta_power_vec(k, t * step) for t in range(phi2)]
        sol = _solve_rational([[col[i] for col in cols] for i in range(phi)],
                              list(self.coeffs))
        if sol is None:
            return None
        return CycNum(k2, sol)

    def _pair(self, other) -> tuple[CycNum, CycNum]:
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other, 1)
        if not isinstance(other, CycNum):
            return NotImplemented, NotImplemented  # type: ignore[return-value]
        k = math.lcm(self.conductor, other.conductor)
        return self.lift(k), other.lift(k)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return CycNum(a.conductor, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        k = a.conductor
        phi = euler_phi(k)
        if phi == 1:
            return CycNum(k, (a.coeffs[0] * b.coeffs[0],))
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = prod[:phi]
        rows = _reduction_rows(k)
        for t in range(phi, 2 * phi - 1):
            c = prod[t]
            if c:
                row = rows[t - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return CycNum(k, out)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise FieldError("division by zero in Q(zeta_k)")
        k = self.conductor
        phi = euler_phi(k)
        if phi == 1:
            return CycNum(k, (1 / self.coeffs[0],))
        # Columns of the multiplication-by-self matrix.
        cols = [(self * zeta(k, p)).coeffs for p in range(phi)]
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        sol = _solve_rational([[cols[j][i] for j in range(phi)] for i in range(phi)], rhs)
        if sol is None:
            raise FieldError("element is not invertible")
        return CycNum(k, sol)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> CycNum:
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNum.one(self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> CycNum:
        """Complex conjugation zeta -> zeta^(-1)."""
        k = self.conductor
        if k <= 2:
            return self
        return self.galois(k - 1)

    def galois(self, j: int) -> CycNum:
        """Apply the automorphism zeta_k -> zeta_k^j, gcd(j, k) = 1."""
        k = self.conductor
        j %= k
        images = _galois_images(k, j)
        phi = euler_phi(k)
        out = [Fraction(0)] * phi
        for p, c in enumerate(self.coeffs):
            if c:
                img = images[p]
                for i in range(phi):
                    if img[i]:
                        out[i] += c * img[i]
        return CycNum(k, out)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        """Membership in Z[zeta_k] (the full ring of integers of Q(zeta_k))."""
        return all(c.denominator == 1 for c in self.coeffs)

    def is_real(self) -> bool:
        return self.conj() == self

    def is_real_integral(self) -> bool:
        """Membership in O_E intersected with the real subfield."""
        return self.is_integral() and self.is_real()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycNum.rational(other, 1)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # Hash must agree across conductors; use the down-normalized form.
        r = self.reduce_conductor()
        return hash((r.conductor, r.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for p, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if p == 0:
                terms.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{p}" if p > 1 else "")
                terms.append(z if c == 1 else f"{c}*{z}")
        return "CycNum(" + (" + ".join(terms) if terms else "0") + ")"

    # -- serialization -----------------------------------------------------

    def to_strings(self) -> list[str]:
        """Coefficients as "p/q" strings, q omitted when 1."""
        out = []
        for c in self.coeffs:
            if c.denominator == 1:
                out.append(str(c.numerator))
            else:
                out.append(f"{c.numerator}/{c.denominator}")
        return out

    @staticmethod
    def from_strings(conductor: int, items: Iterable[str]) -> CycNum:
        coeffs = []
        for s in items:
            coeffs.append(Fraction(s))
        for c in coeffs:
            if c.denominator == 0:
                raise ValueError("zero denominator in serialized coefficient")
        return CycNum(conductor, coeffs)

    def complex_value(self) -> complex:
        """Floating-point embedding.  Debugging only (FLOAT_TOLERANCE)."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**p for p, c in enumerate(self.coeffs))


def _solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]):
    """Solve mat @ x = rhs exactly; None when inconsistent.

    mat is row-major, possibly rectangular (rows >= cols).  A unique or
    least-pivot solution is returned with free variables set to zero.
    """
    rows = [list(r) + [b] for r, b in zip(mat, rhs)]
    nrows, ncols = len(rows), len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][ncols]
    return sol


# -- module-level operations ----------------------------------------------


def zeta(k: int, t: int = 1) -> CycNum:
    """The root of unity zeta_k^t."""
    return CycNum(k, _zeta_power_vec(k, t % k))


def imag_unit(conductor: int = 4) -> CycNum:
    """The imaginary unit i at the given dyadic conductor (4 | conductor)."""
    if conductor % 4 != 0:
        raise FieldError(f"i does not live at conductor {conductor}")
    return zeta(conductor, conductor // 4)


def one_plus_i(conductor: int = 4) -> CycNum:
    return CycNum.one(conductor) + imag_unit(conductor)


def galois_conjugate(a: CycNum, j: int) -> CycNum:
    return a.galois(j)


def trace_E_over_Q(a: CycNum) -> Fraction:
    """Tr_{E/Q}(a): the sum of all phi(k) Galois conjugates."""
    tv = _trace_vec(a.conductor)
    total = Fraction(0)
    for c, t in zip(a.coeffs, tv):
        total += c * t
    return total


def trace_K_over_Q_of_norm(a: CycNum) -> Fraction:
    """Tr_{K/Q}(a a*) = (1/2) Tr_{E/Q}(a a*) for CM fields; for totally real
    fields (conductor 1 or 2) it is the full trace."""
    n = a * a.conj()
    t = trace_E_over_Q(n)
    k = a.conductor
    if k <= 2:
        return t
    return t / 2


def is_integral(a: CycNum) -> bool:
    return a.is_integral()


def is_real_integral(a: CycNum) -> bool:
    return a.is_real_integral()


def descend_to(a: CycNum, k: int) -> Optional[CycNum]:
    """Rewrite a in Q(zeta_k) if possible; None when a lies outside it."""
    if a.conductor == k:
        return a
    common = math.lcm(a.conductor, k)
    lifted = a.lift(common)
    if common == k:
        return lifted
    return lifted._try_descend(k)


def divides(d: CycNum, a: CycNum) -> tuple[bool, Optional[CycNum]]:
    """Whether d | a in O_E; returns the exact quotient when true."""
    if d.is_zero():
        raise FieldError("zero divisor in divisibility test")
    q = a / d
    if q.is_integral():
        return True, q
    return False, None


def is_root_of_unity(a: CycNum):
    """If a is a root of unity in Q(zeta_k), return (sign, exponent) with
    a = sign * zeta_k^exponent; otherwise None.

    The roots of unity in Q(zeta_k) form the cyclic group of order lcm(2, k).
    """
    if not a.is_integral():
        return None
    k = a.conductor
    order = math.lcm(2, k)
    if a ** order != 1:
        return None
    for t in range(k):
        zt = zeta(k, t)
        if a == zt:
            return (1, t)
        if a == -zt:
            return (-1, t)
    return None


def root_of_unity_exponent(a: CycNum) -> Optional[int]:
    """Exponent j with a = zeta_k^j when the sign folds into the power
    (always possible at even conductors); None when a is not a root of unity."""
    res = is_root_of_unity(a)
    if res is None:
        return None
    sign, t = res
    k = a.conductor
    if sign == 1:
        return t
    if k % 2 == 0:
        return (t + k // 2) % k
    return None
