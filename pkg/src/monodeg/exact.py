"""Exact arithmetic kernel: big-integer matrices and integer polynomials.

Everything here is exact; no machine floats appear.  Matrix determinants use
fraction-free Bareiss elimination, characteristic polynomials use
Faddeev-LeVerrier (all interior divisions are exact by construction), and
polynomial resultants use the subresultant remainder sequence over the
coefficient ring, validated in the test suite against a Sylvester-determinant
oracle.

Values are immutable and operations are pure functions, so the module is safe
for concurrent use.  The only shared state is the cyclotomic cache, whose
fills are idempotent.

Conventions
-----------
* ``IntPoly`` stores coefficients in ascending order with no trailing zeros;
  the zero polynomial is the empty tuple.
* ``poly_gcd`` returns the primitive gcd with positive leading coefficient.
* ``resultant_in_y`` returns the true resultant of the two inputs viewed as
  polynomials in ``y``: the Sylvester determinant with the rows of the first
  argument on top, equal to ``lc(f)^{deg g} * prod g(alpha_i)`` over the
  roots of ``f`` (so a degree-one first argument ``y - c`` yields ``g(c)``
  exactly); swapping arguments flips the sign by ``(-1)^{deg f * deg g}``.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotUnimodular

# Exact rationals.  fractions.Fraction already maintains the invariants we
# need (positive denominator, reduced form), so it is used directly.
Rational = Fraction


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPoly:
    """Univariate integer polynomial, coefficients ascending in degree."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        cs = tuple(operator.index(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    # -- basic queries ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- ring operations ----------------------------------------------

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    def scale(self, c: int) -> IntPoly:
        return IntPoly(tuple(c * x for x in self.coeffs))

    def shift(self, n: int) -> IntPoly:
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return IntPoly((0,) * n + self.coeffs)

    def pow(self, n: int) -> IntPoly:
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and evaluation ----------------------------------------

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, num: int, den: int) -> int:
        """Sign of p(num/den) for den > 0, computed in integers."""
        if not self.coeffs:
            return 0
        acc = self.coeffs[-1]
        dp = 1
        for i in range(len(self.coeffs) - 2, -1, -1):
            dp *= den
            acc = acc * num + self.coeffs[i] * dp
        return (acc > 0) - (acc < 0)

    # -- integer-domain helpers -----------------------------------------

    def content(self) -> int:
        """Gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> IntPoly:
        """Divide out the (positive) content; the sign pattern is kept."""
        g = self.content()
        if g <= 1:
            return self
        return IntPoly(tuple(c // g for c in self.coeffs))

    def primitive_positive(self) -> IntPoly:
        """Primitive part with positive leading coefficient."""
        p = self.primitive()
        return -p if p.lc < 0 else p

    def reversed_coeffs(self) -> IntPoly:
        """Coefficient reversal x^deg * p(1/x)."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def exact_div(self, other: IntPoly) -> IntPoly:
        """Exact polynomial division; raises ArithmeticError when not exact."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return IntPoly()
        rem = list(self.coeffs)
        db, lb = other.degree, other.lc
        dq = len(rem) - 1 - db
        if dq < 0:
            raise ArithmeticError("exact_div: degree of divisor too large")
        q = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            lead = rem[i + db]
            if lead % lb != 0:
                raise ArithmeticError("exact_div: leading coefficient not divisible")
            c = lead // lb
            q[i] = c
            if c:
                for j, bc in enumerate(other.coeffs):
                    rem[i + j] -= c * bc
        if any(rem):
            raise ArithmeticError("exact_div: nonzero remainder")
        return IntPoly(q)

    def divides(self, other: IntPoly) -> bool:
        """True when self divides other in Z[x] (self must be nonzero)."""
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    def scale_arg(self, c: int) -> IntPoly:
        """p(c*x)."""
        out = []
        f = 1
        for coef in self.coeffs:
            out.append(coef * f)
            f *= c
        return IntPoly(out)

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def poly_from_roots(roots: Iterable[int]) -> IntPoly:
    p = IntPoly((1,))
    for r in roots:
        p = p * IntPoly((-r, 1))
    return p


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Strict pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.

    The full power of lc(b) is applied even when intermediate leading
    coefficients vanish; the subresultant divisions below rely on that.
    """
    da, db = a.degree, b.degree
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    if da < db:
        return a.scale(b.lc ** (da - db + 1)) if da >= 0 else a
    lb = b.lc
    rem = list(a.coeffs)
    for i in range(da - db, -1, -1):
        lead = rem[i + db]
        rem = [lb * c for c in rem]
        if lead:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= lead * bc
        rem = rem[: i + db]
    return IntPoly(rem)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Q, positive leading coefficient.

    gcd with the zero polynomial is the other argument made primitive; two
    zero polynomials give zero.
    """
    if f.is_zero:
        return g.primitive_positive()
    if g.is_zero:
        return f.primitive_positive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = _pseudo_rem(a, b).primitive()
        a, b = b, r
    if a.degree == 0:
        return IntPoly((1,))
    return a.primitive_positive()


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and totients
# ---------------------------------------------------------------------------

_CYCLOTOMIC_CACHE: dict[int, IntPoly] = {1: IntPoly((-1, 1))}


def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial, by exact division of x^m - 1.

    Cached; concurrent fills are idempotent.
    """
    if m <= 0:
        raise ValueError("cyclotomic index must be positive")
    cached = _CYCLOTOMIC_CACHE.get(m)
    if cached is not None:
        return cached
    num = IntPoly((-1,) + (0,) * (m - 1) + (1,))  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = num.exact_div(cyclotomic(d))
    _CYCLOTOMIC_CACHE[m] = num
    return num


def euler_phi(m: int) -> int:
    if m <= 0:
        raise ValueError("totient of a nonpositive integer")
    result = m
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def orders_with_phi_at_most(bound: int) -> list[int]:
    """All m with euler_phi(m) <= bound, ascending.

    phi(m) >= sqrt(m/2), so m <= 2*bound^2 is a safe enumeration cap.
    """
    if bound < 1:
        return []
    cap = 2 * bound * bound
    return [m for m in range(1, cap + 1) if euler_phi(m) <= bound]


# ---------------------------------------------------------------------------
# Bivariate resultants (polynomials in y with IntPoly coefficients)
# ---------------------------------------------------------------------------

PolyInY = Sequence[IntPoly]  # ascending powers of y


def _strip_y(f: PolyInY) -> list[IntPoly]:
    out = list(f)
    while out and out[-1].is_zero:
        out.pop()
    return out


def _prem_y(a: list[IntPoly], b: list[IntPoly]) -> list[IntPoly]:
    """Strict pseudo-remainder in y over Z[x] (same convention as _pseudo_rem)."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    rem = list(a)
    for i in range(da - db, -1, -1):
        lead = rem[i + db]
        rem = [lb * c for c in rem]
        if not lead.is_zero:
            for j, bc in enumerate(b):
                rem[i + j] = rem[i + j] - lead * bc
        rem = rem[: i + db]
    return rem


def resultant_in_y(f: PolyInY, g: PolyInY) -> IntPoly:
    """Resultant with respect to y of two polynomials with IntPoly coefficients.

    Subresultant remainder sequence (exact divisions only); the result is the
    genuine Sylvester determinant including its sign.  Both inputs must be
    nonzero in y.
    """
    a = _strip_y(f)
    b = _strip_y(g)
    if not a or not b:
        raise ValueError("resultant of a zero polynomial is not defined here")
    da, db = len(a) - 1, len(b) - 1
    if da == 0 and db == 0:
        return IntPoly((1,))
    if da == 0:
        return a[0].pow(db)
    if db == 0:
        return b[0].pow(da)
    sign = 1
    if da < db:
        a, b = b, a
        if (da * db) % 2 == 1:
            sign = -sign
    one = IntPoly((1,))
    g_ = one
    h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = _strip_y(_prem_y(a, b))
        if not r:
            # db > 0 here, so a common factor of positive degree exists
            return IntPoly()
        a = b
        divisor = g_ * h.pow(delta)
        b = [c.exact_div(divisor) for c in r]
        g_ = a[-1]
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = g_
        else:
            h = g_.pow(delta).exact_div(h.pow(delta - 1))
        if len(b) - 1 == 0:
            dA = len(a) - 1
            lb = b[0]
            if dA == 1:
                res = lb
            else:
                res = lb.pow(dA).exact_div(h.pow(dA - 1))
            return res.scale(sign) if sign < 0 else res


def resultant(f: IntPoly, g: IntPoly) -> IntPoly:
    """Resultant of two univariate integer polynomials (returned as a constant
    IntPoly for uniformity with resultant_in_y)."""
    return resultant_in_y(
        [IntPoly((c,)) for c in f.coeffs], [IntPoly((c,)) for c in g.coeffs]
    )


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of arbitrary-precision integers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(operator.index(x) for x in row) for row in self.rows)
        if not rows:
            raise ValueError("matrix must have at least one row")
        k = len(rows)
        for row in rows:
            if len(row) != k:
                raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls(tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k)))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        return cls(tuple(tuple(r) for r in rows))

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.rows)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.k))

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.rows)))

    def add(self, other: IntMatrix) -> IntMatrix:
        if self.k != other.k:
            raise DimensionMismatch("matrix dimensions differ")
        return IntMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(c * x for x in row) for row in self.rows))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact matrix product."""
    if a.k != b.k:
        raise DimensionMismatch(f"cannot multiply {a.k}x{a.k} by {b.k}x{b.k}")
    k = a.k
    bt = tuple(zip(*b.rows))
    return IntMatrix(
        tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
            for row in a.rows
        )
    )


def mat_pow(a: IntMatrix, n: int) -> IntMatrix:
    """Exact n-th power, n >= 0 (A^0 is the identity)."""
    if n < 0:
        raise ValueError("matrix power requires a non-negative exponent")
    result = IntMatrix.identity(a.k)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        n >>= 1
    return result


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination (exact divisions only)."""
    n = a.k
    m = [list(row) for row in a.rows]
    sign = 1
    prev = 1
    for r in range(n - 1):
        if m[r][r] == 0:
            for s in range(r + 1, n):
                if m[s][r] != 0:
                    m[r], m[s] = m[s], m[r]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][r] * m[r][j]) // prev
            m[i][r] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def char_poly(a: IntMatrix) -> IntPoly:
    """Characteristic polynomial det(tI - A), monic of degree k.

    Faddeev-LeVerrier recursion; every interior division by the step index is
    exact (the traces are integer multiples by construction).
    """
    k = a.k
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    m_prev = IntMatrix.identity(k)  # M_1
    am = mat_mul(a, m_prev)
    coeffs[k - 1] = -am.trace()
    for step in range(2, k + 1):
        m_prev = am.add(IntMatrix.identity(k).scale(coeffs[k - step + 1]))
        am = mat_mul(a, m_prev)
        tr = am.trace()
        if tr % step != 0:
            raise ArithmeticError("Faddeev-LeVerrier trace division not exact")
        coeffs[k - step] = -(tr // step)
    return IntPoly(coeffs)


def inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a matrix with determinant +-1 (adjugate route)."""
    d = det(a)
    if d not in (1, -1):
        raise NotUnimodular(f"matrix has determinant {d}, expected +-1")
    n = a.k
    if n == 1:
        return IntMatrix(((d,),))
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix(
                tuple(
                    tuple(a.rows[r][c] for c in range(n) if c != j)
                    for r in range(n)
                    if r != i
                )
            )
            cof[i][j] = (-1) ** (i + j) * det(minor)
    # inverse = adj / det = transpose(cof) * det  (det is +-1)
    return IntMatrix(tuple(tuple(d * cof[j][i] for j in range(n)) for i in range(n)))


def poly_at_matrix(p: IntPoly, a: IntMatrix) -> IntMatrix:
    """Evaluate an integer polynomial at a matrix (Horner with mat_mul)."""
    k = a.k
    acc = IntMatrix.identity(k).scale(0)
    for c in reversed(p.coeffs):
        acc = mat_mul(acc, a).add(IntMatrix.identity(k).scale(c))
    return acc
