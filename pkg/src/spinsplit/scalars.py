"""Exact scalar towers and truncated multivariate Taylor expansions.

Two coefficient towers run through the whole package: an exact one built on
``fractions.Fraction`` and :class:`GaussianRational` (complex numbers with
rational real and imaginary part, always kept in lowest terms), and a floating
one built on ``float``/``complex``.  All algebraic code is generic over the
tower; only comparison helpers need to know which one is in use.

:class:`Jet` is a truncated Taylor expansion at a base point in ``num_vars``
coordinates.  The ``order`` attribute is the *effective* order: every
coefficient with total degree <= order is guaranteed correct, anything beyond
is dropped.  Differentiation lowers the effective order by one; products and
sums carry the minimum of the operands' orders.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

MultiIndex = Tuple[int, ...]


class GaussianRational:
    """Complex number with Fraction components, closed under field ops."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_value(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    # -- field operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational(1, 0) / self) ** (-k)
        out = GaussianRational(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure -----------------------------------------------------

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I_GAUSS = GaussianRational(0, 1)


# ----------------------------------------------------------------------
# generic scalar helpers


def conjugate_scalar(x):
    """Complex conjugate in whichever tower x lives in."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    if isinstance(x, Jet):
        return x.conjugate()
    return x


def is_exact_zero(x) -> bool:
    if isinstance(x, Jet):
        return not x.coeffs
    return x == 0


def scalar_abs(x) -> float:
    """Magnitude as a float; exact types go through exact norms."""
    if isinstance(x, GaussianRational):
        return math.sqrt(float(x.norm_sq()))
    if isinstance(x, complex):
        return abs(x)
    if isinstance(x, Jet):
        return x.max_abs()
    return abs(float(x))


def rational_sqrt(x):
    """Exact square root of a non-negative Fraction, or None."""
    f = Fraction(x)
    if f < 0:
        return None
    num = math.isqrt(f.numerator)
    den = math.isqrt(f.denominator)
    if num * num == f.numerator and den * den == f.denominator:
        return Fraction(num, den)
    return None


def scalar_sqrt(x):
    """Square root staying exact when possible, float otherwise."""
    if isinstance(x, (int, Fraction)):
        r = rational_sqrt(x)
        if r is not None:
            return r
        return math.sqrt(float(x))
    if isinstance(x, float):
        return math.sqrt(x)
    raise TypeError(f"no square root for {type(x).__name__}")


# ----------------------------------------------------------------------
# jets


class Jet:
    """Sparse truncated Taylor expansion around the origin.

    coeffs maps a multi-index (one exponent per coordinate) to a scalar from
    either tower.  Exact zeros are never stored.  Scalars of a jet may be
    Fraction, GaussianRational, int, float or complex, and may be mixed.
    """

    __slots__ = ("num_vars", "order", "coeffs")

    def __init__(self, num_vars: int, order: int, coeffs: Mapping[MultiIndex, object] | None = None):
        if order < 0:
            raise ValueError("jet order exhausted")
        self.num_vars = num_vars
        self.order = order
        cleaned = {}
        if coeffs:
            for idx, c in coeffs.items():
                if len(idx) != num_vars:
                    raise ValueError(f"multi-index {idx} has wrong length")
                if sum(idx) <= order and not is_exact_zero(c):
                    cleaned[idx] = c
        self.coeffs = cleaned

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, value, num_vars: int, order: int) -> "Jet":
        zero = (0,) * num_vars
        return cls(num_vars, order, {zero: value})

    @classmethod
    def variable(cls, i: int, num_vars: int, order: int) -> "Jet":
        if not 0 <= i < num_vars:
            raise ValueError("variable index out of range")
        idx = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(num_vars, order, {idx: 1})

    @classmethod
    def zero(cls, num_vars: int, order: int) -> "Jet":
        return cls(num_vars, order)

    def _like(self, order: int, coeffs) -> "Jet":
        return Jet(self.num_vars, order, coeffs)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Jet"):
        if self.num_vars != other.num_vars:
            raise ValueError("jets over different coordinate counts")

    def __add__(self, other):
        if not isinstance(other, Jet):
            return self + Jet.constant(other, self.num_vars, self.order)
        self._check(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return self._like(order, out)

    __radd__ = __add__

    def __neg__(self):
        return self._like(self.order, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(other, self.num_vars, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            if is_exact_zero(other):
                return Jet.zero(self.num_vars, self.order)
            return self._like(self.order, {i: c * other for i, c in self.coeffs.items()})
        self._check(other)
        order = min(self.order, other.order)
        out: dict = {}
        for ia, ca in self.coeffs.items():
            da = sum(ia)
            for ib, cb in other.coeffs.items():
                if da + sum(ib) > order:
                    continue
                idx = tuple(x + y for x, y in zip(ia, ib))
                out[idx] = out.get(idx, 0) + ca * cb
        return self._like(order, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self._like(self.order, {i: c / other for i, c in self.coeffs.items()})

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- calculus ----------------------------------------------------------

    def partial(self, i: int) -> "Jet":
        """d/dx_i; the result is only trusted one order lower."""
        if self.order == 0:
            raise ValueError("jet order exhausted")
        out = {}
        for idx, c in self.coeffs.items():
            if idx[i] == 0:
                continue
            lowered = idx[:i] + (idx[i] - 1,) + idx[i + 1 :]
            if sum(lowered) <= self.order - 1:
                out[lowered] = idx[i] * c
        return self._like(self.order - 1, out)

    def reciprocal(self) -> "Jet":
        c = self.value()
        if is_exact_zero(c):
            raise ZeroDivisionError("jet with zero constant term has no reciprocal")
        # 1/(c(1+u)) = (1/c) * sum_k (-u)^k
        inv_c = Fraction(1) / c if isinstance(c, (int, Fraction)) else 1 / c
        u = (self - c) * inv_c
        out = Jet.constant(1, self.num_vars, self.order)
        term = Jet.constant(1, self.num_vars, self.order)
        sign = 1
        for _ in range(self.order):
            term = term * u
            sign = -sign
            if not term.coeffs:
                break
            out = out + term * sign
        return out * inv_c

    def sqrt(self) -> "Jet":
        """Square root via the binomial series; exact when value() is a
        rational perfect square (the orthonormalization paths arrange that)."""
        c = self.value()
        if isinstance(c, (int, Fraction)):
            root = rational_sqrt(c)
            if root is None:
                root = math.sqrt(float(c))
        elif isinstance(c, float):
            root = math.sqrt(c)
        else:
            raise TypeError("jet sqrt needs a real constant term")
        if is_exact_zero(c):
            raise ZeroDivisionError("jet sqrt needs a nonzero constant term")
        u = self / c - 1
        out = Jet.constant(1, self.num_vars, self.order)
        term = Jet.constant(1, self.num_vars, self.order)
        coeff = Fraction(1)
        for k in range(1, self.order + 1):
            term = term * u
            if not term.coeffs:
                break
            coeff = coeff * (Fraction(1, 2) - (k - 1)) / k
            out = out + term * coeff
        return out * root

    def exp(self) -> "Jet":
        """exp of the jet; exact when the constant term is exactly zero."""
        c = self.value()
        if is_exact_zero(c):
            scale = 1
            u = self
        else:
            scale = math.exp(float(c))
            u = self - c
        out = Jet.constant(1, self.num_vars, self.order)
        term = Jet.constant(1, self.num_vars, self.order)
        fact = 1
        for k in range(1, self.order + 1):
            term = term * u
            if not term.coeffs:
                break
            fact *= k
            out = out + term * Fraction(1, fact)
        return out * scale if scale != 1 else out

    def conjugate(self) -> "Jet":
        return self._like(self.order, {i: conjugate_scalar(c) for i, c in self.coeffs.items()})

    # -- access ------------------------------------------------------------

    def value(self):
        """Coefficient at the base point."""
        return self.coeffs.get((0,) * self.num_vars, 0)

    def coefficient(self, idx: MultiIndex):
        return self.coeffs.get(tuple(idx), 0)

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return self._like(order, self.coeffs)

    def evaluate(self, point: Iterable[float]):
        """Evaluate the underlying polynomial at a concrete point."""
        pt = list(point)
        total = 0
        for idx, c in self.coeffs.items():
            term = c
            for e, x in zip(idx, pt):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total

    def max_abs(self) -> float:
        return max((scalar_abs(c) for c in self.coeffs.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return not self.coeffs
        return self.max_abs() <= tol

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self - other).is_zero()
        return (self - Jet.constant(other, self.num_vars, self.order)).is_zero()

    def __hash__(self):
        return hash((self.num_vars, self.order, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"Jet<{self.num_vars} vars, order {self.order}>(0)"
        parts = []
        for idx in sorted(self.coeffs, key=lambda ix: (sum(ix), ix)):
            mono = "*".join(
                f"x{j}" + (f"^{e}" if e > 1 else "")
                for j, e in enumerate(idx)
                if e
            )
            c = self.coeffs[idx]
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return f"Jet<{self.num_vars} vars, order {self.order}>(" + " + ".join(parts) + ")"


# thin functional aliases, mirroring the public operation names


def jet_product(a: Jet, b: Jet) -> Jet:
    return a * b


def jet_reciprocal(a: Jet) -> Jet:
    return a.reciprocal()


def jet_partial(a: Jet, i: int) -> Jet:
    return a.partial(i)
