"""Clifford algebra Cl(p, q) on a sparse blade representation.

Conventions, fixed once here and relied on everywhere else:

* defining relation X.Y + Y.X = -2 g(X, Y); hence e_i.e_i = -1 on the first
  p basis vectors and +1 on the last q;
* the vector-space identification with the exterior algebra is the identity
  on blades (a blade mask means the same wedge monomial or Clifford monomial);
* grade involution ``tilde`` is (-1)^k on grade k, ``reverse`` is
  (-1)^(k(k-1)/2), and ``hat`` = reverse o tilde is (-1)^(k(k+1)/2);
* the Hodge star on a definite signature is a |-> J(hat(a) . vol), with vol
  the oriented unit volume blade.

Multivector coefficients are any ring scalars accepted by the blade kernel,
so the same class serves exact, floating and jet-valued computations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Sequence

from . import blades
from .scalars import conjugate_scalar, is_exact_zero, scalar_abs


class Signature(NamedTuple):
    p: int
    q: int

    @property
    def n(self) -> int:
        return self.p + self.q

    def metric_square(self, i: int) -> int:
        """g(e_i, e_i) for the 1-based basis index i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"basis index {i} out of range for {self}")
        return 1 if i <= self.p else -1


def euclidean(n: int) -> Signature:
    return Signature(n, 0)


def _strip(terms: Dict[int, object]) -> Dict[int, object]:
    return {m: c for m, c in terms.items() if not is_exact_zero(c)}


class Multivector:
    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Dict[int, object] | None = None):
        self.sig = sig
        self.terms = _strip(terms) if terms else {}

    # -- constructors ---------------------------------------------------

    @classmethod
    def scalar(cls, sig: Signature, c) -> "Multivector":
        return cls(sig, {0: c})

    @classmethod
    def basis_vector(cls, sig: Signature, i: int) -> "Multivector":
        if not 1 <= i <= sig.n:
            raise ValueError(f"basis index {i} out of range")
        return cls(sig, {1 << (i - 1): 1})

    @classmethod
    def blade(cls, sig: Signature, indices: Sequence[int], c=1) -> "Multivector":
        """Blade from 1-based indices, which must be strictly increasing."""
        mask = 0
        prev = 0
        for i in indices:
            if i <= prev:
                raise ValueError("blade indices must be strictly increasing")
            if i > sig.n:
                raise ValueError(f"basis index {i} out of range")
            mask |= 1 << (i - 1)
            prev = i
        return cls(sig, {mask: c})

    @classmethod
    def from_vector(cls, sig: Signature, components: Sequence) -> "Multivector":
        return cls(sig, {1 << i: c for i, c in enumerate(components)})

    # -- linear structure -------------------------------------------------

    def _check(self, other: "Multivector"):
        if self.sig != other.sig:
            raise ValueError("multivectors over different signatures")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return self + Multivector.scalar(self.sig, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.sig, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Multivector":
        if is_exact_zero(c):
            return Multivector(self.sig)
        return Multivector(self.sig, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.sig, blades.gp(self.terms, other.terms, self.sig.p))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return NotImplemented
        return self.scale(other)

    def __truediv__(self, c):
        return Multivector(self.sig, {m: v / c for m, v in self.terms.items()})

    def __xor__(self, other):
        return self.wedge(other)

    # -- products ----------------------------------------------------------

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check(other)
        return Multivector(self.sig, blades.wedge(self.terms, other.terms))

    def interior(self, other: "Multivector") -> "Multivector":
        """Metric interior product self _| other (adjoint of self wedge .)."""
        self._check(other)
        return Multivector(
            self.sig, blades.contract(self.terms, other.terms, self.sig.p, True)
        )

    def evaluate_contract(self, other: "Multivector") -> "Multivector":
        """Dual-pairing contraction, no metric factors."""
        self._check(other)
        return Multivector(
            self.sig, blades.contract(self.terms, other.terms, self.sig.p, False)
        )

    # -- grading and involutions -------------------------------------------

    def grade_project(self, k: int) -> "Multivector":
        return Multivector(
            self.sig, {m: c for m, c in self.terms.items() if m.bit_count() == k}
        )

    def grades(self) -> set:
        return {m.bit_count() for m in self.terms}

    def max_grade(self) -> int:
        return max((m.bit_count() for m in self.terms), default=0)

    def even_part(self) -> "Multivector":
        return Multivector(
            self.sig, {m: c for m, c in self.terms.items() if not m.bit_count() & 1}
        )

    def odd_part(self) -> "Multivector":
        return Multivector(
            self.sig, {m: c for m, c in self.terms.items() if m.bit_count() & 1}
        )

    def tilde(self) -> "Multivector":
        """Grade involution: (-1)^k on grade k."""
        return Multivector(
            self.sig,
            {m: (-c if m.bit_count() & 1 else c) for m, c in self.terms.items()},
        )

    def reverse(self) -> "Multivector":
        """Anti-automorphism reversing blade factors: (-1)^(k(k-1)/2)."""
        out = {}
        for m, c in self.terms.items():
            k = m.bit_count()
            out[m] = -c if (k * (k - 1) // 2) & 1 else c
        return Multivector(self.sig, out)

    def hat(self) -> "Multivector":
        """reverse o tilde: (-1)^(k(k+1)/2) on grade k."""
        out = {}
        for m, c in self.terms.items():
            k = m.bit_count()
            out[m] = -c if (k * (k + 1) // 2) & 1 else c
        return Multivector(self.sig, out)

    def conjugate_coefficients(self) -> "Multivector":
        return Multivector(
            self.sig, {m: conjugate_scalar(c) for m, c in self.terms.items()}
        )

    # -- access --------------------------------------------------------------

    def coefficient(self, indices: Sequence[int]):
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        return self.terms.get(mask, 0)

    def scalar_part(self):
        return self.terms.get(0, 0)

    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return not self.terms
        return self.max_abs() <= tol

    def max_abs(self) -> float:
        return max((scalar_abs(c) for c in self.terms.values()), default=0.0)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.sig == other.sig and (self - other).is_zero()
        return (self - Multivector.scalar(self.sig, other)).is_zero()

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"Multivector{self.sig}(0)"
        parts = []
        for m in sorted(self.terms, key=lambda x: (x.bit_count(), x)):
            name = "".join(f"e{i + 1}" for i in range(self.sig.n) if m >> i & 1) or "1"
            parts.append(f"({self.terms[m]})*{name}")
        return f"Multivector{self.sig}[" + " + ".join(parts) + "]"


# -------------------------------------------------------------------------
# operations with a free-function surface


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return a.wedge(b)


def interior(x: Multivector, a: Multivector) -> Multivector:
    if x.grades() not in ({1}, set()):
        raise ValueError("interior product expects a grade-1 first argument")
    return x.interior(a)


def grade_project(a: Multivector, k: int) -> Multivector:
    return a.grade_project(k)


def involution(a: Multivector, kind: str) -> Multivector:
    if kind == "hat":
        return a.hat()
    if kind == "tilde":
        return a.tilde()
    if kind == "reverse":
        return a.reverse()
    raise ValueError(f"unknown involution {kind!r}")


def volume_blade(sig: Signature, orientation: int = 1) -> Multivector:
    return Multivector(sig, {(1 << sig.n) - 1: orientation})


def hodge_star(a: Multivector, orientation: int = 1) -> Multivector:
    """Star of a form on a definite metric, as right Clifford action of vol."""
    if a.sig.q != 0:
        raise ValueError("hodge star requires a positive definite signature")
    return a.hat() * volume_blade(a.sig, orientation)


def exp_two_form(b: Multivector) -> Multivector:
    """Exterior exponential of a 2-form (terminates; wedge-nilpotent)."""
    if not b.grades() <= {2}:
        raise ValueError("exterior exponential expects a 2-form")
    out = Multivector.scalar(b.sig, 1)
    term = Multivector.scalar(b.sig, 1)
    k = 0
    fact = 1
    while True:
        k += 1
        term = term.wedge(b)
        if term.is_zero():
            break
        fact *= k
        out = out + term.scale(Fraction(1, fact))
    return out


def exp_bivector(b: Multivector, tol: float = 1e-14, max_terms: int = 200) -> Multivector:
    """Floating-point Clifford exponential, scaled power series.

    Meant for spin-group elements exp(t e_i e_j); coefficients are coerced to
    complex floats.
    """
    bf = Multivector(b.sig, {m: complex(c) for m, c in b.terms.items()})
    norm = bf.max_abs()
    scale_pow = 0
    while norm > 0.5:
        norm /= 2
        scale_pow += 1
    bf = bf.scale(0.5**scale_pow)
    out = Multivector.scalar(b.sig, 1 + 0j)
    term = Multivector.scalar(b.sig, 1 + 0j)
    for k in range(1, max_terms):
        term = (term * bf).scale(1.0 / k)
        out = out + term
        if term.max_abs() < tol:
            break
    for _ in range(scale_pow):
        out = out * out
    return out


def covector_substitution(a: Multivector, rows: Sequence[Sequence]) -> Multivector:
    """Substitute e^i -> sum_j rows[i][j] e^j in a form, extending by wedge.

    This is the workhorse for frame/coordinate changes and for pulling forms
    back along linear maps.
    """
    n = a.sig.n
    images = [
        {1 << j: rows[i][j] for j in range(n) if not is_exact_zero(rows[i][j])}
        for i in range(n)
    ]
    # blade images share wedge chains, so build them once per mask
    memo: Dict[int, Dict[int, object]] = {0: {0: 1}}

    def image(mask: int) -> Dict[int, object]:
        got = memo.get(mask)
        if got is None:
            lsb = mask & -mask
            got = blades.wedge(images[lsb.bit_length() - 1], image(mask ^ lsb))
            memo[mask] = got
        return got

    out: Dict[int, object] = {}
    for mask, c in a.terms.items():
        for m2, c2 in image(mask).items():
            prev = out.get(m2)
            out[m2] = c * c2 if prev is None else prev + c * c2
    return Multivector(a.sig, out)


def vector_action_matrix(u: Multivector, inverse: Multivector) -> list:
    """Matrix of x -> u x u^{-1} on basis vectors, columns indexed by input."""
    n = u.sig.n
    cols = []
    for j in range(1, n + 1):
        img = u * Multivector.basis_vector(u.sig, j) * inverse
        cols.append([img.terms.get(1 << i, 0) for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]
