"""Independent reference implementations used only by the test suite.

Everything here is deliberately written with different data structures and
algorithms than the package under test: blade products run on sorted index
tuples with bubble-sorted transpositions instead of bitmask kernels, the
gamma-matrix oracle builds dense Kronecker products, and polynomial
arithmetic is untruncated.  Agreement between the two code paths is the
point of the exercise.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from spinsplit.scalars import GaussianRational


# ---------------------------------------------------------------------------
# Clifford products on sorted index tuples (1-based indices)
# ---------------------------------------------------------------------------

def blade_mul(idx_a, idx_b, p):
    """Product of basis blades e_A * e_B in Cl(p, q).

    Blades are strictly increasing tuples of 1-based indices.  Convention:
    e_i * e_i = -1 for i <= p and +1 for i > p (so x*y + y*x = -2 g(x, y)
    with g positive on the first p directions).

    Returns (sign, tuple).  sign == 0 encodes the zero product (never
    happens for nondegenerate signatures, kept for symmetry with wedge).
    """
    seq = list(idx_a) + list(idx_b)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(seq) - 1:
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
                changed = True
            elif seq[i] == seq[i + 1]:
                sign *= -1 if seq[i] <= p else 1
                del seq[i:i + 2]
                changed = True
                break
            else:
                i += 1
    return sign, tuple(seq)


def blade_wedge(idx_a, idx_b):
    """Wedge of basis blades on sorted tuples; 0 sign on shared index."""
    if set(idx_a) & set(idx_b):
        return 0, ()
    seq = list(idx_a) + list(idx_b)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def tuple_terms(mv):
    """Multivector -> dict mapping sorted index tuples to coefficients."""
    out = {}
    for mask, coeff in mv.terms.items():
        idx = tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)
        out[idx] = coeff
    return out


def mul_term_dicts(a, b, p):
    out = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            sign, idx = blade_mul(ia, ib, p)
            if sign:
                out[idx] = out.get(idx, 0) + sign * ca * cb
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# Dense complex matrices as nested lists (no numpy on purpose)
# ---------------------------------------------------------------------------

def mat_identity(n):
    return [[1 + 0j if i == j else 0j for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def mat_kron(a, b):
    na, ma = len(a), len(a[0])
    nb, mb = len(b), len(b[0])
    return [[a[i // nb][j // mb] * b[i % nb][j % mb]
             for j in range(ma * mb)] for i in range(na * nb)]


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def mat_close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol for ra, rb in zip(a, b) for x, y in zip(ra, rb))


# ---------------------------------------------------------------------------
# Jordan-Wigner gamma matrices for the definite spin module Delta_{2m}
# ---------------------------------------------------------------------------

SIGMA3 = [[1 + 0j, 0j], [0j, -1 + 0j]]
CREATE_MINUS_ANNIH = [[0j, -1 + 0j], [1 + 0j, 0j]]      # u^k wedge - u_k hook
I_CREATE_PLUS_ANNIH = [[0j, 1j], [1j, 0j]]              # i(u^k wedge + u_k hook)


def gamma_matrices(m):
    """Dense matrices of e_1..e_2m acting on Delta = (C^2)^{tensor m}.

    Qubit k (1-based) is the k-th Kronecker factor, most significant first;
    basis index of the monomial u^S is sum(2^(m - k) for k in S).  Built to
    mirror the fermionic creation/annihilation picture, not the package's
    wedge/contract kernel.
    """
    gammas = []
    for k in range(1, m + 1):
        mat = [[1 + 0j]]
        for j in range(1, m + 1):
            if j < k:
                blk = SIGMA3
            elif j == k:
                blk = CREATE_MINUS_ANNIH
            else:
                blk = mat_identity(2)
            mat = mat_kron(mat, blk)
        gammas.append(mat)
    for k in range(1, m + 1):
        mat = [[1 + 0j]]
        for j in range(1, m + 1):
            if j < k:
                blk = SIGMA3
            elif j == k:
                blk = I_CREATE_PLUS_ANNIH
            else:
                blk = mat_identity(2)
            mat = mat_kron(mat, blk)
        gammas.append(mat)
    return gammas


def subset_index(m, mask):
    """Basis index of u^S for the bitmask S (bit k-1 set <=> k in S)."""
    return sum(1 << (m - k) for k in range(1, m + 1) if mask >> (k - 1) & 1)


def spinor_to_vector(psi):
    v = [0j] * (1 << psi.m)
    for mask, coeff in psi.coeffs.items():
        v[subset_index(psi.m, mask)] = complex(coeff)
    return v


def gamma_of_blade(m, indices):
    """Dense matrix of the blade e_{i1}...e_{ik} (ascending product order)."""
    gammas = gamma_matrices(m)
    mat = mat_identity(1 << m)
    for i in indices:
        mat = mat_mul(mat, gammas[i - 1])
    return mat


# ---------------------------------------------------------------------------
# Exact rank over the Gaussian rationals
# ---------------------------------------------------------------------------

def exact_rank(rows):
    """Row-echelon rank of a matrix with GaussianRational/Fraction entries."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col] ** -1 if isinstance(rows[rank][col], GaussianRational) \
            else Fraction(1) / rows[rank][col]
        rows[rank] = [inv * x for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Untruncated polynomial arithmetic for jet cross-checks
# ---------------------------------------------------------------------------

def poly_mul(a, b):
    """Multiply multi-index dicts exactly, no truncation."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def poly_truncate(a, order):
    return {k: v for k, v in a.items() if sum(k) <= order}


def jet_to_poly(j):
    return dict(j.coeffs)


def all_masks(n):
    return range(1 << n)


def masks_of_grade(n, k):
    return [sum(1 << i for i in c) for c in combinations(range(n), k)]


# ---------------------------------------------------------------------------
# Finite-difference curvature over exact rationals
# ---------------------------------------------------------------------------

def frac_invert(rows):
    """Gauss-Jordan inverse over Fractions, independent of the package."""
    n = len(rows)
    a = [
        [Fraction(rows[i][j]) for j in range(n)]
        + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _metric_values(metric, point):
    return [[entry.evaluate(point) for entry in row] for row in metric.rows]


def fd_christoffel(metric, point, h):
    """Christoffel symbols at `point` from central differences of the metric.

    For order-2 jet metrics the metric entries are quadratic polynomials, so
    the first-derivative stencils are exact; all arithmetic stays rational.
    Layout matches the package: gamma[k][i][j] = Gamma^k_ij.
    """
    n = metric.n
    ginv = frac_invert(_metric_values(metric, point))
    dg = []
    for l in range(n):
        pp = list(point)
        pm = list(point)
        pp[l] += h
        pm[l] -= h
        gp = _metric_values(metric, pp)
        gm = _metric_values(metric, pm)
        dg.append(
            [[(gp[i][j] - gm[i][j]) / (2 * h) for j in range(n)] for i in range(n)]
        )
    gamma = []
    for k in range(n):
        plane = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Fraction(0)
                for l in range(n):
                    acc += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                row.append(acc / 2)
            plane.append(row)
        gamma.append(plane)
    return gamma


def fd_ricci(metric, h=Fraction(1, 10**6)):
    """Ricci tensor at the chart origin via central differences of Gamma.

    The only truncation error is the O(h^2) remainder of the outer stencil;
    there is no floating-point roundoff anywhere.
    """
    n = metric.n
    zero = [Fraction(0)] * n
    gamma0 = fd_christoffel(metric, zero, h)
    dgamma = []
    for i in range(n):
        pp = list(zero)
        pm = list(zero)
        pp[i] += h
        pm[i] -= h
        gp = fd_christoffel(metric, pp, h)
        gm = fd_christoffel(metric, pm, h)
        dgamma.append(
            [
                [
                    [(gp[k][a][b] - gm[k][a][b]) / (2 * h) for b in range(n)]
                    for a in range(n)
                ]
                for k in range(n)
            ]
        )
    ric = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            acc = Fraction(0)
            for i in range(n):
                acc += dgamma[i][i][j][k] - dgamma[j][i][i][k]
                for p in range(n):
                    acc += gamma0[i][i][p] * gamma0[p][j][k]
                    acc -= gamma0[i][j][p] * gamma0[p][i][k]
            ric[j][k] = acc
    return ric
