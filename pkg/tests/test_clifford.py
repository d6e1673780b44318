"""Multivector algebra: products, involutions, exponentials, Hodge star.

Worked examples are asserted verbatim; random trials cross-check against the
tuple-based oracle in oracles.py and against the algebraic identities that
tie the Clifford product to the exterior calculus.
"""

import math
from fractions import Fraction

import pytest

from spinsplit import rand
from spinsplit.clifford import (
    Multivector,
    Signature,
    euclidean,
    exp_bivector,
    exp_two_form,
    geometric_product,
    grade_project,
    hodge_star,
    interior,
    involution,
    vector_action_matrix,
    volume_blade,
    wedge,
)

from oracles import mul_term_dicts, tuple_terms


def mv(sig, *blades):
    """Shorthand: mv(sig, (coeff, indices), ...)."""
    out = Multivector(sig)
    for c, idx in blades:
        out = out + Multivector.blade(sig, idx, c)
    return out


def e(sig, *indices):
    return Multivector.blade(sig, indices)


# -- geometric product -------------------------------------------------------

def test_defining_square():
    cl10 = Signature(1, 0)
    e1 = e(cl10, 1)
    assert e1 * e1 == Multivector.scalar(cl10, -1)


def test_orthogonal_anticommute():
    cl20 = Signature(2, 0)
    e1, e2 = e(cl20, 1), e(cl20, 2)
    assert (e1 * e2 + e2 * e1).is_zero()


def test_split_signature_product():
    cl22 = Signature(2, 2)
    e1, e3 = e(cl22, 1), e(cl22, 3)
    got = (e1 + e3) * (e1 - e3)
    want = mv(cl22, (-2, ()), (-2, (1, 3)))
    assert got == want


@pytest.mark.parametrize("p,q", [(2, 0), (3, 0), (2, 2), (0, 3), (3, 3)])
def test_product_matches_tuple_oracle(p, q):
    sig = Signature(p, q)
    rng = rand.trial_rng(0, "clifford-oracle", p, q)
    for _ in range(50):
        a = rand.multivector(sig, rng)
        b = rand.multivector(sig, rng)
        got = tuple_terms(a * b)
        want = mul_term_dicts(tuple_terms(a), tuple_terms(b), p)
        assert got == want


@pytest.mark.parametrize("n", range(1, 9))
def test_associativity(n):
    sig = euclidean(n)
    rng = rand.trial_rng(0, "assoc", n)
    for _ in range(20):
        a = rand.multivector(sig, rng, max_terms=4)
        b = rand.multivector(sig, rng, max_terms=4)
        c = rand.multivector(sig, rng, max_terms=4)
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("p,q", [(4, 0), (2, 2), (0, 4), (3, 1)])
def test_defining_relation_random_vectors(p, q):
    sig = Signature(p, q)
    rng = rand.trial_rng(0, "defrel", p, q)
    for _ in range(30):
        xs = rand.components(sig.n, rng)
        ys = rand.components(sig.n, rng)
        x = Multivector.from_vector(sig, xs)
        y = Multivector.from_vector(sig, ys)
        g = sum(
            xs[i] * ys[i] * sig.metric_square(i + 1) for i in range(sig.n)
        )
        assert x * y + y * x == Multivector.scalar(sig, -2 * g)


def test_signature_mismatch_rejected():
    a = e(euclidean(2), 1)
    b = e(euclidean(3), 1)
    with pytest.raises(ValueError):
        a * b


# -- wedge -------------------------------------------------------------------

def test_wedge_basics():
    sig = euclidean(3)
    e1, e2, e3 = (e(sig, i) for i in (1, 2, 3))
    assert e1 ^ e2 == e(sig, 1, 2)
    x = e1 + 2 * e2
    assert (x ^ x).is_zero()
    assert ((e1 + e2) ^ (e2 + e3) ^ e3) == e(sig, 1, 2, 3)


def test_wedge_vs_product_antisymmetrization():
    sig = euclidean(4)
    rng = rand.trial_rng(0, "wedge-asym")
    for _ in range(30):
        x = rand.vector(sig, rng)
        y = rand.vector(sig, rng)
        assert x ^ y == (x * y - y * x) / 2


def test_wedge_is_top_grade_of_product_for_orthogonal_blades():
    sig = euclidean(6)
    rng = rand.trial_rng(0, "wedge-top")
    for _ in range(60):
        ma = rng.randrange(1 << 6)
        mb = rng.randrange(1 << 6)
        if ma & mb:
            continue  # orthogonal blades: disjoint index sets
        a = Multivector(sig, {ma: rand.nonzero_fraction(rng)})
        b = Multivector(sig, {mb: rand.nonzero_fraction(rng)})
        top = ma.bit_count() + mb.bit_count()
        assert a ^ b == grade_project(a * b, top)


# -- interior product --------------------------------------------------------

def test_interior_examples():
    sig = euclidean(3)
    e1, e2, e3 = (e(sig, i) for i in (1, 2, 3))
    assert interior(e1, e1 ^ e2) == e2
    assert interior(e3, e1 ^ e2).is_zero()


def test_interior_requires_vector():
    sig = euclidean(3)
    with pytest.raises(ValueError):
        interior(e(sig, 1, 2), e(sig, 1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_clifford_vs_wedge_hook_left(n):
    # x . a = -(x hook a) + x wedge a
    sig = euclidean(n)
    rng = rand.trial_rng(0, "J-left", n)
    for _ in range(40):
        x = rand.vector(sig, rng)
        a = rand.multivector(sig, rng)
        assert x * a == -interior(x, a) + (x ^ a)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_clifford_vs_wedge_hook_right(n):
    # a . x = (x hook + x wedge) applied to the degree involution of a
    sig = euclidean(n)
    rng = rand.trial_rng(0, "J-right", n)
    for _ in range(40):
        x = rand.vector(sig, rng)
        a = rand.multivector(sig, rng)
        at = involution(a, "tilde")
        assert a * x == interior(x, at) + (x ^ at)


# -- grade projection --------------------------------------------------------

def test_grade_project_examples():
    sig = euclidean(2)
    a = mv(sig, (1, ()), (1, (1,)), (1, (1, 2)))
    assert grade_project(a, 1) == e(sig, 1)
    total = Multivector(sig)
    for k in range(3):
        total = total + grade_project(a, k)
    assert total == a


# -- involutions -------------------------------------------------------------

def test_involution_signs():
    sig = euclidean(4)
    b = e(sig, 1, 2)
    assert involution(b, "hat") == -b
    ev = mv(sig, (3, ()), (5, (1, 2)))
    assert involution(ev, "tilde") == ev
    v = e(sig, 3)
    assert involution(v, "tilde") == -v
    assert involution(e(sig, 1, 2, 3), "reverse") == -e(sig, 1, 2, 3)


@pytest.mark.parametrize("kind", ["hat", "tilde", "reverse"])
def test_involutions_are_involutive(kind):
    sig = Signature(2, 2)
    rng = rand.trial_rng(0, "invol", kind)
    for _ in range(20):
        a = rand.multivector(sig, rng)
        assert involution(involution(a, kind), kind) == a


def test_hat_antiautomorphism():
    sig = Signature(3, 1)
    rng = rand.trial_rng(0, "hat-anti")
    for _ in range(30):
        a = rand.multivector(sig, rng)
        b = rand.multivector(sig, rng)
        assert involution(a * b, "hat") == involution(b, "hat") * involution(a, "hat")


# -- volume element ----------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_volume_commutation(n):
    sig = euclidean(n)
    vol = volume_blade(sig)
    rng = rand.trial_rng(0, "vol", n)
    for _ in range(20):
        a = rand.multivector(sig, rng)
        if n % 2 == 0:
            assert vol * a == involution(a, "tilde") * vol
        else:
            assert vol * a == a * vol


# -- exterior exponential ----------------------------------------------------

def test_exp_two_form_examples():
    sig = euclidean(4)
    zero = Multivector(sig)
    assert exp_two_form(zero) == Multivector.scalar(sig, 1)
    b = e(sig, 1, 2)
    assert exp_two_form(b) == Multivector.scalar(sig, 1) + b
    b2 = e(sig, 1, 2) + e(sig, 3, 4)
    want = Multivector.scalar(sig, 1) + b2 + e(sig, 1, 2, 3, 4)
    assert exp_two_form(b2) == want


def test_exp_two_form_rejects_wrong_grade():
    sig = euclidean(3)
    with pytest.raises(ValueError):
        exp_two_form(e(sig, 1))


def test_exp_two_form_adds_inverse():
    sig = euclidean(6)
    rng = rand.trial_rng(0, "expB")
    for _ in range(20):
        b = rand.two_form(6, rng)
        c = rand.two_form(6, rng)
        lhs = exp_two_form(b + c)
        rhs = exp_two_form(b) ^ exp_two_form(c)
        assert lhs == rhs
        assert exp_two_form(b) ^ exp_two_form(-b) == Multivector.scalar(sig, 1)


def test_exp_bivector_rotor():
    # exp(theta/2 e12) rotates e1 by theta in the euclidean plane
    sig = euclidean(2)
    theta = 0.7
    r = exp_bivector(e(sig, 1, 2).scale(theta / 2))
    rinv = exp_bivector(e(sig, 1, 2).scale(-theta / 2))
    x = r * e(sig, 1) * rinv
    c1 = complex(x.coefficient((1,)))
    c2 = complex(x.coefficient((2,)))
    assert abs(c1 - math.cos(theta)) < 1e-12
    assert abs(abs(c2) - math.sin(theta)) < 1e-12


# -- Hodge star --------------------------------------------------------------

def test_hodge_star_examples():
    sig2 = euclidean(2)
    assert hodge_star(Multivector.scalar(sig2, 1)) == e(sig2, 1, 2)
    sig3 = euclidean(3)
    assert hodge_star(e(sig3, 1)) == e(sig3, 2, 3)


def test_hodge_star_classical_formula():
    # star(e_I) = sign * e_Ic with sign the permutation sign of (I, Ic)
    sig = euclidean(4)
    rng = rand.trial_rng(0, "starperm")
    from spinsplit._blades_py import reorder_sign

    for mask in range(1 << 4):
        blade = Multivector(sig, {mask: Fraction(1)})
        comp = (~mask) & 0b1111
        want = Multivector(sig, {comp: reorder_sign(mask, comp)})
        assert hodge_star(blade) == want


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_double_star_sign(n):
    sig = euclidean(n)
    rng = rand.trial_rng(0, "star2", n)
    for k in range(n + 1):
        a = rand.multivector(sig, rng, grades={k})
        want = a.scale((-1) ** (k * (n - k)))
        assert hodge_star(hodge_star(a)) == want


def test_hodge_star_via_hat_vol():
    sig = euclidean(5)
    rng = rand.trial_rng(0, "starhat")
    vol = volume_blade(sig)
    for _ in range(20):
        a = rand.multivector(sig, rng)
        assert hodge_star(a) == involution(a, "hat") * vol


def test_hodge_star_rejects_indefinite():
    with pytest.raises(ValueError):
        hodge_star(e(Signature(1, 1), 1))


# -- covector substitution and conjugation -----------------------------------

def test_vector_action_matrix_reflection():
    sig = euclidean(3)
    u = e(sig, 1)
    uinv = -u  # e1 squares to -1
    mat = vector_action_matrix(u, uinv)
    assert mat[0][0] == 1
    assert mat[1][1] == -1 and mat[2][2] == -1
    assert all(mat[i][j] == 0 for i in range(3) for j in range(3) if i != j)
