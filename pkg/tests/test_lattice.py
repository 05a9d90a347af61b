import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qinv.lattice import (
    Boundary,
    InvalidRankError,
    PermutationElement,
    WeightVector,
    act,
    coset_ball,
    dominant_reduce,
    from_fundamental_coords,
    from_root_coords,
    fundamental_weight,
    inner,
    lemma_w_for_mu,
    pi_weights,
    root_system,
    simple_root,
    weyl_elements,
    weyl_vector,
)


def test_fundamental_weights_are_dual_to_simple_roots():
    for r in range(2, 6):
        for i, j in product(range(1, r), repeat=2):
            assert inner(fundamental_weight(r, i), simple_root(r, j)) == (i == j)


def test_weyl_vector_is_sum_of_fundamental_weights():
    for r in range(2, 6):
        s = WeightVector.zero(r)
        for i in range(1, r):
            s = s + fundamental_weight(r, i)
        assert s == weyl_vector(r)
        assert weyl_vector(r).norm2() == Fraction(r * (r * r - 1), 12)


def test_root_system_data():
    rs = root_system(3)
    assert len(rs.positive_roots) == 3
    assert rs.highest_root == WeightVector((1, 0, -1))
    assert all(a.norm2() == 2 for a in rs.positive_roots)


def test_coordinate_round_trips():
    mu = from_fundamental_coords([2, 1])
    assert mu.fundamental_coords() == (2, 1)
    a = from_root_coords([1, -2, 3])
    assert a.root_coords() == (1, -2, 3)
    assert a.in_root_lattice()


def test_membership_predicates():
    lam1 = fundamental_weight(3, 1)
    assert lam1.in_weight_lattice() and not lam1.in_root_lattice()
    assert lam1.is_dominant() and not lam1.is_regular_dominant()
    assert weyl_vector(3).is_regular_dominant()
    assert lam1.in_level(1) and not (lam1 * 2).in_level(1)
    assert not WeightVector((Fraction(1, 3), Fraction(-1, 3), 0)).in_weight_lattice()


def test_rank_errors():
    with pytest.raises(InvalidRankError):
        weyl_elements(1)
    with pytest.raises(ValueError):
        WeightVector((1, 1))


def test_weyl_group_size_and_lengths():
    for r in range(2, 6):
        ws = weyl_elements(r)
        assert len(ws) == math.factorial(r)
        # Mahonian: sum of q^{l(w)} at q=1 and the maximum length
        assert max(w.length for w in ws) == r * (r - 1) // 2
        assert sum(w.parity for w in ws) == 0


@given(st.permutations(range(4)), st.permutations(range(4)))
def test_action_is_a_group_action(a, b):
    u, w = PermutationElement(tuple(a)), PermutationElement(tuple(b))
    mu = WeightVector((3, 1, -2, -2))
    assert act(u * w, mu) == act(u, act(w, mu))
    assert (u * w).parity == u.parity * w.parity
    assert act(w.inverse(), act(w, mu)) == mu


def test_pi_weights_small():
    assert pi_weights(2, 1) == [fundamental_weight(2, 1), fundamental_weight(2, 1) - simple_root(2, 1)]
    assert len(pi_weights(3, 4)) == 15


def test_pi_weights_are_weights_of_symmetric_power():
    # sl_r weights of Sym^n(C^r): compositions of n shifted by -n/r
    for r, n in [(2, 5), (3, 4), (4, 3)]:
        comps = {
            WeightVector(tuple(Fraction(k) - Fraction(n, r) for k in c))
            for c in product(range(n + 1), repeat=r)
            if sum(c) == n
        }
        assert set(pi_weights(r, n)) == comps


def test_dominant_reduce():
    nu = WeightVector((-1, 3, -2))
    u, dom = dominant_reduce(nu)
    assert dom == WeightVector((3, -1, -2))
    assert act(u, nu) == dom
    assert dominant_reduce(WeightVector((1, 1, -2))) is Boundary


def test_lemma_w_parities():
    signs = {
        r: [lemma_w_for_mu(fundamental_weight(r, i))[0].parity for i in range(1, r)]
        for r in range(2, 6)
    }
    assert signs == {2: [-1], 3: [1, 1], 4: [-1, 1, -1], 5: [1, 1, 1, 1]}


def test_lemma_w_shift_is_in_root_lattice():
    for r in range(2, 6):
        d = weyl_vector(r)
        for i in range(1, r):
            mu = fundamental_weight(r, i)
            w, lam = lemma_w_for_mu(mu)
            assert lam.in_root_lattice()
            assert mu * r - d + act(w, d) == lam * r


def _scan(r, mu, c, v, T, B=4):
    out = set()
    for a in product(range(-B, B + 1), repeat=r - 1):
        x = from_root_coords(a, r) + mu
        if c * x.norm2() + (inner(x, v) if v else 0) <= T:
            out.add(x)
    return out


@pytest.mark.parametrize("r,j,c,T", [(2, 0, 1, 2), (3, 0, 1, 2), (3, 1, 1, 1), (3, 2, Fraction(3, 2), 5), (4, 1, 1, 3)])
def test_coset_ball_matches_box_scan(r, j, c, T):
    mu = fundamental_weight(r, 1) * j
    v = weyl_vector(r) * -1
    assert set(coset_ball(r, mu, c, v, T)) == _scan(r, mu, c, v, T)
    assert set(coset_ball(r, mu, c, None, T)) == _scan(r, mu, c, None, T)


def test_coset_ball_examples():
    assert set(coset_ball(2, WeightVector.zero(2), 1, None, 2)) == {
        simple_root(2, 1), WeightVector.zero(2), -simple_root(2, 1)
    }
    assert len(coset_ball(3, WeightVector.zero(3), 1, None, 2)) == 7
    with pytest.raises(ValueError):
        coset_ball(3, WeightVector.zero(3), 0, None, 2)
