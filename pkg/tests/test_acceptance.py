"""Acceptance suite: one test per acceptance criterion, exact comparisons only."""

import math
from itertools import product

from qinv import invariants, wchars
from qinv.lattice import (
    PermutationElement,
    act,
    fundamental_weight,
    pi_weights,
    root_system,
    weyl_elements,
)
from qinv.qseries import INF, QSeries, agreement_order, is_integral
from qinv.verify import p2_limit_single_sum


PAIRS = [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]


def test_oracle_equivalence():
    bad = []
    for r, n, (p, pp) in product([2, 3, 4], range(6), PAIRS):
        a = invariants.jones_closed(r, p, pp, n, 40)
        b = invariants.jones_rosso_oracle(r, p, pp, n, 40)
        if a != b:
            bad.append((r, n, p, pp, agreement_order(a, b)))
    assert not bad


def test_sl3_p2_single_sum():
    for pp, n in product([3, 5, 7], range(9)):
        assert invariants.jones_sl3_p2(pp, n, 60) == invariants.jones_closed(3, 2, pp, n, 60), (pp, n)


def test_vanishing_below_rank():
    for r, p, pp in [(3, 2, 5), (4, 3, 5), (5, 2, 7)]:
        for mu in (None, fundamental_weight(r, 1)):
            s = wchars.wchar_shifted(r, p, pp, 100, mu=mu)
            assert s.trunc == 100
            assert s.is_zero(), (r, p, pp, mu)


def test_equal_rank_sign_identity():
    for r, pp in [(2, 3), (2, 5), (3, 4), (3, 5)]:
        base = wchars.wchar_normalized(r, r, pp, 60)
        for i in range(1, r):
            mu = fundamental_weight(r, i)
            shifted = wchars.wchar_shifted(r, r, pp, 60, mu=mu)
            assert shifted.scale(wchars.shift_sign(mu)) == base, (r, pp, i)


def test_limit_agreement_grows():
    T = 400
    for r, p, pp in [(3, 3, 4), (2, 2, 5), (2, 3, 4)]:
        lim = wchars.limit_rhs(r, p, pp, 0, T)
        orders = [agreement_order(invariants.jones_closed(r, p, pp, k * r, T), lim) for k in range(1, 5)]
        # INF would mean agreement beyond q^T: evidence, but not a strict increase
        assert INF not in orders, (r, p, pp, orders)
        assert all(a < b for a, b in zip(orders, orders[1:])), (r, p, pp, orders)
        assert all(e > k * r for k, e in zip(range(1, 5), orders)), (r, p, pp, orders)


def test_integrality():
    for r, k, (p, pp) in product([2, 3, 4], range(4), [(2, 3), (3, 4), (4, 5)]):
        assert is_integral(invariants.jones_closed(r, p, pp, k * r)), (r, k, p, pp)


def test_conjecture_evidence():
    T = 60
    report = {}
    for r, p, pp in [(3, 2, 5), (4, 2, 5), (4, 3, 5), (5, 3, 4)]:
        rhs = wchars.conjecture_rhs(r, p, pp, T)
        orders = []
        for n in range(1, 9):
            J, _, _ = invariants.jones_hat(r, p, pp, n, T)
            orders.append(agreement_order(J, rhs))
        report[(r, p, pp)] = orders
        assert all(a <= b for a, b in zip(orders, orders[1:])), (r, p, pp, orders)
        if r == 3 and p == 2:
            assert rhs == p2_limit_single_sum(pp, T)
    short = {k: v[-1] for k, v in report.items() if v[-1] < 20}
    assert not short, f"agreement order at n=8 below 20: {short}"


def test_character_normalization():
    for r, p, pp in [(2, 2, 3), (2, 3, 4), (3, 3, 4), (3, 4, 5)]:
        s = wchars.wchar_normalized(r, p, pp, 60)
        assert s.ord == 0 and s[0] == 1, (r, p, pp)
        assert is_integral(s), (r, p, pp)
    assert wchars.wchar_normalized(2, 2, 3, 100) == QSeries.one(100)


def _divisible(v2, p):
    return all(x % (2 * p) == 0 for x in v2)


def test_lattice_facts_and_cancellation():
    for r in range(2, 6):
        lam1 = fundamental_weight(r, 1)
        for n in range(13):
            ws = pi_weights(r, n)
            assert len(set(ws)) == len(ws) == math.comb(n + r - 1, r - 1)
            assert set(ws) <= set(pi_weights(r, n + r))
            assert all((x - lam1 * (n % r)).in_root_lattice() for x in ws)

    for r in range(2, 6):
        d = root_system(r).weyl_vector
        ws = weyl_elements(r)
        img = {w: tuple(int(2 * x) for x in act(w, d).coords) for w in ws}
        for p in range(1, r + 3):
            for w in ws:
                if p < r:
                    u = w * PermutationElement.transposition(r, 1, p + 1)
                    diff = [a - b for a, b in zip(img[u], img[w])]
                    assert _divisible(diff, p) and u.parity == -w.parity
                allowed = {w}
                if p == r - 1:
                    allowed.add(w * PermutationElement.transposition(r, 1, r))
                if p >= r - 1:
                    for u in ws:
                        diff = [a - b for a, b in zip(img[u], img[w])]
                        assert _divisible(diff, p) == (u in allowed), (r, p, w, u)
