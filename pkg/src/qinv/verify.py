"""Executable identity checks producing structured reports.

Each check compares exact series (zero tolerance) and records, per instance,
the agreement order: the first exponent where the two sides differ, or
``inf`` when they agree through the truncation.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable

from . import invariants, wchars
from .lattice import (
    PermutationElement,
    WeightVector,
    act,
    coset_ball,
    fundamental_weight,
    pi_weights,
    root_system,
    weyl_elements,
)
from .qseries import (
    INF,
    QSeries,
    agreement_order,
    div_prod_one_minus,
    euler_product,
    is_integral,
    trailing_normalize,
)

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class UnknownCheckError(KeyError):
    pass


class MalformedParamsError(ValueError):
    pass


def fmt_order(e) -> str:
    return "inf" if e == INF else str(e)


@dataclass
class CheckReport:
    check_id: str
    params: dict
    status: str
    agreement_orders: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    runtime_ms: float = 0.0

    def to_record(self, with_runtime: bool = True) -> dict:
        rec = asdict(self)
        if not with_runtime:
            rec.pop("runtime_ms")
        return rec

    @property
    def passed(self) -> bool:
        return self.status == PASS


def _witness(label: str, lhs: QSeries, rhs: QSeries, e) -> dict:
    def c(s):
        v = s.coefficient(e) if e < s.trunc else None
        return None if v is None else str(v)

    return {"instance": label, "exponent": str(e), "lhs": c(lhs), "rhs": c(rhs)}


class _Collector:
    def __init__(self):
        self.orders: list = []
        self.witnesses: list = []
        self.ok = True

    def equal(self, label: str, lhs: QSeries, rhs: QSeries, T=None) -> Any:
        if T is not None:
            lhs, rhs = lhs.truncate(T), rhs.truncate(T)
        e = agreement_order(lhs, rhs)
        self.orders.append([label, fmt_order(e)])
        if e != INF:
            self.ok = False
            self.witnesses.append(_witness(label, lhs, rhs, e))
        return e

    def order(self, label: str, lhs: QSeries, rhs: QSeries) -> Any:
        e = agreement_order(lhs, rhs)
        self.orders.append([label, fmt_order(e)])
        return e

    def predicate(self, label: str, ok: bool, detail: dict | None = None) -> None:
        if not ok:
            self.ok = False
            self.witnesses.append({"instance": label, **(detail or {})})


def _need(params: dict, key: str, default=None):
    if key in params:
        return params[key]
    if default is None:
        raise MalformedParamsError(f"missing parameter {key!r}")
    return default


def _int_list(v, name: str) -> list[int]:
    if isinstance(v, int):
        return [v]
    try:
        return [int(x) for x in v]
    except (TypeError, ValueError):
        raise MalformedParamsError(f"{name} must be an integer or list of integers")


def _pairs(v, name="pairs") -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in item) for item in v]
    except (TypeError, ValueError):
        raise MalformedParamsError(f"{name} must be a list of integer tuples")


def _range(params: dict, key: str, default_max: int, start: int = 0) -> list[int]:
    if key in params:
        return _int_list(params[key], key)
    top = int(params.get(key + "_max", default_max))
    return list(range(start, top + 1))


# -- catalog ---------------------------------------------------------------


def check_oracle_equiv(params: dict) -> tuple[str, _Collector, list]:
    T = Fraction(_need(params, "T", 40))
    col = _Collector()
    for r in _int_list(params.get("r", [2, 3, 4]), "r"):
        for n in _range(params, "n", 5):
            for p, pp in _pairs(params.get("pairs", [[2, 3], [2, 5], [3, 4], [3, 5], [4, 5]])):
                a = invariants.jones_closed(r, p, pp, n)
                b = invariants.jones_rosso_oracle(r, p, pp, n)
                col.equal(f"r={r},n={n},p={p},pp={pp}", a, b, T)
    return (PASS if col.ok else FAIL), col, []


def check_thm_p2(params: dict):
    T = Fraction(_need(params, "T", 60))
    col = _Collector()
    for pp in _int_list(params.get("pp", [3, 5, 7]), "pp"):
        for n in _range(params, "n", 8):
            a = invariants.jones_closed(3, 2, pp, n)
            b = invariants.jones_sl3_p2(pp, n)
            col.equal(f"pp={pp},n={n}", a, b, T)
    return (PASS if col.ok else FAIL), col, []


def check_limit_agreement(params: dict):
    T = Fraction(_need(params, "T", 400))
    j = int(params.get("j", 0))
    kmax = int(params.get("k_max", 4))
    col = _Collector()
    notes = []
    status = PASS
    for r, p, pp in _pairs(params.get("cases", [[3, 3, 4], [2, 2, 5], [2, 3, 4]]), "cases"):
        lim = wchars.limit_rhs(r, p, pp, j, T)
        prev = None
        for k in range(1, kmax + 1):
            n = j + k * r
            e = col.order(f"r={r},p={p},pp={pp},n={n}", invariants.jones_closed(r, p, pp, n, T), lim)
            if e == INF:
                status = INCONCLUSIVE if status == PASS else status
                notes.append(f"r={r},p={p},pp={pp},n={n}: agreement beyond q^{T}; raise T")
            elif e <= n or (prev is not None and prev != INF and e <= prev):
                col.predicate(
                    f"r={r},p={p},pp={pp},n={n}",
                    False,
                    {"order": str(e), "previous": fmt_order(prev) if prev is not None else None, "colour": n},
                )
            prev = e
    notes.append(f"tail property for k > {kmax} not established (inconclusive beyond tested colours)")
    if not col.ok:
        status = FAIL
    return status, col, notes


def _candidate_tail(r, p, pp, b, T):
    if r <= p:
        return wchars.limit_rhs(r, p, pp, b % r, T)
    return wchars.conjecture_rhs(r, p, pp, T)


def check_zero_tail_probe(params: dict):
    T = Fraction(_need(params, "T", 60))
    r, p, pp = (int(params.get(k, d)) for k, d in (("r", 3), ("p", 3), ("pp", 4)))
    a = int(params.get("a", r))
    b = int(params.get("b", 0))
    col = _Collector()
    notes = []
    f = _candidate_tail(r, p, pp, b, T)
    if f.is_zero():
        return FAIL, col, [f"candidate tail vanishes to O(q^{T})"]
    notes.append(f"candidate tail minimum degree {f.ord}")
    fhat, _, _ = trailing_normalize(f)
    for n in _range(params, "n", 4):
        m = a * n + b
        J, _, _ = invariants.jones_hat(r, p, pp, m)
        need = m + 1
        if need > fhat.trunc:
            notes.append(f"n={n}: threshold q^{need} beyond truncation; skipped")
            continue
        e = col.order(f"colour={m}", J.truncate(fhat.trunc), fhat)
        col.predicate(f"colour={m}", e >= need, {"order": fmt_order(e), "required": need})
    notes.append("0-tail property asserted only for the tested colours")
    return (INCONCLUSIVE if col.ok else FAIL), col, notes


def _labels(v: WeightVector) -> list[int]:
    return [int(x) for x in v.fundamental_coords()]


def _mu_list(params: dict, r: int) -> list[WeightVector]:
    js = _int_list(params.get("mu_j", [0, 1]), "mu_j")
    return [fundamental_weight(r, 1) * j for j in js]


def check_p_lt_r_vanishing(params: dict):
    T = Fraction(_need(params, "T", 100))
    col = _Collector()
    for r, p, pp in _pairs(params.get("cases", [[3, 2, 5], [4, 3, 5], [5, 2, 7]]), "cases"):
        if not p < r:
            raise MalformedParamsError(f"need p < r, got r={r}, p={p}")
        for mu in _mu_list(params, r):
            s = wchars.wchar_shifted(r, p, pp, T, mu=mu)
            col.equal(f"r={r},p={p},pp={pp},mu={_labels(mu)}", s, QSeries.zero(T))
    return (PASS if col.ok else FAIL), col, []


def _level_weights(r: int, k: int) -> list[WeightVector]:
    from .lattice import from_fundamental_coords

    out = []
    for labels in product(range(k + 1), repeat=r - 1):
        if sum(labels) <= k:
            out.append(from_fundamental_coords(labels, r))
    return out


def check_r_eq_p_sign(params: dict):
    T = Fraction(_need(params, "T", 60))
    col = _Collector()
    for r, pp in _pairs(params.get("cases", [[2, 3], [2, 5], [3, 4], [3, 5]]), "cases"):
        zs = params.get("zeta", [[0] * (r - 1)])
        if zs == "all":
            zetas = _level_weights(r, pp - r)
        else:
            from .lattice import from_fundamental_coords

            zetas = [from_fundamental_coords(z, r) for z in zs]
        for zeta in zetas:
            base = wchars.wchar_normalized(r, r, pp, T, zeta=zeta)
            for i in range(1, r):
                mu = fundamental_weight(r, i)
                lhs = wchars.wchar_shifted(r, r, pp, T, zeta=zeta, mu=mu).scale(wchars.shift_sign(mu))
                col.equal(f"r={r},pp={pp},zeta={_labels(zeta)},mu=L{i}", lhs, base)
    return (PASS if col.ok else FAIL), col, []


def check_integrality(params: dict):
    col = _Collector()
    kmax = int(params.get("k_max", 3))
    for r in _int_list(params.get("r", [2, 3, 4]), "r"):
        for k in range(0, kmax + 1):
            for p, pp in _pairs(params.get("pairs", [[2, 3], [3, 4], [4, 5]])):
                J = invariants.jones_closed(r, p, pp, k * r)
                ok = is_integral(J)
                col.orders.append([f"r={r},k={k},p={p},pp={pp}", "integral" if ok else "non-integral"])
                if not ok:
                    bad = next(
                        (e for e, c in J.items() if e.denominator != 1 or e < 0 or not isinstance(c, int)),
                        None,
                    )
                    col.predicate(f"r={r},k={k},p={p},pp={pp}", False, {"exponent": str(bad)})
    return (PASS if col.ok else FAIL), col, []


def _in_multiple_lattice(v2: tuple[int, ...], p: int) -> bool:
    # v2 holds 2*(u delta - w delta); membership in pQ_r
    return all(x % (2 * p) == 0 for x in v2)


def check_cancellation_lemma(params: dict):
    col = _Collector()
    rmax = int(params.get("r_max", 5))
    extra = int(params.get("p_extra", 2))
    counted = 0
    for r in range(2, rmax + 1):
        d = root_system(r).weyl_vector
        ws = weyl_elements(r)
        images = {w: tuple(int(2 * x) for x in act(w, d).coords) for w in ws}
        theta2 = tuple(2 * x for x in root_system(r).highest_root.coords)
        for p in range(1, r + extra + 1):
            for w in ws:
                wd = images[w]
                if p < r:
                    u = w * PermutationElement.transposition(r, 1, p + 1)
                    diff = tuple(a - b for a, b in zip(images[u], wd))
                    ok = _in_multiple_lattice(diff, p) and u.parity != w.parity
                    col.predicate(f"(1) r={r},p={p},w={w.images}", ok)
                    counted += 1
                if p == r - 1 or p >= r:
                    allowed = {w}
                    if p == r - 1:
                        allowed.add(w * PermutationElement.transposition(r, 1, r))
                    for u in ws:
                        diff = tuple(a - b for a, b in zip(images[u], wd))
                        inside = _in_multiple_lattice(diff, p)
                        tag = "(2)" if p == r - 1 else "(3)"
                        col.predicate(f"{tag} r={r},p={p},w={w.images},u={u.images}", inside == (u in allowed))
                        if p == r - 1 and u != w and u in allowed:
                            wtheta = tuple(int(x) for x in act(w, WeightVector(tuple(Fraction(t, 2) for t in theta2))).coords)
                            col.predicate(
                                f"(2') r={r},w={w.images}",
                                diff == tuple(-2 * (r - 1) * x for x in wtheta),
                            )
                        counted += 1
    col.orders.append(["predicates evaluated", str(counted)])
    return (PASS if col.ok else FAIL), col, []


def p2_limit_single_sum(pp: int, T) -> QSeries:
    """sum_{i>=0} (-1)^i q^{(p'/2)(i^2+i) - i} (1 - q^{2i+1}) / ((1-q)^2 (1-q^2))."""
    T = Fraction(T)
    terms: dict[Fraction, int] = {}
    i = 0
    while True:
        e = Fraction(pp, 2) * (i * i + i) - i
        if e >= T:
            break
        s = (-1) ** i
        terms[e] = terms.get(e, 0) + s
        e2 = e + 2 * i + 1
        terms[e2] = terms.get(e2, 0) - s
        i += 1
    return div_prod_one_minus(QSeries(terms, T), [1, 1, 2], T)


def check_conjecture_p_lt_r(params: dict):
    T = Fraction(_need(params, "T", 60))
    target = Fraction(params.get("target", 20))
    nmax = int(params.get("n_max", 8))
    col = _Collector()
    notes = []
    cases = _pairs(params.get("cases", [[3, 2, 5], [4, 2, 5], [4, 3, 5], [5, 3, 4]]), "cases")
    for r, p, pp in cases:
        rhs = wchars.conjecture_rhs(r, p, pp, T)
        orders = []
        for n in range(1, nmax + 1):
            J, _, _ = invariants.jones_hat(r, p, pp, n)
            orders.append(col.order(f"r={r},p={p},pp={pp},n={n}", J.truncate(T), rhs))
        mono = all(a <= b for a, b in zip(orders, orders[1:]))
        col.predicate(f"r={r},p={p},pp={pp}: nondecreasing", mono, {"orders": [fmt_order(o) for o in orders]})
        col.predicate(
            f"r={r},p={p},pp={pp}: reaches target",
            orders[-1] >= target,
            {"order": fmt_order(orders[-1]), "target": str(target), "n": nmax},
        )
        if r == 3 and p == 2 and params.get("cross_check", True):
            col.equal(f"r=3,p=2,pp={pp}: conjecture vs proved limit", rhs, p2_limit_single_sum(pp, T))
            lim2 = div_prod_one_minus(
                (euler_product(T) * wchars.wchar_normalized(2, 2, pp, T)).truncate(T), [1, 1, 2], T
            )
            col.equal(f"r=3,p=2,pp={pp}: single sum vs character", p2_limit_single_sum(pp, T), lim2)
    notes.append("finite-colour evidence only; the limit statement itself is not established")
    return (PASS if col.ok else FAIL), col, notes


def check_lattice_facts(params: dict):
    col = _Collector()
    rmax = int(params.get("r_max", 5))
    nmax = int(params.get("n_max", 12))
    for r in range(2, rmax + 1):
        lam1 = fundamental_weight(r, 1)
        sets = {n: pi_weights(r, n) for n in range(nmax + r + 1)}
        for n in range(nmax + 1):
            ws = sets[n]
            card = len(ws) == math.comb(n + r - 1, r - 1) == len(set(ws))
            col.predicate(f"card r={r},n={n}", card, {"size": len(ws)})
            col.predicate(f"incl r={r},n={n}", set(ws) <= set(sets[n + r]))
            t = n % r
            coset = all((x - lam1 * t).in_root_lattice() for x in ws)
            col.predicate(f"coset r={r},n={n}", coset)
        # finite-range union: short vectors of each coset are reached by some colour
        for t in range(r):
            top = max(m for m in range(t, nmax + 1, r))
            union = set()
            for m in range(t, top + 1, r):
                union |= set(sets[m])
            short = coset_ball(r, lam1 * t, 1, None, 2)
            col.predicate(
                f"union r={r},t={t}",
                all(x in union for x in short),
                {"missing": [str(x) for x in short if x not in union][:3]},
            )
    col.orders.append(["facts checked", f"r<={rmax}, n<={nmax}"])
    return (PASS if col.ok else FAIL), col, []


CATALOG: dict[str, Callable[[dict], tuple]] = {
    "oracle_equiv": check_oracle_equiv,
    "thm_p2": check_thm_p2,
    "limit_agreement": check_limit_agreement,
    "zero_tail_probe": check_zero_tail_probe,
    "p_lt_r_vanishing": check_p_lt_r_vanishing,
    "r_eq_p_sign": check_r_eq_p_sign,
    "integrality": check_integrality,
    "cancellation_lemma": check_cancellation_lemma,
    "conjecture_p_lt_r": check_conjecture_p_lt_r,
    "lattice_facts": check_lattice_facts,
}


def check(check_id: str, params: dict | None = None) -> CheckReport:
    if check_id not in CATALOG:
        raise UnknownCheckError(f"unknown check {check_id!r}; known: {', '.join(CATALOG)}")
    params = dict(params or {})
    if not isinstance(params, dict):
        raise MalformedParamsError("params must be a mapping")
    t0 = time.perf_counter()
    try:
        status, col, notes = CATALOG[check_id](params)
    except (TypeError, KeyError) as exc:
        raise MalformedParamsError(f"{check_id}: {exc}") from exc
    ms = (time.perf_counter() - t0) * 1000
    return CheckReport(
        check_id=check_id,
        params=_jsonable(params),
        status=status,
        agreement_orders=col.orders,
        witnesses=col.witnesses,
        notes=notes,
        runtime_ms=round(ms, 3),
    )


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items())}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


# one entry per acceptance criterion; criterion 9 spans two checks
DESK_PROFILE: list[tuple[str, dict]] = [
    ("oracle_equiv", {"T": 40}),
    ("thm_p2", {"T": 60}),
    ("p_lt_r_vanishing", {"T": 100}),
    ("r_eq_p_sign", {"T": 60}),
    ("limit_agreement", {"T": 400, "k_max": 4}),
    ("integrality", {"k_max": 3}),
    ("conjecture_p_lt_r", {"T": 60, "n_max": 8, "target": 20}),
    ("zero_tail_probe", {"r": 3, "p": 3, "pp": 4, "a": 3, "b": 0, "n": [1, 2, 3, 4], "T": 60}),
    ("lattice_facts", {"r_max": 5, "n_max": 12}),
    ("cancellation_lemma", {"r_max": 5, "p_extra": 2}),
    ("character_normalization", {}),
]


def checkcharacter_normalization(params: dict):
    """Constant term 1 and integer coefficients for r <= p; trivial W_2(2,3)."""
    T = Fraction(params.get("T", 60))
    col = _Collector()
    for r, p, pp in _pairs(params.get("cases", [[2, 2, 3], [2, 3, 4], [3, 3, 4], [3, 4, 5]]), "cases"):
        s = wchars.wchar_normalized(r, p, pp, T)
        ok = s.coefficient(0) == 1 and s.ord == 0 and is_integral(s)
        col.orders.append([f"r={r},p={p},pp={pp}", "normalized" if ok else "not normalized"])
        col.predicate(f"r={r},p={p},pp={pp}", ok, {"trailing": str(s.ord)})
    col.equal("chi^{2,2,3} = 1", wchars.wchar_normalized(2, 2, 3, 100), QSeries.one(100))
    return (PASS if col.ok else FAIL), col, []


CATALOG["character_normalization"] = checkcharacter_normalization


def _run_one(item):
    cid, params = item
    return check(cid, params)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QINV_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(profile: str = "desk", workers: int | None = None) -> list[CheckReport]:
    if profile != "desk":
        raise ValueError(f"unknown profile {profile!r}")
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        return [_run_one(item) for item in DESK_PROFILE]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_run_one, DESK_PROFILE))
