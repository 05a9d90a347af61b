"""Characters of the principal W-algebras W_r(p, p') as lattice sums.

The normalized (and mu-shifted) character is

    (q;q)_inf^{-(r-1)} sum_{alpha in Q_r + mu} sum_{sigma in S_r} (-1)^{l(sigma)}
        q^{(pp'/2)|alpha|^2 - p'(alpha, xi+delta) + p(alpha, sigma(zeta+delta))
          - (xi+delta, sigma(zeta+delta) - (zeta+delta))}

The sum over the coset is made finite by enumerating a ball that provably
contains every point with exponent below the truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import NonCoprimeError
from .lattice import (
    PermutationElement,
    WeightVector,
    act,
    coset_points_scaled,
    fundamental_weight,
    inner,
    lemma_w_for_mu,
    root_system,
    weyl_elements,
)
from .lattice_sums import signed_quadratic_sum
from .qseries import QSeries, div_prod_one_minus, euler_product


@dataclass(frozen=True)
class WCharParams:
    r: int
    p: int
    pp: int
    xi: WeightVector | None = None
    zeta: WeightVector | None = None
    mu: WeightVector | None = None

    def __post_init__(self):
        if math.gcd(self.p, self.pp) != 1:
            raise NonCoprimeError(f"gcd({self.p}, {self.pp}) != 1")
        zero = WeightVector.zero(self.r)
        for name in ("xi", "zeta", "mu"):
            v = getattr(self, name)
            if v is None:
                object.__setattr__(self, name, zero)
            elif v.rank != self.r:
                raise ValueError(f"{name} has rank {v.rank}, expected {self.r}")
        if not self.xi.is_dominant() or not self.zeta.is_dominant():
            raise ValueError("xi and zeta must be dominant integral weights")
        if not self.mu.in_weight_lattice():
            raise ValueError(f"shift {self.mu} is not in the weight lattice")

    def in_admissible_range(self) -> bool:
        """Whether (xi, zeta) label a genuine module (r <= p, p')."""
        r = self.r
        return (
            r <= self.p
            and r <= self.pp
            and self.xi.in_level(self.p - r)
            and self.zeta.in_level(self.pp - r)
        )


def _sigma_data(prm: WCharParams):
    r, p, pp = prm.r, prm.p, prm.pp
    d = root_system(r).weyl_vector
    xd = prm.xi + d
    zd = prm.zeta + d
    sigmas = weyl_elements(r)
    linears, consts, signs = [], [], []
    for s in sigmas:
        sz = act(s, zd)
        linears.append(sz * p - xd * pp)
        consts.append(-inner(xd, sz - zd))
        signs.append(s.parity)
    vb = pp * math.sqrt(float(xd.norm2())) + p * math.sqrt(float(zd.norm2()))
    return sigmas, linears, consts, signs, vb


def lattice_sum(prm: WCharParams, T) -> QSeries:
    """The double sum over Q_r + mu and S_r, without the (q;q) factor."""
    sigmas, linears, consts, signs, vb = _sigma_data(prm)
    c = Fraction(prm.p * prm.pp, 2)
    pts = coset_points_scaled(prm.r, prm.mu, c, vb, Fraction(T) - min(consts))
    return signed_quadratic_sum(pts, prm.r, c, linears, consts, signs, T)


def gamma_sums(prm: WCharParams, T) -> dict[PermutationElement, QSeries]:
    """Per-permutation pieces of ``lattice_sum`` (diagnostics)."""
    sigmas, linears, consts, signs, vb = _sigma_data(prm)
    c = Fraction(prm.p * prm.pp, 2)
    pts = coset_points_scaled(prm.r, prm.mu, c, vb, Fraction(T) - min(consts))
    return {
        s: signed_quadratic_sum(pts, prm.r, c, [L], [k], [g], T)
        for s, L, k, g in zip(sigmas, linears, consts, signs)
    }


def wchar_shifted(r, p, pp, T, xi=None, zeta=None, mu=None) -> QSeries:
    prm = WCharParams(r, p, pp, xi, zeta, mu)
    T = Fraction(T)
    return lattice_sum(prm, T).div_by_unit(euler_product(T) ** (r - 1))


def wchar_normalized(r, p, pp, T, xi=None, zeta=None) -> QSeries:
    return wchar_shifted(r, p, pp, T, xi=xi, zeta=zeta)


def _weyl_exponents(r: int) -> list[int]:
    if r < 2:
        return []
    rs = root_system(r)
    return [int(inner(a, rs.weyl_vector)) for a in rs.positive_roots]


def limit_rhs(r, p, pp, j, T) -> QSeries:
    """(q;q)^{r-1} / prod_{alpha>0}(1 - q^{(alpha,delta)}) times the
    j*Lambda_1-shifted vacuum character."""
    if not 0 <= j <= r - 1:
        raise ValueError(f"j must lie in 0..{r - 1}, got {j}")
    mu = fundamental_weight(r, 1) * j if j else None
    prm = WCharParams(r, p, pp, mu=mu)
    T = Fraction(T)
    # the (q;q)^{r-1} factors cancel against the character's denominator
    return div_prod_one_minus(lattice_sum(prm, T), _weyl_exponents(r), T)


def conjecture_rhs(r, p, pp, T) -> QSeries:
    """prod_{Phi+_{r-p}}(1 - q^{(alpha,delta_{r-p})}) / prod_{Phi+_r}(1 - q^{(alpha,delta_r)})
    times (q;q)^{p-1} chi^{p,p,p'}_{0,0}."""
    if not 2 <= p <= r:
        raise ValueError(f"need 2 <= p <= r, got p={p}, r={r}")
    if math.gcd(p, pp) != 1:
        raise NonCoprimeError(f"gcd({p}, {pp}) != 1")
    T = Fraction(T)
    base = lattice_sum(WCharParams(p, p, pp), T)
    top = QSeries.one()
    for h in _weyl_exponents(r - p):
        top = top * QSeries({0: 1, h: -1})
    return div_prod_one_minus((base * top).truncate(T), _weyl_exponents(r), T)


def shift_sign(mu: WeightVector) -> int:
    """Sign relating the mu-shifted and unshifted characters when r = p."""
    w, _ = lemma_w_for_mu(mu)
    return w.parity


def min_degree(s: QSeries):
    """Trailing exponent (reported, not interpreted)."""
    return s.ord
