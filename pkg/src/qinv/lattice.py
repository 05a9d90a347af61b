"""Root-system data for sl_r in epsilon coordinates.

Weights are stored as exact rational coordinates on the orthonormal basis
eps_1..eps_r (coordinates summing to zero), so the trace form is the plain
dot product.  The Weyl group is the symmetric group acting by permuting
coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from . import kernels


class InvalidRankError(ValueError):
    pass


class LatticeMembershipError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeightVector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_frac(c) for c in self.coords)
        if len(coords) < 2:
            raise InvalidRankError(f"rank must be >= 2, got {len(coords)}")
        if sum(coords) != 0:
            raise ValueError(f"coordinates must sum to zero: {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, r: int) -> "WeightVector":
        return cls((Fraction(0),) * r)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "WeightVector") -> None:
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "WeightVector") -> "WeightVector":
        self._check(other)
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        self._check(other)
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "WeightVector":
        return WeightVector(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "WeightVector":
        k = _frac(k)
        return WeightVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        return inner(self, self)

    def scaled(self) -> tuple[int, ...]:
        """Integer coordinates r*eps_i (exact for elements of P_r)."""
        r = self.rank
        out = []
        for c in self.coords:
            v = c * r
            if v.denominator != 1:
                raise LatticeMembershipError(f"{self} is not in the weight lattice")
            out.append(v.numerator)
        return tuple(out)

    # membership predicates
    def in_weight_lattice(self) -> bool:
        r = self.rank
        if any((c * r).denominator != 1 for c in self.coords):
            return False
        # all coordinates must agree modulo 1
        c0 = self.coords[0]
        return all((c - c0).denominator == 1 for c in self.coords)

    def in_root_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return self.in_weight_lattice() and all(
            a >= b for a, b in zip(self.coords, self.coords[1:])
        )

    def is_regular_dominant(self) -> bool:
        return self.in_weight_lattice() and all(
            a > b for a, b in zip(self.coords, self.coords[1:])
        )

    def in_level(self, k: int) -> bool:
        """Dominant with (lambda, theta) <= k."""
        return self.is_dominant() and self.coords[0] - self.coords[-1] <= k

    def root_coords(self) -> tuple[Fraction, ...]:
        """Coefficients on the simple roots alpha_1..alpha_{r-1}."""
        out, acc = [], Fraction(0)
        for c in self.coords[:-1]:
            acc += c
            out.append(acc)
        return tuple(out)

    def fundamental_coords(self) -> tuple[Fraction, ...]:
        """Dynkin labels (lambda, alpha_i)."""
        return tuple(a - b for a, b in zip(self.coords, self.coords[1:]))

    def __repr__(self) -> str:
        return "WeightVector(" + ", ".join(str(c) for c in self.coords) + ")"


def inner(mu: WeightVector, nu: WeightVector) -> Fraction:
    mu._check(nu)
    return sum((a * b for a, b in zip(mu.coords, nu.coords)), Fraction(0))


def from_root_coords(coeffs: Sequence, r: int | None = None) -> WeightVector:
    coeffs = [_frac(a) for a in coeffs]
    r = len(coeffs) + 1 if r is None else r
    if len(coeffs) != r - 1:
        raise ValueError("need r-1 simple-root coefficients")
    coords = [Fraction(0)] * r
    for i, a in enumerate(coeffs):
        coords[i] += a
        coords[i + 1] -= a
    return WeightVector(tuple(coords))


def from_fundamental_coords(labels: Sequence, r: int | None = None) -> WeightVector:
    labels = [_frac(a) for a in labels]
    r = len(labels) + 1 if r is None else r
    if len(labels) != r - 1:
        raise ValueError("need r-1 fundamental-weight coefficients")
    out = WeightVector.zero(r)
    for i, a in enumerate(labels, start=1):
        if a:
            out = out + fundamental_weight(r, i) * a
    return out


def fundamental_weight(r: int, i: int) -> WeightVector:
    if not 1 <= i <= r - 1:
        raise ValueError(f"fundamental weight index {i} out of range for r={r}")
    return WeightVector(
        tuple(Fraction(r - i, r) if k < i else Fraction(-i, r) for k in range(r))
    )


def simple_root(r: int, i: int) -> WeightVector:
    coords = [0] * r
    coords[i - 1], coords[i] = 1, -1
    return WeightVector(tuple(coords))


def weyl_vector(r: int) -> WeightVector:
    return WeightVector(tuple(Fraction(r - 1 - 2 * k, 2) for k in range(r)))


@dataclass(frozen=True)
class PermutationElement:
    """A permutation w of {0..r-1}; ``images[i] = w(i)``.

    It acts on weights by eps_i -> eps_{w(i)}.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, r: int) -> "PermutationElement":
        return cls(tuple(range(r)))

    @classmethod
    def transposition(cls, r: int, i: int, j: int) -> "PermutationElement":
        """The transposition (i, j) with 1-based labels."""
        im = list(range(r))
        im[i - 1], im[j - 1] = im[j - 1], im[i - 1]
        return cls(tuple(im))

    @classmethod
    def cycle(cls, r: int, labels: Sequence[int]) -> "PermutationElement":
        """Cycle notation with 1-based labels: (a b c) sends a->b->c->a."""
        im = list(range(r))
        for a, b in zip(labels, list(labels[1:]) + [labels[0]]):
            im[a - 1] = b - 1
        return cls(tuple(im))

    @property
    def rank(self) -> int:
        return len(self.images)

    @property
    def length(self) -> int:
        im = self.images
        return sum(1 for i in range(len(im)) for j in range(i + 1, len(im)) if im[i] > im[j])

    @property
    def parity(self) -> int:
        return -1 if self.length % 2 else 1

    def __mul__(self, other: "PermutationElement") -> "PermutationElement":
        # (self * other)(i) = self(other(i))
        return PermutationElement(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "PermutationElement":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PermutationElement(tuple(inv))

    def __pow__(self, k: int) -> "PermutationElement":
        out = PermutationElement.identity(self.rank)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = base * out
        return out


def act(w: PermutationElement, mu: WeightVector) -> WeightVector:
    if w.rank != mu.rank:
        raise ValueError(f"rank mismatch: {w.rank} vs {mu.rank}")
    coords = [None] * mu.rank
    for i, c in enumerate(mu.coords):
        coords[w.images[i]] = c
    return WeightVector(tuple(coords))


def _check_rank(r: int) -> None:
    if not isinstance(r, int) or r < 2:
        raise InvalidRankError(f"rank must be an integer >= 2, got {r!r}")


@lru_cache(maxsize=None)
def weyl_elements(r: int) -> tuple[PermutationElement, ...]:
    _check_rank(r)
    return tuple(PermutationElement(p) for p in permutations(range(r)))


def longest_element(r: int) -> PermutationElement:
    return PermutationElement(tuple(range(r - 1, -1, -1)))


@dataclass(frozen=True)
class RootSystemData:
    rank: int
    simple_roots: tuple[WeightVector, ...]
    fundamental_weights: tuple[WeightVector, ...]
    weyl_vector: WeightVector
    positive_roots: tuple[WeightVector, ...]
    highest_root: WeightVector
    longest_element: PermutationElement


@lru_cache(maxsize=None)
def root_system(r: int) -> RootSystemData:
    _check_rank(r)
    positive = []
    for i in range(r):
        for j in range(i + 1, r):
            coords = [0] * r
            coords[i], coords[j] = 1, -1
            positive.append(WeightVector(tuple(coords)))
    return RootSystemData(
        rank=r,
        simple_roots=tuple(simple_root(r, i) for i in range(1, r)),
        fundamental_weights=tuple(fundamental_weight(r, i) for i in range(1, r)),
        weyl_vector=weyl_vector(r),
        positive_roots=tuple(positive),
        highest_root=WeightVector(tuple([1] + [0] * (r - 2) + [-1])),
        longest_element=longest_element(r),
    )


def pi_weights(r: int, n: int) -> list[WeightVector]:
    """Weights of L_r(n*Lambda_1), lexicographic in (a_1, ..., a_{r-1})."""
    _check_rank(r)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    top = fundamental_weight(r, 1) * n
    out = []
    for a in _decreasing_tuples(n, r - 1):
        out.append(top - from_root_coords(a, r))
    return out


def _decreasing_tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # n >= a_1 >= ... >= a_k >= 0, lexicographic
    if k == 0:
        yield ()
        return
    for a in range(n + 1):
        for rest in _decreasing_tuples(a, k - 1):
            yield (a,) + rest


class _Boundary:
    """Marker for weights on a Weyl chamber wall (alternating sums vanish)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Boundary"


Boundary = _Boundary()


def dominant_reduce(nu: WeightVector):
    """Return (u, nu_dom) with u*nu_dom = nu and nu_dom strictly dominant,
    or ``Boundary`` when two coordinates coincide."""
    if not nu.in_weight_lattice():
        raise LatticeMembershipError(f"{nu} is not in the weight lattice")
    c = nu.coords
    if len(set(c)) < len(c):
        return Boundary
    order = sorted(range(len(c)), key=lambda i: c[i], reverse=True)
    # nu_dom_k = c[order[k]], and u sends k -> order[k]
    u = PermutationElement(tuple(order))
    return u, WeightVector(tuple(c[i] for i in order))


def lemma_w_for_mu(mu: WeightVector) -> tuple[PermutationElement, WeightVector]:
    """Find w and lambda in Q_r with r*mu - delta + w*delta = r*lambda.

    Writes mu = Lambda_k + (root lattice element) and takes w = sigma^k with
    sigma the cycle (r, 1, 2, ..., r-1).
    """
    if not mu.in_weight_lattice():
        raise LatticeMembershipError(f"{mu} is not in the weight lattice")
    r = mu.rank
    # class of mu in P/Q is r * coord_1 mod r  (Lambda_k has coord_1 = (r-k)/r)
    k = (-(mu.coords[0] * r).numerator) % r
    sigma = PermutationElement.cycle(r, [r] + list(range(1, r)))
    w = sigma ** k
    delta = weyl_vector(r)
    lam = (mu * r - delta + act(w, delta)) * Fraction(1, r)
    if not lam.in_root_lattice():
        raise AssertionError(f"lemma construction failed for {mu}")
    return w, lam


def _ball_radius(c: Fraction, vnorm: float, T: Fraction) -> float | None:
    disc = vnorm * vnorm + 4 * float(c) * float(T)
    if disc < 0:
        return None
    return (vnorm + math.sqrt(disc)) / (2 * float(c))


def _box(r: int, mu: WeightVector, R: float) -> tuple[list[int], list[int]]:
    # a_i = (alpha - mu, Lambda_i) and |(alpha, Lambda_i)| <= R * |Lambda_i|
    lo, hi = [], []
    for i in range(1, r):
        lam = fundamental_weight(r, i)
        shift = float(inner(mu, lam))
        span = R * math.sqrt(float(lam.norm2())) + 1.0
        lo.append(math.floor(-shift - span))
        hi.append(math.ceil(-shift + span))
    return lo, hi


def _integerize(values: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for v in values:
        den = math.lcm(den, _frac(v).denominator)
    return [int(_frac(v) * den) for v in values], den


def _scaled_ball(r: int, mu: WeightVector, c, v: WeightVector | None, T, R: float):
    """Scaled coordinates r*alpha of every alpha in Q_r + mu inside the
    radius-R box, filtered exactly by c|alpha|^2 + (alpha, v) <= T."""
    c, T = _frac(c), _frac(T)
    v = WeightVector.zero(r) if v is None else v
    lo, hi = _box(r, mu, R)
    # scaled coords P = r*alpha: c|alpha|^2 + (alpha,v) = (c|P|^2 + r(P,v)) / r^2
    vals, den = _integerize([c] + [x * r for x in v.coords] + [T * r * r])
    qn, lin, bound = vals[0], vals[1:-1], vals[-1]
    base = list(mu.scaled())
    basis = [list(simple_root(r, i).scaled()) for i in range(1, r)]
    return kernels.box_points(
        np.asarray(base, dtype=np.int64),
        np.asarray(basis, dtype=np.int64).reshape(r - 1, r),
        np.asarray(lo, dtype=np.int64),
        np.asarray(hi, dtype=np.int64),
        qn,
        np.asarray(lin, dtype=np.int64),
        bound,
    )


def coset_ball(r: int, mu: WeightVector, c, v: WeightVector | None, T) -> list[WeightVector]:
    """All alpha in Q_r + mu with c*|alpha|^2 + (alpha, v) <= T.

    Ordered lexicographically by simple-root coordinates relative to mu.
    """
    _check_rank(r)
    c = _frac(c)
    if c <= 0:
        raise ValueError(f"quadratic coefficient must be positive, got {c}")
    if not mu.in_weight_lattice():
        raise LatticeMembershipError(f"{mu} is not in the weight lattice")
    v = WeightVector.zero(r) if v is None else v
    R = _ball_radius(c, math.sqrt(float(v.norm2())), _frac(T))
    if R is None:
        return []
    pts = _scaled_ball(r, mu, c, v, T, R)
    return [WeightVector(tuple(Fraction(int(x), r) for x in row)) for row in pts]


def coset_points_scaled(r: int, mu: WeightVector, c, vnorm_bound: float, T) -> np.ndarray:
    """Scaled points r*alpha, alpha in Q_r + mu, with c|alpha|^2 - |alpha| vb <= T.

    Superset of every ``coset_ball(r, mu, c, v, T)`` with |v| <= vb; used when
    the linear term varies per Weyl element.
    """
    c = _frac(c)
    R = _ball_radius(c, vnorm_bound, _frac(T))
    if R is None:
        return np.zeros((0, r), dtype=np.int64)
    # exact filter |alpha|^2 <= R^2 (rounded up)
    r2 = Fraction(math.ceil(R * R * 1024) + 1, 1024)
    return _scaled_ball(r, mu, 1, None, r2, R)
