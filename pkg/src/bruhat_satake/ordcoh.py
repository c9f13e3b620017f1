"""Koszul cohomology of Z_p^d over Z/p^r, corestriction, and ordinary parts.

The cohomology of Z_p^d with coefficients in Lambda = Z/p^r (trivial
action) is an exterior algebra: H^i is free of rank C(d, i) with basis
the i-subsets of {1..d}.  The rank-one building block is modeled at a
finite level p^a by the circulant difference operator on functions
Z/p^a -> Lambda, whose kernel is the constants and whose cokernel is
generated by a delta function; summing over the fiber (corestriction)
induces multiplication by p^a in degree 0 and by 1 in degree 1.  Kunneth
then makes the corestriction act on H^i by p^{a(d-i)}, so the Hecke
operator at gamma (corestriction composed with the trivial translation)
is ordinary exactly in top degree.

Projectors onto the ordinary part are computed as idempotent limits of
matrix powers: any idempotent power U^N is automatically the limit
projector, and a closed-form exponent certifies termination when small
factorials miss the multiplicative order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

KOSZUL_DEGREE_GUARD = 12


@dataclass(frozen=True)
class Lambda:
    """The coefficient ring Z/p^r."""

    p: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("exponent must be >= 1")
        if self.p < 2 or any(self.p % d == 0 for d in range(2, self.p)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def modulus(self) -> int:
        return self.p**self.r


def _binom(d: int, i: int) -> int:
    return math.comb(d, i)


def _subsets(d: int, i: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, d + 1), i))


@dataclass(frozen=True)
class GradedCohomology:
    """Ranks and subset bases of H^*(Z_p^d, Lambda)."""

    d: int
    lam: Lambda
    ranks: tuple[int, ...]
    bases: tuple[tuple[tuple[int, ...], ...], ...]


def koszul_cohomology(d: int, lam: Lambda) -> GradedCohomology:
    """H^i free of rank C(d, i) with basis the i-subsets of {1..d}.

    >>> koszul_cohomology(3, Lambda(2, 2)).ranks
    (1, 3, 3, 1)
    """
    if not 0 <= d <= KOSZUL_DEGREE_GUARD:
        raise ValueError(f"degree {d} outside the guarded range")
    ranks = tuple(_binom(d, i) for i in range(d + 1))
    bases = tuple(tuple(_subsets(d, i)) for i in range(d + 1))
    return GradedCohomology(d, lam, ranks, bases)


def koszul_differentials(d: int, lam: Lambda, unit_weights) -> list[np.ndarray]:
    """The Koszul differentials for the action where generator j scales by u_j.

    d(e_S) = sum over j not in S of (-1)^{#{s in S : s < j}} (u_j - 1) e_{S + j}.
    Trivial weights give identically zero maps; the maps square to zero
    for any weights.
    """
    if not 0 <= d <= KOSZUL_DEGREE_GUARD:
        raise ValueError(f"degree {d} outside the guarded range")
    units = [int(u) % lam.modulus for u in unit_weights]
    if len(units) != d:
        raise ValueError(f"expected {d} unit weights")
    if any(u % lam.p == 0 for u in units):
        raise ValueError("weights must be units")
    out = []
    for i in range(d):
        src, dst = _subsets(d, i), _subsets(d, i + 1)
        index = {T: row for row, T in enumerate(dst)}
        mat = np.zeros((len(dst), len(src)), dtype=np.int64)
        for col, S in enumerate(src):
            for j in range(1, d + 1):
                if j in S:
                    continue
                sign = -1 if sum(1 for s in S if s < j) % 2 else 1
                T = tuple(sorted(S + (j,)))
                mat[index[T], col] = sign * (units[j - 1] - 1) % lam.modulus
        out.append(mat)
    return out


# --------------------------------------------------------- rank-one building


@dataclass(frozen=True)
class Rank1Cores:
    """The level-p^a model of the rank-one tower with its corestriction.

    delta is the circulant (Df)_x = f_{x+1} - f_x on Lambda^{p^a};
    cores_row sums a function over the fiber.  deg0 and deg1 are the maps
    induced on H^0 (constants) and H^1 (class of a delta function).
    """

    a: int
    lam: Lambda
    delta: np.ndarray
    cores_row: np.ndarray
    deg0: np.ndarray
    deg1: np.ndarray


def cores_rank1(a: int, lam: Lambda) -> Rank1Cores:
    if a < 1:
        raise ValueError("level exponent must be >= 1")
    size, mod = lam.p**a, lam.modulus
    shift = np.zeros((size, size), dtype=np.int64)
    for x in range(size):
        shift[x, (x + 1) % size] = 1
    delta = (shift - np.eye(size, dtype=np.int64)) % mod
    cores_row = np.ones((1, size), dtype=np.int64)
    constants = np.ones((size, 1), dtype=np.int64)
    deg0 = (cores_row @ constants) % mod  # the constant 1 sums to p^a
    delta_fn = np.zeros((size, 1), dtype=np.int64)
    delta_fn[0, 0] = 1
    deg1 = (cores_row @ delta_fn) % mod  # [delta_0] |-> 1, since im D is killed
    return Rank1Cores(a, lam, delta, cores_row, deg0, deg1)


def cores_kunneth(d: int, a: int, lam: Lambda) -> list[np.ndarray]:
    """The corestriction on H^i(Z_p^d) at level p^a: diagonal, entry
    deg1^i * deg0^{d-i} = p^{a(d-i)} on every subset basis vector."""
    coh = koszul_cohomology(d, lam)
    rank1 = cores_rank1(a, lam)
    d0 = int(rank1.deg0[0, 0])
    d1 = int(rank1.deg1[0, 0])
    mod = lam.modulus
    out = []
    for i in range(d + 1):
        entry = pow(d1, i, mod) * pow(d0, d - i, mod) % mod
        out.append((entry * np.eye(coh.ranks[i], dtype=np.int64)) % mod)
    return out


def hecke_gamma(d: int, a: int, lam: Lambda) -> list[np.ndarray]:
    """The Hecke operator at gamma in every degree.

    Multiplication by gamma is the identity on this model (the
    coefficients carry no twist), so the operator is the corestriction.
    """
    return cores_kunneth(d, a, lam)


# ---------------------------------------------------------------- projectors


def _matpow_mod(U: np.ndarray, n: int, mod: int) -> np.ndarray:
    out = np.eye(U.shape[0], dtype=np.int64) % mod
    base = U % mod
    while n:
        if n & 1:
            out = (out @ base) % mod
        base = (base @ base) % mod
        n >>= 1
    return out


def _stable_exponent(size: int, lam: Lambda) -> int:
    """An N with U^N idempotent for every U: N >= r*size kills the
    topologically nilpotent part, and the multiplicative order of the
    invertible part divides p^{r-1+ceil(log_p size)} * lcm(p^j - 1)."""
    p, r = lam.p, lam.r
    log_ceil = 0
    while p**log_ceil < size:
        log_ceil += 1
    period = p ** (r - 1 + log_ceil) * math.lcm(*(p**j - 1 for j in range(1, size + 1)))
    reach = r * size
    return period * max(1, -(reach // -period))


def ordinary_limit(U: np.ndarray, lam: Lambda) -> tuple[np.ndarray, int]:
    """(e, N) with e = U^N the idempotent limit projector.

    Small factorial powers are tried first; an idempotent power is always
    the limit (it lies in the eventual cycle, whose only idempotent is
    its identity).  If no factorial up to 20! works, a closed-form
    exponent does.
    """
    mod = lam.modulus
    U = np.asarray(U, dtype=np.int64) % mod
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("expected a square matrix")
    a = U.copy()
    n = 1
    for k in range(1, 21):
        if k > 1:
            a = _matpow_mod(a, k, mod)
            n *= k
        if ((a @ a) % mod == a).all():
            return a, n
    n = _stable_exponent(U.shape[0], lam)
    e = _matpow_mod(U, n, mod)
    if ((e @ e) % mod != e).any():
        raise AssertionError("stable exponent failed to produce an idempotent")
    return e, n


def ordinary_projector(U: np.ndarray, lam: Lambda) -> np.ndarray:
    return ordinary_limit(U, lam)[0]


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank of the mod-p reduction, by elimination over F_p."""
    work = (np.asarray(mat, dtype=np.int64) % p).copy()
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if work[r, col] % p), None)
        if pivot is None:
            continue
        work[[rank, pivot]] = work[[pivot, rank]]
        inv = pow(int(work[rank, col]), p - 2, p)
        work[rank] = work[rank] * inv % p
        for r in range(rows):
            if r != rank and work[r, col]:
                work[r] = (work[r] - work[r, col] * work[rank]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def ordinary_part_of_hecke_gamma(d: int, lam: Lambda, a: int = 2) -> tuple[int, ...]:
    """Mod-p ranks of the ordinary projectors of the Hecke operator,
    degree by degree: (0, ..., 0, 1)."""
    ranks = []
    for U in hecke_gamma(d, a, lam):
        e = ordinary_projector(U, lam)
        ranks.append(rank_mod_p(e, lam.p))
    return tuple(ranks)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
