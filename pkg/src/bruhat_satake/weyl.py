"""Weyl groups of GL_{2n} and Sp_{2n} as permutations of {1, ..., 2n}.

The type A group is the full symmetric group S_{2n}.  The type C group is
the hyperoctahedral group, realized here as the centralizer in S_{2n} of
the fixed-point-free involution ``iota`` exchanging i and i+n.  Both carry
the parabolic mark I = S - {s_n} (the "Siegel" mark), and in both cases
the double cosets W_I \\ W / W_I are represented by the involutions

    sigma_k = (1, n+1)(2, n+2) ... (k, n+k),    k = 0, ..., n,

with sigma_0 the identity.  The statistic ``tau`` reads off which double
coset an element lies in.

>>> w = from_cycles(type_a(2), [(1, 3), (2, 4)])
>>> tau(w)
2
>>> canonical_rep(w) == sigma(type_a(2), 2)
True
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache


class Family(Enum):
    """Ambient reductive group: GL_{2n} (type A) or Sp_{2n} (type C)."""

    TYPE_A = "A"
    TYPE_C = "C"


@dataclass(frozen=True, order=True)
class GroupKind:
    family: Family
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    @property
    def ambient(self) -> int:
        """Size of the permuted set, 2n."""
        return 2 * self.n


def type_a(n: int) -> GroupKind:
    return GroupKind(Family.TYPE_A, n)


def type_c(n: int) -> GroupKind:
    return GroupKind(Family.TYPE_C, n)


def iota(i: int, n: int) -> int:
    """The involution i <-> i+n on {1, ..., 2n}.

    >>> [iota(i, 2) for i in (1, 2, 3, 4)]
    [3, 4, 1, 2]
    """
    return i + n if i <= n else i - n


@dataclass(frozen=True)
class WeylElement:
    """A permutation of {1, ..., 2n} in one-line notation.

    ``perm[i-1]`` is the image of i.  Type C elements must commute with
    ``iota``; this is checked on construction.
    """

    kind: GroupKind
    perm: tuple[int, ...]

    def __post_init__(self):
        m = self.kind.ambient
        if len(self.perm) != m or sorted(self.perm) != list(range(1, m + 1)):
            raise ValueError(f"perm must be a bijection of {{1,...,{m}}}")
        if self.kind.family is Family.TYPE_C:
            n = self.kind.n
            for i in range(1, m + 1):
                if self(iota(i, n)) != iota(self(i), n):
                    raise ValueError("type C element must centralize iota")

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (u * v)(i) = u(v(i)), so v acts first.
        if self.kind != other.kind:
            raise ValueError("cannot compose elements of different kinds")
        return WeylElement(self.kind, tuple(self(other(i)) for i in range(1, self.kind.ambient + 1)))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.kind.ambient
        for i, j in enumerate(self.perm, start=1):
            inv[j - 1] = i
        return WeylElement(self.kind, tuple(inv))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.kind.ambient + 1))

    def apply_to_set(self, members) -> frozenset[int]:
        return frozenset(self(i) for i in members)


def identity(kind: GroupKind) -> WeylElement:
    return WeylElement(kind, tuple(range(1, kind.ambient + 1)))


def from_cycles(kind: GroupKind, cycles) -> WeylElement:
    """Build an element from disjoint cycles of {1, ..., 2n}.

    >>> from_cycles(type_a(1), [(1, 2)]).perm
    (2, 1)
    """
    perm = list(range(1, kind.ambient + 1))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a - 1] = b
    return WeylElement(kind, tuple(perm))


def simple_reflections(kind: GroupKind) -> list[WeylElement]:
    """The simple reflections s_1, ..., s_{2n-1} (type A) or s_1, ..., s_n (type C).

    Type A: s_i = (i, i+1).  Type C: s_i = (i, i+1)(n+i, n+i+1) for i < n
    and s_n = (n, 2n).

    >>> [s.perm for s in simple_reflections(type_c(2))]
    [(2, 1, 4, 3), (1, 4, 3, 2)]
    """
    n = kind.n
    if kind.family is Family.TYPE_A:
        return [from_cycles(kind, [(i, i + 1)]) for i in range(1, 2 * n)]
    out = [from_cycles(kind, [(i, i + 1), (n + i, n + i + 1)]) for i in range(1, n)]
    out.append(from_cycles(kind, [(n, 2 * n)]))
    return out


def parabolic_mark(kind: GroupKind) -> list[WeylElement]:
    """Generators of W_I for the one fixed mark I = S - {s_n}."""
    refl = simple_reflections(kind)
    return refl[: kind.n - 1] + refl[kind.n :] if kind.family is Family.TYPE_A else refl[: kind.n - 1]


# The length table doubles as the group enumeration.  lru_cache gives a
# per-(family, n) table computed once; concurrent first calls may race to
# build it but always install equal values, which is safe under CPython.
@lru_cache(maxsize=None)
def _length_table(kind: GroupKind) -> dict[tuple[int, ...], int]:
    gens = [s.perm for s in simple_reflections(kind)]
    start = identity(kind).perm
    table = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for perm in frontier:
            for g in gens:
                # right multiplication: (w s)(i) = w(s(i))
                image = tuple(perm[g[i] - 1] for i in range(len(perm)))
                if image not in table:
                    table[image] = table[perm] + 1
                    nxt.append(image)
        frontier = nxt
    return table


def length(w: WeylElement) -> int:
    """Coxeter length, read off the Cayley graph of the simple reflections.

    >>> length(from_cycles(type_a(1), [(1, 2)]))
    1
    """
    return _length_table(w.kind)[w.perm]


def all_elements(kind: GroupKind) -> list[WeylElement]:
    """Every element of W, ordered by (length, one-line notation)."""
    table = _length_table(kind)
    return [WeylElement(kind, perm) for perm in sorted(table, key=lambda p: (table[p], p))]


@lru_cache(maxsize=None)
def _parabolic_perms(kind: GroupKind) -> frozenset[tuple[int, ...]]:
    gens = [s.perm for s in parabolic_mark(kind)]
    start = identity(kind).perm
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for perm in frontier:
            for g in gens:
                image = tuple(perm[g[i] - 1] for i in range(len(perm)))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return frozenset(seen)


def parabolic_elements(kind: GroupKind) -> list[WeylElement]:
    """Every element of W_I, ordered deterministically."""
    return [WeylElement(kind, perm) for perm in sorted(_parabolic_perms(kind))]


@lru_cache(maxsize=None)
def longest_element(kind: GroupKind) -> WeylElement:
    """The unique element of maximal length.

    Uniqueness is asserted rather than assumed; for type A the result also
    agrees with the closed form i -> 2n+1-i.

    >>> longest_element(type_a(1)).perm
    (2, 1)
    """
    table = _length_table(kind)
    top = max(table.values())
    winners = [perm for perm, ell in table.items() if ell == top]
    if len(winners) != 1:
        raise AssertionError("longest element is not unique, the kind data is corrupt")
    w0 = WeylElement(kind, winners[0])
    if not (w0 * w0).is_identity():
        raise AssertionError("longest element must be an involution")
    return w0


def tau(w: WeylElement) -> int:
    """Which double coset W_I w W_I the element lies in: n - |w({1..n}) cap {1..n}|.

    >>> tau(identity(type_c(3)))
    0
    """
    n = w.kind.n
    top = set(range(1, n + 1))
    return n - len(top & {w(i) for i in top})


def sigma(kind: GroupKind, k: int) -> WeylElement:
    """The double coset representative sigma_k = (1, n+1) ... (k, n+k)."""
    if not 0 <= k <= kind.n:
        raise ValueError("k must lie in 0..n")
    return from_cycles(kind, [(i, kind.n + i) for i in range(1, k + 1)])


def double_cosets(kind: GroupKind) -> list[WeylElement]:
    """Representatives [sigma_0, ..., sigma_n] of W_I \\ W / W_I, in tau order."""
    return [sigma(kind, k) for k in range(kind.n + 1)]


def canonical_rep(w: WeylElement) -> WeylElement:
    """The representative sigma_{tau(w)} of the double coset of w."""
    return sigma(w.kind, tau(w))


def delta(w: WeylElement) -> WeylElement:
    """Alias for the double coset label of w, as a canonical representative."""
    return canonical_rep(w)


def double_coset_partition(kind: GroupKind) -> list[frozenset[tuple[int, ...]]]:
    """Exhaustive W_I w W_I orbit partition of W, by BFS on both sides.

    Independent of ``tau``; used to certify that the sigma_k really do
    exhaust the double cosets.
    """
    gens = [s.perm for s in parabolic_mark(kind)]
    remaining = set(_length_table(kind))
    blocks = []
    while remaining:
        seed = min(remaining)
        block = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for perm in frontier:
                for g in gens:
                    for image in (
                        tuple(perm[g[i] - 1] for i in range(len(perm))),  # w s
                        tuple(g[perm[i] - 1] for i in range(len(perm))),  # s w
                    ):
                        if image not in block:
                            block.add(image)
                            nxt.append(image)
            frontier = nxt
        blocks.append(frozenset(block))
        remaining -= block
    return blocks


@dataclass(frozen=True)
class SubsetJ:
    """An n-element subset of {1, ..., 2n} indexing a complementary frame.

    Type A admits every n-subset.  Type C requires the lower part to
    determine the upper part: writing J_1 = J cap {1..n}, the admissible J
    are exactly those with J cap {n+1..2n} = {j : j - n not in J_1}.
    """

    kind: GroupKind
    members: frozenset[int]

    def __post_init__(self):
        n = self.kind.n
        if not self.members <= set(range(1, 2 * n + 1)):
            raise ValueError("members must lie in {1,...,2n}")
        if len(self.members) != n:
            raise ValueError("J must have exactly n members")
        if self.kind.family is Family.TYPE_C:
            lower = {j for j in self.members if j <= n}
            expected_upper = {j for j in range(n + 1, 2 * n + 1) if j - n not in lower}
            if {j for j in self.members if j > n} != expected_upper:
                raise ValueError("type C subset must pair off with its lower part")

    @property
    def lower(self) -> frozenset[int]:
        return frozenset(j for j in self.members if j <= self.kind.n)


def subset_j(kind: GroupKind, members) -> SubsetJ:
    return SubsetJ(kind, frozenset(members))


def all_subsets_j(kind: GroupKind) -> list[SubsetJ]:
    """Every admissible J, ordered by sorted member tuple.

    Type A has C(2n, n) of them, type C has 2^n.
    """
    n = kind.n
    if kind.family is Family.TYPE_A:
        pool = [frozenset(c) for c in itertools.combinations(range(1, 2 * n + 1), n)]
    else:
        pool = []
        for lower in itertools.chain.from_iterable(
            itertools.combinations(range(1, n + 1), k) for k in range(n + 1)
        ):
            upper = [j for j in range(n + 1, 2 * n + 1) if j - n not in lower]
            pool.append(frozenset(lower) | frozenset(upper))
    return [SubsetJ(kind, members) for members in sorted(pool, key=sorted)]


def w_j(J: SubsetJ) -> WeylElement:
    """The involution sending {1, ..., n} onto J.

    Members of J below n stay put; the rest of {1..n} is swapped, in
    order, with the members of J above n; everything else is fixed.

    >>> w_j(subset_j(type_a(2), {3, 4})).perm
    (3, 4, 1, 2)
    """
    n = J.kind.n
    moving = [i for i in range(1, n + 1) if i not in J.lower]
    targets = sorted(j for j in J.members if j > n)
    perm = list(range(1, 2 * n + 1))
    for a, b in zip(moving, targets):
        perm[a - 1], perm[b - 1] = b, a
    return WeylElement(J.kind, tuple(perm))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
