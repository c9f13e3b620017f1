"""Unnormalized Satake transforms and determinant identities, symbolically.

Everything lives in Laurent polynomial rings over Z with a distinguished
variable v, where q = v^2.  The ambient ("G") side uses eigenvalue
variables Y_1..Y_{2n} (unitary case, symmetric under S_{2n}) or X_1..X_n
(real case, symmetric under the signed permutations); the Levi ("M") side
uses W_1..W_n and, in the unitary case, Z_1..Z_n for the conjugate place.
The two transforms are monomial substitutions

    unitary:  Y_i -> v^{-n} W_i,   Y_{n+j} -> v^{n} Z_j^{-1}
    real:     X_i -> v^{-(n+1)} W_i

which are ring homomorphisms; they are only applied to inputs carrying
their declared symmetry, and asymmetric input is rejected.

Hecke characteristic polynomials are monic with the interior convention
that the coefficient of (degree - i) is (-1)^i q^{i(i-1)/2} T_i, for the
T_i built from elementary symmetric functions.  The factorization checker
expands both sides of the determinant identity (transform of the ambient
characteristic polynomial versus the product of Levi polynomials and a
dual) with formal central twist units, and reports the first differing
monomial on failure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce


class SatakeCase(Enum):
    UNITARY = "unitary"  # split place of a unitary ambient group: places w and w^c
    REAL = "real"  # one real-quadratic place


# ------------------------------------------------------------------ symmetry


@dataclass(frozen=True)
class SymmetryTag:
    """Declared invariance of a polynomial.

    name "S": each block permuted freely.  "BC": one block permuted with
    exponent sign flips allowed (the hyperoctahedral action).  "trivial":
    no constraint.  Blocks are tuples of variable names.
    """

    name: str
    blocks: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if self.name not in ("S", "BC", "trivial"):
            raise ValueError(f"unknown symmetry {self.name!r}")
        if self.name == "BC" and len(self.blocks) != 1:
            raise ValueError("BC symmetry takes exactly one block")


TRIVIAL = SymmetryTag("trivial")


def _tag_generators(tag: SymmetryTag, variables: tuple[str, ...]):
    """Index maps generating the declared group action on exponent tuples."""
    gens = []
    for block in tag.blocks:
        pos = [variables.index(x) for x in block]
        for a, b in zip(pos, pos[1:]):
            gens.append(("swap", a, b))
    if tag.name == "BC":
        pos = variables.index(tag.blocks[0][0])
        gens.append(("flip", pos, pos))
    return gens


def _apply_gen(gen, exps: tuple[int, ...]) -> tuple[int, ...]:
    kind, a, b = gen
    out = list(exps)
    if kind == "swap":
        out[a], out[b] = out[b], out[a]
    else:
        out[a] = -out[a]
    return tuple(out)


# ---------------------------------------------------------------- the ring


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial over Z in an ordered variable tuple.

    Terms are kept sorted with no zero coefficients, so equal polynomials
    are equal dataclasses.  ``symmetry``, when present, is validated on
    construction and is otherwise inert; arithmetic returns untagged
    results.
    """

    variables: tuple[str, ...]
    terms: tuple[tuple[tuple[int, ...], int], ...]
    symmetry: SymmetryTag | None = field(default=None, compare=False)

    def __post_init__(self):
        width = len(self.variables)
        seen = set()
        last = None
        for exps, coeff in self.terms:
            if len(exps) != width:
                raise ValueError("term width disagrees with the variable tuple")
            if coeff == 0:
                raise ValueError("zero coefficients must be dropped")
            if exps in seen:
                raise ValueError("duplicate monomial")
            if last is not None and exps <= last:
                raise ValueError("terms must be strictly sorted")
            seen.add(exps)
            last = exps
        if self.symmetry is not None and self.symmetry.name != "trivial":
            table = dict(self.terms)
            for gen in _tag_generators(self.symmetry, self.variables):
                for exps, coeff in self.terms:
                    if table.get(_apply_gen(gen, exps)) != coeff:
                        raise ValueError("polynomial lacks its declared symmetry")

    # -- constructors

    @staticmethod
    def from_dict(variables, mapping, symmetry=None) -> "LaurentPoly":
        cleaned = tuple(sorted((tuple(e), c) for e, c in mapping.items() if c != 0))
        return LaurentPoly(tuple(variables), cleaned, symmetry)

    # -- queries

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def tagged(self, symmetry: SymmetryTag) -> "LaurentPoly":
        return LaurentPoly(self.variables, self.terms, symmetry)

    # -- arithmetic

    def _need_same_ring(self, other):
        if self.variables != other.variables:
            raise ValueError("polynomials live in different rings; align them first")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._need_same_ring(other)
        out = dict(self.terms)
        for exps, coeff in other.terms:
            out[exps] = out.get(exps, 0) + coeff
        return LaurentPoly.from_dict(self.variables, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, tuple((e, -c) for e, c in self.terms))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._need_same_ring(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly.from_dict(self.variables, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return invert_monomial(self) ** (-k)
        out = one(self.variables)
        for _ in range(k):
            out = out * self
        return out

    def scaled(self, c: int) -> "LaurentPoly":
        if c == 0:
            return zero(self.variables)
        return LaurentPoly(self.variables, tuple((e, c * k) for e, k in self.terms))


def zero(variables) -> LaurentPoly:
    return LaurentPoly(tuple(variables), ())


def one(variables) -> LaurentPoly:
    return monomial(variables, 1, {})


def monomial(variables, coeff: int, exps: dict[str, int]) -> LaurentPoly:
    variables = tuple(variables)
    unknown = set(exps) - set(variables)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    key = tuple(exps.get(x, 0) for x in variables)
    return LaurentPoly.from_dict(variables, {key: coeff})


def variable(name: str, variables) -> LaurentPoly:
    return monomial(variables, 1, {name: 1})


def align(p: LaurentPoly, variables) -> LaurentPoly:
    """Inject p into a larger ring containing all of its variables."""
    variables = tuple(variables)
    positions = []
    for x in p.variables:
        if x not in variables:
            raise ValueError(f"target ring is missing {x!r}")
        positions.append(variables.index(x))
    out: dict[tuple[int, ...], int] = {}
    for exps, coeff in p.terms:
        key = [0] * len(variables)
        for pos, e in zip(positions, exps):
            key[pos] = e
        out[tuple(key)] = coeff
    return LaurentPoly.from_dict(variables, out)


def invert_monomial(p: LaurentPoly) -> LaurentPoly:
    if not p.is_monomial or p.terms[0][1] not in (1, -1):
        raise ValueError("only +-1 monomials are invertible here")
    exps, coeff = p.terms[0]
    return LaurentPoly(p.variables, ((tuple(-e for e in exps), coeff),))


def substitute_monomials(p: LaurentPoly, variables, images: dict[str, LaurentPoly]) -> LaurentPoly:
    """Ring map sending each variable to a +-1 monomial of the target ring.

    Variables without an explicit image must exist in the target and map
    to themselves.
    """
    variables = tuple(variables)
    table = []
    for x in p.variables:
        img = images.get(x)
        if img is None:
            img = variable(x, variables)
        if img.variables != variables:
            img = align(img, variables)
        if not img.is_monomial or img.terms[0][1] not in (1, -1):
            raise ValueError(f"image of {x!r} must be a +-1 monomial")
        table.append(img.terms[0])
    out: dict[tuple[int, ...], int] = {}
    for exps, coeff in p.terms:
        key = [0] * len(variables)
        sign = 1
        for e, (img_exps, img_coeff) in zip(exps, table):
            if e:
                if img_coeff == -1 and e % 2:
                    sign = -sign
                for pos, ie in enumerate(img_exps):
                    key[pos] += e * ie
        key_t = tuple(key)
        out[key_t] = out.get(key_t, 0) + sign * coeff
    return LaurentPoly.from_dict(variables, out)


# ----------------------------------------------------------- symmetric bases


def elementary_symmetric(i: int, block, variables) -> LaurentPoly:
    """e_i of the named variables, inside the given ring.

    >>> elementary_symmetric(1, ("W1", "W2"), ("v", "W1", "W2")).terms
    (((0, 0, 1), 1), ((0, 1, 0), 1))
    """
    block = tuple(block)
    if not 0 <= i <= len(block):
        raise ValueError("index out of range")
    out = zero(variables)
    for subset in itertools.combinations(block, i):
        out = out + monomial(variables, 1, {x: 1 for x in subset})
    return out


def elementary_symmetric_of_monomials(i: int, monomials: list[LaurentPoly]) -> LaurentPoly:
    """e_i of an explicit multiset of monomials (used for the X_i^{+-1} pool)."""
    variables = monomials[0].variables
    out = zero(variables)
    for subset in itertools.combinations(range(len(monomials)), i):
        out = out + reduce(lambda a, b: a * b, (monomials[j] for j in subset), one(variables))
    return out


# ------------------------------------------------------------- Hecke symbols


def w_vars(n: int) -> tuple[str, ...]:
    return tuple(f"W{i}" for i in range(1, n + 1))


def z_vars(n: int) -> tuple[str, ...]:
    return tuple(f"Z{i}" for i in range(1, n + 1))


def y_vars(n: int) -> tuple[str, ...]:
    return tuple(f"Y{i}" for i in range(1, 2 * n + 1))


def x_vars(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1))


def unitary_g_ring(n: int) -> tuple[str, ...]:
    return ("v",) + y_vars(n)


def real_g_ring(n: int) -> tuple[str, ...]:
    return ("v",) + x_vars(n)


def unitary_m_ring(n: int, twist: bool = False) -> tuple[str, ...]:
    units = ("cw", "cwc") if twist else ()
    return ("v",) + units + w_vars(n) + z_vars(n)


def real_m_ring(n: int, twist: bool = False) -> tuple[str, ...]:
    units = ("cw",) if twist else ()
    return ("v",) + units + w_vars(n)


def t_m(i: int, n: int, block, variables) -> LaurentPoly:
    """The Levi Hecke symbol T_{M,i} = v^{i(n-i)} e_i.

    >>> t_m(1, 2, w_vars(2), ("v",) + w_vars(2)).terms
    (((1, 0, 1), 1), ((1, 1, 0), 1))
    """
    e = elementary_symmetric(i, block, variables)
    return (monomial(variables, 1, {"v": i * (n - i)}) * e).tagged(SymmetryTag("S", (tuple(block),)))


def t_g_unitary(i: int, n: int, variables=None) -> LaurentPoly:
    """T_{G,i} = v^{i(2n-i)} e_i(Y_1, ..., Y_{2n})."""
    variables = unitary_g_ring(n) if variables is None else tuple(variables)
    e = elementary_symmetric(i, y_vars(n), variables)
    return (monomial(variables, 1, {"v": i * (2 * n - i)}) * e).tagged(SymmetryTag("S", (y_vars(n),)))


def t_g_real(i: int, n: int, variables=None) -> LaurentPoly:
    """T_{G,i} = v^{i(2n+1-i)} e_i of the multiset {X_j^{+-1}} cup {1}.

    The i and 2n+1-i symbols agree (the multiset is closed under
    inversion), and T_{G,2n+1} = 1.
    """
    variables = real_g_ring(n) if variables is None else tuple(variables)
    pool = [monomial(variables, 1, {x: 1}) for x in x_vars(n)]
    pool += [monomial(variables, 1, {x: -1}) for x in x_vars(n)]
    pool.append(one(variables))
    e = elementary_symmetric_of_monomials(i, pool)
    return (monomial(variables, 1, {"v": i * (2 * n + 1 - i)}) * e).tagged(SymmetryTag("BC", (x_vars(n),)))


# -------------------------------------------------------------- char. polys


@dataclass(frozen=True)
class CharPoly:
    """A monic polynomial in an outer variable X with LaurentPoly coefficients.

    coeffs[j] multiplies X^j.
    """

    coeffs: tuple[LaurentPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty polynomial")
        lead = self.coeffs[-1]
        if lead != one(lead.variables):
            raise ValueError("characteristic polynomials must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def variables(self) -> tuple[str, ...]:
        return self.coeffs[0].variables

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [zero(self.variables) for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CharPoly(tuple(out))

    def aligned(self, variables) -> "CharPoly":
        return CharPoly(tuple(align(c, variables) for c in self.coeffs))

    def map_coeffs(self, f) -> "CharPoly":
        return CharPoly(tuple(f(c) for c in self.coeffs))

    def rescale(self, prefactor: LaurentPoly, x_scale: LaurentPoly) -> "CharPoly":
        """P(X) -> prefactor * P(x_scale * X), coefficientwise."""
        out = []
        for j, c in enumerate(self.coeffs):
            out.append(prefactor * x_scale**j * c)
        return CharPoly(tuple(out))


def linear_factor(variables, root: LaurentPoly) -> CharPoly:
    """X - root."""
    return CharPoly((-align(root, variables), one(variables)))


def char_poly_m(n: int, block, variables, twist: str | None = None) -> CharPoly:
    """The Levi characteristic polynomial at one place:

        X^n - T_1 X^{n-1} + ... + (-1)^i q^{i(i-1)/2} T_i X^{n-i} + ...

    With a twist unit c the polynomial is c^n P(c^{-1} X), which scales the
    X^{n-i} coefficient by c^i.
    """
    coeffs = [zero(variables) for _ in range(n + 1)]
    coeffs[n] = one(variables)
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        lead = monomial(variables, sign, {"v": i * (i - 1)})
        if twist is not None:
            lead = lead * monomial(variables, 1, {twist: i})
        coeffs[n - i] = lead * t_m(i, n, block, variables)
    return CharPoly(tuple(coeffs))


def dual_char_poly(P: CharPoly) -> CharPoly:
    """P^dual(X) = c_0^{-1} X^deg P(X^{-1}); needs a +-monomial constant term.

    An involution on its domain, with prod (X - a_i) mapping to
    prod (X - a_i^{-1}) for monomial roots.
    """
    c0 = P.coeffs[0]
    inv = invert_monomial(c0)  # raises unless the constant term is invertible
    return CharPoly(tuple(inv * c for c in reversed(P.coeffs)))


def char_poly_g(case: SatakeCase, n: int) -> CharPoly:
    """The ambient characteristic polynomial, of degree 2n or 2n + 1.

    Coefficient of X^{deg - i} is (-1)^i q^{i(i-1)/2} T_{G,i}.
    """
    if case is SatakeCase.UNITARY:
        deg, variables, t = 2 * n, unitary_g_ring(n), t_g_unitary
    else:
        deg, variables, t = 2 * n + 1, real_g_ring(n), t_g_real
    coeffs = [zero(variables) for _ in range(deg + 1)]
    coeffs[deg] = one(variables)
    for i in range(1, deg + 1):
        sign = -1 if i % 2 else 1
        lead = monomial(variables, sign, {"v": i * (i - 1)})
        coeffs[deg - i] = lead * t(i, n, variables)
    return CharPoly(tuple(coeffs))


# ------------------------------------------------------------ the transforms


def _require_symmetry(p: LaurentPoly, tag: SymmetryTag) -> None:
    p.tagged(tag)  # reuses the construction check; raises on asymmetric input


def satake_unitary(p: LaurentPoly, n: int) -> LaurentPoly:
    """Y_i -> v^{-n} W_i and Y_{n+j} -> v^n Z_j^{-1}, for S_{2n}-symmetric input.

    The output is symmetric in the W block and in the Z block separately.
    """
    if p.variables != unitary_g_ring(n):
        raise ValueError("expected a polynomial in v, Y_1..Y_{2n}")
    _require_symmetry(p, SymmetryTag("S", (y_vars(n),)))
    target = unitary_m_ring(n)
    images = {}
    for i in range(1, n + 1):
        images[f"Y{i}"] = monomial(target, 1, {"v": -n, f"W{i}": 1})
        images[f"Y{n+i}"] = monomial(target, 1, {"v": n, f"Z{i}": -1})
    out = substitute_monomials(p, target, images)
    return out.tagged(SymmetryTag("S", (w_vars(n), z_vars(n))))


def satake_real(p: LaurentPoly, n: int) -> LaurentPoly:
    """X_i -> v^{-(n+1)} W_i, for hyperoctahedrally symmetric input.

    The output is S_n-symmetric in the W block.
    """
    if p.variables != real_g_ring(n):
        raise ValueError("expected a polynomial in v, X_1..X_n")
    _require_symmetry(p, SymmetryTag("BC", (x_vars(n),)))
    target = real_m_ring(n)
    images = {f"X{i}": monomial(target, 1, {"v": -(n + 1), f"W{i}": 1}) for i in range(1, n + 1)}
    out = substitute_monomials(p, target, images)
    return out.tagged(SymmetryTag("S", (w_vars(n),)))


# -------------------------------------------------- the factorization checker


def poly_to_json(p: LaurentPoly) -> dict:
    return {
        "vars": list(p.variables),
        "monomials": [{"exps": list(exps), "vcoeff": coeff} for exps, coeff in p.terms],
    }


def _first_difference(lhs: CharPoly, rhs: CharPoly):
    for j, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            diff = a - b
            exps, coeff = diff.terms[0]
            return {
                "x_power": j,
                "monomial": {"exps": list(exps), "vcoeff": coeff},
                "vars": list(diff.variables),
            }
    return None


def verify_determinant_factorization(case: SatakeCase, n: int, twist: bool = True) -> dict:
    """Expand both sides of the determinant identity and compare exactly.

    Unitary (degree 2n, places w and w^c, guard n <= 3):

        satake(det) = P_w(X) * q^{n(2n-1)} P_{w^c}^dual(q^{1-2n} X)

    Real (degree 2n+1, one place, guard n <= 2):

        satake(det) = P_w(X) * q^{2n^2} P_w^dual(q^{-2n} X) * (X - q^n)

    With ``twist`` the W and Z variables are scaled by formal central
    units on the left, matched by the twisted Levi polynomials on the
    right.  Returns a report with the verdict, both sides, and the first
    differing monomial if any.
    """
    if case is SatakeCase.UNITARY and not 1 <= n <= 3:
        raise ValueError("unitary factorization is guarded to n <= 3")
    if case is SatakeCase.REAL and not 1 <= n <= 2:
        raise ValueError("real factorization is guarded to n <= 2")

    if case is SatakeCase.UNITARY:
        ring = unitary_m_ring(n, twist=twist)
        D = char_poly_g(case, n)
        lhs = CharPoly(tuple(satake_unitary(c, n) for c in D.coeffs)).aligned(ring)
        if twist:
            images = {f"W{i}": monomial(ring, 1, {"cw": 1, f"W{i}": 1}) for i in range(1, n + 1)}
            images |= {f"Z{i}": monomial(ring, 1, {"cwc": 1, f"Z{i}": 1}) for i in range(1, n + 1)}
            lhs = lhs.map_coeffs(lambda c: substitute_monomials(c, ring, images))
        p_w = char_poly_m(n, w_vars(n), ring, twist="cw" if twist else None)
        p_wc_dual = dual_char_poly(char_poly_m(n, z_vars(n), ring))
        prefactor = monomial(ring, 1, {"v": 2 * n * (2 * n - 1), "cwc": -n} if twist else {"v": 2 * n * (2 * n - 1)})
        x_scale = monomial(ring, 1, {"v": 2 * (1 - 2 * n), "cwc": 1} if twist else {"v": 2 * (1 - 2 * n)})
        rhs = p_w * p_wc_dual.rescale(prefactor, x_scale)
    else:
        ring = real_m_ring(n, twist=twist)
        D = char_poly_g(case, n)
        lhs = CharPoly(tuple(satake_real(c, n) for c in D.coeffs)).aligned(ring)
        if twist:
            images = {f"W{i}": monomial(ring, 1, {"cw": 1, f"W{i}": 1}) for i in range(1, n + 1)}
            lhs = lhs.map_coeffs(lambda c: substitute_monomials(c, ring, images))
        p_w = char_poly_m(n, w_vars(n), ring, twist="cw" if twist else None)
        p_w_dual = dual_char_poly(char_poly_m(n, w_vars(n), ring))
        prefactor = monomial(ring, 1, {"v": 4 * n * n, "cw": -n} if twist else {"v": 4 * n * n})
        x_scale = monomial(ring, 1, {"v": -4 * n, "cw": 1} if twist else {"v": -4 * n})
        middle = linear_factor(ring, monomial(ring, 1, {"v": 2 * n}))
        rhs = p_w * p_w_dual.rescale(prefactor, x_scale) * middle

    verdict = lhs.coeffs == rhs.coeffs
    return {
        "case": case.value,
        "n": n,
        "twist": twist,
        "degree": lhs.degree,
        "verdict": verdict,
        "lhs": [poly_to_json(c) for c in lhs.coeffs],
        "rhs": [poly_to_json(c) for c in rhs.coeffs],
        "first_difference": _first_difference(lhs, rhs),
    }


def unitary_n1_expansion() -> dict:
    """Both sides of the n = 1 unitary identity against (X - W_1)(X - q Z_1^{-1})."""
    ring = unitary_m_ring(1)
    expected = linear_factor(ring, variable("W1", ring)) * linear_factor(
        ring, monomial(ring, 1, {"v": 2, "Z1": -1})
    )
    report = verify_determinant_factorization(SatakeCase.UNITARY, 1, twist=False)
    expected_json = [poly_to_json(c) for c in expected.coeffs]
    ok = report["verdict"] and report["lhs"] == expected_json and report["rhs"] == expected_json
    return {"verdict": ok, "expected": expected_json, "factorization": report}


if __name__ == "__main__":
    import doctest

    doctest.testmod()
