"""The finite Heisenberg group of level 8 and its action on coordinates,
polynomials, and projective points.

Generators act on the coordinate ring by the substitutions

    shift:  x_i ↦ x_{i-1}          (indices mod 8)
    twist:  x_i ↦ ξ^{-i} · x_i     (ξ a primitive 8th root of unity)

Composition of substitutions gives the reordering rule twist∘shift =
ξ·(shift∘twist); every element has the normal form shift^a · twist^b · ξ^c
with a, b, c in Z/8.  The induced action on points of P⁷ is by the *inverse*
substitution, so that eval(g·q, g·v) = eval(q, v) holds exactly for every
polynomial q and point v; this adjoint contract pins down the direction
of the action.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ZeroPoint
from .exactmath import QI8
from .linalg import smith_normal_form
from .multipoly import SparsePoly, apply_variable_map


@dataclass(frozen=True)
class HeisenbergElement:
    """Normal form shift^a · twist^b · ξ^c, exponents stored mod 8."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % 8)
        object.__setattr__(self, "b", self.b % 8)
        object.__setattr__(self, "c", self.c % 8)

    @classmethod
    def identity(cls) -> "HeisenbergElement":
        return cls(0, 0, 0)

    def compose(self, other: "HeisenbergElement") -> "HeisenbergElement":
        """Normal form of self∘other as substitution automorphisms."""
        return HeisenbergElement(
            self.a + other.a,
            self.b + other.b,
            self.c + other.c + self.b * other.a,
        )

    __mul__ = compose

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.a, -self.b, self.a * self.b - self.c)

    def __pow__(self, e: int) -> "HeisenbergElement":
        if e < 0:
            return self.inverse() ** (-e)
        acc = HeisenbergElement.identity()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def commutes_with(self, other: "HeisenbergElement") -> bool:
        return self * other == other * self

    def substitution(self):
        """(perm, scalar exponents): x_i ↦ ξ^exps[i] · x_{perm[i]}."""
        perm = tuple((i - self.a) % 8 for i in range(8))
        exps = tuple((self.c - i * self.b) % 8 for i in range(8))
        return perm, exps

    def act_on_poly(self, poly: SparsePoly) -> SparsePoly:
        """Apply the substitution to a polynomial in 8 variables.

        Raises MissingRootOfUnity when a needed power of ξ does not exist in
        the coefficient field (only exponents 0 and 4 exist over QQ).
        """
        perm, exps = self.substitution()
        field = poly.ring.field
        scalars = [field.root_of_unity(k) for k in exps]
        return apply_variable_map(perm, scalars, poly)

    def act_on_point(self, v: "ProjPoint") -> "ProjPoint":
        """The inverse-substitution action on points of P⁷ (see module docstring)."""
        if len(v.coords) != 8:
            raise ZeroPoint("the group acts on points of P^7 (8 coordinates)")
        inv = self.inverse()
        field = v.field
        coords = []
        for i in range(8):
            src = v.coords[(i - inv.a) % 8]
            if not src:
                coords.append(field.zero)
                continue
            k = (inv.c - i * inv.b) % 8
            coords.append(src if k == 0 else field.root_of_unity(k) * src)
        return ProjPoint(field, coords)

    def __repr__(self):
        return f"shift^{self.a}*twist^{self.b}*zeta8^{self.c}"


SHIFT = HeisenbergElement(1, 0, 0)
TWIST = HeisenbergElement(0, 1, 0)
CENTRAL = HeisenbergElement(0, 0, 1)


def compose(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    return g.compose(h)


def enumerate_group():
    """All 512 normal forms."""
    return [
        HeisenbergElement(a, b, c)
        for a, b, c in itertools.product(range(8), range(8), range(8))
    ]


@dataclass(frozen=True)
class CenterAndQuotient:
    center: tuple
    quotient_order: int
    invariant_factors: tuple


def center_and_quotient() -> CenterAndQuotient:
    """Center by exhaustive commutation over all pairs; quotient structure from
    the kernel lattice of Z² → H/Z, (m, n) ↦ shift^m twist^n · Z."""
    elements = enumerate_group()
    center = tuple(g for g in elements if all(g.commutes_with(h) for h in elements))
    central = set(center)
    relations = [(8, 0), (0, 8)]
    for m, n in itertools.product(range(8), repeat=2):
        if (m, n) != (0, 0) and HeisenbergElement(m, n, 0) in central:
            relations.append((m, n))
    snf = smith_normal_form(relations)
    return CenterAndQuotient(
        center=center,
        quotient_order=512 // len(center),
        invariant_factors=snf.factors,
    )


class ProjPoint:
    """A point of projective space: homogeneous coordinates over one field,
    not all zero.  Equality is projective, decided by cross-multiplication;
    hashing goes through the canonical representative (first nonzero
    coordinate scaled to 1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        coerce = field.coerce
        self.field = field
        self.coords = tuple(coerce(v) for v in coords)
        if not any(self.coords):
            raise ZeroPoint("all homogeneous coordinates are zero")

    def canonical(self) -> tuple:
        lead = next(v for v in self.coords if v)
        inv = self.field.one / lead
        return tuple(v * inv for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.field != other.field or len(self.coords) != len(other.coords):
            return False
        a, b = self.coords, other.coords
        n = len(a)
        for i in range(n):
            for j in range(i + 1, n):
                if a[i] * b[j] != a[j] * b[i]:
                    return False
        return True

    def __hash__(self):
        return hash((self.field, self.canonical()))

    def __repr__(self):
        return "(" + " : ".join(repr(v) for v in self.coords) + ")"


def act_on_point(g: HeisenbergElement, v: ProjPoint) -> ProjPoint:
    return g.act_on_point(v)


def orbit(v: ProjPoint):
    """Distinct projective points of the group orbit (the center acts by
    scalars, so representatives shift^a twist^b suffice).  First-seen order."""
    seen = set()
    out = []
    for a, b in itertools.product(range(8), repeat=2):
        w = HeisenbergElement(a, b, 0).act_on_point(v)
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def orbit_over_cyclotomics(v: ProjPoint) -> list:
    """Orbit of a rational point taken over QQ(zeta8), where the full twist action exists."""
    lifted = ProjPoint(QI8, [QI8.coerce(c) for c in v.coords])
    return orbit(lifted)
