"""Construction-specific certificates: the quadric system attached to a base
point of the minus plane, its singular orbit, the Moore-matrix/Pfaffian
pipeline, the plane-quartic image of the conic map, and the topology numbers
of a (2,2,2,2) complete intersection in P⁷.

Conventions fixed here once and regression-tested:

* the minus plane P²₋ ⊂ P⁷ is x0 = x1+x7 = x2+x6 = x3+x5 = x4 = 0, and the
  plane point (a : b : c) embeds as (0 : a : b : c : 0 : -c : -b : -a);
* the 4×4 Moore matrix has entries x_{i+j}·y_{i-j} + x_{i+j+4}·y_{i-j+4},
  indices mod 8; its restriction to the minus plane substitutes into the
  x-slot; interchanging rows 1 and 3 (0-based) of the restriction makes it
  skew-symmetric;
* with the Pfaffian convention m01·m23 − m02·m13 + m03·m12, the restricted
  skew matrix has Pfaffian exactly  w0·A + w1·B + w2·C  (recorded sign +1),
  where w0 = 2·x1·x3, w1 = −x2², w2 = x1²+x3² and A, B, C are the conic-plane
  pullbacks A = (y1²−y3²+y5²−y7²)/2, B = (y0−y4)(y2−y6), C = y3·y7−y1·y5.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import (
    BadPrime,
    DegeneratePoint,
    PointNotOnVariety,
    SmoothnessUndetermined,
    UnluckyPrime,
    ZeroPoint,
)
from .exactmath import GF, QI8, QQ, embed_cyclo_mod_p, find_order8_root, is_prime
from .heisenberg import SHIFT, TWIST, HeisenbergElement, ProjPoint, orbit
from .linalg import Matrix, MembershipProblem, graded_membership
from .multipoly import (
    PolyMatrix,
    PolyRing,
    SparsePoly,
    TruncatedSeries,
    apply_variable_map,
    ci_invariants,
    pfaffian4,
)

X_NAMES = tuple(f"x{i}" for i in range(8))
Y_NAMES = tuple(f"y{i}" for i in range(8))
PLANE_NAMES = ("y1", "y2", "y3")
CONIC_NAMES = ("w0", "w1", "w2")

RECORDED_PFAFFIAN_SIGN = 1


@lru_cache(maxsize=None)
def x_ring(field) -> PolyRing:
    return PolyRing(field, X_NAMES)


@lru_cache(maxsize=None)
def plane_ring(field) -> PolyRing:
    return PolyRing(field, PLANE_NAMES)


@lru_cache(maxsize=None)
def xy_ring() -> PolyRing:
    return PolyRing(QQ, X_NAMES + Y_NAMES)


@lru_cache(maxsize=None)
def y_ring() -> PolyRing:
    return PolyRing(QQ, Y_NAMES)


@lru_cache(maxsize=None)
def conic_ring() -> PolyRing:
    return PolyRing(QQ, CONIC_NAMES)


# ---------------------------------------------------------------------------
# the quadric system of a base point


@dataclass(frozen=True)
class MinusPlanePoint:
    """A point (y1 : y2 : y3) of the minus plane, over any coefficient field."""

    field: object
    y1: object
    y2: object
    y3: object

    def __post_init__(self):
        for name in ("y1", "y2", "y3"):
            object.__setattr__(self, name, self.field.coerce(getattr(self, name)))
        if not (self.y1 or self.y2 or self.y3):
            raise ZeroPoint("minus-plane point with all coordinates zero")

    @classmethod
    def rational(cls, y1, y2, y3) -> "MinusPlanePoint":
        return cls(QQ, Fraction(y1), Fraction(y2), Fraction(y3))

    @property
    def coords(self):
        return (self.y1, self.y2, self.y3)

    def embed(self) -> ProjPoint:
        y1, y2, y3 = self.coords
        return ProjPoint(self.field, (self.field.zero, y1, y2, y3, self.field.zero, -y3, -y2, -y1))

    def to_field(self, field) -> "MinusPlanePoint":
        return MinusPlanePoint(field, *(field.coerce(c) for c in self.coords))

    def plane_point(self, field=None) -> ProjPoint:
        f = field if field is not None else self.field
        return ProjPoint(f, [f.coerce(c) for c in self.coords])


def standard_quadrics(field):
    """The three base quadrics x0²+x4², x1·x7+x3·x5, x2·x6."""
    ring = x_ring(field)
    x = ring.gens()
    return (x[0] ** 2 + x[4] ** 2, x[1] * x[7] + x[3] * x[5], x[2] * x[6])


def shift_substitution(k: int):
    """Permutation data of the k-fold coordinate shift x_i ↦ x_{i-k}."""
    return tuple((i - k) % 8 for i in range(8))


@dataclass(frozen=True)
class VarietySystem:
    """The four quadrics f, shift(f), shift²(f), shift³(f) at a base point,
    together with their 4×8 Jacobian."""

    point: MinusPlanePoint
    ring: PolyRing
    quadrics: tuple
    jacobian: PolyMatrix

    def to_field(self, field) -> "VarietySystem":
        return build_system(self.point.to_field(field))

    def hessians(self):
        """Constant 8×8 second-derivative matrices of the four quadrics."""
        out = []
        zero_pt = [self.ring.field.zero] * 8
        for q in self.quadrics:
            rows = []
            for i in range(8):
                qi = q.partial(i)
                rows.append([qi.partial(j).eval(zero_pt) for j in range(8)])
            out.append(rows)
        return out


def build_system(y: MinusPlanePoint) -> VarietySystem:
    field = y.field
    ring = x_ring(field)
    f0, f1, f2 = standard_quadrics(field)
    y1, y2, y3 = y.coords
    f = f0 * (y1 * y3) - f1 * (y2 * y2) + f2 * (y1 * y1 + y3 * y3)
    ones = [field.one] * 8
    quadrics = tuple(
        apply_variable_map(shift_substitution(k), ones, f) for k in range(4)
    )
    embedded = y.embed().coords
    for q in quadrics:
        if q.homogeneous_degree() != 2:
            raise DegeneratePoint(f"quadric of degree {q.homogeneous_degree()} at {y}")
        if q.eval(embedded):
            raise DegeneratePoint(f"base point {y} does not satisfy its own quadrics")
    jac = PolyMatrix(ring, [[q.partial(j) for j in range(8)] for q in quadrics])
    return VarietySystem(y, ring, quadrics, jac)


def symbolic_base_identities() -> list:
    """With symbolic plane coordinates u1, u2, u3, each shifted quadric
    vanishes identically on the embedded point; returns the four residues."""
    ring = PolyRing(QQ, X_NAMES + ("u1", "u2", "u3"))
    g = ring.gens()
    x, (u1, u2, u3) = g[:8], g[8:]
    f0 = x[0] ** 2 + x[4] ** 2
    f1 = x[1] * x[7] + x[3] * x[5]
    f2 = x[2] * x[6]
    f = f0 * (u1 * u3) - f1 * (u2 * u2) + f2 * (u1 * u1 + u3 * u3)
    zero = ring.zero()
    images = [zero, u1, u2, u3, zero, -u3, -u2, -u1] + [u1, u2, u3]
    residues = []
    perm11 = tuple((i - 1) % 8 for i in range(8)) + (8, 9, 10)
    ones = [QQ.one] * 11
    for _ in range(4):
        residues.append(f.substitute(images, ring))
        f = apply_variable_map(perm11, ones, f)
    return residues


def point_on_variety(system: VarietySystem, v: ProjPoint) -> bool:
    return all(not q.eval(v.coords) for q in system.quadrics)


def jacobian_rank_at(system: VarietySystem, v: ProjPoint) -> int:
    """Rank of the 4×8 Jacobian at a point of the variety: 3 at a singular
    point of the complete intersection, 4 at a smooth one."""
    if not point_on_variety(system, v):
        raise PointNotOnVariety(f"{v} is not on the quadric system")
    entries = system.jacobian.eval(v.coords)
    return Matrix(system.ring.field, entries).rank()


def odp_normal_hessian_rank(system: VarietySystem, v: ProjPoint) -> int:
    """Rank of the quadratic cone on the 4-dimensional normal slice.

    At a corank-1 point the four quadrics admit (up to scale) one linear
    combination L with dL(v) = 0; restricting the constant Hessian of L to
    the tangent space of the three transverse equations gives the quadratic
    cone of the singularity.  Rank 4 is the ordinary-double-point condition.
    """
    if not point_on_variety(system, v):
        raise PointNotOnVariety(f"{v} is not on the quadric system")
    field = system.ring.field
    coords = list(v.coords)
    k = next(i for i, c in enumerate(coords) if c)
    inv = field.one / coords[k]
    coords = [c * inv for c in coords]
    cols = [j for j in range(8) if j != k]

    jac_full = system.jacobian.eval(coords)
    jac = Matrix(field, [[row[j] for j in cols] for row in jac_full])
    if jac.rank() != 3:
        raise DegeneratePoint(f"Jacobian rank {jac.rank()} != 3 at {v}")
    left = jac.transpose().kernel_basis()
    if len(left) != 1:
        raise DegeneratePoint("left kernel of the Jacobian is not a line")
    lam = left[0]
    tangent = jac.kernel_basis()
    if len(tangent) != 4:
        raise DegeneratePoint("normal slice is not 4-dimensional")

    hessians = system.hessians()
    h = [
        [
            sum((lam[q] * hessians[q][cols[i]][cols[j]] for q in range(4)), field.zero)
            for j in range(7)
        ]
        for i in range(7)
    ]
    hmat = Matrix(field, h)
    b = Matrix(field, [[vec[i] for vec in tangent] for i in range(7)])  # 7×4 basis
    restricted = b.transpose() * hmat * b
    return restricted.rank()


# ---------------------------------------------------------------------------
# orbits and the singular locus


def orbit_of_base_point(y: MinusPlanePoint):
    """The group orbit of the embedded base point, over QQ(zeta8)."""
    lifted = y.to_field(QI8)
    return orbit(lifted.embed())


def named_intersection_points(y: MinusPlanePoint):
    """The four distinguished plane points: y and its images under the
    order-2 actions of shift⁴, twist⁴ and their product (these act on the
    minus plane over the base field itself, since only ±1 scalars occur)."""
    embedded = y.embed()
    out = []
    for g in (
        HeisenbergElement.identity(),
        SHIFT**4,
        TWIST**4,
        (SHIFT**4) * (TWIST**4),
    ):
        w = g.act_on_point(embedded).coords
        zero = y.field.zero
        if w[0] != zero or w[4] != zero or w[1] + w[7] != zero or w[2] + w[6] != zero or w[3] + w[5] != zero:
            raise DegeneratePoint("group image left the minus plane")
        out.append(MinusPlanePoint(y.field, w[1], w[2], w[3]))
    return out


def sample_points(system: VarietySystem, p: int, n: int, seed: int):
    """Rejection-sample projective GF(p) points on all four quadrics.

    Returns (distinct projective points in draw order, raw hit count).
    """
    if not is_prime(p) or p % 8 != 1:
        raise BadPrime(f"p={p} is not a prime congruent to 1 mod 8")
    field = GF(p)
    sys_p = system if system.ring.field == field else system.to_field(field)
    ti, tj, tc, offsets = [], [], [], [0]
    for q in sys_p.quadrics:
        for e, c in q.sorted_terms():
            idx = [i for i in range(8) for _ in range(e[i])]
            ti.append(idx[0])
            tj.append(idx[1])
            tc.append(c.value)
        offsets.append(len(ti))
    hits, rows = kernels.sample_quadric_points(
        np.asarray(ti), np.asarray(tj), np.asarray(tc), np.asarray(offsets), p, n, seed
    )
    seen = set()
    points = []
    for row in rows:
        pt = ProjPoint(field, [field.coerce(int(v)) for v in row])
        if pt not in seen:
            seen.add(pt)
            points.append(pt)
    return points, hits


def orbit_mod_p(y: MinusPlanePoint, p: int):
    """Reduction of the 64 orbit points mod p, both directly over GF(p) and
    through the cyclotomic embedding; the two must agree."""
    field = GF(p)
    direct = orbit(y.to_field(field).embed())
    root = find_order8_root(p)
    lifted = orbit_of_base_point(y)
    reduced = set()
    for pt in lifted:
        reduced.add(ProjPoint(field, [embed_cyclo_mod_p(c, p, root) for c in pt.coords]))
    if reduced != set(direct):
        raise UnluckyPrime(f"cyclotomic reduction of the orbit disagrees mod {p}")
    return direct


def off_orbit_sampling_check(y: MinusPlanePoint, p: int, n: int, seed: int) -> dict:
    """Sampling corroboration that the singular locus is just the orbit:
    every sampled rank-3 point must reduce into the orbit."""
    field = GF(p)
    sys_p = build_system(y.to_field(field))
    points, hits = sample_points(sys_p, p, n, seed)
    orb = orbit_mod_p(y, p)
    if len(orb) != 64:
        raise UnluckyPrime(f"orbit mod {p} has {len(orb)} points")
    orbit_set = set(orb)
    rank3 = 0
    stray = 0
    for pt in points:
        if jacobian_rank_at(sys_p, pt) == 3:
            rank3 += 1
            if pt not in orbit_set:
                stray += 1
    if stray:
        raise UnluckyPrime(f"{stray} rank-3 sample points mod {p} are off the orbit")
    return {
        "sample_prime": str(p),
        "sample_trials": str(n),
        "sample_hits": str(hits),
        "sample_distinct": str(len(points)),
        "sample_rank3": str(rank3),
        "sample_rank3_off_orbit": "0",
    }


def orbit_singularity_data(y: MinusPlanePoint) -> dict:
    """Orbit size 64, all points on the variety, all of Jacobian rank 3, and
    the nondegenerate quadratic cone at the embedded base point.

    Raises DegeneratePoint on any anomaly (callers redraw the base point).
    """
    system = build_system(y)
    orb = orbit_of_base_point(y)
    if len(orb) != 64:
        raise DegeneratePoint(f"orbit of {y} has {len(orb)} points")
    sys_c = system.to_field(QI8)
    for pt in orb:
        if not point_on_variety(sys_c, pt):
            raise DegeneratePoint(f"orbit point {pt} is off the variety")
        if jacobian_rank_at(sys_c, pt) != 3:
            raise DegeneratePoint(f"orbit point {pt} has Jacobian rank != 3")
    cone_rank = odp_normal_hessian_rank(system, y.embed())
    if cone_rank != 4:
        raise DegeneratePoint(f"quadratic cone rank {cone_rank} != 4 at the base point")
    return {"orbit_size": "64", "rank3_points": "64", "base_cone_rank": "4"}


def odp_proxy_sweep(y: MinusPlanePoint) -> int:
    """Nondegenerate-cone check at every orbit point; returns how many passed."""
    sys_c = build_system(y).to_field(QI8)
    count = 0
    for pt in orbit_of_base_point(y):
        if odp_normal_hessian_rank(sys_c, pt) == 4:
            count += 1
    return count


# ---------------------------------------------------------------------------
# the minus-plane intersection


def restrict_to_minus_plane(q: SparsePoly) -> SparsePoly:
    """Restrict an 8-variable polynomial to the minus plane, in coordinates
    (y1, y2, y3) via the embedding (0, y1, y2, y3, 0, -y3, -y2, -y1)."""
    ring = plane_ring(q.ring.field)
    t1, t2, t3 = ring.gens()
    zero = ring.zero()
    return q.substitute([zero, t1, t2, t3, zero, -t3, -t2, -t1], ring)


def projective_plane_points(p: int) -> np.ndarray:
    """All p²+p+1 points of P²(GF(p)) as canonical coordinate rows."""
    a = np.arange(p, dtype=np.int64)
    g1, g2 = np.meshgrid(a, a, indexing="ij")
    block1 = np.stack(
        [np.ones(p * p, dtype=np.int64), g1.ravel(), g2.ravel()], axis=1
    )
    block2 = np.stack(
        [np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), a], axis=1
    )
    block3 = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([block1, block2, block3], axis=0)


def eval_plane_poly_mod_p(q: SparsePoly, pts: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a GF(p) polynomial in 3 variables on an array of points."""
    acc = np.zeros(len(pts), dtype=np.int64)
    for e, c in q.sorted_terms():
        term = np.full(len(pts), int(c.value), dtype=np.int64)
        for i, ei in enumerate(e):
            for _ in range(ei):
                term = term * pts[:, i] % p
        acc = (acc + term) % p
    return acc


def minus_plane_solutions_mod_p(y: MinusPlanePoint, p: int):
    """Exhaustively solve the restricted system on P²(GF(p)); returns the
    solution points and the reductions of the four named points."""
    if not is_prime(p) or p % 8 != 1:
        raise BadPrime(f"p={p} is not a prime congruent to 1 mod 8")
    field = GF(p)
    system = build_system(y)
    conics = [restrict_to_minus_plane(q) for q in system.quadrics]
    ring_p = plane_ring(field)
    conics_p = [c.map_coefficients(field.coerce, ring_p) for c in conics]

    pts = projective_plane_points(p)
    mask = np.ones(len(pts), dtype=bool)
    for c in conics_p:
        mask &= eval_plane_poly_mod_p(c, pts, p) == 0
    solutions = {
        ProjPoint(field, [field.coerce(int(v)) for v in row]) for row in pts[mask]
    }

    named = set()
    for pt in named_intersection_points(y):
        reduced = [field.coerce(c) for c in pt.coords]
        if not any(reduced):
            raise UnluckyPrime(f"named point vanishes mod {p}")
        named.add(ProjPoint(field, reduced))
    if len(named) != 4:
        raise UnluckyPrime(f"named points collide mod {p}")
    return solutions, named


def minus_plane_intersection_exact(y: MinusPlanePoint) -> bool:
    """The four named points satisfy the restricted system over the base field."""
    system = build_system(y)
    conics = [restrict_to_minus_plane(q) for q in system.quadrics]
    for pt in named_intersection_points(y):
        if any(c.eval(pt.coords) for c in conics):
            return False
    return True


def minus_plane_intersection(y: MinusPlanePoint, p: int) -> dict:
    """Intersection certificate payload for one prime.

    Raises UnluckyPrime when the mod-p count exceeds the four named points.
    """
    solutions, named = minus_plane_solutions_mod_p(y, p)
    if solutions != named:
        if named - solutions:
            raise UnluckyPrime(f"a named point is not a solution mod {p}")
        raise UnluckyPrime(f"{len(solutions)} solutions mod {p}, expected the 4 named points")
    if not minus_plane_intersection_exact(y):
        raise DegeneratePoint("a named point fails the restricted system over the base field")
    return {
        f"plane_points_mod_{p}": str(p * p + p + 1),
        f"solutions_mod_{p}": str(len(solutions)),
    }


# ---------------------------------------------------------------------------
# the Moore matrix pipeline


def moore_matrix_full() -> PolyMatrix:
    """M(x, y) with entries x_{i+j}·y_{i-j} + x_{i+j+4}·y_{i-j+4}, indices mod 8."""
    ring = xy_ring()
    g = ring.gens()
    x, yv = g[:8], g[8:]
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(
                x[(i + j) % 8] * yv[(i - j) % 8] + x[(i + j + 4) % 8] * yv[(i - j + 4) % 8]
            )
        rows.append(row)
    return PolyMatrix(ring, rows)


def restrict_moore_to_minus_plane(m: PolyMatrix) -> PolyMatrix:
    """Substitute the minus-plane relations into the x-slot (y untouched)."""
    ring = m.ring
    g = ring.gens()
    x, yv = g[:8], g[8:]
    zero = ring.zero()
    images = [zero, x[1], x[2], x[3], zero, -x[3], -x[2], -x[1]] + list(yv)
    return m.map_entries(lambda q: q.substitute(images, ring))


def expected_restricted_moore() -> PolyMatrix:
    """The restricted matrix written out entry by entry (frozen reference)."""
    ring = xy_ring()
    g = ring.gens()
    x, yv = g[:8], g[8:]

    def t(sa, ia, ja, sb, ib, jb):
        first = x[ia] * yv[ja]
        second = x[ib] * yv[jb]
        return (first if sa > 0 else -first) + (second if sb > 0 else -second)

    z = ring.zero()
    rows = [
        [z, t(-1, 3, 3, 1, 1, 7), t(-1, 2, 2, 1, 2, 6), t(-1, 1, 1, 1, 3, 5)],
        [t(1, 1, 1, -1, 3, 5), t(1, 2, 0, -1, 2, 4), t(-1, 1, 3, 1, 3, 7), z],
        [t(1, 2, 2, -1, 2, 6), t(1, 3, 1, -1, 1, 5), z, t(1, 1, 3, -1, 3, 7)],
        [t(1, 3, 3, -1, 1, 7), z, t(-1, 3, 1, 1, 1, 5), t(-1, 2, 0, 1, 2, 4)],
    ]
    return PolyMatrix(ring, rows)


def conic_coordinates():
    """w0 = 2·x1·x3, w1 = −x2², w2 = x1²+x3² in the 16-variable ring."""
    g = xy_ring().gens()
    x = g[:8]
    return (x[1] * x[3] * 2, -(x[2] ** 2), x[1] ** 2 + x[3] ** 2)


def conic_pullbacks(ring: PolyRing, offset: int):
    """A = (y1²−y3²+y5²−y7²)/2, B = (y0−y4)(y2−y6), C = y3·y7−y1·y5 with the
    y-variables starting at the given index of the ring."""
    g = ring.gens()
    yv = g[offset : offset + 8]
    half = Fraction(1, 2)
    a = (yv[1] ** 2 - yv[3] ** 2 + yv[5] ** 2 - yv[7] ** 2) * half
    b = (yv[0] - yv[4]) * (yv[2] - yv[6])
    c = yv[3] * yv[7] - yv[1] * yv[5]
    return a, b, c


@dataclass(frozen=True)
class MooreData:
    full: PolyMatrix
    restricted: PolyMatrix
    skew: PolyMatrix
    pfaffian: SparsePoly
    w: tuple
    pullbacks: tuple
    sign: int


def moore_pipeline() -> MooreData:
    """Full matrix → minus-plane restriction → row swap → Pfaffian, with the
    Pfaffian compared against the reference conic expression."""
    full = moore_matrix_full()
    restricted = restrict_moore_to_minus_plane(full)
    skew = restricted.swap_rows(1, 3)
    pf = pfaffian4(skew)
    w = conic_coordinates()
    pulls = conic_pullbacks(xy_ring(), 8)
    reference = w[0] * pulls[0] + w[1] * pulls[1] + w[2] * pulls[2]
    if pf == reference:
        sign = 1
    elif pf == -reference:
        sign = -1
    else:
        raise AssertionError("Pfaffian does not match the conic expression up to sign")
    return MooreData(full, restricted, skew, pf, w, pulls, sign)


def moore_at_yy() -> PolyMatrix:
    """M(y, y): both slots specialized to the same point."""
    ring = y_ring()
    yv = ring.gens()
    rows = []
    for i in range(4):
        row = []
        for j in range(4):
            row.append(
                yv[(i + j) % 8] * yv[(i - j) % 8] + yv[(i + j + 4) % 8] * yv[(i - j + 4) % 8]
            )
        rows.append(row)
    return PolyMatrix(ring, rows)


@lru_cache(maxsize=1)
def moore_minor_generators() -> tuple:
    """The 36 2×2 minors of M(y, y): quartic generators of the membership instance."""
    return tuple(moore_at_yy().minors(2))


def psi_quartic_target() -> SparsePoly:
    """B⁴ − 8·A³·C − 8·A·C³ under the conic pullbacks: homogeneous of degree 8."""
    a, b, c = conic_pullbacks(y_ring(), 0)
    return b**4 - a**3 * c * 8 - a * c**3 * 8


@lru_cache(maxsize=1)
def psi_membership_problem() -> MembershipProblem:
    return MembershipProblem(list(moore_minor_generators()), psi_quartic_target())


# ---------------------------------------------------------------------------
# the plane quartic


def quartic_curve_poly() -> SparsePoly:
    w0, w1, w2 = conic_ring().gens()
    return w1**4 - w0**3 * w2 * 8 - w0 * w2**3 * 8


def quartic_partials():
    f = quartic_curve_poly()
    return tuple(f.partial(i) for i in range(3))


def quartic_smooth_mod_p(p: int) -> bool:
    """No common zero of the three partials on P²(GF(p)), exhaustively."""
    field = GF(p)
    ring_p = PolyRing(field, CONIC_NAMES)
    parts = [g.map_coefficients(field.coerce, ring_p) for g in quartic_partials()]
    pts = projective_plane_points(p)
    mask = np.ones(len(pts), dtype=bool)
    for g in parts:
        mask &= eval_plane_poly_mod_p(g, pts, p) == 0
    return not mask.any()


# --- exact univariate helpers for the resultant cascade ---------------------


def _poly_normalize(c):
    while c and not c[-1]:
        c.pop()
    return c


def _poly_degree(c) -> int:
    return len(c) - 1


def _poly_eval(c, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _poly_mod(f, g):
    f = list(f)
    dg = _poly_degree(g)
    lead = g[-1]
    while _poly_degree(f) >= dg and f:
        shift = _poly_degree(f) - dg
        q = f[-1] / lead
        for i in range(dg + 1):
            f[shift + i] -= q * g[i]
        _poly_normalize(f)
    return f


def _poly_gcd(f, g):
    f, g = _poly_normalize(list(f)), _poly_normalize(list(g))
    while g:
        f, g = g, _poly_mod(f, g)
    if f:
        lead = f[-1]
        f = [v / lead for v in f]
    return f


def _rational_roots(c):
    """All rational roots of a nonzero univariate polynomial with Fraction coefficients."""
    import math

    c = _poly_normalize(list(c))
    roots = set()
    while c and not c[0]:
        roots.add(Fraction(0))
        c = c[1:]
    if _poly_degree(c) < 1:
        return roots
    den = math.lcm(*(v.denominator for v in c))
    ints = [int(v * den) for v in c]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out += [d, n // d]
            d += 1
        return sorted(set(out))

    for num in divisors(a0):
        for dnm in divisors(an):
            for cand in (Fraction(num, dnm), Fraction(-num, dnm)):
                if not _poly_eval(c, cand):
                    roots.add(cand)
    return roots


def _sylvester_det_rows(fc, gc, ring):
    """Determinant of the Sylvester matrix for coefficient lists given in
    descending degree, entries living in the given polynomial ring."""
    m, n = len(fc) - 1, len(gc) - 1
    if m < 0 or n < 0:
        raise SmoothnessUndetermined("resultant of a zero polynomial")
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    zero = ring.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(fc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(gc) + [zero] * (size - n - 1 - i))
    return PolyMatrix(ring, rows).det()


@lru_cache(maxsize=None)
def _u_ring() -> PolyRing:
    return PolyRing(QQ, ("u",))


def _binary_form_coeffs(q: SparsePoly, deg: int):
    """Coefficients of w0^(d-k)·w1^k, k = 0..d, for a binary form in (w0, w1)."""
    out = [Fraction(0)] * (deg + 1)
    for e, c in q.terms.items():
        if e[0] + e[1] != deg:
            raise SmoothnessUndetermined("inhomogeneous binary form")
        out[e[1]] += c
    return out


def _binary_resultant(f: SparsePoly, g: SparsePoly) -> Fraction:
    """Resultant of two binary forms; zero iff they share a projective root."""
    df, dg = f.homogeneous_degree(), g.homogeneous_degree()
    ring = _u_ring()
    fc = [ring.constant(v) for v in reversed(_binary_form_coeffs(f, df))]
    gc = [ring.constant(v) for v in reversed(_binary_form_coeffs(g, dg))]
    det = _sylvester_det_rows(fc, gc, ring)
    return det.eval([Fraction(0)])


def _as_u_poly(q: SparsePoly):
    """Coefficient list (ascending) of a polynomial involving only the first variable."""
    out = [Fraction(0)] * (q.degree() + 1)
    for e, c in q.terms.items():
        if any(e[1:]):
            raise SmoothnessUndetermined("not univariate")
        out[e[0]] += c
    return _poly_normalize(out)


def _resultant_in_v(f: SparsePoly, g: SparsePoly) -> list:
    """Res_v of two polynomials in (u, v), as a coefficient list in u."""
    ring = _u_ring()

    def v_coeffs(q):
        dv = max(e[1] for e in q.terms)
        cs = [dict() for _ in range(dv + 1)]
        for e, c in q.terms.items():
            cs[e[1]][(e[0],)] = c
        return [SparsePoly(ring, dict(d)) for d in cs]

    fc = list(reversed(v_coeffs(f)))
    gc = list(reversed(v_coeffs(g)))
    det = _sylvester_det_rows(fc, gc, ring)
    out = [Fraction(0)] * (det.degree() + 1)
    for e, c in det.terms.items():
        out[e[0]] = c
    return _poly_normalize(out)


def quartic_smooth_over_Q() -> bool:
    """Exact smoothness of the plane quartic over the rationals (hence over
    the algebraic closure), by resultant elimination in two charts.

    Returns True when certified smooth, False when an explicit rational
    singular point is found, and raises SmoothnessUndetermined when the
    cascade cannot conclude.
    """
    parts = quartic_partials()
    ring = conic_ring()

    # chart 1: the line w2 = 0
    w0, w1, _ = ring.gens()
    on_line = [g.substitute([w0, w1, ring.zero()], ring) for g in parts]
    nonzero = [g for g in on_line if g]
    if len(nonzero) < 2:
        raise SmoothnessUndetermined("too few nonzero partials on the w2 = 0 line")
    line_ok = any(
        _binary_resultant(a, b) != 0 for a, b in itertools.combinations(nonzero, 2)
    )
    if not line_ok:
        raise SmoothnessUndetermined("all binary resultants vanish on the w2 = 0 line")

    # chart 2: w2 = 1, coordinates (u, v) = (w0, w1)
    uv = PolyRing(QQ, ("u", "v"))
    u, v = uv.gens()
    affine = [g.substitute([u, v, uv.one()], uv) for g in parts if g]
    v_free = [g for g in affine if not any(e[1] for e in g.terms)]
    v_involved = [g for g in affine if any(e[1] for e in g.terms)]
    constraints = [_as_u_poly(g) for g in v_free]
    for a, b in itertools.combinations(v_involved, 2):
        constraints.append(_resultant_in_v(a, b))
    constraints = [c for c in constraints if c]
    if not constraints:
        raise SmoothnessUndetermined("no elimination constraints in the affine chart")
    g = constraints[0]
    for c in constraints[1:]:
        g = _poly_gcd(g, c)
    if _poly_degree(g) == 0:
        return True
    # candidate u-coordinates exist: look for an explicit rational singular point
    for u0 in _rational_roots(g):
        specialized = [
            _poly_normalize(
                [
                    sum((c * u0 ** e[0] for e, c in q.terms.items() if e[1] == k), Fraction(0))
                    for k in range(max(e[1] for e in q.terms) + 1)
                ]
            )
            for q in affine
        ]
        nz = [s for s in specialized if s]
        if not nz:
            return False
        common = nz[0]
        for s in nz[1:]:
            common = _poly_gcd(common, s)
        if _poly_degree(common) >= 1 and _rational_roots(common):
            return False
    raise SmoothnessUndetermined("irrational candidate singular locus left undecided")


def quartic_nullstellensatz_certificates():
    """Exact corroboration of smoothness: degree-7 membership certificates of
    w0⁷, w1⁷, w2⁷ in the ideal of the partials (no common projective zero)."""
    parts = list(quartic_partials())
    ring = conic_ring()
    certs = []
    for i in range(3):
        certs.append(graded_membership(parts, ring.var(i) ** 7))
    return certs


def quartic_genus() -> int:
    inv = ci_invariants(2, (4,))
    genus = (2 - inv.euler) // 2
    if genus != 3 or (4 - 1) * (4 - 2) // 2 != 3:
        raise AssertionError("plane quartic genus computation is inconsistent")
    return genus


# ---------------------------------------------------------------------------
# topology numbers


def topology_numbers() -> dict:
    """Degree, c₂·H and Euler characteristic of the (2,2,2,2) intersection,
    the node-resolution identity, and the Hilbert-series cross-check.

    The Hilbert series of the coordinate ring is (1−t²)⁴/(1−t)⁸; cancelling
    (1−t)⁴ leaves the reduced numerator (1+t)⁴ over (1−t)^4, and the numerator
    value at t = 1 is the degree.
    """
    inv = ci_invariants(7, (2, 2, 2, 2))
    numerator = TruncatedSeries([1, 0, -1], 4) ** 4 * (TruncatedSeries([1, -1], 4) ** 4).inverse()
    value = sum(numerator.coeffs)
    if value.denominator != 1:
        raise AssertionError("Hilbert numerator value is not an integer")
    return {
        "degree": inv.degree,
        "c2_hyperplane_degree": inv.c2_hyperplane_degree,
        "euler_smooth": inv.euler,
        "node_identity": inv.euler + 2 * 64,
        "hilbert_numerator_at_1": int(value),
        "hilbert_coeffs": ",".join(str(c) for c in numerator.coeffs),
    }
