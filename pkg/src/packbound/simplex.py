"""Geometric functions on ordered simplices.

Edge convention: a simplex S(y1,...,y6) has its first, second and third
edges meeting at the distinguished vertex (the origin of the star), and
edge i is opposite edge i+3.  Edge squares are written x_i = y_i^2.
Faces at the origin are the triples (1,2,6), (2,3,4), (3,1,5); the far
face is (4,5,6).

Every formula is written once, generically: it accepts either floats
(fast, for oracles and sampling) or Interval values (for proofs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import interval as iv
from .interval import Interval, DomainError

__all__ = [
    "SimplexEdges",
    "FaceTriple",
    "RogersParams",
    "delta",
    "delta_partial",
    "u_quad",
    "eta",
    "eta_sq",
    "rho",
    "rho_partial",
    "rho_and_circumradius",
    "rad_sq",
    "chi",
    "chi_orientation",
    "cos_dihedral",
    "dihedral",
    "cos_dih_gradient",
    "a_vertex",
    "A_PERMS",
    "solid_angle",
    "solid_angle_excess",
    "sol_gradient",
    "compression",
    "gamma_gradient",
    "gamma_curve",
    "gamma_curve_deriv",
    "gamma_upper",
    "volume",
    "rogers",
    "rogers_volume",
    "rogers_density",
    "rogers_edge_squares",
    "vor_hat_volume",
    "vor_score",
    "vor_rogers_sum",
    "vor_sy",
    "sol_sy",
    "f_linear_gap",
    "f_sy",
    "r_trunc",
    "truncation_bound",
    "p1_norm_sq",
    "p1_tip",
    "embed_vertices",
]


def _sqrt(v):
    return iv.sqrt(v) if isinstance(v, Interval) else math.sqrt(v)


def _atan(v):
    return iv.atan(v) if isinstance(v, Interval) else math.atan(v)


def _acos(v):
    if isinstance(v, Interval):
        return iv.acos(v)
    return math.acos(min(1.0, max(-1.0, v)))


def _lo(v):
    return v.lo if isinstance(v, Interval) else v


def _hi(v):
    return v.hi if isinstance(v, Interval) else v


# -- domain types ----------------------------------------------------------


@dataclass(frozen=True)
class SimplexEdges:
    """Six ordered edge lengths with their squares."""

    y: tuple
    x: tuple

    @staticmethod
    def from_lengths(*y) -> "SimplexEdges":
        y = tuple(y[0]) if len(y) == 1 else tuple(y)
        if len(y) != 6:
            raise ValueError("need six edge lengths")
        return SimplexEdges(y, tuple(v * v if not isinstance(v, Interval) else iv.sqr(v) for v in y))

    @staticmethod
    def from_squares(*x) -> "SimplexEdges":
        x = tuple(x[0]) if len(x) == 1 else tuple(x)
        if len(x) != 6:
            raise ValueError("need six edge squares")
        return SimplexEdges(tuple(_sqrt(v) for v in x), x)

    @staticmethod
    def regular(edge: float = 2.0) -> "SimplexEdges":
        return SimplexEdges.from_lengths(*(edge,) * 6)

    @staticmethod
    def s_y(y: float) -> "SimplexEdges":
        """S_y = S(2,2,2,y,y,y)."""
        return SimplexEdges.from_lengths(2.0, 2.0, 2.0, y, y, y)

    def is_quasi_regular(self, tol: float = 1e-12) -> bool:
        return all(2.0 - tol <= _lo(v) and _hi(v) <= 2.51 + tol for v in self.y)


@dataclass(frozen=True)
class FaceTriple:
    a: object
    b: object
    c: object


@dataclass(frozen=True)
class RogersParams:
    """Half-edge a, face circumradius b, simplex circumradius c."""

    a: object
    b: object
    c: object

    def validate(self) -> None:
        if not (1.0 - 1e-12 <= _lo(self.a) and _lo(self.b) >= _hi(self.a) - 1e-9
                and _lo(self.c) >= _hi(self.b) - 1e-9):
            raise DomainError(f"Rogers parameters must satisfy 1 <= a <= b <= c: {self}")


# -- volume: Delta and u ---------------------------------------------------


def delta(x):
    """Cayley polynomial: positive volume iff Delta > 0; vol = sqrt(Delta)/12."""
    x1, x2, x3, x4, x5, x6 = x
    return (
        x1 * x4 * (-x1 + x2 + x3 - x4 + x5 + x6)
        + x2 * x5 * (x1 - x2 + x3 + x4 - x5 + x6)
        + x3 * x6 * (x1 + x2 - x3 + x4 + x5 - x6)
        - x2 * x3 * x4
        - x1 * x3 * x5
        - x1 * x2 * x6
        - x4 * x5 * x6
    )


def delta_partial(j: int, x):
    """dDelta/dx_j, j in 1..6."""
    x1, x2, x3, x4, x5, x6 = x
    if j == 1:
        return x4 * (-2 * x1 + x2 + x3 - x4 + x5 + x6) + x2 * x5 + x3 * x6 - x3 * x5 - x2 * x6
    if j == 2:
        return x5 * (x1 - 2 * x2 + x3 + x4 - x5 + x6) + x1 * x4 + x3 * x6 - x3 * x4 - x1 * x6
    if j == 3:
        return x6 * (x1 + x2 - 2 * x3 + x4 + x5 - x6) + x1 * x4 + x2 * x5 - x2 * x4 - x1 * x5
    if j == 4:
        return x1 * (-x1 + x2 + x3 - 2 * x4 + x5 + x6) + x2 * x5 + x3 * x6 - x2 * x3 - x5 * x6
    if j == 5:
        return x2 * (x1 - x2 + x3 + x4 - 2 * x5 + x6) + x1 * x4 + x3 * x6 - x1 * x3 - x4 * x6
    if j == 6:
        return x3 * (x1 + x2 - x3 + x4 + x5 - 2 * x6) + x1 * x4 + x2 * x5 - x1 * x2 - x4 * x5
    raise ValueError(f"partial index {j} out of range")


def volume(x):
    d = delta(x)
    if _lo(d) < 0.0:
        if _hi(d) < 0.0:
            raise DomainError("negative Delta: no simplex with these edges")
        d = Interval(0.0, _hi(d)) if isinstance(d, Interval) else 0.0
    return _sqrt(d) / 12


def u_quad(x1, x2, x6):
    """Heron-type quadratic: 16 * (area of triangle with squares x1,x2,x6)^2."""
    return (
        -(x1 * x1) - x2 * x2 - x6 * x6
        + 2 * (x1 * x6 + x1 * x2 + x2 * x6)
    )


# -- faces -----------------------------------------------------------------


def eta_sq(a, b, c):
    """Squared circumradius of a triangle with edge lengths a, b, c."""
    aa, bb, cc = a * a, b * b, c * c
    u = u_quad(aa, bb, cc)
    if _lo(u) <= 0.0:
        raise DomainError("degenerate triangle in eta")
    return (aa * bb * cc) / u


def eta(a, b, c):
    return _sqrt(eta_sq(a, b, c))


# -- circumradius ----------------------------------------------------------


def rho(x):
    x1, x2, x3, x4, x5, x6 = x
    return (
        -(x1 * x1) * (x4 * x4)
        - (x2 * x2) * (x5 * x5)
        - (x3 * x3) * (x6 * x6)
        + 2 * x1 * x2 * x4 * x5
        + 2 * x1 * x3 * x4 * x6
        + 2 * x2 * x3 * x5 * x6
    )


def rho_partial(j: int, x):
    x1, x2, x3, x4, x5, x6 = x
    if j == 1:
        return 2 * x4 * (-x1 * x4 + x2 * x5 + x3 * x6)
    if j == 2:
        return 2 * x5 * (x1 * x4 - x2 * x5 + x3 * x6)
    if j == 3:
        return 2 * x6 * (x1 * x4 + x2 * x5 - x3 * x6)
    if j == 4:
        return 2 * x1 * (-x1 * x4 + x2 * x5 + x3 * x6)
    if j == 5:
        return 2 * x2 * (x1 * x4 - x2 * x5 + x3 * x6)
    if j == 6:
        return 2 * x3 * (x1 * x4 + x2 * x5 - x3 * x6)
    raise ValueError(f"partial index {j} out of range")


def rad_sq(x):
    d = delta(x)
    if _lo(d) <= 0.0:
        raise DomainError("degenerate simplex: Delta <= 0 in circumradius")
    return rho(x) / (4 * d)


def rho_and_circumradius(x):
    """(rho, circumradius); the circumradius is (1/2)sqrt(rho/Delta)."""
    r = rho(x)
    return r, _sqrt(rad_sq(x))


def chi(x):
    x1, x2, x3, x4, x5, x6 = x
    return (
        x1 * x4 * x5 + x1 * x6 * x4 + x2 * x6 * x5 + x2 * x4 * x5
        + x5 * x3 * x6 + x3 * x4 * x6 - 2 * x5 * x6 * x4
        - x1 * x4 * x4 - x2 * x5 * x5 - x3 * x6 * x6
    )


def chi_orientation(x):
    """(chi, sign): positive sign means the face (4,5,6) is positively oriented."""
    c = chi(x)
    if _lo(c) > 0.0:
        return c, 1
    if _hi(c) < 0.0:
        return c, -1
    return c, 0


# -- dihedral angle along the first edge ------------------------------------


def cos_dihedral(x):
    x1, x2, x3, x4, x5, x6 = x
    u1 = u_quad(x1, x2, x6)
    u2 = u_quad(x1, x3, x5)
    if _lo(u1) <= 0.0 or _lo(u2) <= 0.0:
        raise DomainError("degenerate face adjacent to the first edge")
    return delta_partial(4, x) / _sqrt(u1 * u2)


def dihedral(x):
    """Dihedral angle along the first edge, in [0, pi]."""
    return _acos(cos_dihedral(x))


def cos_dih_gradient(x):
    """All six partials of cos dih.  Signs follow the Delta partials."""
    x1, x2, x3, x4, x5, x6 = x
    u1 = u_quad(x1, x2, x6)
    u2 = u_quad(x1, x3, x5)
    if _lo(u1) <= 0.0 or _lo(u2) <= 0.0:
        raise DomainError("degenerate face adjacent to the first edge")
    n = delta_partial(4, x)
    root = _sqrt(u1 * u2)
    n_grad = (
        -2 * x1 + x2 + x3 - 2 * x4 + x5 + x6,
        x1 + x5 - x3,
        x1 + x6 - x2,
        -2 * x1,
        x1 + x2 - x6,
        x1 + x3 - x5,
    )
    u1_grad = (2 * (x2 + x6 - x1), 2 * (x1 + x6 - x2), None, None, None, 2 * (x1 + x2 - x6))
    u2_grad = (2 * (x3 + x5 - x1), None, 2 * (x1 + x5 - x3), None, 2 * (x1 + x3 - x5), None)
    out = []
    for j in range(6):
        term = n_grad[j] / root
        corr = None
        if u1_grad[j] is not None:
            corr = u1_grad[j] / u1
        if u2_grad[j] is not None:
            c2 = u2_grad[j] / u2
            corr = c2 if corr is None else corr + c2
        if corr is not None:
            term = term - (n * corr) / (2 * root)
        out.append(term)
    return out


# -- solid angles ------------------------------------------------------------

# argument order of the function a() at each of the four vertices, 1-based
# into (y1..y6); vertex 0 is the origin
A_PERMS = (
    (1, 2, 3, 4, 5, 6),
    (1, 5, 6, 4, 2, 3),
    (2, 6, 4, 5, 3, 1),
    (3, 4, 5, 6, 1, 2),
)


def _a_func(y1, y2, y3, y4, y5, y6):
    return (
        y1 * y2 * y3
        + y1 * (y2 * y2 + y3 * y3 - y4 * y4) / 2
        + y2 * (y1 * y1 + y3 * y3 - y5 * y5) / 2
        + y3 * (y1 * y1 + y2 * y2 - y6 * y6) / 2
    )


def a_vertex(i: int, y):
    """The quantity a of 8.4.1 at vertex i (0 = origin)."""
    p = A_PERMS[i]
    return _a_func(y[p[0] - 1], y[p[1] - 1], y[p[2] - 1], y[p[3] - 1], y[p[4] - 1], y[p[5] - 1])


def _a_gradient_y(y1, y2, y3, y4, y5, y6):
    """Partials of a() with respect to its own six length arguments."""
    return (
        y2 * y3 + (y2 * y2 + y3 * y3 - y4 * y4) / 2 + y1 * y2 + y1 * y3,
        y1 * y3 + (y1 * y1 + y3 * y3 - y5 * y5) / 2 + y1 * y2 + y2 * y3,
        y1 * y2 + (y1 * y1 + y2 * y2 - y6 * y6) / 2 + y1 * y3 + y2 * y3,
        -y1 * y4,
        -y2 * y5,
        -y3 * y6,
    )


def a_vertex_gradient_x(i: int, y):
    """Partials of a_i with respect to the edge squares x_1..x_6."""
    p = A_PERMS[i]
    args = tuple(y[k - 1] for k in p)
    g = _a_gradient_y(*args)
    out = [None] * 6
    for pos, j in enumerate(p):
        out[j - 1] = g[pos] / (2 * y[j - 1])
    return out


def solid_angle(x, y=None, vertex: int = 0):
    """Solid angle at a vertex: 2 arctan(sqrt(Delta)/(2a)); a > 0 on our domain."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    d = delta(x)
    dlo = _lo(d)
    if dlo < 0.0:
        if _hi(d) < 0.0:
            raise DomainError("negative Delta in solid angle")
        d = Interval(0.0, _hi(d)) if isinstance(d, Interval) else 0.0
    a = a_vertex(vertex, y)
    if _lo(a) <= 0.0:
        raise DomainError("a <= 0 in solid angle")
    return 2 * _atan(_sqrt(d) / (2 * a))


def solid_angle_excess(x, y=None):
    """Spherical-excess form of the solid angle at the origin (8.4.3)."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    x1, x2, x3, x4, x5, x6 = x
    y1, y2, y3 = y[0], y[1], y[2]
    ca = (x1 + x2 - x6) / (2 * y1 * y2)  # cos of arc between edges 1 and 2
    cb = (x1 + x3 - x5) / (2 * y1 * y3)
    cc = (x2 + x3 - x4) / (2 * y2 * y3)

    def corner(p, q, r):
        num = p - q * r
        den = _sqrt((1 - q * q) * (1 - r * r))
        return _acos(num / den)

    return corner(cc, ca, cb) + corner(cb, cc, ca) + corner(ca, cb, cc) - (
        iv.PI if isinstance(x1, Interval) else math.pi
    )


def sol_gradient(x, y=None):
    """Partials of the origin solid angle with respect to x_1..x_6."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    d = delta(x)
    if _lo(d) <= 0.0:
        raise DomainError("need Delta > 0 for solid angle gradient")
    t = _sqrt(d) / 2
    a0 = a_vertex(0, y)
    ag = a_vertex_gradient_x(0, y)
    den = a0 * a0 + t * t
    out = []
    for j in range(6):
        tj = delta_partial(j + 1, x) / (4 * t)
        out.append(2 * (tj * a0 - t * ag[j]) / den)
    return out


# -- compression -------------------------------------------------------------


def compression(x, y=None):
    """Gamma(S) = -delta_oct vol(S) + sum of the four vertex solid angles / 3."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    d = delta(x)
    if _lo(d) < 0.0:
        if _hi(d) < 0.0:
            raise DomainError("negative Delta in compression")
        d = Interval(0.0, _hi(d)) if isinstance(d, Interval) else 0.0
    t = _sqrt(d) / 2
    doct = iv.DELTA_OCT if isinstance(t, Interval) else iv.DELTA_OCT.mid
    total = -doct * t / 6
    for i in range(4):
        a = a_vertex(i, y)
        if _lo(a) <= 0.0:
            raise DomainError("a <= 0 in compression")
        total = total + (2 * _atan(t / a)) / 3
    return total


def gamma_gradient(x, y=None):
    """Partials of Gamma with respect to the edge squares."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    d = delta(x)
    if _lo(d) <= 0.0:
        raise DomainError("need Delta > 0 for compression gradient")
    t = _sqrt(d) / 2
    doct = iv.DELTA_OCT if isinstance(t, Interval) else iv.DELTA_OCT.mid
    avals = [a_vertex(i, y) for i in range(4)]
    agrads = [a_vertex_gradient_x(i, y) for i in range(4)]
    dens = [a * a + t * t for a in avals]
    out = []
    for j in range(6):
        tj = delta_partial(j + 1, x) / (4 * t)
        g = -doct * tj / 6
        for i in range(4):
            g = g + (2 * (tj * avals[i] - t * agrads[i][j]) / dens[i]) / 3
        out.append(g)
    return out


def gamma_curve(t, a4):
    """gamma(t, a) = -delta_oct t/6 + (2/3) sum arctan(t/a_i)."""
    doct = iv.DELTA_OCT if isinstance(t, Interval) else iv.DELTA_OCT.mid
    g = -doct * t / 6
    for a in a4:
        g = g + (2 * _atan(t / a)) / 3
    return g


def gamma_curve_deriv(t, a4):
    doct = iv.DELTA_OCT if isinstance(t, Interval) else iv.DELTA_OCT.mid
    g = -doct / 6
    for a in a4:
        g = g + (2 * a / (t * t + a * a)) / 3
    return g


def gamma_upper(t_range: Interval, a_lower) -> Interval:
    """Upper bound on Gamma over a cell from the concave curve gamma(t, a^-).

    gamma is decreasing in each a_i and concave in t, so the tangent line
    at the midpoint of the t range bounds it above at both endpoints.
    """
    for a in a_lower:
        if _lo(a) <= 0.0:
            raise DomainError("nonpositive lower bound for a in gamma_upper")
    a4 = [a if isinstance(a, Interval) else Interval(a, a) for a in a_lower]
    tm = Interval.point(t_range.mid)
    gm = gamma_curve(tm, a4)
    sm = gamma_curve_deriv(tm, a4)
    lo_end = gm + sm * (Interval(t_range.lo, t_range.lo) - tm)
    hi_end = gm + sm * (Interval(t_range.hi, t_range.hi) - tm)
    return Interval(min(lo_end.lo, hi_end.lo), max(lo_end.hi, hi_end.hi))


# -- Rogers simplices --------------------------------------------------------


def rogers_edge_squares(a, b, c):
    """Edge squares of R(a,b,c) = S(a,b,c, sqrt(c^2-b^2), sqrt(c^2-a^2), sqrt(b^2-a^2))."""
    aa, bb, cc = a * a, b * b, c * c
    e4 = cc - bb
    e5 = cc - aa
    e6 = bb - aa
    for e in (e4, e5, e6):
        if _hi(e) < 0.0:
            raise DomainError("Rogers parameters not ordered: a <= b <= c required")
    if isinstance(aa, Interval):
        e4 = Interval(max(0.0, e4.lo), max(0.0, e4.hi))
        e5 = Interval(max(0.0, e5.lo), max(0.0, e5.hi))
        e6 = Interval(max(0.0, e6.lo), max(0.0, e6.hi))
    else:
        e4, e5, e6 = max(0.0, e4), max(0.0, e5), max(0.0, e6)
    return (aa, bb, cc, e4, e5, e6)


def rogers_volume(a, b, c):
    """vol R(a,b,c) = a sqrt(b^2-a^2) sqrt(c^2-b^2) / 6."""
    x = rogers_edge_squares(a, b, c)
    return a * _sqrt(x[5]) * _sqrt(x[3]) / 6


def rogers_density(a, b, c):
    """Ball fraction of the Rogers simplex: sol(R)/(3 vol(R))."""
    x = rogers_edge_squares(a, b, c)
    v = rogers_volume(a, b, c)
    if _lo(v) <= 0.0:
        raise DomainError("zero-volume Rogers simplex has no density")
    s = solid_angle(x)
    return s / (3 * v)


def rogers(p: RogersParams):
    """(volume, density) of the Rogers simplex R(a,b,c)."""
    p.validate()
    return rogers_volume(p.a, p.b, p.c), rogers_density(p.a, p.b, p.c)


# The six Rogers pieces of the Voronoi part at the origin, via 8.6.3.
# Each row: (edge index, chi argument order, face u-triple), 1-based.
_VOR_PIECES = (
    (1, (4, 5, 3, 1, 2, 6), (1, 2, 6)),
    (2, (5, 4, 3, 2, 1, 6), (1, 2, 6)),
    (2, (5, 6, 1, 2, 3, 4), (2, 3, 4)),
    (3, (6, 5, 1, 3, 2, 4), (2, 3, 4)),
    (3, (6, 4, 2, 3, 1, 5), (3, 1, 5)),
    (1, (4, 6, 2, 1, 3, 5), (3, 1, 5)),
)


def vor_hat_volume(x):
    """Signed volume of the Voronoi piece at the origin (analytic continuation).

    Sum over the six Rogers pieces of the closed form
    x_e (x_f + x_g - x_e) chi(perm) / (48 u(face) sqrt(Delta)); the sign
    of chi supplies the orientation factor, so this is exactly the
    analytically continued volume.
    """
    d = delta(x)
    if _lo(d) <= 0.0:
        raise DomainError("degenerate simplex in vor")
    root = _sqrt(d)
    total = None
    for e, perm, face in _VOR_PIECES:
        xe = x[e - 1]
        f, g = (i for i in face if i != e)
        factor = xe * (x[f - 1] + x[g - 1] - xe)
        cval = chi(tuple(x[k - 1] for k in perm))
        uval = u_quad(x[face[0] - 1], x[face[1] - 1], x[face[2] - 1])
        piece = factor * cval / (48 * uval * root)
        total = piece if total is None else total + piece
    return total


def vor_score(x, y=None):
    """vor(S) = -4 delta_oct vol(hat S_0) + 4 sol(S)/3, analytically continued."""
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    doct = iv.DELTA_OCT if isinstance(x[0], Interval) else iv.DELTA_OCT.mid
    return -4 * doct * vor_hat_volume(x) + 4 * solid_angle(x, y) / 3


def vor_rogers_sum(x, y=None):
    """vor(S) as the epsilon-signed sum over explicit Rogers simplices (8.6.1).

    Point-valued cross-check of vor_score; requires an unambiguous
    orientation sign for each face.
    """
    if y is None:
        y = tuple(_sqrt(v) for v in x)
    doct = iv.DELTA_OCT if isinstance(x[0], Interval) else iv.DELTA_OCT.mid
    c = _sqrt(rad_sq(x))
    total = None
    for e, perm, face in _VOR_PIECES:
        a = y[e - 1] / 2
        b = eta(y[face[0] - 1], y[face[1] - 1], y[face[2] - 1])
        cval, sign = chi_orientation(tuple(x[k - 1] for k in perm))
        if sign == 0:
            raise DomainError("face orientation ambiguous; use vor_score instead")
        term = 4 * rogers_volume(a, b, c) * (-doct + rogers_density(a, b, c))
        term = term * sign
        total = term if total is None else total + term
    return total


# -- the S_y family and truncation -------------------------------------------


def vor_sy(yv):
    """vor(S(2,2,2,y,y,y)) by the closed one-variable formula."""
    if not isinstance(yv, Interval):
        if not 2.0 - 1e-12 <= yv <= 2.51 + 1e-12:
            raise DomainError("vor_sy needs y in [2, 2.51]")
    y2 = yv * yv if not isinstance(yv, Interval) else iv.sqr(yv)
    doct = iv.DELTA_OCT if isinstance(yv, Interval) else iv.DELTA_OCT.mid
    root = _sqrt(12 - y2)
    return (-8 * doct) * y2 / (root * (16 - y2)) + (8 * _atan(root * y2 / (64 - 6 * y2))) / 3


def sol_sy(yv):
    """sol(S(2,2,2,y,y,y)) at the origin."""
    s = SimplexEdges.s_y(yv) if not isinstance(yv, Interval) else None
    if s is not None:
        return solid_angle(s.x, s.y)
    y2 = iv.sqr(yv)
    x = (Interval(4.0, 4.0),) * 3 + (y2,) * 3
    y = (Interval(2.0, 2.0),) * 3 + (yv,) * 3
    return solid_angle(x, y)


_F_SLOPE = Interval.literal("-0.419351")
_F_OFFSET = Interval.literal("0.2856354")


def f_linear_gap(sol, vor):
    """f(S) = -0.419351 sol + 0.2856354 - vor; positive when 9.18's bound holds."""
    if isinstance(sol, Interval) or isinstance(vor, Interval):
        sol = sol if isinstance(sol, Interval) else Interval.point(sol)
        return _F_SLOPE * sol + _F_OFFSET - vor
    return _F_SLOPE.mid * sol + _F_OFFSET.mid - vor


def f_sy(yv):
    """f(S_y) on the one-parameter family."""
    return f_linear_gap(sol_sy(yv), vor_sy(yv))


def r_trunc(a):
    """r(a) = vol R(a, eta(2,2,2a), 1.41)."""
    two = Interval(2.0, 2.0) if isinstance(a, Interval) else 2.0
    c = Interval.literal("1.41") if isinstance(a, Interval) else 1.41
    return rogers_volume(a, eta(two, two, 2 * a), c)


def truncation_bound(yv, a):
    """(xi, xi_1) for the 9.17/9.18 truncation ladders.

    xi(y,a)  = vor(S_y) - 8 delta_oct (1 - 1/a^3) r(a)
    xi_1(y,a) = f(S_y) + 8 delta_oct (1 - 1/a^3) r(a)
    """
    if not isinstance(a, Interval):
        if not 1.0 - 1e-12 <= a <= 1.15 + 1e-12:
            raise DomainError("truncation parameter a must lie in [1, 1.15]")
        acube = a ** 3
        doct = iv.DELTA_OCT.mid
    else:
        if a.lo < 1.0 - 1e-12 or a.hi > 1.15 + 1e-12:
            raise DomainError("truncation parameter a must lie in [1, 1.15]")
        acube = a * a * a
        doct = iv.DELTA_OCT
    shave = 8 * doct * (1 - 1 / acube) * r_trunc(a)
    return vor_sy(yv) - shave, f_sy(yv) + shave


# -- the protruding tip of 8.6.7 ---------------------------------------------


def p1_norm_sq(x):
    """|p_1|^2 for the point on the far face equidistant from 0, v3, v1."""
    x1, x2, x3, x4, x5, x6 = x
    dd4 = delta_partial(4, x)
    num = x1 * u_quad(x1, x2, x6) * (-x1 + x3 + x5) * (-x1 + x3 + x5)
    return x1 / 4 + num / (4 * dd4 * dd4)


def p1_tip(x):
    """(|p1|, bound on |p0 - p1|, bound on the tip correction v(S'')).

    Valid on the negative-orientation configuration of 8.6.7:
    y1,y2,y6 in [2.3, 2.51] and y3,y4,y5 in [2, 2.15].
    """
    y = tuple(_sqrt(v) for v in x)
    for i in (0, 1, 5):
        if _lo(y[i]) < 2.3 - 1e-9 or _hi(y[i]) > 2.51 + 1e-9:
            raise DomainError("p1_tip needs y1, y2, y6 in [2.3, 2.51]")
    for i in (2, 3, 4):
        if _lo(y[i]) < 2.0 - 1e-9 or _hi(y[i]) > 2.15 + 1e-9:
            raise DomainError("p1_tip needs y3, y4, y5 in [2, 2.15]")
    p1sq = p1_norm_sq(x)
    p1 = _sqrt(p1sq)
    e2 = eta_sq(y[0], y[1], y[5])
    gap = _sqrt(e2 - x[0] / 4) - _sqrt(p1sq - x[0] / 4)
    rsq = rad_sq(x)
    leg = _sqrt(rsq - e2)
    doct = iv.DELTA_OCT if isinstance(p1, Interval) else iv.DELTA_OCT.mid
    # vol(S'')/2 <= |p0-p1| |c-p0| |p0| / 6, and v(S'') <= 4 delta_oct vol(S'')
    tip_bound = 4 * doct * gap * leg * _sqrt(e2) / 3
    return p1, gap, tip_bound


# -- explicit embedding (Lemma 8.1.4), used by tests and the rigid checks ----


def embed_vertices(x):
    """Embed the simplex at O, X, Y, Z per the constructive volume proof.

    Returns the three non-origin vertices as coordinate triples (floats).
    """
    x1, x2, x3, x4, x5, x6 = (float(_hi(v) / 2 + _lo(v) / 2) if isinstance(v, Interval) else float(v) for v in x)
    y1 = math.sqrt(x1)
    u = u_quad(x1, x2, x6)
    d = delta((x1, x2, x3, x4, x5, x6))
    if u <= 0 or d < 0:
        raise DomainError("cannot embed: degenerate configuration")
    X = (y1, 0.0, 0.0)
    # |Y| = y2, |Y - X| = y6
    yx = (x1 + x2 - x6) / (2 * y1)
    yy = math.sqrt(max(0.0, x2 - yx * yx))
    Y = (yx, yy, 0.0)
    # |Z| = y3, |Z - X| = y5, |Z - Y| = y4
    zx = (x1 + x3 - x5) / (2 * y1)
    zy = (x3 + x2 - x4 - 2 * zx * yx) / (2 * yy)
    zz = math.sqrt(max(0.0, x3 - zx * zx - zy * zy))
    Z = (zx, zy, zz)
    return X, Y, Z
