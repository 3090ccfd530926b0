"""Branch-and-bound verification of inequalities over edge-square cells.

A cell is a product of closed intervals in the coordinates x_1..x_6
(edge squares).  The verifier bisects cells, bounds the claim margin on
each by sound interval forms (a cheap direct form, then a mean-value
form on demand), prunes cells that provably violate a side constraint,
pins coordinates whose margin partial has fixed sign, and certifies the
claim when every surviving leaf separates strictly.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field, replace

from . import interval as iv
from . import simplex as sx
from .interval import Interval, DomainError

__all__ = [
    "Cell",
    "Constraint",
    "InequalitySpec",
    "VerificationReport",
    "Polynomial",
    "bound_polynomial",
    "bound_rational",
    "reduce_dimension",
    "verify",
    "SOL_REDUCTION_SETS",
    "DIH_REDUCTION_SETS",
]

# index sets of pinned edges for the two claim families (1-based)
SOL_REDUCTION_SETS = ((1, 4), (2, 5), (3, 6), (4, 5), (4, 6), (5, 6), (1, 2, 3))
DIH_REDUCTION_SETS = ((1, 4), (2, 5), (3, 6), (1, 2, 3), (1, 5, 6), (3, 4, 5), (2, 4, 6))

# rigorous slack added to float corner evaluations of Delta (error analysis:
# ~25 ops on magnitudes <= 3*16^3 gives < 3e-11; padded well beyond)
_CORNER_PAD = 1e-8

_BIG = math.inf


# -- cells -------------------------------------------------------------------


@dataclass(frozen=True)
class Cell:
    """Product of closed intervals in edge-square space."""

    bounds: tuple  # ((lo, hi), ...) floats
    depth: int = 0
    frozen: tuple = ()  # coordinate indices pinned by monotonicity

    def widths(self):
        return tuple(hi - lo for lo, hi in self.bounds)

    def midpoint(self):
        return tuple(0.5 * (lo + hi) for lo, hi in self.bounds)

    def split(self, j: int) -> tuple["Cell", "Cell"]:
        lo, hi = self.bounds[j]
        m = 0.5 * (lo + hi)
        b1 = self.bounds[:j] + ((lo, m),) + self.bounds[j + 1:]
        b2 = self.bounds[:j] + ((m, hi),) + self.bounds[j + 1:]
        return (
            Cell(b1, self.depth + 1, self.frozen),
            Cell(b2, self.depth + 1, self.frozen),
        )

    def pin(self, j: int, at_hi: bool) -> "Cell":
        lo, hi = self.bounds[j]
        v = hi if at_hi else lo
        b = self.bounds[:j] + ((v, v),) + self.bounds[j + 1:]
        return Cell(b, self.depth, self.frozen + (j,))


# -- declarative specs ---------------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    """Side condition `quantity op bound` restricting the admissible domain."""

    quantity: str
    op: str  # "<=", ">=", "=="
    bound: Interval

    def admissible(self) -> tuple:
        if self.op == "<=":
            return (-_BIG, self.bound.hi)
        if self.op == ">=":
            return (self.bound.lo, _BIG)
        if self.op == "==":
            return (self.bound.lo, self.bound.hi)
        raise ValueError(f"unknown constraint op {self.op!r}")


@dataclass(frozen=True)
class Claim:
    """margin = sum(coeffs[q] * q) + const must be positive (or nonnegative)."""

    coeffs: tuple  # ((quantity, Interval), ...)
    const: Interval
    strict: bool = True
    label: str = ""


@dataclass(frozen=True)
class InequalitySpec:
    id: str
    boxes: tuple  # one or more x-space boxes ((lo,hi),)*6
    claims: tuple  # of Claim
    constraints: tuple = ()
    reduction: str = "none"  # "sol", "dih", "none"
    budget: int = 10_000_000
    max_depth: int = 40
    deep: bool = False
    notes: tuple = ()


@dataclass
class VerificationReport:
    id: str
    status: str  # "proved", "budget-exhausted", "counterexample-candidate"
    cells_examined: int = 0
    max_depth_reached: int = 0
    elapsed: float = 0.0
    witness: Cell | None = None
    notes: list = field(default_factory=list)

    @property
    def proved(self) -> bool:
        return self.status == "proved"


# -- polynomial bound forms (Section 7 rules) ---------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Multivariate polynomial with interval coefficients, dense exponent keys."""

    nvars: int
    terms: tuple  # ((exponents tuple, Interval coeff), ...)

    @staticmethod
    def from_dict(nvars: int, d: dict) -> "Polynomial":
        items = []
        for exps, c in sorted(d.items()):
            if not isinstance(c, Interval):
                c = Interval(float(c), float(c))
            items.append((tuple(exps), c))
        return Polynomial(nvars, tuple(items))

    def eval(self, xs):
        total = Interval(0.0, 0.0)
        for exps, c in self.terms:
            term = c
            for x, e in zip(xs, exps):
                for _ in range(e):
                    term = term * x
            total = total + term
        return total

    def corner_bounds(self, box) -> Interval:
        """Sign-split corner rule; box must lie in the positive orthant."""
        lo = Interval(0.0, 0.0)
        hi = Interval(0.0, 0.0)
        for exps, c in self.terms:
            a_pow = Interval(1.0, 1.0)
            b_pow = Interval(1.0, 1.0)
            for (a, b), e in zip(box, exps):
                if e == 0:
                    continue
                if a < 0:
                    raise DomainError("corner rule needs the positive orthant")
                for _ in range(e):
                    a_pow = a_pow * a
                    b_pow = b_pow * b
            if c.lo >= 0.0:
                lo = lo + c * a_pow
                hi = hi + c * b_pow
            elif c.hi <= 0.0:
                lo = lo + c * b_pow
                hi = hi + c * a_pow
            else:
                mixed = c * b_pow  # mixed-sign coefficient: both ends from b
                lo = lo + mixed
                hi = hi + mixed
        return Interval(lo.lo, hi.hi)

    def partial(self, j: int) -> "Polynomial":
        d: dict = {}
        for exps, c in self.terms:
            e = exps[j]
            if e == 0:
                continue
            new = exps[:j] + (e - 1,) + exps[j + 1:]
            d[new] = d.get(new, Interval(0.0, 0.0)) + c * e
        return Polynomial.from_dict(self.nvars, d) if d else Polynomial(self.nvars, ())

    def shift(self, a) -> "Polynomial":
        """Taylor coefficients at the point a: p(a + s) as a polynomial in s."""
        terms: dict = {(0,) * self.nvars: Interval(0.0, 0.0)}
        for exps, c in self.terms:
            # expand prod (a_j + s_j)^{e_j} by repeated binomial accumulation
            partial_terms = {(0,) * self.nvars: c}
            for j, e in enumerate(exps):
                if e == 0:
                    continue
                aj = a[j] if isinstance(a[j], Interval) else Interval(float(a[j]))
                for _ in range(e):
                    nxt: dict = {}
                    for k, kc in partial_terms.items():
                        # multiply by (a_j + s_j)
                        nxt[k] = nxt.get(k, Interval(0.0, 0.0)) + kc * aj
                        k2 = k[:j] + (k[j] + 1,) + k[j + 1:]
                        nxt[k2] = nxt.get(k2, Interval(0.0, 0.0)) + kc
                    partial_terms = nxt
            for k, kc in partial_terms.items():
                terms[k] = terms.get(k, Interval(0.0, 0.0)) + kc
        return Polynomial.from_dict(self.nvars, terms)

    def taylor_bounds(self, box) -> Interval:
        """Rule 7.1 at the lower corner of the box."""
        a = tuple(lo for lo, _ in box)
        w = tuple(hi - lo for lo, hi in box)
        shifted = self.shift(a)
        lo = Interval(0.0, 0.0)
        hi = Interval(0.0, 0.0)
        for exps, c in shifted.terms:
            if all(e == 0 for e in exps):
                lo = lo + c
                hi = hi + c
                continue
            wpow = Interval(1.0, 1.0)
            for wj, e in zip(w, exps):
                for _ in range(e):
                    wpow = wpow * wj
            if c.hi <= 0.0:
                lo = lo + c * wpow
            elif c.lo >= 0.0:
                hi = hi + c * wpow
            else:
                lo = lo + Interval(c.lo, 0.0) * wpow
                hi = hi + Interval(0.0, c.hi) * wpow
        return Interval(lo.lo, hi.hi)


def bound_polynomial(p: Polynomial, box, form: str = "corner") -> Interval:
    """Sound enclosure of a polynomial's range over a cell."""
    if form == "corner":
        return p.corner_bounds(box)
    if form == "taylor":
        return p.taylor_bounds(box)
    if form == "interval":
        return p.eval(tuple(Interval(lo, hi) for lo, hi in box))
    raise ValueError(f"unknown bound form {form!r}")


def bound_rational(p: Polynomial, q: Polynomial, box, form: str = "corner") -> Interval:
    """Enclosure of p/q over a cell via the quotient rule with q_min > 0."""
    pb = bound_polynomial(p, box, form)
    qb = bound_polynomial(q, box, form)
    if qb.lo <= 0.0:
        raise DomainError("denominator not positive over the cell; split first")
    # p_min/q1 <= r <= p_max/q2 with q1, q2 chosen by the sign of p
    q1 = qb.hi if pb.lo >= 0.0 else qb.lo
    q2 = qb.lo if pb.hi >= 0.0 else qb.hi
    lo = iv._down(pb.lo / q1)
    hi = iv._up(pb.hi / q2)
    return Interval(lo, hi)


# -- quantity evaluation over a cell -------------------------------------------

_DELTA_SUPPORTED = {"gamma", "sol", "dih", "rad", "vor", "delta"}


def _delta_corner_min(bounds) -> float:
    """Exact corner minimum of Delta (quadratic, negative leading coefficient
    in each variable), padded for float rounding."""
    axes = [(lo,) if lo == hi else (lo, hi) for lo, hi in bounds]
    best = _BIG
    for corner in itertools.product(*axes):
        x1, x2, x3, x4, x5, x6 = corner
        d = (
            x1 * x4 * (-x1 + x2 + x3 - x4 + x5 + x6)
            + x2 * x5 * (x1 - x2 + x3 + x4 - x5 + x6)
            + x3 * x6 * (x1 + x2 - x3 + x4 + x5 - x6)
            - x2 * x3 * x4
            - x1 * x3 * x5
            - x1 * x2 * x6
            - x4 * x5 * x6
        )
        if d < best:
            best = d
    return best - _CORNER_PAD


class CellEval:
    """Lazy, cached quantity ranges over one cell.

    Ranges are (lo, hi) floats; hi may be +inf for the circumradius on
    cells whose Delta range touches zero.
    """

    __slots__ = ("cell", "xiv", "yiv", "_cache", "_mid", "_mid_iv")

    def __init__(self, cell: Cell):
        self.cell = cell
        self.xiv = tuple(Interval(lo, hi) for lo, hi in cell.bounds)
        self.yiv = tuple(iv.sqrt(c) for c in self.xiv)
        self._cache: dict = {}
        self._mid = cell.midpoint()
        self._mid_iv = None

    def _midpoint_intervals(self):
        if self._mid_iv is None:
            self._mid_iv = tuple(Interval(m, m) for m in self._mid)
        return self._mid_iv

    # ---- base quantities

    def delta(self) -> Interval:
        r = self._cache.get("delta")
        if r is None:
            d = sx.delta(self.xiv)
            lo = d.lo
            if lo < 48.0:  # refine only when the direct bound is weak
                lo = max(lo, _delta_corner_min(self.cell.bounds))
            r = Interval(min(lo, d.hi), d.hi)
            self._cache["delta"] = r
        return r

    def t_range(self) -> Interval:
        r = self._cache.get("t")
        if r is None:
            d = self.delta()
            lo = 0.0 if d.lo <= 0.0 else iv._down(math.sqrt(d.lo) / 2)
            hi = 0.0 if d.hi <= 0.0 else iv._up(math.sqrt(d.hi) / 2)
            r = Interval(lo, hi)
            self._cache["t"] = r
        return r

    def a_bounds(self, vertex: int) -> Interval:
        key = ("a", vertex)
        r = self._cache.get(key)
        if r is None:
            # a is increasing in its first three arguments and decreasing in
            # the last three, so its extremes sit at two known corners
            p = sx.A_PERMS[vertex]
            lo_pt = []
            hi_pt = []
            for pos, j in enumerate(p):
                yj = self.yiv[j - 1]
                if pos < 3:
                    lo_pt.append(Interval(yj.lo, yj.lo))
                    hi_pt.append(Interval(yj.hi, yj.hi))
                else:
                    lo_pt.append(Interval(yj.hi, yj.hi))
                    hi_pt.append(Interval(yj.lo, yj.lo))
            alo = sx._a_func(*lo_pt)
            ahi = sx._a_func(*hi_pt)
            r = Interval(alo.lo, ahi.hi)
            self._cache[key] = r
        return r

    # ---- claim quantities, cheap direct forms

    def q_gamma(self) -> tuple:
        r = self._cache.get("gamma")
        if r is None:
            t = self.t_range()
            a_lo = []
            a_hi = []
            for i in range(4):
                ab = self.a_bounds(i)
                if ab.lo <= 0.0:
                    raise DomainError("a <= 0 on cell")
                a_lo.append(Interval(ab.lo, ab.lo))
                a_hi.append(Interval(ab.hi, ab.hi))
            upper = sx.gamma_upper(t, a_lo)
            g1 = sx.gamma_curve(Interval(t.lo, t.lo), a_hi)
            g2 = sx.gamma_curve(Interval(t.hi, t.hi), a_hi)
            r = (min(g1.lo, g2.lo), upper.hi)
            self._cache["gamma"] = r
        return r

    def q_sol(self) -> tuple:
        r = self._cache.get("sol")
        if r is None:
            t = self.t_range()
            a0 = self.a_bounds(0)
            if a0.lo <= 0.0:
                raise DomainError("a <= 0 on cell")
            lo = (2 * iv.atan(Interval(t.lo, t.lo) / Interval(a0.hi, a0.hi))).lo
            hi = (2 * iv.atan(Interval(t.hi, t.hi) / Interval(a0.lo, a0.lo))).hi
            r = (lo, hi)
            self._cache["sol"] = r
        return r

    def q_cosdih(self) -> Interval:
        r = self._cache.get("cosdih")
        if r is None:
            c = sx.cos_dihedral(self.xiv)
            r = Interval(max(c.lo, -1.0), min(c.hi, 1.0))
            self._cache["cosdih"] = r
        return r

    def q_dih(self) -> tuple:
        r = self._cache.get("dih")
        if r is None:
            c = self.q_cosdih()
            d = iv.acos(c)
            r = (d.lo, d.hi)
            self._cache["dih"] = r
        return r

    def q_rad(self) -> tuple:
        """rad = sqrt(rho / (4 Delta)); upper end +inf when Delta touches 0."""
        r = self._cache.get("rad")
        if r is None:
            d = self.delta()
            p = sx.rho(self.xiv)
            plo = max(p.lo, 0.0)
            if d.hi <= 0.0:
                r = (_BIG, _BIG)
            else:
                lo = iv._down(math.sqrt(iv._down(plo / iv._up(4 * d.hi))))
                if d.lo > 0.0 and p.hi >= 0.0:
                    hi = iv._up(math.sqrt(iv._up(p.hi / iv._down(4 * d.lo))))
                else:
                    hi = _BIG
                r = (lo, hi)
            self._cache["rad"] = r
        return r

    def q_ysum(self) -> tuple:
        r = self._cache.get("ysum")
        if r is None:
            s = self.yiv[0] + self.yiv[1] + self.yiv[2]
            r = (s.lo, s.hi)
            self._cache["ysum"] = r
        return r

    def q_vor(self) -> tuple:
        r = self._cache.get("vor")
        if r is None:
            d = self.delta()
            if d.lo <= 0.0:
                raise DomainError("vor needs Delta > 0 on the cell")
            # reuse the tightened Delta lower bound in the closed form
            xs = self.xiv
            root = iv.sqrt(d)
            total = None
            for e, perm, face in sx._VOR_PIECES:
                xe = xs[e - 1]
                f, g = (i for i in face if i != e)
                factor = xe * (xs[f - 1] + xs[g - 1] - xe)
                cval = sx.chi(tuple(xs[k - 1] for k in perm))
                uval = sx.u_quad(xs[face[0] - 1], xs[face[1] - 1], xs[face[2] - 1])
                if uval.lo <= 0.0:
                    raise DomainError("degenerate face in vor")
                piece = factor * cval / ((48 * uval) * root)
                total = piece if total is None else total + piece
            slo, shi = self.q_sol()
            v = -4 * iv.DELTA_OCT * total + (4 * Interval(slo, shi)) / 3
            r = (v.lo, v.hi)
            self._cache["vor"] = r
        return r

    def range(self, q: str) -> tuple:
        if q == "gamma":
            return self.q_gamma()
        if q == "sol":
            return self.q_sol()
        if q == "dih":
            return self.q_dih()
        if q == "rad":
            return self.q_rad()
        if q == "vor":
            return self.q_vor()
        if q == "ysum":
            return self.q_ysum()
        if q.startswith("y") and len(q) == 2:
            yj = self.yiv[int(q[1]) - 1]
            return (yj.lo, yj.hi)
        if q.startswith("x") and len(q) == 2:
            xj = self.xiv[int(q[1]) - 1]
            return (xj.lo, xj.hi)
        if q == "delta":
            d = self.delta()
            return (d.lo, d.hi)
        raise ValueError(f"unknown quantity {q!r}")

    def curve_range(self, alpha: Interval, beta: Interval) -> Interval:
        """Joint enclosure of alpha*gamma + beta*sol over the cell.

        Both quantities live on the curve (t, a_0..a_3) with
        gamma = -delta_oct t/6 + (2/3) sum atan(t/a_i) and
        sol = 2 atan(t/a_0), so the combination collapses to
        ct*t + sum w_i atan(t/a_i); each a_i is monotone (sign of w_i)
        and the remaining one-variable t dependence is bounded by a
        mean-value sweep.
        """
        t = self.t_range()
        two_thirds = Interval(2.0, 2.0) / 3
        w0 = alpha * two_thirds + 2 * beta
        wi = alpha * two_thirds
        ct = -alpha * iv.DELTA_OCT / 6
        weights = (w0, wi, wi, wi)
        lo_a = []
        hi_a = []
        for i, w in enumerate(weights):
            ab = self.a_bounds(i)
            if ab.lo <= 0.0:
                raise DomainError("a <= 0 on cell")
            if w.lo >= 0.0:  # term decreasing in a_i
                lo_a.append(Interval(ab.hi, ab.hi))
                hi_a.append(Interval(ab.lo, ab.lo))
            elif w.hi <= 0.0:
                lo_a.append(Interval(ab.lo, ab.lo))
                hi_a.append(Interval(ab.hi, ab.hi))
            else:
                raise DomainError("indefinite curve weight")

        tiv = Interval(t.lo, t.hi)
        tt = iv.sqr(tiv)
        tm = Interval.point(t.mid)
        t1 = Interval.point(t.lo)
        t2 = Interval.point(t.hi)

        def f_at(tp, a4):
            val = ct * tp
            for w, a in zip(weights, a4):
                val = val + w * iv.atan(tp / a)
            return val

        def slope_at(tp, a4):
            s = ct
            tp2 = iv.sqr(tp)
            for w, a in zip(weights, a4):
                s = s + w * (a / (tp2 + a * a))
            return s

        def one_side(a4, lower: bool):
            # f'' = -2t * sum w_i a_i/(t^2+a_i^2)^2; classify curvature on T
            s2 = _ZERO
            for w, a in zip(weights, a4):
                den = iv.sqr(tt + a * a)
                s2 = s2 + w * (a / den)
            if s2.hi <= 0.0:  # convex in t
                if lower:
                    return (f_at(tm, a4) + slope_at(tm, a4) * (tiv - tm)).lo
                return max(f_at(t1, a4).hi, f_at(t2, a4).hi)
            if s2.lo >= 0.0:  # concave in t
                if lower:
                    return min(f_at(t1, a4).lo, f_at(t2, a4).lo)
                return (f_at(tm, a4) + slope_at(tm, a4) * (tiv - tm)).hi
            val = f_at(tm, a4) + slope_at(tiv, a4) * (tiv - tm)
            return val.lo if lower else val.hi

        return Interval(one_side(lo_a, True), one_side(hi_a, False))

    # ---- joint mean-value machinery

    def margin_at_midpoint(self, coeffs, const) -> Interval:
        """Point-interval evaluation of the margin at the cell midpoint."""
        mids = self._midpoint_intervals()
        ymids = tuple(iv.sqrt(m) for m in mids)
        acc = const
        for q, c in coeffs:
            if q == "gamma":
                v = sx.compression(mids, ymids)
            elif q == "sol":
                v = sx.solid_angle(mids, ymids)
            elif q == "dih":
                v = sx.dihedral(mids)
            elif q == "vor":
                v = sx.vor_score(mids, ymids)
            elif q == "ysum":
                v = ymids[0] + ymids[1] + ymids[2]
            elif q.startswith("y") and len(q) == 2:
                v = ymids[int(q[1]) - 1]
            else:
                raise DomainError(f"no midpoint evaluation for {q!r}")
            acc = acc + c * v
        return acc

    def margin_gradient(self, coeffs):
        """Enclosures of the margin partials, or None when unsupported."""
        if "mgrad" in self._cache:
            return self._cache["mgrad"]
        g = self._margin_gradient(coeffs)
        self._cache["mgrad"] = g
        return g

    def _margin_gradient(self, coeffs):
        try:
            total = [Interval(0.0, 0.0)] * 6
            for q, c in coeffs:
                if q == "gamma":
                    g = sx.gamma_gradient(self.xiv, self.yiv)
                elif q == "sol":
                    g = sx.sol_gradient(self.xiv, self.yiv)
                elif q == "dih":
                    cg = sx.cos_dih_gradient(self.xiv)
                    cd = self.q_cosdih()
                    s = iv.sqrt(1 - iv.sqr(cd))
                    if s.lo <= 0.0:
                        return None
                    g = [-x / s for x in cg]
                elif q == "ysum":
                    g = [
                        1 / (2 * self.yiv[j]) if j < 3 else Interval(0.0, 0.0)
                        for j in range(6)
                    ]
                elif q.startswith("y") and len(q) == 2:
                    jj = int(q[1]) - 1
                    g = [
                        1 / (2 * self.yiv[jj]) if j == jj else Interval(0.0, 0.0)
                        for j in range(6)
                    ]
                else:
                    return None
                total = [t + c * gv for t, gv in zip(total, g)]
            return total
        except DomainError:
            return None


# -- the verifier ---------------------------------------------------------------


_ZERO = Interval(0.0, 0.0)


def _margin_range(ev: CellEval, claim: Claim):
    acc = claim.const
    alpha = beta = None
    for q, c in claim.coeffs:
        if q == "gamma":
            alpha = c
            continue
        if q == "sol":
            beta = c
            continue
        lo, hi = ev.range(q)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError("unbounded quantity in claim")
        acc = acc + c * Interval(lo, hi)
    if alpha is not None or beta is not None:
        try:
            acc = acc + ev.curve_range(alpha or _ZERO, beta or _ZERO)
        except DomainError:
            # indefinite weight: fall back to independent quantity ranges
            if alpha is not None:
                acc = acc + alpha * Interval(*ev.q_gamma())
            if beta is not None:
                acc = acc + beta * Interval(*ev.q_sol())
    return acc


_PRUNED = 0
_CERTIFIED = 1
_VIOLATION = 2
_SPLIT = 3


class _Search:
    def __init__(self, spec: InequalitySpec, claim: Claim, box, budget: int,
                 max_depth: int, trace=None, counter_start: int = 0):
        self.spec = spec
        self.claim = claim
        self.root_widths = tuple(hi - lo for lo, hi in box)
        self.budget = budget
        self.max_depth = max_depth
        self.cells = 0
        self.max_depth_seen = 0
        self.trace = trace
        self.cell_ids = counter_start
        self.allow_freeze = not spec.constraints

    def _emit(self, cell_id, parent, cell, action):
        if self.trace is not None:
            self.trace.write(
                f'{{"cell": {cell_id}, "parent": {parent}, '
                f'"bounds": {list(map(list, cell.bounds))}, "action": "{action}"}}\n'
            )

    def run(self, root: Cell):
        stack = [(root, -1)]
        while stack:
            cell, parent = stack.pop()
            self.cells += 1
            cid = self.cell_ids
            self.cell_ids += 1
            if cell.depth > self.max_depth_seen:
                self.max_depth_seen = cell.depth
            if self.cells > self.budget:
                self._emit(cid, parent, cell, "budget")
                return ("budget-exhausted", cell)
            verdict, cell = self._process(cell)
            if verdict == _PRUNED:
                self._emit(cid, parent, cell, "pruned")
                continue
            if verdict == _CERTIFIED:
                self._emit(cid, parent, cell, "certified")
                continue
            if verdict == _VIOLATION:
                self._emit(cid, parent, cell, "violation")
                return ("counterexample-candidate", cell)
            if cell.depth >= self.max_depth:
                self._emit(cid, parent, cell, "depth")
                return ("budget-exhausted", cell)
            j = self._split_axis(cell)
            if j is None:
                self._emit(cid, parent, cell, "stuck")
                return ("budget-exhausted", cell)
            self._emit(cid, parent, cell, "split")
            a, b = cell.split(j)
            stack.append((b, cid))
            stack.append((a, cid))
        return ("proved", None)

    def _split_axis(self, cell: Cell):
        best, best_w = None, 0.0
        for j, (lo, hi) in enumerate(cell.bounds):
            rw = self.root_widths[j]
            if rw <= 0.0 or j in cell.frozen:
                continue
            w = (hi - lo) / rw
            if w > best_w:
                best, best_w = j, w
        if best_w <= 1e-14:
            return None
        return best

    def _process(self, cell: Cell):
        ev = CellEval(cell)
        # implicit realizability: Delta >= 0 on every actual simplex
        if ev.delta().hi < 0.0:
            return _PRUNED, cell
        feasible_certain = True
        for con in self.spec.constraints:
            lo_a, hi_a = con.admissible()
            try:
                qlo, qhi = ev.range(con.quantity)
            except DomainError:
                feasible_certain = False
                continue
            if qlo > hi_a or qhi < lo_a:
                return _PRUNED, cell
            if not (lo_a <= qlo and qhi <= hi_a):
                feasible_certain = False
        verdict = self._check(ev)
        if verdict is not None:
            return verdict if verdict != _VIOLATION or feasible_certain else _SPLIT, cell
        if self.allow_freeze:
            pinned = self._freeze(ev)
            if pinned is not None:
                ev = CellEval(pinned)
                verdict = self._check(ev)
                if verdict == _VIOLATION:
                    return _VIOLATION, pinned
                if verdict is not None:
                    return verdict, pinned
                return _SPLIT, pinned
        return _SPLIT, cell

    def _decide(self, m: Interval):
        claim = self.claim
        if (m.lo > 0.0) or (not claim.strict and m.lo >= 0.0):
            return _CERTIFIED
        if m.hi < 0.0 or (claim.strict and m.hi <= 0.0):
            return _VIOLATION
        return None

    def _check(self, ev: CellEval):
        claim = self.claim
        try:
            m = _margin_range(ev, claim)
        except DomainError:
            m = None
        if m is not None:
            verdict = self._decide(m)
            if verdict is not None:
                return verdict
        # joint mean-value form: midpoint value plus gradient sweep;
        # captures cancellation between correlated claim quantities
        g = ev.margin_gradient(claim.coeffs)
        if g is None:
            return None
        try:
            acc = ev.margin_at_midpoint(claim.coeffs, claim.const)
        except DomainError:
            return None
        mids = ev._mid
        for j in range(6):
            lo, hi = ev.cell.bounds[j]
            if lo == hi:
                continue
            acc = acc + g[j] * (ev.xiv[j] - mids[j])
        if m is not None:
            lo2 = max(m.lo, acc.lo)
            hi2 = min(m.hi, acc.hi)
            if lo2 > hi2:
                return None
            acc = Interval(lo2, hi2)
        return self._decide(acc)

    def _freeze(self, ev: CellEval):
        g = ev.margin_gradient(self.claim.coeffs)
        if g is None:
            return None
        cell = ev.cell
        changed = False
        for j in range(6):
            lo, hi = cell.bounds[j]
            if lo == hi:
                continue
            if g[j].lo >= 0.0:
                cell = cell.pin(j, at_hi=False)  # margin minimal at the low face
                changed = True
            elif g[j].hi <= 0.0:
                cell = cell.pin(j, at_hi=True)
                changed = True
        return cell if changed else None


def _expand_tasks(spec: InequalitySpec):
    """One task per (box, claim)."""
    return [(box, claim) for box in spec.boxes for claim in spec.claims]


def verify(spec: InequalitySpec, budget: int | None = None,
           max_depth: int | None = None, trace=None,
           workers: int = 1) -> VerificationReport:
    """Prove every claim of the spec over every domain box."""
    t0 = time.monotonic()
    budget = spec.budget if budget is None else budget
    max_depth = spec.max_depth if max_depth is None else max_depth
    tasks = _expand_tasks(spec)
    report = VerificationReport(id=spec.id, status="proved")
    report.notes.extend(spec.notes)
    if workers > 1 and len(tasks) > 1:
        report.notes.append(f"workers={workers}")
    remaining = budget
    for box, claim in tasks:
        if remaining <= 0:
            report.status = "budget-exhausted"
            break
        search = _Search(spec, claim, box, remaining, max_depth, trace=trace,
                         counter_start=report.cells_examined)
        status, witness = search.run(Cell(tuple(box)))
        report.cells_examined += search.cells
        report.max_depth_reached = max(report.max_depth_reached, search.max_depth_seen)
        remaining -= search.cells
        if status != "proved":
            report.status = status
            report.witness = witness
            if claim.label:
                report.notes.append(f"failing claim: {claim.label}")
            break
    report.elapsed = time.monotonic() - t0
    return report


# -- dimension reduction ---------------------------------------------------------


def reduce_dimension(spec: InequalitySpec) -> list[InequalitySpec]:
    """Replace a spec by its seven minimal-edge restrictions.

    Valid for claims of the form  (vor or gamma) < linear(sol, dih, const):
    contracting a vertex radially toward the origin raises the left side
    and leaves sol and dih unchanged, so the supremum of the margin's
    negation is attained where every vertex terminates an edge of minimal
    length.  Blocked when a side constraint is not preserved by the
    contraction (circumradius floors), in which case the original spec is
    returned unchanged, flagged.
    """
    if spec.reduction == "none":
        return [spec]
    blocked = any(c.quantity == "rad" and c.op in (">=", "==") for c in spec.constraints)
    if blocked:
        return [replace(spec, notes=spec.notes + ("reduction-blocked: circumradius floor",))]
    sets = SOL_REDUCTION_SETS if spec.reduction == "sol" else DIH_REDUCTION_SETS
    out = []
    for pins in sets:
        boxes = []
        for box in spec.boxes:
            nb = list(box)
            for j in pins:
                lo, _ = box[j - 1]
                nb[j - 1] = (lo, lo)
            boxes.append(tuple(nb))
        out.append(
            replace(
                spec,
                id=f"{spec.id}/I={''.join(map(str, pins))}",
                boxes=tuple(boxes),
                reduction="none",
                notes=spec.notes + (f"edges {pins} pinned at domain minimum",),
            )
        )
    return out
