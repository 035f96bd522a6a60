"""Self-affine surfaces over foldable figures.

A surface is specified by similitudes u_1..u_N mapping a polytope domain
onto its cells, polynomial data functions lambda_1..lambda_N, and a vertical
scaling s with |s| < 1.  The surface is the unique bounded fixed point of the
cell-wise transfer operator

    (B f)(x) = lambda_i(u_i^{-1} x) + s * f(u_i^{-1} x)   for x in cell i,

continuous whenever the data functions agree on the preimages of shared cell
faces.  All vertex and mesh computations are exact over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .fif import EvalResult
from .geometry import AffineIsometry, AffineMap, Mat, Vec
from .reflections import FoldableFigure, fold

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# multivariate polynomials: dict {exponent tuple: Fraction}
# ---------------------------------------------------------------------------


def poly_val(p: dict, x: Sequence) -> Fraction:
    total = Fraction(0)
    for expo, c in p.items():
        term = c
        for xi, e in zip(x, expo):
            for _ in range(e):
                term *= xi
        total += term
    return total


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for expo, c in q.items():
        v = out.get(expo, ZERO) + c
        if v:
            out[expo] = v
        else:
            out.pop(expo, None)
    return out


def poly_scale(p: dict, c) -> dict:
    c = Fraction(c)
    if c == 0:
        return {}
    return {expo: v * c for expo, v in p.items()}


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            expo = tuple(a + b for a, b in zip(ea, eb))
            v = out.get(expo, ZERO) + ca * cb
            if v:
                out[expo] = v
            else:
                out.pop(expo, None)
    return out


def poly_degree(p: dict) -> int:
    return max((sum(expo) for expo, c in p.items() if c), default=0)


def poly_compose_affine(p: dict, amap: AffineMap) -> dict:
    """p(Ax + b) expanded in the monomial basis."""
    n = amap.dim
    subs = []
    for k in range(n):
        row = {(0,) * n: Fraction(amap.shift[k])}
        for j in range(n):
            c = Fraction(amap.linear.rows[k][j])
            if c:
                expo = [0] * n
                expo[j] = 1
                row[tuple(expo)] = c
        subs.append(row)
    out: dict = {}
    for expo, c in p.items():
        term = {(0,) * n: Fraction(c)}
        for k, e in enumerate(expo):
            for _ in range(e):
                term = poly_mul(term, subs[k])
        out = poly_add(out, term)
    return {e: v for e, v in out.items() if v}


def as_poly(obj, dim: int) -> dict:
    """Normalize data to a monomial dict; tuples are affine (c0, c1..cn)."""
    if isinstance(obj, dict):
        return {tuple(int(e) for e in expo): Fraction(c) for expo, c in obj.items() if c}
    coeffs = [Fraction(c) for c in obj]
    if len(coeffs) != dim + 1:
        raise ValueError("affine data needs 1 + dim coefficients")
    p = {}
    if coeffs[0]:
        p[(0,) * dim] = coeffs[0]
    for j, c in enumerate(coeffs[1:]):
        if c:
            expo = [0] * dim
            expo[j] = 1
            p[tuple(expo)] = c
    return p


def _solve_exact(rows: list, rhs: list) -> list:
    """Gaussian elimination over Fractions for a square system."""
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular linear system")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def affine_from_values(points: Sequence, values: Sequence) -> dict:
    """The affine polynomial through (point, value) pairs; dim+1 points."""
    dim = len(points[0])
    if len(points) != dim + 1 or len(values) != dim + 1:
        raise ValueError("affine interpolation needs dim+1 samples")
    rows = [[ONE] + list(p) for p in points]
    coeffs = _solve_exact(rows, list(values))
    return as_poly(coeffs, dim)


# ---------------------------------------------------------------------------
# exact polynomial integrals over simplices and boxes
# ---------------------------------------------------------------------------


def _standard_simplex_integral(expo: tuple) -> Fraction:
    num = 1
    for a in expo:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(len(expo) + sum(expo)))


def _box_bounds(vertices: Sequence) -> Optional[list]:
    dim = len(vertices[0])
    if len(vertices) != 2 ** dim:
        return None
    los = [min(v[i] for v in vertices) for i in range(dim)]
    his = [max(v[i] for v in vertices) for i in range(dim)]
    corners = {tuple(v) for v in vertices}
    expect = {()}
    for lo, hi in zip(los, his):
        expect = {c + (t,) for c in expect for t in (lo, hi)}
    return list(zip(los, his)) if corners == expect else None


def domain_integral(p: dict, vertices: Sequence) -> Fraction:
    """Exact integral of a polynomial over a simplex or an axis box."""
    verts = [Vec(Fraction(a) for a in v) for v in vertices]
    dim = len(verts[0])
    if len(verts) == dim + 1:
        edges = Mat([[verts[k + 1][i] - verts[0][i] for k in range(dim)] for i in range(dim)])
        chart = AffineMap(edges, verts[0])
        q = poly_compose_affine(p, chart)
        vol = abs(edges.det())
        return vol * sum((c * _standard_simplex_integral(expo) for expo, c in q.items()), ZERO)
    box = _box_bounds(verts)
    if box is not None:
        total = Fraction(0)
        for expo, c in p.items():
            term = c
            for (lo, hi), e in zip(box, expo):
                term *= Fraction(hi ** (e + 1) - lo ** (e + 1), e + 1)
            total += term
        return total
    raise ValueError("domain must be a simplex or an axis-aligned box")


# ---------------------------------------------------------------------------
# surface specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SurfaceSpec:
    """Domain polytope, cell similitudes, polynomial data, vertical scaling."""

    vertices: tuple
    maps: tuple
    data: tuple
    scaling: Fraction

    def __post_init__(self):
        verts = tuple(Vec(Fraction(a) for a in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "maps", tuple(self.maps))
        dim = len(verts[0])
        object.__setattr__(self, "data", tuple(as_poly(d, dim) for d in self.data))
        object.__setattr__(self, "scaling", Fraction(self.scaling))
        if abs(self.scaling) >= 1:
            raise ValueError("vertical scaling must satisfy |s| < 1")
        if len(self.data) != len(self.maps):
            raise ValueError("one data function per similitude required")
        inverses = tuple(u.inverse() for u in self.maps)
        object.__setattr__(self, "_inverses", inverses)
        if len(verts) == dim + 1:
            edges = Mat([[verts[k + 1][i] - verts[0][i] for k in range(dim)] for i in range(dim)])
            object.__setattr__(self, "_chart_inv", AffineMap(edges, verts[0]).inverse())
            object.__setattr__(self, "_box", None)
        else:
            box = _box_bounds(verts)
            if box is None:
                raise ValueError("domain must be a simplex or an axis-aligned box")
            object.__setattr__(self, "_chart_inv", None)
            object.__setattr__(self, "_box", box)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def contains(self, x: Sequence) -> bool:
        x = Vec(Fraction(a) for a in x)
        if self._box is not None:
            return all(lo <= xi <= hi for xi, (lo, hi) in zip(x, self._box))
        t = self._chart_inv.apply(x)
        return all(ti >= 0 for ti in t) and sum(t) <= 1

    def cell_of(self, x: Sequence) -> int:
        for i, inv in enumerate(self._inverses):
            if self.contains(inv.apply(x)):
                return i
        raise ValueError("point is outside the domain")

    def cell_vertices(self, i: int) -> tuple:
        return tuple(self.maps[i].apply(v) for v in self.vertices)

    def with_data(self, data: Sequence) -> "SurfaceSpec":
        return SurfaceSpec(self.vertices, self.maps, tuple(data), self.scaling)

    def data_bound(self) -> Fraction:
        """sup over cells of |lambda_i| on the domain (coarse for degree > 1)."""
        big = max(max(abs(c) for c in v) for v in self.vertices)
        radius = max(ONE, big)
        peak = Fraction(0)
        for p in self.data:
            if poly_degree(p) <= 1:
                peak = max(peak, max((abs(poly_val(p, v)) for v in self.vertices), default=ZERO))
            else:
                peak = max(peak, sum((abs(c) * radius ** sum(expo) for expo, c in p.items()), ZERO))
        return peak


# ---------------------------------------------------------------------------
# face agreement of the data functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceViolation:
    cells: tuple
    point: Vec
    left: Fraction
    right: Fraction


@dataclass(frozen=True)
class ConditionReport:
    valid: bool
    violations: tuple


def shared_faces(spec: SurfaceSpec) -> list:
    """Pairs (i, j, shared cell vertices) for cells meeting along a facet."""
    cells = [set(spec.cell_vertices(i)) for i in range(len(spec.maps))]
    out = []
    for i, j in combinations(range(len(cells)), 2):
        common = sorted(cells[i] & cells[j])
        if len(common) >= spec.dim:
            out.append((i, j, tuple(common)))
    return out


def _face_samples(points: tuple, degree: int) -> list:
    steps = degree + 1
    grid = [Fraction(k, steps) for k in range(steps + 1)]
    base = points[0]
    dirs = [p - base for p in points[1:]]
    samples = [base]
    if not dirs:
        return samples
    combos = [()]
    for _ in dirs:
        combos = [c + (t,) for c in combos for t in grid]
    out = []
    for c in combos:
        if sum(c) <= 1:
            pt = base
            for t, d in zip(c, dirs):
                pt = pt + d.scale(t)
            out.append(pt)
    return out


def validate_condition_star(spec: SurfaceSpec) -> ConditionReport:
    """Check the data functions agree on preimages of shared cell faces."""
    degree = max((poly_degree(p) for p in spec.data), default=0)
    violations = []
    for i, j, common in shared_faces(spec):
        for pt in _face_samples(common, degree):
            left = poly_val(spec.data[i], spec._inverses[i].apply(pt))
            right = poly_val(spec.data[j], spec._inverses[j].apply(pt))
            if left != right:
                violations.append(FaceViolation((i, j), pt, left, right))
    return ConditionReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# the surface itself
# ---------------------------------------------------------------------------


class FractalSurface:
    """Fixed point of the cell-wise transfer operator over the domain."""

    def __init__(self, spec: SurfaceSpec):
        self.spec = spec
        self._memo: dict = {}

    def bound(self) -> Fraction:
        return self.spec.data_bound() / (1 - abs(self.spec.scaling))

    def _resolve_chain(self, x: Vec, max_chain: int):
        """Exact value via the pull-back chain; None when no cycle closes."""
        if x in self._memo:
            return self._memo[x]
        chain = []  # (point, data value at pulled point)
        index_of: dict = {}
        s = self.spec.scaling
        z = x
        for step in range(max_chain):
            if z in self._memo:
                value = self._memo[z]
                break
            if z in index_of:
                j = index_of[z]
                C, S = Fraction(0), Fraction(1)
                for _, A in chain[j:]:
                    C = C + S * A
                    S = S * s
                value = C / (1 - S)
                self._memo[z] = value
                break
            index_of[z] = step
            i = self.spec.cell_of(z)
            z_next = self.spec._inverses[i].apply(z)
            chain.append((z, poly_val(self.spec.data[i], z_next)))
            z = z_next
        else:
            return None
        for pt, A in reversed(chain[: index_of.get(z, len(chain))]):
            value = A + s * value
            self._memo[pt] = value
        return self._memo[x]

    def evaluate(self, x: Sequence, depth: int = 64) -> EvalResult:
        """Exact where the pull-back orbit closes; certified interval otherwise."""
        x = Vec(Fraction(a) for a in x)
        if not self.spec.contains(x):
            raise ValueError("point is outside the domain")
        exact = self._resolve_chain(x, depth)
        if exact is not None:
            return EvalResult(exact, 0.0)
        s = self.spec.scaling
        z = x
        A, S = Fraction(0), Fraction(1)
        for _ in range(depth):
            i = self.spec.cell_of(z)
            z = self.spec._inverses[i].apply(z)
            A = A + S * poly_val(self.spec.data[i], z)
            S = S * s
        return EvalResult(A, float(abs(S) * self.bound()))

    def value_at(self, x: Sequence) -> Fraction:
        res = self.evaluate(x)
        if res.error_bound != 0.0:
            raise ArithmeticError("pull-back orbit did not close at this point")
        return res.value

    def vertex_values(self) -> dict:
        """Exact values at the domain vertices, cross-checked over all cells."""
        vals = {v: self.value_at(v) for v in self.spec.vertices}
        s = self.spec.scaling
        for i, u in enumerate(self.spec.maps):
            for v in self.spec.vertices:
                w = u.apply(v)
                expect = poly_val(self.spec.data[i], v) + s * vals[v]
                if w in vals and vals[w] != expect:
                    raise ArithmeticError("cell relations disagree at a vertex")
        return vals

    def mesh(self, depth: int) -> dict:
        """Exact values on the depth-times refined vertex set.

        Raises when two cells force different values at a shared point, so a
        successful build doubles as a continuity consistency check.
        """
        cur = self.vertex_values()
        s = self.spec.scaling
        for _ in range(depth):
            nxt: dict = {}
            for i, u in enumerate(self.spec.maps):
                lam = self.spec.data[i]
                for p, val in cur.items():
                    q = u.apply(p)
                    nv = poly_val(lam, p) + s * val
                    old = nxt.get(q)
                    if old is not None and old != nv:
                        raise ArithmeticError("inconsistent values at a shared mesh point")
                    nxt[q] = nv
            cur = nxt
        return cur

    def level1_values(self) -> dict:
        """Values at the outer and inner vertices of the first refinement."""
        vals = dict(self.vertex_values())
        vals.update(self.mesh(1))
        return vals

    def operator_iterates(self, depth: int, steps: int) -> list:
        """Sup-norm gaps of successive transfer-operator iterates from zero."""
        maps = self.spec.maps
        cur = set(self.spec.vertices)
        parent: dict = {}
        for _ in range(depth):
            nxt: dict = {}
            for i, u in enumerate(maps):
                for p in cur:
                    nxt.setdefault(u.apply(p), (i, p))
            parent = nxt
            cur = set(nxt)
        pts = sorted(cur)
        index = {p: k for k, p in enumerate(pts)}
        pulled = []
        for p in pts:
            i, src = parent.get(p, (None, None)) if parent else (None, None)
            if src is None or src not in index:
                i = self.spec.cell_of(p)
                src = self.spec._inverses[i].apply(p)
            pulled.append((float(poly_val(self.spec.data[i], src)), index[src]))
        s = float(self.spec.scaling)
        g = [0.0] * len(pts)
        gaps = []
        for _ in range(steps):
            ng = [lam + s * g[k] for lam, k in pulled]
            gaps.append(max(abs(a - b) for a, b in zip(ng, g)))
            g = ng
        return gaps


def fixed_point(spec: SurfaceSpec, depth: int = 0) -> FractalSurface:
    """The surface determined by the spec; insists on face agreement."""
    report = validate_condition_star(spec)
    if not report.valid:
        raise ValueError(f"data functions disagree on {len(report.violations)} face samples")
    surf = FractalSurface(spec)
    if depth:
        surf.mesh(depth)
    return surf


# ---------------------------------------------------------------------------
# vertex basis surfaces and refinement
# ---------------------------------------------------------------------------


def level_one_vertices(spec: SurfaceSpec) -> list:
    """Outer vertices followed by the inner first-refinement vertices."""
    outer = list(spec.vertices)
    inner = sorted({u.apply(v) for u in spec.maps for v in spec.vertices} - set(outer))
    return outer + inner


def basis_surfaces(spec: SurfaceSpec) -> dict:
    """Cardinal surfaces, one per outer or inner vertex of the refinement.

    The data function on each cell is forced by affine interpolation of the
    prescribed vertex values; this is available for simplex domains where
    dim+1 vertex conditions pin an affine function exactly.
    """
    if len(spec.vertices) != spec.dim + 1:
        raise ValueError("vertex basis construction needs a simplex domain")
    pts = level_one_vertices(spec)
    s = spec.scaling
    out = {}
    for nu in pts:
        zvals = {p: (ONE if p == nu else ZERO) for p in pts}
        data = []
        for u in spec.maps:
            samples = [zvals[u.apply(v)] - s * zvals[v] for v in spec.vertices]
            data.append(affine_from_values(spec.vertices, samples))
        surf = FractalSurface(spec.with_data(data))
        surf.mesh(1)  # consistency check at the refinement vertices
        out[nu] = surf
    return out


class RefinedSurface:
    """A surface restricted to the subcell of a composition word."""

    def __init__(self, word: Sequence, surface: FractalSurface):
        spec = surface.spec
        word = tuple(int(i) for i in word)
        if any(i < 0 or i >= len(spec.maps) for i in word):
            raise ValueError("word indices out of range")
        self.word = word
        self.surface = surface
        cell = None
        for i in word:
            cell = spec.maps[i] if cell is None else cell.compose(spec.maps[i])
        self.cell_map = cell  # None for the empty word

    def evaluate(self, x: Sequence, depth: int = 64) -> EvalResult:
        spec = self.surface.spec
        y = Vec(Fraction(a) for a in x)
        total, scale = Fraction(0), Fraction(1)
        for i in self.word:
            y = spec._inverses[i].apply(y)
            total += scale * poly_val(spec.data[i], y)
            scale *= spec.scaling
        inner = self.surface.evaluate(y, depth)
        return EvalResult(total + scale * inner.value, float(abs(scale)) * inner.error_bound)


def refine_basis(word: Sequence, surfaces) -> list:
    """Restrict a family of surfaces to the subcell named by the word."""
    family = surfaces.values() if isinstance(surfaces, dict) else surfaces
    return [RefinedSurface(word, f) for f in family]


# ---------------------------------------------------------------------------
# exact inner products via moment recursion
# ---------------------------------------------------------------------------


def _monomials_upto(dim: int, degree: int) -> list:
    expos = [()]
    for _ in range(dim):
        expos = [e + (k,) for e in expos for k in range(degree + 1)]
    return sorted(e for e in expos if sum(e) <= degree)


def moments(surface: FractalSurface, degree: int) -> dict:
    """Exact integrals of the surface against monomials up to a degree."""
    spec = surface.spec
    degree = max(degree, max(poly_degree(p) for p in spec.data))
    expos = _monomials_upto(spec.dim, degree)
    pos = {e: k for k, e in enumerate(expos)}
    n = len(expos)
    dets = [abs(u.linear.det()) for u in spec.maps]
    if sum(dets) != 1:
        raise ValueError("cells must tile the domain")
    s = spec.scaling
    # M_p = sum_i det_i * ( integral(lambda_i * p(u_i .)) + s * M_{p(u_i .)} )
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    rhs = [ZERO] * n
    for r, e in enumerate(expos):
        mono = {e: ONE}
        for i, u in enumerate(spec.maps):
            comp = poly_compose_affine(mono, u)
            rhs[r] += dets[i] * domain_integral(poly_mul(spec.data[i], comp), spec.vertices)
            for ce, cc in comp.items():
                rows[r][pos[ce]] -= dets[i] * s * cc
    sol = _solve_exact(rows, rhs)
    return {e: sol[pos[e]] for e in expos}


def inner_product(f: FractalSurface, g: FractalSurface) -> Fraction:
    """Exact L2 inner product over the domain; same similitudes required."""
    sf, sg = f.spec, g.spec
    if sf.maps != sg.maps or sf.vertices != sg.vertices:
        raise ValueError("surfaces must share domain and similitudes")
    degree = max(max(poly_degree(p) for p in sf.data), max(poly_degree(p) for p in sg.data))
    mf = moments(f, degree)
    mg = moments(g, degree)
    dets = [abs(u.linear.det()) for u in sf.maps]
    total = Fraction(0)
    for i in range(len(sf.maps)):
        lam_f, lam_g = sf.data[i], sg.data[i]
        term = domain_integral(poly_mul(lam_f, lam_g), sf.vertices)
        term += sg.scaling * sum((c * mg[e] for e, c in lam_f.items()), ZERO)
        term += sf.scaling * sum((c * mf[e] for e, c in lam_g.items()), ZERO)
        total += dets[i] * term
    return total / (1 - sf.scaling * sg.scaling)


def gram_matrix(surfaces) -> list:
    family = list(surfaces.values() if isinstance(surfaces, dict) else surfaces)
    n = len(family)
    g = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            g[a][b] = g[b][a] = inner_product(family[a], family[b])
    return g


# ---------------------------------------------------------------------------
# global extension over a reflection tessellation
# ---------------------------------------------------------------------------


class GlobalSurface:
    """Per-cell surfaces stitched over a reflection tessellation.

    The table assigns to each tessellation isometry (keyed canonically) the
    data tuple of the surface on that cell; evaluation folds the query point
    into the base figure and reads the matching surface there.  Points on a
    reflection hyperplane have no canonical cell and evaluate to None.
    """

    def __init__(self, figure: FoldableFigure, template: SurfaceSpec, table: dict):
        self.figure = figure
        self.template = template
        self._table = {}
        for key, data in table.items():
            if isinstance(key, AffineIsometry):
                key = key.key()
            self._table[key] = tuple(as_poly(d, template.dim) for d in data)
        self._cache: dict = {}

    def cell_key(self, x: Sequence):
        return fold(self.figure, x).isometry.key()

    def evaluate(self, x: Sequence, depth: int = 64) -> Optional[EvalResult]:
        res = fold(self.figure, x)
        if self.figure.on_boundary(res.point):
            return None
        key = res.isometry.key()
        if key not in self._table:
            raise KeyError("no data assigned to the cell containing the point")
        surf = self._cache.get(key)
        if surf is None:
            surf = FractalSurface(self.template.with_data(self._table[key]))
            self._cache[key] = surf
        return surf.evaluate(res.point, depth)


def extend_global(template: SurfaceSpec, figure: FoldableFigure, table: dict) -> GlobalSurface:
    return GlobalSurface(figure, template, table)


def constant_extension(spec: SurfaceSpec, figure: FoldableFigure, keys) -> GlobalSurface:
    """The same cell data on every listed tessellation cell."""
    table = {key: spec.data for key in keys}
    return GlobalSurface(figure, spec, table)


# ---------------------------------------------------------------------------
# built-in figures and fixtures
# ---------------------------------------------------------------------------

TRIANGLE_VERTICES = ((0, 0), (1, 0), (0, 1))


def quarter_triangle_maps() -> tuple:
    """Four similitudes carrying the right triangle onto its half-scale cells.

    Cells 1 and 4 are translates of the scaled triangle; cells 2 and 3 are
    its reflections, so adjacent cells are mirror images across the cuts
    x = 1/2, y = 1/2 and y = x.
    """
    h = Fraction(1, 2)
    return (
        AffineMap(Mat([[h, 0], [0, h]]), Vec((h, ZERO))),
        AffineMap(Mat([[-h, 0], [0, h]]), Vec((h, ZERO))),
        AffineMap(Mat([[h, 0], [0, -h]]), Vec((ZERO, h))),
        AffineMap(Mat([[h, 0], [0, h]]), Vec((ZERO, h))),
    )


def triangle_spec(data: Sequence, scaling) -> SurfaceSpec:
    return SurfaceSpec(TRIANGLE_VERTICES, quarter_triangle_maps(), tuple(data), scaling)


def fixture(name: str) -> SurfaceSpec:
    """Named example surfaces selectable from the command line."""
    if name == "ex5.2":
        lam_a = (Fraction(1, 5), Fraction(-1, 5), Fraction(3, 10))
        lam_b = (Fraction(3, 10), Fraction(1, 5), Fraction(-3, 10))
        return triangle_spec((lam_a, lam_a, lam_b, lam_b), Fraction(3, 5))
    raise KeyError(f"unknown surface fixture: {name}")
