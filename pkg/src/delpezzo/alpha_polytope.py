"""Exact volume of the height-condition polytope and the constant alpha.

After substituting t_i = B^{u_i}, the leading-term height integral

    J(B) = int_{t_i >= 1, t1^2 t2 t3^2 <= B, t1^-1 t2^4 t3^2 t4^6 <= B}
           B / (t1 t2 t3 t4) dt

becomes B (log B)^4 vol(P) for the rational polytope

    P = {u >= 0, 2u1 + u2 + 2u3 <= 1, -u1 + 4u2 + 2u3 + 6u4 <= 1}.

The predicted constant has alpha = 1/1728, and the counting main term uses
J(B) = 3 alpha B (log B)^4, i.e.

    vol(P) = 3 alpha = 1/576

(verified here three ways: exact triangulation, iterated exact integration in
the tests, and Monte Carlo).  The volume is computed exactly: vertices by
solving all 4-subsets of the 6 facet hyperplanes in rational arithmetic, then
a recursive cone triangulation over the face lattice with exact simplex
determinants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

ALPHA = Fraction(1, 1728)


@dataclass
class HPolytope:
    """{u : A u <= b}, rows as (coeffs, rhs); nonnegativity rows included."""

    inequalities: list[tuple[tuple[Fraction, ...], Fraction]]

    @property
    def dim(self) -> int:
        return len(self.inequalities[0][0])

    def contains(self, u) -> bool:
        u = [Fraction(x) for x in u]
        return all(
            sum(c * x for c, x in zip(coeffs, u)) <= rhs
            for coeffs, rhs in self.inequalities
        )


def v0_polytope() -> HPolytope:
    """The u-space region of the leading-term integral."""
    f = Fraction
    rows: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for i in range(4):
        coeffs = tuple(f(-1) if j == i else f(0) for j in range(4))
        rows.append((coeffs, f(0)))  # u_i >= 0
    rows.append(((f(2), f(1), f(2), f(0)), f(1)))
    rows.append(((f(-1), f(4), f(2), f(6)), f(1)))
    return HPolytope(rows)


def _solve_square(rows: list[tuple[tuple[Fraction, ...], Fraction]]):
    """Solve the square rational system; None if singular."""
    d = len(rows)
    M = [list(coeffs) + [rhs] for coeffs, rhs in rows]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(d):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [x - factor * y for x, y in zip(M[r], M[col])]
    return tuple(M[r][d] for r in range(d))


def vertices(P: HPolytope) -> list[tuple[Fraction, ...]]:
    """All vertices by exhaustive facet-subset intersection."""
    d = P.dim
    out: set[tuple[Fraction, ...]] = set()
    for subset in itertools.combinations(range(len(P.inequalities)), d):
        rows = [P.inequalities[i] for i in subset]
        v = _solve_square(rows)
        if v is not None and P.contains(v):
            out.add(v)
    return sorted(out)


def _affine_rank(points: list[tuple[Fraction, ...]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    vecs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    pivot_rows: list[list[Fraction]] = []
    for vec in vecs:
        v = vec[:]
        for pr in pivot_rows:
            lead = next((j for j in range(ncols) if pr[j] != 0), None)
            if lead is not None and v[lead] != 0:
                f = v[lead] / pr[lead]
                v = [a - f * b for a, b in zip(v, pr)]
        if any(x != 0 for x in v):
            pivot_rows.append(v)
            rank += 1
    return rank


def _simplex_volume(simplex: list[tuple[Fraction, ...]]) -> Fraction:
    d = len(simplex) - 1
    base = simplex[0]
    M = [[x - b for x, b in zip(p, base)] for p in simplex[1:]]
    # exact determinant by fraction-free-ish Gaussian elimination
    det = Fraction(1)
    M = [row[:] for row in M]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        inv = 1 / M[col][col]
        for r in range(col + 1, d):
            if M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return abs(det) / factorial(d)


def _triangulate_face(
    P: HPolytope,
    verts: list[tuple[Fraction, ...]],
    tight: frozenset[int],
    dim: int,
    anchor_order: int,
) -> list[list[tuple[Fraction, ...]]]:
    """Cone triangulation of the face with the given tight-inequality set."""
    if dim == 0 or len(verts) == dim + 1:
        return [list(verts)]
    verts = sorted(verts)
    v0 = verts[0] if anchor_order == 0 else verts[-1]
    simplices = []
    for i, (coeffs, rhs) in enumerate(P.inequalities):
        if i in tight:
            continue
        sub = [
            v for v in verts if sum(c * x for c, x in zip(coeffs, v)) == rhs
        ]
        if len(sub) < dim or _affine_rank(sub) != dim - 1:
            continue
        if v0 in sub:
            continue
        for s in _triangulate_face(P, sub, tight | {i}, dim - 1, anchor_order):
            simplices.append([v0] + s)
    return simplices


def exact_volume(P: HPolytope, anchor_order: int = 0) -> Fraction:
    """Exact volume of a bounded H-polytope (errors if unbounded).

    anchor_order selects the cone apex at each recursion level; any choice
    must give the same volume (triangulation-order independence check).
    """
    verts = vertices(P)
    if not verts:
        return Fraction(0)
    if not _is_bounded(P):
        raise ValueError("polytope is unbounded")
    d = P.dim
    if _affine_rank(verts) < d:
        return Fraction(0)
    total = Fraction(0)
    for simplex in _triangulate_face(P, verts, frozenset(), d, anchor_order):
        total += _simplex_volume(simplex)
    return total


def _is_bounded(P: HPolytope) -> bool:
    # bounded <=> the recession cone {d : A d <= 0} is trivial; probe with an
    # LP maximizing a box-bounded recession direction
    from scipy.optimize import linprog

    A = [[float(c) for c in coeffs] for coeffs, _ in P.inequalities]
    d = P.dim
    for sign in (1.0, -1.0):
        res = linprog(
            c=[sign] * d,
            A_ub=A,
            b_ub=[0.0] * len(A),
            bounds=[(-1.0, 1.0)] * d,
            method="highs",
        )
        if res.status == 0 and abs(res.fun) > 1e-9:
            return False
    return True


def v0_volume() -> Fraction:
    """vol(P) for the height polytope; equals 3 * alpha = 1/576."""
    return exact_volume(v0_polytope())


def polytope_mc_volume(P: HPolytope, samples: int, seed: int, box=None):
    """Hit-rate Monte Carlo volume estimate with standard error."""
    rng = np.random.default_rng(seed)
    d = P.dim
    if box is None:
        box = _bounding_box(P)
    lo = np.array([float(l) for l, _ in box])
    hi = np.array([float(h) for _, h in box])
    box_vol = float(np.prod(hi - lo))
    pts = rng.random((samples, d)) * (hi - lo) + lo
    A = np.array([[float(c) for c in coeffs] for coeffs, _ in P.inequalities])
    b = np.array([float(rhs) for _, rhs in P.inequalities])
    inside = np.all(pts @ A.T <= b + 0.0, axis=1)
    rate = inside.mean()
    est = box_vol * rate
    stderr = box_vol * float(np.sqrt(max(rate * (1 - rate), 1e-12) / samples))
    return est, stderr


def _bounding_box(P: HPolytope):
    verts = vertices(P)
    d = P.dim
    return [
        (min(v[i] for v in verts), max(v[i] for v in verts)) for i in range(d)
    ]


def v0_montecarlo(B: float, samples: int, seed: int):
    """Direct MC estimate of the t-space height integral J(B), with standard
    error; compare against 3 * alpha * B * (log B)^4 = vol(P) B (log B)^4.

    Sampled uniformly on the box [1, B^(1/2)] x [1, B^(1/3)] x [1, B^(1/2)]
    x [1, B^(1/6)] containing the region (the exponents bound each t_i from
    the two constraints and t_i >= 1).
    """
    if B <= 1:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    his = [B ** (1 / 2), B ** (1 / 3), B ** (1 / 2), B ** (1 / 6)]
    t = rng.random((samples, 4)) * (np.array(his) - 1.0) + 1.0
    t1, t2, t3, t4 = t.T
    inside = (t1**2 * t2 * t3**2 <= B) & (t2**4 * t3**2 * t4**6 <= B * t1)
    vals = np.where(inside, B / (t1 * t2 * t3 * t4), 0.0)
    box_vol = float(np.prod(np.array(his) - 1.0))
    est = box_vol * float(vals.mean())
    stderr = box_vol * float(vals.std(ddof=1)) / np.sqrt(samples)
    return est, stderr
