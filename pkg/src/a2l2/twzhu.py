"""Projection of vacuum-module states onto the envelope of the even part.

The grading by the involution assigns even factors integral weights and odd
factors half-integral ones; projecting a normal-ordered state to the degree
zero part of the associated associative algebra follows four rules:

  * the vacuum maps to the unit;
  * a monomial with an odd number of odd factors maps to zero;
  * an even factor at depth d multiplies the projection of the rest by the
    factor itself, on the right, with sign (-1)^(d-1);
  * an odd factor at depth d is traded for shallower states through the
    binomial expansion of (1+z)^(1/2): minus the sum over j >= 1 of
    binom(1/2, j) times the projection of the state with that factor moved
    to mode (-d+j).

The image of the degree-2 singular vector, its partner under one lowering
step, and the resulting highest-weight eigenvalue polynomials are computed
here, together with closed forms to compare against.
"""

from __future__ import annotations

from fractions import Fraction

from .envelope import (
    CartanPoly,
    PBWAlgebra,
    UEAElt,
    pbw_algebra,
    uea_combine,
    uea_scale,
    uea_unit,
)
from .liealg import E, LieElt, b_type_generators, eplus
from .linalg import SpanSolver, rank_of
from .vacuum import (
    ModeBasis,
    Monomial,
    VermaState,
    convert_state,
    level_for,
    mode_action,
    singular_vector,
    split_mode_basis,
    standard_mode_basis,
)


def _binom_half(j: int) -> Fraction:
    """binom(1/2, j) -- the twist has order 2, whence the exponent 1/2."""
    num = Fraction(1)
    for t in range(j):
        num *= Fraction(1, 2) - t
    for t in range(2, j + 1):
        num /= t
    return num


def _total_depth(mono: Monomial) -> int:
    return sum(d for _, d in mono)


class ProjectionContext:
    """Caches for projecting states of one rank at the special level."""

    def __init__(self, l: int, use_odd_shortcut: bool = True) -> None:
        self.l = l
        self.level_k = level_for(l)
        self.alg: PBWAlgebra = pbw_algebra(l)
        self.split: ModeBasis = split_mode_basis(l)
        self.std: ModeBasis = standard_mode_basis(l)
        self.use_odd_shortcut = use_odd_shortcut
        self.memo: dict[Monomial, UEAElt] = {}
        self._image: UEAElt | None = None
        self._v1: UEAElt | None = None
        self._r0: list[UEAElt] | None = None

    # ------------------------------------------------------------ rules

    def _odd_count(self, mono: Monomial) -> int:
        g0 = self.split.g0_count
        return sum(1 for idx, _ in mono if idx >= g0)

    def project_monomial(self, mono: Monomial) -> UEAElt:
        cached = self.memo.get(mono)
        if cached is not None:
            return dict(cached)
        if not mono:
            result = uea_unit()
        elif self.use_odd_shortcut and self._odd_count(mono) % 2 == 1:
            result = {}
        else:
            (idx, depth), rest = mono[0], mono[1:]
            if idx < self.split.g0_count:
                rest_proj = self.project_monomial(rest)
                prod = self.alg.mul(rest_proj, {(idx,): Fraction(1)})
                result = uea_scale(prod, -1 if (depth - 1) % 2 else 1)
            else:
                result = {}
                rest_state = VermaState(
                    self.split, self.level_k, {rest: Fraction(1)}
                )
                jmax = depth + _total_depth(rest)
                for j in range(1, jmax + 1):
                    moved = mode_action(
                        (self.split.elems[idx], -depth + j), rest_state
                    )
                    if moved.is_zero():
                        continue
                    sub: UEAElt = {}
                    for m2, c2 in moved.terms.items():
                        uea_combine(sub, self.project_monomial(m2), c2)
                    uea_combine(result, sub, -_binom_half(j))
        self.memo[mono] = result
        return dict(result)


def projection_context(l: int, use_odd_shortcut: bool = True) -> ProjectionContext:
    return ProjectionContext(l, use_odd_shortcut)


def project(s: VermaState, ctx: ProjectionContext) -> UEAElt:
    """Project a state onto the envelope of the even part."""
    if s.basis.labels != ctx.split.labels:
        s = convert_state(s, ctx.split)
    if s.k != ctx.level_k:
        raise ValueError("state level does not match the context")
    out: UEAElt = {}
    for mono, c in s.terms.items():
        uea_combine(out, ctx.project_monomial(mono), c)
    return out


# -------------------------------------------------------- singular image


def zhu_singular_image(ctx: ProjectionContext) -> UEAElt:
    """Projection of the degree-2 singular vector."""
    if ctx._image is None:
        ctx._image = project(singular_vector(ctx.l), ctx)
    return dict(ctx._image)


def zhu_image_closed_form(ctx: ProjectionContext) -> UEAElt:
    """Sum over i < 2l of (even part of E[i+1,2l+1]) * (even part of E[1,i+1])."""
    l, alg = ctx.l, ctx.alg
    n = 2 * l + 1
    out: UEAElt = {}
    for i in range(1, 2 * l):
        a = alg.lie2uea(eplus(l, i + 1, n))
        b = alg.lie2uea(eplus(l, 1, i + 1))
        uea_combine(out, alg.mul(a, b))
    return out


# ------------------------------------------------------- lowered partner


def compute_v1(ctx: ProjectionContext) -> UEAElt:
    """Twice the adjoint action of the middle-column lowering element on
    the singular image."""
    if ctx._v1 is None:
        l = ctx.l
        n = 2 * l + 1
        sign = 1 if l % 2 == 0 else -1  # (-1)^l
        x = E(n, l + 1, 1) - sign * E(n, n, l + 1)
        ctx._v1 = uea_scale(ctx.alg.ad(x, zhu_singular_image(ctx)), 2)
    return dict(ctx._v1)


def v1_closed_form(ctx: ProjectionContext) -> UEAElt:
    """Four-block closed expression for the lowered image, multiplied out
    factor by factor in the written order."""
    l, alg = ctx.l, ctx.alg
    n = 2 * l + 1
    sign_l = Fraction(1 if l % 2 == 0 else -1)

    def left_factor(i: int) -> LieElt:
        return E(n, 1, i + 1) - (-1) ** i * E(n, n - i, n)

    def right_factor(i: int) -> LieElt:
        return E(n, i + 1, l + 1) - (-1) ** (l - i) * E(n, l + 1, n - i)

    out: UEAElt = {}
    for i in range(1, l):
        prod = alg.mul(alg.lie2uea(left_factor(i)), alg.lie2uea(right_factor(i)))
        uea_combine(out, prod, sign_l)
    diag = E(n, 1, 1) - E(n, n, n)
    mid = E(n, 1, l + 1) - (1 if l % 2 == 0 else -1) * E(n, l + 1, n)
    uea_combine(out, alg.mul(alg.lie2uea(diag), alg.lie2uea(mid)), sign_l)
    uea_combine(out, alg.lie2uea(mid), -sign_l / 2)
    for i in range(l + 1, 2 * l):
        prod = alg.mul(alg.lie2uea(right_factor(i)), alg.lie2uea(left_factor(i)))
        uea_combine(out, prod, sign_l)
    return out


# -------------------------------------------------------- polynomials


def lowered_elements(ctx: ProjectionContext) -> list[UEAElt]:
    """Weight-zero elements u_1..u_l obtained by lowering the partner along
    each staircase of simple lowering generators."""
    l, alg = ctx.l, ctx.alg
    gens = b_type_generators(l)
    fs = list(gens.f) + [gens.f_l]
    base = compute_v1(ctx)
    out: list[UEAElt] = []
    for j in range(1, l + 1):
        u = base
        for t in range(l - 1, j - 1, -1):  # f_l, ..., f_{j+1}
            u = alg.ad(fs[t], u)
        for t in range(0, j):  # f_1, ..., f_j
            u = alg.ad(fs[t], u)
        out.append(uea_scale(u, Fraction(-1 if j % 2 == 0 else 1)))
    return out


def lowered_polynomials(ctx: ProjectionContext) -> list[CartanPoly]:
    """Highest-weight eigenvalue polynomials p_1..p_l of the lowered elements."""
    return [ctx.alg.cartan_polynomial(u) for u in lowered_elements(ctx)]


def reference_polynomials(l: int, plus_half: bool = False) -> list[CartanPoly]:
    """Closed-form polynomials in the Cartan coordinates.

    p_j = x_j (x_j + 2 x_{j+1} + .. + 2 x_{l-1} + x_l + (l-j) + c)   (j < l)
    p_l = (1/4) x_l (x_l + 2c)
    with c = -1/2, or +1/2 for the rejected sign variant."""
    c = Fraction(1, 2) if plus_half else Fraction(-1, 2)
    out: list[CartanPoly] = []
    for j in range(1, l + 1):
        if j < l:
            lin = CartanPoly.variable(l, j)
            for t in range(j + 1, l):
                lin = lin.add(CartanPoly.variable(l, t).scale(2))
            lin = lin.add(CartanPoly.variable(l, l))
            lin = lin.add(CartanPoly.const(l, Fraction(l - j) + c))
            out.append(CartanPoly.variable(l, j).mul(lin))
        else:
            lin = CartanPoly.variable(l, l).add(CartanPoly.const(l, 2 * c))
            out.append(CartanPoly.variable(l, l).mul(lin).scale(Fraction(1, 4)))
    return out


# ------------------------------------------------------------ the orbit


def r0_basis(ctx: ProjectionContext) -> list[UEAElt]:
    """Basis of the closure of the singular image under the adjoint action
    of the even part."""
    if ctx._r0 is None:
        alg = ctx.alg
        solver = SpanSolver()
        out: list[UEAElt] = []
        queue: list[UEAElt] = []
        seed = zhu_singular_image(ctx)
        if solver.add(dict(seed)):
            out.append(seed)
            queue.append(seed)
        while queue:
            u = queue.pop()
            for s in range(alg.dim):
                w = alg.ad({s: Fraction(1)}, u)
                if w and solver.add(dict(w)):
                    out.append(w)
                    queue.append(w)
        ctx._r0 = out
    return list(ctx._r0)


def r0_zero_weight_members(ctx: ProjectionContext) -> list[UEAElt]:
    alg = ctx.alg
    zero = tuple(Fraction(0) for _ in alg.cartan_indices)
    return [u for u in r0_basis(ctx) if alg.weight_of(u) == zero]


def poly_span_equal(pa: list[CartanPoly], pb: list[CartanPoly]) -> bool:
    """True iff the two families span the same space of polynomials."""
    va = [dict(p.terms) for p in pa]
    vb = [dict(p.terms) for p in pb]
    ra = rank_of(va)
    rb = rank_of(vb)
    return ra == rb == rank_of(va + vb)
