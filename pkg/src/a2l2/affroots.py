"""Affine root-system arithmetic for the twisted algebra acting on the
odd-rank special linear series, in the realization whose horizontal
subalgebra is so(2l+1).

Everything here is exact: weights live in coordinates
(eps_1..eps_l, delta, central-dual), the bilinear form is the standard
one on that basis, real roots come in long / intermediate / short
families indexed by an integer parameter, and admissibility is decided
by finite congruence arithmetic on the induced arithmetic progressions.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .liealg import E, LieElt
from .linalg import SpanSolver

Scalar = Fraction


def _frac_tuple(vals) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in vals)


@dataclasses.dataclass(frozen=True)
class AffineWeight:
    """A weight written as sum(eps[i] * eps_i) + d_delta * delta + k0 * Lambda0c."""

    eps: tuple[Fraction, ...]
    d_delta: Fraction = Fraction(0)
    k0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "eps", _frac_tuple(self.eps))
        object.__setattr__(self, "d_delta", Fraction(self.d_delta))
        object.__setattr__(self, "k0", Fraction(self.k0))

    @property
    def rank(self) -> int:
        return len(self.eps)

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return AffineWeight(
            tuple(a + b for a, b in zip(self.eps, other.eps)),
            self.d_delta + other.d_delta,
            self.k0 + other.k0,
        )

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + other.scale(-1)

    def scale(self, c) -> "AffineWeight":
        c = Fraction(c)
        return AffineWeight(
            tuple(c * a for a in self.eps), c * self.d_delta, c * self.k0
        )

    def is_zero(self) -> bool:
        return not any(self.eps) and not self.d_delta and not self.k0

    @property
    def level(self) -> Fraction:
        """Value of the pairing with delta (the central charge direction)."""
        return self.k0


def finite_weight(coeffs) -> AffineWeight:
    """Weight with the given eps-coefficients and no affine components."""
    return AffineWeight(_frac_tuple(coeffs))


def eps_unit(l: int, i: int) -> AffineWeight:
    """eps_i as an AffineWeight, 1-based."""
    if not 1 <= i <= l:
        raise ValueError("index out of range")
    return AffineWeight(tuple(Fraction(int(j == i)) for j in range(1, l + 1)))


def delta(l: int) -> AffineWeight:
    return AffineWeight((Fraction(0),) * l, d_delta=Fraction(1))


def lambda0(l: int) -> AffineWeight:
    return AffineWeight((Fraction(0),) * l, k0=Fraction(1))


def ip(x: AffineWeight, y: AffineWeight) -> Fraction:
    """Symmetric bilinear form: eps_i orthonormal, (delta, Lambda0c) = 1,
    delta and Lambda0c isotropic and orthogonal to the eps block."""
    if x.rank != y.rank:
        raise ValueError("rank mismatch")
    total = sum((a * b for a, b in zip(x.eps, y.eps)), Fraction(0))
    return total + x.d_delta * y.k0 + x.k0 * y.d_delta


def coroot_pairing(lam: AffineWeight, root: AffineWeight) -> Fraction:
    """(lam, root^vee) = 2 (lam, root) / (root, root); real roots only."""
    norm = ip(root, root)
    if norm == 0:
        raise ValueError("isotropic root has no coroot")
    return 2 * ip(lam, root) / norm


# ----------------------------------------------------------- simple roots

def simple_roots(l: int) -> tuple[AffineWeight, ...]:
    """(alpha_0, ..., alpha_l): alpha_0 = delta - 2 eps_1, alpha_i = eps_i -
    eps_{i+1} for i < l, alpha_l = eps_l."""
    if l < 1:
        raise ValueError("rank must be at least 1")
    roots = [delta(l) - eps_unit(l, 1).scale(2)]
    for i in range(1, l):
        roots.append(eps_unit(l, i) - eps_unit(l, i + 1))
    roots.append(eps_unit(l, l))
    return tuple(roots)


def fundamental_weights(l: int) -> tuple[AffineWeight, ...]:
    """(omega_1, ..., omega_l) for the horizontal so(2l+1):
    omega_i = eps_1 + ... + eps_i for i < l, omega_l = (eps_1+...+eps_l)/2."""
    out = []
    for i in range(1, l + 1):
        w = finite_weight([Fraction(int(j <= i)) for j in range(1, l + 1)])
        if i == l:
            w = w.scale(Fraction(1, 2))
        out.append(w)
    return tuple(out)


def rho(l: int) -> AffineWeight:
    """The Weyl vector: (2l+1) Lambda0c + sum_i (l - i + 1/2) eps_i; pairs to
    1 with every simple coroot."""
    r = AffineWeight(
        tuple(Fraction(2 * (l - i) + 1, 2) for i in range(1, l + 1)),
        k0=Fraction(2 * l + 1),
    )
    for a in simple_roots(l):
        if coroot_pairing(r, a) != 1:
            raise AssertionError("Weyl vector normalization failed")
    return r


# ------------------------------------------------------------ algebra data

@dataclasses.dataclass(frozen=True)
class AlgebraData:
    """Cartan matrix and structural constants of the rank-(l+1) twisted
    affine algebra, plus the affine-node coroot description."""

    l: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    h_dual: int
    h0_finite: LieElt  # finite part of the affine-node coroot
    h0_central: Fraction  # coefficient of the canonical central element


@lru_cache(maxsize=None)
def algebra_data(l: int) -> AlgebraData:
    if l < 1:
        raise ValueError("rank must be at least 1")
    if l == 1:
        matrix = ((2, -1), (-4, 2))
    else:
        rows = []
        for i in range(l + 1):
            row = [0] * (l + 1)
            row[i] = 2
            if i > 0:
                row[i - 1] = -2 if (i == 1 or i == l) else -1
            if i < l:
                row[i + 1] = -1
            rows.append(tuple(row))
        matrix = tuple(rows)
    marks = (1,) + (2,) * l
    comarks = (2,) * l + (1,)
    h_dual = sum(comarks)
    if h_dual != 2 * l + 1:
        raise AssertionError("dual Coxeter number mismatch")
    for i in range(l + 1):
        if sum(matrix[i][j] * marks[j] for j in range(l + 1)) != 0:
            raise AssertionError("marks are not a null vector of the matrix")
    for j in range(l + 1):
        if sum(comarks[i] * matrix[i][j] for i in range(l + 1)) != 0:
            raise AssertionError("comarks are not a null vector of the transpose")
    n = 2 * l + 1
    h0_finite = E(n, n, n) - E(n, 1, 1)
    return AlgebraData(l, matrix, marks, comarks, h_dual, h0_finite, Fraction(1, 2))


def cartan_matrix_from_form(l: int) -> tuple[tuple[Fraction, ...], ...]:
    """Recompute the affine Cartan matrix as (alpha_j, alpha_i^vee)."""
    roots = simple_roots(l)
    return tuple(
        tuple(coroot_pairing(aj, ai) for aj in roots) for ai in roots
    )


# ------------------------------------------------------- real root families

@dataclasses.dataclass(frozen=True)
class RealRootFamily:
    """One integer-parameter family of positive real roots
    classical + p(m) * delta, where p(m) = 2m+1 for the long family
    (classical then being twice a short horizontal root) and p(m) = m
    otherwise; m ranges over integers >= m_min."""

    kind: str  # "long" | "intermediate" | "short"
    classical: AffineWeight
    m_pattern: str  # "2m+1" | "m"
    m_min: int

    def delta_coefficient(self, m: int) -> int:
        return 2 * m + 1 if self.m_pattern == "2m+1" else m

    def root_at(self, m: int) -> AffineWeight:
        if m < self.m_min:
            raise ValueError("parameter below the family minimum")
        return self.classical + delta(self.classical.rank).scale(
            self.delta_coefficient(m)
        )

    def squared_norm(self) -> Fraction:
        return ip(self.classical, self.classical)


def _is_positive_finite(w: AffineWeight) -> bool:
    for c in w.eps:
        if c:
            return c > 0
    return False


def positive_real_families(l: int) -> tuple[RealRootFamily, ...]:
    """All positive real roots, grouped into integer-parameter families:
    long 2(+-eps_i) + (2m+1) delta with m >= 0; intermediate (l > 1 only)
    (+-eps_i +- eps_j) + m delta; short (+-eps_i) + m delta — for the
    latter two m >= 0 when the horizontal part is positive, else m >= 1.
    Squared norms are 4, 2, 1 respectively."""
    if l < 1:
        raise ValueError("rank must be at least 1")
    fams: list[RealRootFamily] = []
    shorts = []
    for i in range(1, l + 1):
        shorts.append(eps_unit(l, i))
        shorts.append(eps_unit(l, i).scale(-1))
    longs = []
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            for si in (1, -1):
                for sj in (1, -1):
                    longs.append(
                        eps_unit(l, i).scale(si) + eps_unit(l, j).scale(sj)
                    )
    for a in shorts:
        fams.append(RealRootFamily("long", a.scale(2), "2m+1", 0))
    for a in longs:
        fams.append(
            RealRootFamily(
                "intermediate", a, "m", 0 if _is_positive_finite(a) else 1
            )
        )
    for a in shorts:
        fams.append(
            RealRootFamily("short", a, "m", 0 if _is_positive_finite(a) else 1)
        )
    return tuple(fams)


# ------------------------------------------------------------ admissibility

def pairing_progression(
    lam: AffineWeight, fam: RealRootFamily
) -> tuple[Fraction, Fraction]:
    """(a, b) with (lam, root_at(m)^vee) = a + b*m for every allowed m."""
    base = fam.root_at(fam.m_min)
    v0 = coroot_pairing(lam, base)
    v1 = coroot_pairing(lam, fam.root_at(fam.m_min + 1))
    b = v1 - v0
    a = v0 - b * fam.m_min
    return a, b


def first_integral_parameter(
    a: Fraction, b: Fraction, m_min: int
) -> Optional[tuple[int, int]]:
    """Smallest m >= m_min with a + b*m an integer, plus the period of the
    arithmetic progression of such m; None when no integer value occurs."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        return (m_min, 1) if a.denominator == 1 else None
    q = b.denominator
    p = b.numerator
    scaled = a * q
    if scaled.denominator != 1:
        return None
    # solve p*m = -scaled (mod q); gcd(p, q) = 1 since b is reduced
    if q == 1:
        return (m_min, 1)
    inv = pow(p % q, -1, q)
    m0 = (-int(scaled) * inv) % q
    shift = (m_min - m0 + q - 1) // q  # ceil((m_min - m0) / q)
    return (m0 + q * shift, q)


@dataclasses.dataclass(frozen=True)
class FamilyShiftReport:
    """Condition-1 record for one family: the affine progression of
    (lam + rho, root^vee) in the parameter, where its first integer value
    occurs (if ever), and whether no nonpositive integer is attained."""

    family: RealRootFamily
    a: Fraction
    b: Fraction
    first_integral_m: Optional[int]
    first_integral_value: Optional[Fraction]
    ok: bool


@dataclasses.dataclass(frozen=True)
class FamilyIntegralReport:
    """Condition-2 record for one family: up to two parameter values where
    (lam, root^vee) is an integer, with the pairings and coroot vectors."""

    family: RealRootFamily
    integral_ms: tuple[int, ...]
    pairings: tuple[Fraction, ...]


@dataclasses.dataclass(frozen=True)
class AdmissibilityReport:
    lam: AffineWeight
    cond1: tuple[FamilyShiftReport, ...]
    cond2: tuple[FamilyIntegralReport, ...]
    cond1_pass: bool
    cond2_rank: int
    cond2_pass: bool
    passed: bool


def _coroot_vector(fam: RealRootFamily, m: int) -> dict:
    """The coroot of root_at(m) in coordinates (finite part, central coeff),
    dropping the degree direction (never needed for the rank check)."""
    root = fam.root_at(m)
    scale = Fraction(2) / ip(root, root)
    coords = [scale * c for c in root.eps] + [scale * root.d_delta]
    return {i: c for i, c in enumerate(coords) if c}


def check_admissible(lam: AffineWeight) -> AdmissibilityReport:
    """Two-condition admissibility decision for weights at the studied level.

    Condition 1: along every positive family the shifted pairing is an affine
    function a + b*m with b > 0; its integer values (if any) form an
    increasing arithmetic progression, so it suffices to check that the first
    one is positive.  Condition 2: the coroots pairing integrally with the
    weight must span the full (l+1)-dimensional coroot space over the
    rationals; two representatives per integral family exhaust each family's
    contribution to the span.
    """
    l = lam.rank
    if lam.level != Fraction(-(2 * l + 1), 2):
        raise ValueError("weight is not at the studied level")
    r = rho(l)
    shifted = lam + r
    cond1_reports = []
    cond1_pass = True
    cond2_reports = []
    solver = SpanSolver()
    for fam in positive_real_families(l):
        a, b = pairing_progression(shifted, fam)
        if b <= 0:
            raise AssertionError("condition-1 progression must increase")
        hit = first_integral_parameter(a, b, fam.m_min)
        if hit is None:
            cond1_reports.append(
                FamilyShiftReport(fam, a, b, None, None, True)
            )
        else:
            m_star, _ = hit
            value = a + b * m_star
            ok = value > 0
            cond1_pass = cond1_pass and ok
            cond1_reports.append(
                FamilyShiftReport(fam, a, b, m_star, value, ok)
            )
        a2, b2 = pairing_progression(lam, fam)
        hit2 = first_integral_parameter(a2, b2, fam.m_min)
        if hit2 is not None:
            m_star, period = hit2
            ms = (m_star, m_star + period)
            pairings = tuple(a2 + b2 * m for m in ms)
            cond2_reports.append(FamilyIntegralReport(fam, ms, pairings))
            for m in ms:
                solver.add(_coroot_vector(fam, m))
    rank = solver.rank
    cond2_pass = rank == l + 1
    return AdmissibilityReport(
        lam,
        tuple(cond1_reports),
        tuple(cond2_reports),
        cond1_pass,
        rank,
        cond2_pass,
        cond1_pass and cond2_pass,
    )


def kw_positivity(lam: AffineWeight) -> bool:
    """Level plus dual Coxeter number must be positive (it equals l + 1/2
    at the studied level)."""
    l = lam.rank
    return lam.level + (2 * l + 1) > 0
