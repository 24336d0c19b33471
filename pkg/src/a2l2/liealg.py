"""Finite-dimensional core: sl(2l+1), its trace form, the order-2 involution,
the even/odd grading, and the type-B fixed-point subalgebra.

Elements are sparse matrices over exact scalars.  The involution is
x -> involution image with E[i,j] -> -(-1)^(i-j) E[n+1-j, n+1-i]; its fixed
subalgebra is so(2l+1) and the (-1)-eigenspace is the little adjoint module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .linalg import SpanSolver

Scalar = Fraction


class QuadScalar:
    """Exact element a + b*sqrt(2); used only for one normalization check."""

    __slots__ = ("rat", "surd")

    def __init__(self, rat=0, surd=0) -> None:
        self.rat = Fraction(rat)
        self.surd = Fraction(surd)

    @staticmethod
    def _coerce(x) -> "QuadScalar | None":
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadScalar(Fraction(x))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.rat + o.rat, self.surd + o.surd)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.rat, -self.surd)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s  with s^2 = 2
        return QuadScalar(
            self.rat * o.rat + 2 * self.surd * o.surd,
            self.rat * o.surd + self.surd * o.rat,
        )

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.surd)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadScalar):
            return self.rat == other.rat and self.surd == other.surd
        try:
            r = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.surd == 0 and self.rat == r

    def __hash__(self) -> int:
        if self.surd == 0:
            return hash(self.rat)
        return hash((self.rat, self.surd))

    def __repr__(self) -> str:
        return f"QuadScalar({self.rat!r}, {self.surd!r})"


def _coeff(x):
    if isinstance(x, QuadScalar):
        return x
    return Fraction(x)


class LieElt:
    """Sparse matrix in gl(n), n = 2l+1 odd; supports the ambient bracket."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None) -> None:
        if n < 3 or n % 2 == 0:
            raise ValueError(f"matrix size must be odd and >= 3, got {n}")
        self.n = n
        clean: dict[tuple[int, int], Scalar] = {}
        for (i, j), c in (terms or {}).items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"index {(i, j)} out of range for n={n}")
            c = _coeff(c)
            if c:
                clean[(i, j)] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def entry(self, i: int, j: int):
        return self.terms.get((i, j), Fraction(0))

    def trace(self):
        return sum((c for (i, j), c in self.terms.items() if i == j), Fraction(0))

    def __add__(self, other: "LieElt") -> "LieElt":
        if self.n != other.n:
            raise ValueError("matrix size mismatch")
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, Fraction(0)) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        out = LieElt.__new__(LieElt)
        out.n, out.terms = self.n, t
        return out

    def __neg__(self) -> "LieElt":
        out = LieElt.__new__(LieElt)
        out.n = self.n
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "LieElt") -> "LieElt":
        return self + (-other)

    def __rmul__(self, c) -> "LieElt":
        c = _coeff(c)
        out = LieElt.__new__(LieElt)
        out.n = self.n
        out.terms = {k: c * x for k, x in self.terms.items()} if c else {}
        return out

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElt)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        if not self.terms:
            return f"LieElt(n={self.n}, 0)"
        parts = " + ".join(f"{c}*E[{i},{j}]" for (i, j), c in sorted(self.terms.items()))
        return f"LieElt(n={self.n}, {parts})"

    def entry_vector(self) -> dict:
        """Sparse (i,j)->coeff dict for linear algebra over elements."""
        return dict(self.terms)


def zero(n: int) -> LieElt:
    return LieElt(n, {})


def E(n: int, i: int, j: int) -> LieElt:
    """Elementary matrix E[i,j]."""
    return LieElt(n, {(i, j): Fraction(1)})


def H(n: int, i: int) -> LieElt:
    """Standard Cartan element E[i,i] - E[i+1,i+1], 1 <= i <= n-1."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"H index {i} out of range for n={n}")
    return LieElt(n, {(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)})


def bracket(a: LieElt, b: LieElt) -> LieElt:
    """Matrix commutator [a,b] = ab - ba."""
    if a.n != b.n:
        raise ValueError("matrix size mismatch")
    t: dict[tuple[int, int], Scalar] = {}
    for (i, j), c in a.terms.items():
        for (p, q), d in b.terms.items():
            if j == p:
                k = (i, q)
                s = t.get(k, Fraction(0)) + c * d
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
            if q == i:
                k = (p, j)
                s = t.get(k, Fraction(0)) - c * d
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
    out = LieElt.__new__(LieElt)
    out.n, out.terms = a.n, t
    return out


def invariant_form(a: LieElt, b: LieElt):
    """Trace form tr(ab); normalizes the highest root to squared length 2."""
    if a.n != b.n:
        raise ValueError("matrix size mismatch")
    total = Fraction(0)
    for (i, j), c in a.terms.items():
        d = b.terms.get((j, i))
        if d:
            total = total + c * d
    return total


def nu(a: LieElt) -> LieElt:
    """The order-2 automorphism E[i,j] -> -(-1)^(i-j) E[n+1-j, n+1-i]."""
    n = a.n
    t: dict[tuple[int, int], Scalar] = {}
    for (i, j), c in a.terms.items():
        sign = 1 if (i - j) % 2 else -1  # -(-1)^(i-j)
        k = (n + 1 - j, n + 1 - i)
        s = t.get(k, Fraction(0)) + sign * c
        if s:
            t[k] = s
        else:
            t.pop(k, None)
    out = LieElt.__new__(LieElt)
    out.n, out.terms = n, t
    return out


class GradedPair(NamedTuple):
    plus: LieElt   # fixed by the involution (even part)
    minus: LieElt  # negated by the involution (odd part)


def split_pm(a: LieElt) -> GradedPair:
    """Eigen-split a = plus + minus with plus = (a + nu(a))/2."""
    na = nu(a)
    half = Fraction(1, 2)
    return GradedPair(half * (a + na), half * (a - na))


def in_even_part(a: LieElt) -> bool:
    return nu(a) == a


def in_odd_part(a: LieElt) -> bool:
    return nu(a) == -a


@dataclass(frozen=True)
class BTypeGenerators:
    """Chevalley-style generators of the fixed subalgebra so(2l+1).

    `e`, `f`, `h` hold the first l-1 triples; the last node comes both
    unnormalized (`e_l`, `f_l`, `h_l`) and sqrt(2)-normalized
    (`ebar_l`, `fbar_l`, `hbar_l` = 2*h_l).
    """

    l: int
    e: tuple[LieElt, ...]
    f: tuple[LieElt, ...]
    h: tuple[LieElt, ...]
    e_l: LieElt
    f_l: LieElt
    h_l: LieElt
    ebar_l: LieElt
    fbar_l: LieElt
    hbar_l: LieElt

    def cartan_elements(self) -> tuple[LieElt, ...]:
        """(h_1, ..., h_{l-1}, hbar_l): the Cartan basis used everywhere."""
        return self.h + (self.hbar_l,)

    def raising_elements(self) -> tuple[LieElt, ...]:
        return self.e + (self.e_l,)

    def lowering_elements(self) -> tuple[LieElt, ...]:
        return self.f + (self.f_l,)


@lru_cache(maxsize=None)
def b_type_generators(l: int) -> BTypeGenerators:
    """Generators of the even part as a type-B_l simple Lie algebra."""
    if l < 1:
        raise ValueError("rank l must be >= 1")
    n = 2 * l + 1
    e = tuple(E(n, i, i + 1) + E(n, 2 * l + 1 - i, 2 * l + 2 - i) for i in range(1, l))
    f = tuple(E(n, i + 1, i) + E(n, 2 * l + 2 - i, 2 * l + 1 - i) for i in range(1, l))
    h = tuple(H(n, i) + H(n, 2 * l + 1 - i) for i in range(1, l))
    e_l = E(n, l, l + 1) + E(n, l + 1, l + 2)
    f_l = E(n, l + 1, l) + E(n, l + 2, l + 1)
    h_l = H(n, l) + H(n, l + 1)
    sqrt2 = QuadScalar(0, 1)
    return BTypeGenerators(
        l=l, e=e, f=f, h=h,
        e_l=e_l, f_l=f_l, h_l=h_l,
        ebar_l=sqrt2 * e_l, fbar_l=sqrt2 * f_l, hbar_l=2 * h_l,
    )


def eigen_ratio(image: LieElt, vec: LieElt) -> Scalar:
    """Scalar r with image = r*vec; raises if image is not a multiple."""
    if image.is_zero():
        return Fraction(0)
    key = min(vec.terms.keys())
    r = image.terms.get(key, Fraction(0)) / vec.terms[key]
    if image != r * vec:
        raise ValueError("not an eigenvector")
    return r


def computed_b_cartan(l: int) -> list[list[int]]:
    """Cartan matrix of the fixed subalgebra, from brackets alone.

    Rows run over (h_1..h_{l-1}, hbar_l), columns over (e_1..e_{l-1}, e_l);
    entry (i,j) is the eigenvalue of ad(row_i) on column_j.
    """
    gens = b_type_generators(l)
    rows = gens.cartan_elements()
    cols = gens.raising_elements()
    out: list[list[int]] = []
    for hrow in rows:
        r: list[int] = []
        for ecol in cols:
            val = eigen_ratio(bracket(hrow, ecol), ecol)
            if val.denominator != 1:
                raise ValueError("non-integer Cartan entry")
            r.append(int(val))
        out.append(r)
    return out


@dataclass(frozen=True)
class G0BasisInfo:
    """Ordered basis of the even part: negatives, Cartan, positives."""

    l: int
    elems: tuple[LieElt, ...]
    labels: tuple[str, ...]
    neg_count: int
    cartan_count: int
    pos_count: int
    pos_rep_pairs: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.elems)

    @property
    def cartan_start(self) -> int:
        return self.neg_count

    @property
    def pos_start(self) -> int:
        return self.neg_count + self.cartan_count


def _orbit_partner(n: int, i: int, j: int) -> tuple[int, int]:
    return (n + 1 - j, n + 1 - i)


@lru_cache(maxsize=None)
def g0_basis_info(l: int) -> G0BasisInfo:
    if l < 1:
        raise ValueError("rank l must be >= 1")
    n = 2 * l + 1
    reps: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i + j == n + 1:
                continue  # anti-diagonal orbits project to zero in the even part
            if (i, j) <= _orbit_partner(n, i, j):
                reps.append((i, j))
    reps.sort()
    neg = [split_pm(E(n, j, i)).plus for (i, j) in reps]
    neg_labels = [f"Ep[{j},{i}]" for (i, j) in reps]
    gens = b_type_generators(l)
    cart = list(gens.cartan_elements())
    cart_labels = [f"h[{i}]" for i in range(1, l)] + [f"hb[{l}]"]
    pos = [split_pm(E(n, i, j)).plus for (i, j) in reps]
    pos_labels = [f"Ep[{i},{j}]" for (i, j) in reps]
    elems = tuple(neg + cart + pos)
    if len(elems) != l * (2 * l + 1):
        raise AssertionError("even-part basis has wrong size")
    return G0BasisInfo(
        l=l,
        elems=elems,
        labels=tuple(neg_labels + cart_labels + pos_labels),
        neg_count=len(neg),
        cartan_count=len(cart),
        pos_count=len(pos),
        pos_rep_pairs=tuple(reps),
    )


def g0_basis(l: int) -> list[LieElt]:
    """Ordered basis of the even part: negative block, Cartan, positive block."""
    return list(g0_basis_info(l).elems)


@dataclass(frozen=True)
class G1BasisInfo:
    l: int
    elems: tuple[LieElt, ...]
    labels: tuple[str, ...]


@lru_cache(maxsize=None)
def g1_basis_info(l: int) -> G1BasisInfo:
    if l < 1:
        raise ValueError("rank l must be >= 1")
    n = 2 * l + 1
    info = g0_basis_info(l)
    elems: list[LieElt] = []
    labels: list[str] = []
    for (i, j) in info.pos_rep_pairs:
        elems.append(split_pm(E(n, i, j)).minus)
        labels.append(f"Em[{i},{j}]")
    for (i, j) in info.pos_rep_pairs:
        elems.append(split_pm(E(n, j, i)).minus)
        labels.append(f"Em[{j},{i}]")
    for i in range(1, n + 1):
        if i != l + 1:
            elems.append(E(n, i, n + 1 - i))  # anti-diagonal entries are purely odd
            labels.append(f"Ea[{i}]")
    # traceless odd diagonal: v_i = E[i,i] + E[n+1-i,n+1-i]
    def v(i: int) -> LieElt:
        return E(n, i, i) + E(n, n + 1 - i, n + 1 - i)

    for i in range(1, l):
        elems.append(v(i) - v(i + 1))
        labels.append(f"d[{i}]")
    elems.append(v(l) - 2 * E(n, l + 1, l + 1))
    labels.append(f"d[{l}]")
    if len(elems) != 2 * l * l + 3 * l:
        raise AssertionError("odd-part basis has wrong size")
    return G1BasisInfo(l=l, elems=tuple(elems), labels=tuple(labels))


def g1_basis(l: int) -> list[LieElt]:
    """Basis of the odd part of the grading."""
    return list(g1_basis_info(l).elems)


def g1_zero_weight_dim(l: int) -> int:
    """Dimension of the joint ad-kernel of the even Cartan inside the odd part."""
    cart = b_type_generators(l).cartan_elements()
    basis = g1_basis_info(l).elems
    solver = SpanSolver()
    rank = 0
    for x in basis:
        row: dict = {}
        for cidx, hc in enumerate(cart):
            for key, val in bracket(hc, x).terms.items():
                row[(cidx, key)] = val
        if solver.add(row):
            rank += 1
    return len(basis) - rank


def eplus(l: int, i: int, j: int) -> LieElt:
    """Even-part projection of the elementary matrix E[i,j]."""
    return split_pm(E(2 * l + 1, i, j)).plus


def sample_sparse(rng, l: int, max_terms: int = 3, traceless: bool = True) -> LieElt:
    """Random sparse element for property tests (seeded RNG passed in)."""
    n = 2 * l + 1
    t: dict[tuple[int, int], Scalar] = {}
    for _ in range(rng.randint(1, max_terms)):
        i = rng.randint(1, n)
        j = rng.randint(1, n)
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if i == j and traceless:
            if i == n:
                continue
            # use H-style traceless diagonal contributions
            for key, val in H(n, i).terms.items():
                t[key] = t.get(key, Fraction(0)) + c * val
            continue
        t[(i, j)] = t.get((i, j), Fraction(0)) + c
    return LieElt(n, t)
