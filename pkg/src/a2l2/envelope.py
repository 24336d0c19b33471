"""Ordered-monomial calculus in the enveloping algebra of the even part.

Elements are sparse dictionaries mapping monomials (tuples of basis indices,
non-decreasing in the fixed basis order: negative block, Cartan block,
positive block) to exact coefficients.  Rewriting an arbitrary word into this
normal form terminates because each swap either shortens the word or removes
an adjacent inversion, and the two natural rewrite schedules agree.

The Cartan-polynomial map sends a weight-zero element u to the polynomial
p_u with u . v = p_u(lambda) v on any highest-weight vector v of weight
lambda; it drops every ordered monomial containing a raising factor and reads
the remaining pure-Cartan monomials as monomials in the Cartan coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .liealg import (
    LieElt,
    b_type_generators,
    bracket,
    eigen_ratio,
    g0_basis_info,
)
from .linalg import SpanSolver

# monomial = tuple of basis indices in non-decreasing order
UEAElt = dict[tuple[int, ...], Fraction]


def uea_zero() -> UEAElt:
    return {}


def uea_unit() -> UEAElt:
    return {(): Fraction(1)}


def uea_add_into(dst: UEAElt, word: tuple[int, ...], coeff: Fraction) -> None:
    s = dst.get(word, Fraction(0)) + coeff
    if s:
        dst[word] = s
    else:
        dst.pop(word, None)


def uea_combine(dst: UEAElt, src: UEAElt, scale: Fraction = Fraction(1)) -> None:
    for word, c in src.items():
        uea_add_into(dst, word, scale * c)


def uea_scale(u: UEAElt, c) -> UEAElt:
    c = Fraction(c)
    if not c:
        return {}
    return {w: c * x for w, x in u.items()}


class PBWAlgebra:
    """Enveloping algebra of the even part over its ordered basis.

    Monomial indices refer to the ordered basis of `g0_basis_info(l)`:
    lowering block first, then the Cartan elements (h_1..h_{l-1}, hbar_l),
    then the raising block.  Every Cartan element acts diagonally on basis
    elements, so each monomial is a weight vector; the constructor verifies
    this while tabulating the weights.
    """

    def __init__(self, l: int) -> None:
        info = g0_basis_info(l)
        self.l = l
        self.info = info
        self.dim = info.dim
        self._span = SpanSolver()
        for x in info.elems:
            if not self._span.add(x.entry_vector()):
                raise AssertionError("even-part basis is not independent")
        gens = b_type_generators(l)
        self.cartan_indices = tuple(
            range(info.cartan_start, info.cartan_start + info.cartan_count)
        )
        self.weights: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(eigen_ratio(bracket(h, x), x) for h in gens.cartan_elements())
            for x in info.elems
        )
        self._brackets: dict[tuple[int, int], dict[int, Fraction]] = {}

    # ------------------------------------------------------------ coords

    def lie_coords(self, x: LieElt) -> dict[int, Fraction]:
        """Coordinates of an even-part element in the ordered basis."""
        v = self._span.coords(x.entry_vector())
        if v is None:
            raise ValueError("element is not in the even part")
        return dict(v)

    def lie2uea(self, x: LieElt) -> UEAElt:
        """Degree-one element of the envelope from a Lie element."""
        return {(s,): c for s, c in self.lie_coords(x).items()}

    def bracket_coords(self, s: int, t: int) -> dict[int, Fraction]:
        key = (s, t)
        got = self._brackets.get(key)
        if got is None:
            got = self.lie_coords(bracket(self.info.elems[s], self.info.elems[t]))
            self._brackets[key] = got
        return got

    # ------------------------------------------------------- normal form

    def normal_form(
        self,
        word: tuple[int, ...],
        coeff: Fraction = Fraction(1),
        schedule: str = "first",
    ) -> UEAElt:
        """Rewrite a word of basis indices into ordered monomials.

        `schedule` picks which adjacent inversion to resolve each step
        ("first" = leftmost, "last" = rightmost); the result is independent
        of the choice.
        """
        if schedule not in ("first", "last"):
            raise ValueError(f"unknown schedule {schedule!r}")
        out: UEAElt = {}
        pending: list[tuple[tuple[int, ...], Fraction]] = [(tuple(word), Fraction(coeff))]
        while pending:
            w, c = pending.pop()
            if not c:
                continue
            positions = range(len(w) - 1)
            if schedule == "last":
                positions = range(len(w) - 2, -1, -1)
            pos = next((i for i in positions if w[i] > w[i + 1]), None)
            if pos is None:
                uea_add_into(out, w, c)
                continue
            s, t = w[pos], w[pos + 1]
            pending.append((w[:pos] + (t, s) + w[pos + 2 :], c))
            for r, b in self.bracket_coords(s, t).items():
                pending.append((w[:pos] + (r,) + w[pos + 2 :], c * b))
        return out

    def mul(self, u: UEAElt, v: UEAElt) -> UEAElt:
        out: UEAElt = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                uea_combine(out, self.normal_form(wu + wv, cu * cv))
        return out

    # ---------------------------------------------------------- ad action

    def ad(self, x, u: UEAElt) -> UEAElt:
        """Adjoint action x.u = xu - ux, extended as a derivation.

        `x` is a Lie element of the even part or a ready coordinate dict.
        """
        cx = self.lie_coords(x) if isinstance(x, LieElt) else dict(x)
        out: UEAElt = {}
        for word, c in u.items():
            for pos, t in enumerate(word):
                for s, a in cx.items():
                    for r, b in self.bracket_coords(s, t).items():
                        uea_combine(
                            out,
                            self.normal_form(word[:pos] + (r,) + word[pos + 1 :]),
                            c * a * b,
                        )
        return out

    # ------------------------------------------------------------ weights

    def monomial_weight(self, word: tuple[int, ...]) -> tuple[Fraction, ...]:
        tot = [Fraction(0)] * len(self.cartan_indices)
        for s in word:
            for i, wc in enumerate(self.weights[s]):
                tot[i] += wc
        return tuple(tot)

    def weight_of(self, u: UEAElt) -> tuple[Fraction, ...] | None:
        """Common weight of all monomials, or None if u mixes weights."""
        if not u:
            return tuple(Fraction(0) for _ in self.cartan_indices)
        seen = None
        for word in u:
            w = self.monomial_weight(word)
            if seen is None:
                seen = w
            elif seen != w:
                return None
        return seen

    # ------------------------------------------------- Cartan polynomial

    def cartan_polynomial(self, u: UEAElt) -> "CartanPoly":
        """Eigenvalue polynomial of a weight-zero element on highest-weight
        vectors, in the Cartan coordinates (h_1..h_{l-1}, hbar_l)."""
        zero_wt = tuple(Fraction(0) for _ in self.cartan_indices)
        if self.weight_of(u) != zero_wt:
            raise ValueError("element is not of weight zero")
        lo = self.info.cartan_start
        hi = self.info.pos_start
        nvars = self.info.cartan_count
        poly = CartanPoly(nvars, {})
        for word, c in u.items():
            if any(s >= hi for s in word):
                continue  # ends in a raising factor: kills highest-weight vectors
            if any(s < lo for s in word):
                raise ValueError("weight-zero monomial with unmatched lowering factor")
            expo = [0] * nvars
            for s in word:
                expo[s - lo] += 1
            poly.terms[tuple(expo)] = poly.terms.get(tuple(expo), Fraction(0)) + c
        poly._strip()
        return poly


@lru_cache(maxsize=None)
def pbw_algebra(l: int) -> PBWAlgebra:
    return PBWAlgebra(l)


# ------------------------------------------------------------ polynomials


@dataclass
class CartanPoly:
    """Polynomial in the Cartan coordinates x_1..x_nvars.

    x_i is the value on h_i for i < nvars and on hbar_l for i = nvars;
    keys are exponent tuples of length nvars.
    """

    nvars: int
    terms: dict[tuple[int, ...], Fraction]

    def _strip(self) -> None:
        for k in [k for k, c in self.terms.items() if not c]:
            del self.terms[k]

    @staticmethod
    def zero(nvars: int) -> "CartanPoly":
        return CartanPoly(nvars, {})

    @staticmethod
    def variable(nvars: int, j: int) -> "CartanPoly":
        """The coordinate x_j, 1-based."""
        e = [0] * nvars
        e[j - 1] = 1
        return CartanPoly(nvars, {tuple(e): Fraction(1)})

    @staticmethod
    def const(nvars: int, c) -> "CartanPoly":
        c = Fraction(c)
        return CartanPoly(nvars, {(0,) * nvars: c} if c else {})

    def copy(self) -> "CartanPoly":
        return CartanPoly(self.nvars, dict(self.terms))

    def add(self, other: "CartanPoly") -> "CartanPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CartanPoly(self.nvars, out)

    def scale(self, c) -> "CartanPoly":
        c = Fraction(c)
        if not c:
            return CartanPoly(self.nvars, {})
        return CartanPoly(self.nvars, {k: c * v for k, v in self.terms.items()})

    def mul(self, other: "CartanPoly") -> "CartanPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                s = out.get(k, Fraction(0)) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return CartanPoly(self.nvars, out)

    def eval(self, vals) -> Fraction:
        vals = [Fraction(v) for v in vals]
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        total = Fraction(0)
        for k, c in self.terms.items():
            term = c
            for v, e in zip(vals, k):
                for _ in range(e):
                    term *= v
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CartanPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    # -------------------------------------------------- structure helpers

    def divide_by_var(self, j: int) -> "CartanPoly | None":
        """Quotient by x_j (1-based) if x_j divides every monomial."""
        out: dict[tuple[int, ...], Fraction] = {}
        for k, c in self.terms.items():
            if k[j - 1] < 1:
                return None
            kk = list(k)
            kk[j - 1] -= 1
            out[tuple(kk)] = c
        return CartanPoly(self.nvars, out)

    def linear_parts(self) -> tuple[Fraction, list[Fraction]] | None:
        """(constant, coefficient list) if the polynomial is affine-linear."""
        const = Fraction(0)
        coeffs = [Fraction(0)] * self.nvars
        for k, c in self.terms.items():
            deg = sum(k)
            if deg == 0:
                const = c
            elif deg == 1:
                coeffs[k.index(1)] = c
            else:
                return None
        return const, coeffs

    # ----------------------------------------------------------- display

    def _h_substituted(self) -> "CartanPoly":
        """Rewrite in the display coordinates h_1..h_l with x_l = 2 h_l."""
        out: dict[tuple[int, ...], Fraction] = {}
        for k, c in self.terms.items():
            out[k] = c * (Fraction(2) ** k[-1])
        return CartanPoly(self.nvars, out)

    def factored_h_string(self) -> str:
        """Render in h-coordinates, factored as hj*(linear) when possible."""
        p = self._h_substituted()
        if p.is_zero():
            return "0"
        common = [
            j
            for j in range(1, p.nvars + 1)
            if all(k[j - 1] >= 1 for k in p.terms)
        ]
        if common:
            j = common[0]
            q = p.divide_by_var(j)
            lin = q.linear_parts() if q is not None else None
            if lin is not None:
                const, coeffs = lin
                inner = _linear_string(const, coeffs)
                return f"h{j}*({inner})"
        return _generic_poly_string(p)


def _coeff_var_string(c: Fraction, j: int) -> str:
    if c == 1:
        return f"h{j}"
    return f"{c}*h{j}"


def _linear_string(const: Fraction, coeffs: list[Fraction]) -> str:
    parts: list[tuple[Fraction, str]] = []
    for j, c in enumerate(coeffs, start=1):
        if c:
            parts.append((c, _coeff_var_string(abs(c), j)))
    if const:
        parts.append((const, str(abs(const))))
    if not parts:
        return "0"
    pieces = []
    for idx, (c, body) in enumerate(parts):
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def _generic_poly_string(p: CartanPoly) -> str:
    items = sorted(p.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0]))
    pieces = []
    for idx, (k, c) in enumerate(items):
        factors = []
        for j, e in enumerate(k, start=1):
            if e == 1:
                factors.append(f"h{j}")
            elif e > 1:
                factors.append(f"h{j}^{e}")
        if factors:
            body = "*".join(factors)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
        else:
            body = str(abs(c))
        if idx == 0:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def uea_string(u: UEAElt, alg: "PBWAlgebra") -> str:
    """Render an envelope element as signed products of basis labels."""
    if not u:
        return "0"
    pieces = []
    for key in sorted(u):
        c = u[key]
        mag = abs(c)
        if key:
            body = "*".join(alg.info.labels[i] for i in key)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        pieces.append((c < 0, body))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ----------------------------------------------------- interface wrappers


def uea_mul(u: UEAElt, v: UEAElt, alg: PBWAlgebra) -> UEAElt:
    """Product in the envelope, result in normal form."""
    return alg.mul(u, v)


def normal_form(
    word: tuple[int, ...],
    coeff,
    alg: PBWAlgebra,
    schedule: str = "first",
) -> UEAElt:
    """Normal form of coeff * (word of basis indices)."""
    return alg.normal_form(tuple(word), Fraction(coeff), schedule)


def ad_L(x, u: UEAElt, alg: PBWAlgebra) -> UEAElt:
    """Adjoint (derivation) action of an even-part element on the envelope."""
    return alg.ad(x, u)


def cartan_polynomial(u: UEAElt, alg: PBWAlgebra) -> CartanPoly:
    """Highest-weight eigenvalue polynomial of a weight-zero element."""
    return alg.cartan_polynomial(u)
