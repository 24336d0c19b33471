"""Vacuum module over the affinization: mode operators on states.

States are finite sums of normal-ordered creation monomials applied to the
vacuum.  A monomial is a tuple of (basis index, depth) pairs with depth >= 1,
stored deepest-first with ties broken by basis index.  Mode operators act via
the affine commutation rule

    [a(m), b(n)] = [a,b](m+n) + m * delta(m+n, 0) * <a,b> * level,

with non-negative modes annihilating the vacuum.  Normal ordering terminates
because each rewrite either shortens the word, moves an annihilator past one
fewer creation factor, or removes an adjacent inversion among creations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .liealg import (
    E,
    H,
    LieElt,
    bracket,
    eigen_ratio,
    g0_basis_info,
    g1_basis_info,
    invariant_form,
    nu,
)
from .linalg import SpanSolver

DEPTH_CAP = 8  # total creation depth allowed in any stored monomial

# monomial: tuple of (basis index, depth), depth desc then index asc
Monomial = tuple[tuple[int, int], ...]


class ModeOp(NamedTuple):
    elt: LieElt
    mode: int


class ModeBasis:
    """Ordered basis of the finite algebra with cached structure constants."""

    def __init__(self, l: int, elems: tuple[LieElt, ...], labels: tuple[str, ...],
                 g0_count: int | None = None) -> None:
        self.l = l
        self.elems = tuple(elems)
        self.labels = tuple(labels)
        self.g0_count = g0_count
        self._span = SpanSolver()
        for x in self.elems:
            if not self._span.add(x.entry_vector()):
                raise AssertionError("mode basis is not independent")
        self._brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._grams: dict[tuple[int, int], Fraction] = {}
        self._nu: dict[int, dict[int, Fraction]] = {}

    def expand(self, x: LieElt) -> dict[int, Fraction]:
        v = self._span.coords(x.entry_vector())
        if v is None:
            raise ValueError("element is outside the mode basis span")
        return dict(v)

    def bracket_coords(self, s: int, t: int) -> dict[int, Fraction]:
        key = (s, t)
        got = self._brackets.get(key)
        if got is None:
            got = self.expand(bracket(self.elems[s], self.elems[t]))
            self._brackets[key] = got
        return got

    def gram(self, s: int, t: int) -> Fraction:
        key = (s, t)
        got = self._grams.get(key)
        if got is None:
            got = invariant_form(self.elems[s], self.elems[t])
            self._grams[key] = got
        return got

    def nu_coords(self, s: int) -> dict[int, Fraction]:
        got = self._nu.get(s)
        if got is None:
            got = self.expand(nu(self.elems[s]))
            self._nu[s] = got
        return got


@lru_cache(maxsize=None)
def standard_mode_basis(l: int) -> ModeBasis:
    """Cartan differences H_1..H_{2l}, then off-diagonal units in index order."""
    n = 2 * l + 1
    elems: list[LieElt] = [H(n, i) for i in range(1, n)]
    labels: list[str] = [f"H[{i}]" for i in range(1, n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                elems.append(E(n, i, j))
                labels.append(f"E[{i},{j}]")
    return ModeBasis(l, tuple(elems), tuple(labels))


@lru_cache(maxsize=None)
def split_mode_basis(l: int) -> ModeBasis:
    """Even-part basis (same order as the envelope) followed by the odd part."""
    info0 = g0_basis_info(l)
    info1 = g1_basis_info(l)
    return ModeBasis(
        l,
        info0.elems + info1.elems,
        info0.labels + info1.labels,
        g0_count=info0.dim,
    )


@dataclass
class VermaState:
    """Finite combination of normal-ordered creation monomials on the vacuum."""

    basis: ModeBasis
    k: Fraction
    terms: dict[Monomial, Fraction]

    def __post_init__(self) -> None:
        for mono, c in self.terms.items():
            if not c:
                raise ValueError("zero coefficient stored")
            total = 0
            prev = None
            for idx, depth in mono:
                if depth < 1:
                    raise ValueError("creation depth must be >= 1")
                if not 0 <= idx < len(self.basis.elems):
                    raise ValueError("basis index out of range")
                key = (-depth, idx)
                if prev is not None and key < prev:
                    raise ValueError("monomial is not in canonical order")
                prev = key
                total += depth
            if total > DEPTH_CAP:
                raise ValueError(f"monomial depth {total} exceeds cap {DEPTH_CAP}")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VermaState)
            and self.basis.labels == other.basis.labels
            and self.k == other.k
            and self.terms == other.terms
        )

    def __add__(self, other: "VermaState") -> "VermaState":
        if self.basis is not other.basis or self.k != other.k:
            raise ValueError("state context mismatch")
        t = dict(self.terms)
        for mono, c in other.terms.items():
            s = t.get(mono, Fraction(0)) + c
            if s:
                t[mono] = s
            else:
                t.pop(mono, None)
        return VermaState(self.basis, self.k, t)

    def scale(self, c) -> "VermaState":
        c = Fraction(c)
        if not c:
            return VermaState(self.basis, self.k, {})
        return VermaState(self.basis, self.k, {m: c * x for m, x in self.terms.items()})

    def __sub__(self, other: "VermaState") -> "VermaState":
        return self + other.scale(-1)


def vacuum(basis: ModeBasis, k: Fraction) -> VermaState:
    return VermaState(basis, Fraction(k), {(): Fraction(1)})


def _normal_order(
    basis: ModeBasis, k: Fraction, word: tuple[tuple[int, int], ...],
    coeff: Fraction = Fraction(1),
) -> dict[Monomial, Fraction]:
    """Normal-order a word of (index, mode) operators applied to the vacuum."""
    out: dict[Monomial, Fraction] = {}
    pending = [(tuple(word), Fraction(coeff))]
    while pending:
        w, c = pending.pop()
        if not c:
            continue
        if not w:
            s = out.get((), Fraction(0)) + c
            if s:
                out[()] = s
            else:
                out.pop((), None)
            continue
        if w[-1][1] >= 0:
            continue  # non-negative mode annihilates the vacuum
        pos = next(
            (i for i in range(len(w) - 2, -1, -1) if w[i][1] >= 0), None
        )
        if pos is not None:
            (s_idx, m), (t_idx, n) = w[pos], w[pos + 1]
            rest = w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2 :]
            pending.append((rest, c))
            for r, b in basis.bracket_coords(s_idx, t_idx).items():
                pending.append((w[:pos] + ((r, m + n),) + w[pos + 2 :], c * b))
            if m + n == 0 and m != 0:
                g = basis.gram(s_idx, t_idx)
                if g:
                    pending.append((w[:pos] + w[pos + 2 :], c * m * g * k))
            continue
        # all creations: sort by (mode asc, index asc)
        pos = next(
            (
                i
                for i in range(len(w) - 1)
                if (w[i][1], w[i][0]) > (w[i + 1][1], w[i + 1][0])
            ),
            None,
        )
        if pos is None:
            total = sum(-m for _, m in w)
            if total > DEPTH_CAP:
                raise ValueError(f"monomial depth {total} exceeds cap {DEPTH_CAP}")
            mono = tuple((idx, -m) for idx, m in w)
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
            continue
        (s_idx, m), (t_idx, n) = w[pos], w[pos + 1]
        pending.append((w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2 :], c))
        for r, b in basis.bracket_coords(s_idx, t_idx).items():
            pending.append((w[:pos] + ((r, m + n),) + w[pos + 2 :], c * b))
    return out


def _word_of(mono: Monomial) -> tuple[tuple[int, int], ...]:
    return tuple((idx, -depth) for idx, depth in mono)


def mode_action(op: ModeOp | tuple[LieElt, int], s: VermaState) -> VermaState:
    """Apply the mode operator elt(mode) to a state."""
    elt, mode = op
    coords = s.basis.expand(elt)
    out: dict[Monomial, Fraction] = {}
    for mono, c in s.terms.items():
        word = _word_of(mono)
        for idx, a in coords.items():
            for m2, c2 in _normal_order(s.basis, s.k, ((idx, mode),) + word, c * a).items():
                v = out.get(m2, Fraction(0)) + c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
    return VermaState(s.basis, s.k, out)


def state_from_ops(basis: ModeBasis, k: Fraction,
                   ops: list[tuple[LieElt, int]]) -> VermaState:
    """Apply mode operators to the vacuum, rightmost operator first."""
    s = vacuum(basis, k)
    for op in reversed(ops):
        s = mode_action(op, s)
    return s


def nu_state(s: VermaState) -> VermaState:
    """Apply the involution factorwise to every creation monomial."""
    out: dict[Monomial, Fraction] = {}
    for mono, c in s.terms.items():
        expanded: list[tuple[tuple[tuple[int, int], ...], Fraction]] = [((), c)]
        for idx, depth in mono:
            nxt = []
            for word, cc in expanded:
                for t, b in s.basis.nu_coords(idx).items():
                    nxt.append((word + ((t, -depth),), cc * b))
            expanded = nxt
        for word, cc in expanded:
            for m2, c2 in _normal_order(s.basis, s.k, word, cc).items():
                v = out.get(m2, Fraction(0)) + c2
                if v:
                    out[m2] = v
                else:
                    out.pop(m2, None)
    return VermaState(s.basis, s.k, out)


def state_weight(
    s: VermaState, cartan: tuple[LieElt, ...] | None = None
) -> tuple[Fraction, ...]:
    """Common eigenvalue tuple under the given diagonal zero modes
    (default: H_1..H_{2l}).

    Raises if the state mixes weights (every state built here from weight
    vectors is weight-pure)."""
    n = 2 * s.basis.l + 1
    if cartan is None:
        cartan = tuple(H(n, i) for i in range(1, n))
    eig: dict[int, tuple[Fraction, ...]] = {}

    def elem_weight(idx: int) -> tuple[Fraction, ...]:
        got = eig.get(idx)
        if got is None:
            x = s.basis.elems[idx]
            got = tuple(eigen_ratio(bracket(h, x), x) for h in cartan)
            eig[idx] = got
        return got

    common: tuple[Fraction, ...] | None = None
    for mono in s.terms:
        tot = [Fraction(0)] * len(cartan)
        for idx, _ in mono:
            for i, wv in enumerate(elem_weight(idx)):
                tot[i] += wv
        t = tuple(tot)
        if common is None:
            common = t
        elif common != t:
            raise ValueError("state mixes weights")
    if common is None:
        return tuple(Fraction(0) for _ in range(len(cartan)))
    return common


def level_for(l: int) -> Fraction:
    """The level at which the extra singular vector appears."""
    return Fraction(-(2 * l + 1), 2)


def singular_vector(l: int) -> VermaState:
    """Degree-2 singular vector of the vacuum module at the special level."""
    n = 2 * l + 1
    basis = standard_mode_basis(l)
    k = level_for(l)
    top = E(n, 1, n)
    total = VermaState(basis, k, {})
    for i in range(1, 2 * l + 1):
        c = Fraction(2 * l - 2 * i + 1, 2 * l + 1)
        total = total + state_from_ops(basis, k, [(top, -1), (H(n, i), -1)]).scale(c)
    for i in range(1, 2 * l):
        total = total + state_from_ops(
            basis, k, [(E(n, 1, i + 1), -1), (E(n, i + 1, n), -1)]
        )
    total = total + state_from_ops(basis, k, [(top, -2)]).scale(Fraction(-(2 * l - 1), 2))
    return total


def check_singular(s: VermaState, l: int) -> bool:
    """True iff the raising zero modes and the affine raising mode kill s."""
    n = 2 * l + 1
    for i in range(1, n):
        if not mode_action((E(n, i, i + 1), 0), s).is_zero():
            return False
    return mode_action((E(n, n, 1), 1), s).is_zero()


def positive_mode_sweep(s: VermaState, l: int, modes: tuple[int, ...] = (1, 2)) -> bool:
    """True iff every basis operator at the given positive modes kills s."""
    for x in s.basis.elems:
        for m in modes:
            if m < 1:
                raise ValueError("sweep modes must be positive")
            if not mode_action((x, m), s).is_zero():
                return False
    return True


def zero_mode_orbit(v: VermaState, l: int) -> list[VermaState]:
    """Basis of the closure of v under even-part zero modes."""
    solver = SpanSolver()
    out: list[VermaState] = []
    queue: list[VermaState] = []
    if solver.add(dict(v.terms)):
        out.append(v)
        queue.append(v)
    elems = g0_basis_info(l).elems
    while queue:
        w = queue.pop()
        for x in elems:
            u = mode_action((x, 0), w)
            if not u.is_zero() and solver.add(dict(u.terms)):
                out.append(u)
                queue.append(u)
    return out


def orbit_contains(states: list[VermaState], s: VermaState) -> bool:
    solver = SpanSolver()
    for w in states:
        solver.add(dict(w.terms))
    return solver.contains(dict(s.terms))


def convert_state(s: VermaState, target: ModeBasis) -> VermaState:
    """Re-express a state over another basis of the same finite algebra."""
    out: dict[Monomial, Fraction] = {}
    for mono, c in s.terms.items():
        expanded: list[tuple[tuple[tuple[int, int], ...], Fraction]] = [((), c)]
        for idx, depth in mono:
            coords = target.expand(s.basis.elems[idx])
            nxt = []
            for word, cc in expanded:
                for t, b in coords.items():
                    nxt.append((word + ((t, -depth),), cc * b))
            expanded = nxt
        for word, cc in expanded:
            for m2, c2 in _normal_order(target, s.k, word, cc).items():
                val = out.get(m2, Fraction(0)) + c2
                if val:
                    out[m2] = val
                else:
                    out.pop(m2, None)
    return VermaState(target, s.k, out)


def state_string(s: VermaState) -> str:
    """Single-line rendering: factors as label(-depth), vacuum as |0>."""
    if not s.terms:
        return "0"
    pieces: list[str] = []
    for mono, c in sorted(s.terms.items()):
        body = "".join(f"{s.basis.labels[idx]}({-depth})" for idx, depth in mono)
        body += "|0>"
        mag = abs(c)
        if mag != 1:
            body = f"{mag}*{body}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)
