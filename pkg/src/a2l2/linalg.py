"""Exact incremental row reduction over sparse rational vectors.

Vectors are dicts mapping hashable, mutually comparable keys to Fractions,
with zero entries never stored.  `SpanSolver` keeps a fully reduced
(Gauss-Jordan) row basis, so rank, membership, and coordinate queries are all
single reduction passes with no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable

Vec = dict[Hashable, Fraction]


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_add_into(dst: Vec, src: Vec, c: Fraction = Fraction(1)) -> None:
    """dst += c*src, dropping entries that cancel to zero."""
    if not c:
        return
    for k, x in src.items():
        y = dst.get(k, Fraction(0)) + c * x
        if y:
            dst[k] = y
        else:
            dst.pop(k, None)


class SpanSolver:
    """Incremental span of sparse vectors over the rationals.

    `add` extends the span and reports whether the vector was new;
    `coords` writes a vector as an exact combination of the previously
    added independent generators (by their insertion index).
    """

    def __init__(self) -> None:
        self._rows: list[Vec] = []          # reduced rows, pivot coeff 1
        self._combos: list[Vec] = []        # row i = sum combo[i][t] * gen_t
        self._pivots: list[Hashable] = []   # pivot key of row i
        self.n_generators = 0               # independent vectors added so far

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Vec) -> tuple[Vec, Vec]:
        """Return (remainder, combo) with v = remainder + sum combo*gens."""
        r = dict(v)
        combo: Vec = {}
        # rows are mutually reduced: one pass suffices
        for i, piv in enumerate(self._pivots):
            c = r.get(piv)
            if c:
                vec_add_into(r, self._rows[i], -c)
                vec_add_into(combo, self._combos[i], c)
        return r, combo

    def add(self, v: Vec) -> bool:
        """Extend the span by v; True iff v was independent of the span."""
        r, combo = self._reduce(v)
        if not r:
            return False
        piv = min(r.keys())
        s = r[piv]
        inv = 1 / s
        row = vec_scale(r, inv)
        # new generator index: this add
        t = self.n_generators
        new_combo: Vec = {t: inv}
        vec_add_into(new_combo, combo, -inv)
        # keep older rows free of the new pivot (full Gauss-Jordan)
        for i in range(len(self._rows)):
            c = self._rows[i].get(piv)
            if c:
                vec_add_into(self._rows[i], row, -c)
                vec_add_into(self._combos[i], new_combo, -c)
        self._rows.append(row)
        self._combos.append(new_combo)
        self._pivots.append(piv)
        self.n_generators += 1
        return True

    def contains(self, v: Vec) -> bool:
        r, _ = self._reduce(v)
        return not r

    def coords(self, v: Vec) -> Vec | None:
        """Exact coordinates of v over the independent generators, or None.

        Only meaningful when every `add` so far returned True (a basis);
        generator indices are insertion indices.
        """
        r, combo = self._reduce(v)
        if r:
            return None
        return combo


def rank_of(vectors: list[Vec]) -> int:
    s = SpanSolver()
    for v in vectors:
        s.add(v)
    return s.rank
