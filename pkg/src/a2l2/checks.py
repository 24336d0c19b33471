"""Registered verification checks over the whole pipeline.

Each check recomputes one layer of the classification story and compares it
against its independent reference (pinned matrices, closed forms, weight
formulas, the admissibility decision procedure).  Checks run in dependency
order; a check whose prerequisite failed is reported as skipped rather than
failed, so a single root cause does not cascade into a wall of red.
"""

from __future__ import annotations

import dataclasses
import json
import os
import time
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .affroots import (
    algebra_data,
    cartan_matrix_from_form,
    check_admissible,
    kw_positivity,
)
from .classify import (
    affinize,
    all_highest_weights,
    dominant_integral_filter,
    eval_polys,
    mu_weight,
    zero_set_oracle,
)
from .envelope import uea_string
from .liealg import computed_b_cartan, g1_basis, g1_zero_weight_dim
from .twzhu import (
    compute_v1,
    lowered_polynomials,
    poly_span_equal,
    projection_context,
    r0_basis,
    r0_zero_weight_members,
    reference_polynomials,
    v1_closed_form,
    zhu_image_closed_form,
    zhu_singular_image,
)
from .vacuum import (
    check_singular,
    nu_state,
    positive_mode_sweep,
    singular_vector,
    state_string,
    state_weight,
)

DEFAULT_MAX_RANK = 4


def max_rank() -> int:
    """Largest admitted rank; the A2L2_MAX_L environment variable raises it."""
    raw = os.environ.get("A2L2_MAX_L")
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"A2L2_MAX_L must be an integer, got {raw!r}") from exc
    return max(value, 1)


def level_of(l: int) -> Fraction:
    return Fraction(-(2 * l + 1), 2)


def level_string(l: int) -> str:
    k = level_of(l)
    return f"{k.numerator}/{k.denominator}"


def _exact(x) -> int | str:
    """JSON encoding of an exact rational: int when integral, else "p/q"."""
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _exact_list(vals) -> list:
    return [_exact(v) for v in vals]


@dataclasses.dataclass(frozen=True)
class CheckResult:
    id: str
    status: str  # "pass" | "fail" | "skip"
    elapsed_ms: int
    details: dict


@dataclasses.dataclass(frozen=True)
class Report:
    l: int
    checks: tuple[CheckResult, ...]
    overall: str  # "pass" | "fail"

    @property
    def level(self) -> Fraction:
        return level_of(self.l)


# ----------------------------------------------------------- the checks

def _expected_b_matrix(l: int) -> list[list[int]]:
    if l == 1:
        return [[2]]
    rows = []
    for i in range(l):
        row = [0] * l
        row[i] = 2
        if i > 0:
            row[i - 1] = -1
        if i < l - 1:
            row[i + 1] = -1
        rows.append(row)
    rows[l - 1][l - 2] = -2  # the short-root corner entry doubles
    return rows


def _check_cartan_matrix(l: int) -> tuple[bool, dict]:
    horizontal = computed_b_cartan(l)
    expected = _expected_b_matrix(l)
    data = algebra_data(l)
    affine_ok = cartan_matrix_from_form(l) == data.cartan_matrix
    ok = horizontal == expected and affine_ok
    return ok, {
        "horizontal_matrix": horizontal,
        "horizontal_expected": expected,
        "affine_matrix": [list(r) for r in data.cartan_matrix],
        "affine_matches_bilinear_form": affine_ok,
        "marks": list(data.marks),
        "comarks": list(data.comarks),
        "dual_coxeter": data.h_dual,
    }


def _check_g1_dim(l: int) -> tuple[bool, dict]:
    zero_dim = g1_zero_weight_dim(l)
    total = len(g1_basis(l))
    ok = zero_dim == l and total == 2 * l * l + 3 * l
    return ok, {
        "zero_weight_dim": zero_dim,
        "expected_zero_weight_dim": l,
        "odd_part_dim": total,
        "expected_odd_part_dim": 2 * l * l + 3 * l,
    }


def _check_singular(l: int) -> tuple[bool, dict]:
    v = singular_vector(l)
    annihilated = check_singular(v, l)
    swept = positive_mode_sweep(v, l)
    weight = state_weight(v)
    expected_weight = tuple(
        Fraction(1 if i in (1, 2 * l) else 0) for i in range(1, 2 * l + 1)
    )
    ok = annihilated and swept and weight == expected_weight
    return ok, {
        "raising_annihilation": annihilated,
        "positive_mode_sweep": swept,
        "weight": _exact_list(weight),
        "terms": len(v.terms),
    }


def _check_nu_fixed(l: int) -> tuple[bool, dict]:
    v = singular_vector(l)
    ok = nu_state(v) == v
    return ok, {"fixed_by_twist": ok}


def _check_zhu_image(l: int) -> tuple[bool, dict]:
    ctx = projection_context(l)
    image = zhu_singular_image(ctx)
    closed = zhu_image_closed_form(ctx)
    expected_weight = tuple(
        Fraction(4 if l == 1 else 2) if i == 0 else Fraction(0) for i in range(l)
    )
    ok = image == closed and ctx.alg.weight_of(image) == expected_weight
    return ok, {
        "matches_closed_form": image == closed,
        "monomials": len(image),
        "weight": _exact_list(ctx.alg.weight_of(image)),
        "rendered": uea_string(image, ctx.alg),
    }


def _check_v1(l: int) -> tuple[bool, dict]:
    ctx = projection_context(l)
    computed = compute_v1(ctx)
    closed = v1_closed_form(ctx)
    ok = computed == closed
    return ok, {
        "matches_closed_form": ok,
        "monomials": len(computed),
    }


def _check_polynomials(l: int) -> tuple[bool, dict]:
    ctx = projection_context(l)
    polys = lowered_polynomials(ctx)
    adopted = reference_polynomials(l)
    rejected = reference_polynomials(l, plus_half=True)
    ok = polys == adopted and polys != rejected
    return ok, {
        "polynomials": [p.factored_h_string() for p in polys],
        "matches_adopted_constant": polys == adopted,
        "matches_rejected_variant": polys == rejected,
    }


def _check_r0(l: int) -> tuple[bool, dict]:
    ctx = projection_context(l)
    orbit = r0_basis(ctx)
    members = r0_zero_weight_members(ctx)
    member_polys = [ctx.alg.cartan_polynomial(u) for u in members]
    span_ok = poly_span_equal(member_polys, lowered_polynomials(ctx))
    ok = (
        len(orbit) == 2 * l * l + 3 * l
        and len(members) == l
        and span_ok
    )
    return ok, {
        "orbit_dim": len(orbit),
        "expected_orbit_dim": 2 * l * l + 3 * l,
        "zero_weight_dim": len(members),
        "expected_zero_weight_dim": l,
        "span_matches_polynomials": span_ok,
    }


def _check_classification(l: int) -> tuple[bool, dict]:
    ctx = projection_context(l)
    zero_set = zero_set_oracle(lowered_polynomials(ctx))
    formulas = frozenset(all_highest_weights(l))
    residuals_ok = all(
        not any(eval_polys(lowered_polynomials(ctx), w)) for w in formulas
    )
    ok = zero_set == formulas and len(zero_set) == 2**l and residuals_ok
    return ok, {
        "count": len(zero_set),
        "expected_count": 2**l,
        "matches_weight_formulas": zero_set == formulas,
        "all_polynomials_vanish": residuals_ok,
        "weights": sorted(w.omega_string() for w in zero_set),
    }


def _check_dominant(l: int) -> tuple[bool, dict]:
    kept = dominant_integral_filter(all_highest_weights(l))
    expected = frozenset({mu_weight(l, (), False), mu_weight(l, (), True)})
    ok = kept == expected
    return ok, {
        "count": len(kept),
        "weights": sorted(w.omega_string() for w in kept),
        "expected_weights": sorted(w.omega_string() for w in expected),
    }


def _check_admissible_all(l: int) -> tuple[bool, dict]:
    rows = []
    ok = True
    for w in all_highest_weights(l):
        lam = affinize(w, l)
        report = check_admissible(lam)
        ok = ok and report.passed
        rows.append(
            {
                "weight": w.omega_string(),
                "condition1": report.cond1_pass,
                "condition2": report.cond2_pass,
                "coroot_span_rank": report.cond2_rank,
            }
        )
    return ok, {"count": len(rows), "weights": rows}


def _check_kw(l: int) -> tuple[bool, dict]:
    values = [kw_positivity(affinize(w, l)) for w in all_highest_weights(l)]
    shifted = level_of(l) + (2 * l + 1)
    ok = all(values) and shifted > 0
    return ok, {
        "level_plus_dual_coxeter": _exact(shifted),
        "all_positive": all(values),
    }


CheckFn = Callable[[int], "tuple[bool, dict]"]

REGISTRY: tuple[tuple[str, tuple[str, ...], CheckFn], ...] = (
    ("cartan-matrix", (), _check_cartan_matrix),
    ("g1-dim", (), _check_g1_dim),
    ("singular", (), _check_singular),
    ("nu-fixed", ("singular",), _check_nu_fixed),
    ("zhu-image", ("singular",), _check_zhu_image),
    ("v1-closed-form", ("zhu-image",), _check_v1),
    ("polynomials", ("v1-closed-form",), _check_polynomials),
    ("r0-dim", ("zhu-image", "polynomials"), _check_r0),
    ("classification", ("polynomials",), _check_classification),
    ("dominant", ("classification",), _check_dominant),
    ("admissible", ("classification",), _check_admissible_all),
    ("kw-positivity", ("classification",), _check_kw),
)

CHECK_IDS = tuple(entry[0] for entry in REGISTRY)


def run_checks(l: int, check_ids: Iterable[str] | str = "all") -> Report:
    """Execute the selected checks in dependency order for the given rank.

    A selected check is skipped when one of its selected prerequisites
    failed or was skipped; prerequisites that were not selected at all are
    not required.  Raises ValueError on an unknown id or an out-of-range
    rank (the cap is raised by A2L2_MAX_L).
    """
    cap = max_rank()
    if not isinstance(l, int) or not 1 <= l <= cap:
        raise ValueError(f"rank must be an integer in 1..{cap}, got {l!r}")
    if check_ids == "all":
        selected = set(CHECK_IDS)
    else:
        selected = set(check_ids)
        unknown = selected.difference(CHECK_IDS)
        if unknown:
            raise ValueError(
                "unknown check ids: " + ", ".join(sorted(unknown))
            )
        if not selected:
            raise ValueError("no checks selected")
    statuses: dict[str, str] = {}
    results = []
    for check_id, deps, fn in REGISTRY:
        if check_id not in selected:
            continue
        blocked = [
            d for d in deps if statuses.get(d) in ("fail", "skip")
        ]
        if blocked:
            statuses[check_id] = "skip"
            results.append(
                CheckResult(
                    check_id,
                    "skip",
                    0,
                    {"blocked_by": blocked},
                )
            )
            continue
        start = time.monotonic()
        try:
            ok, details = fn(l)
        except Exception as exc:  # a crash is an honest failure, not green
            ok, details = False, {"error": f"{type(exc).__name__}: {exc}"}
        elapsed = int((time.monotonic() - start) * 1000)
        status = "pass" if ok else "fail"
        statuses[check_id] = status
        results.append(CheckResult(check_id, status, elapsed, details))
    overall = (
        "pass"
        if all(r.status == "pass" for r in results if r.status != "skip")
        else "fail"
    )
    return Report(l, tuple(results), overall)


# ------------------------------------------------------------- rendering

def render_report(report: Report, format: str = "text") -> str:
    if format == "json":
        payload = {
            "l": report.l,
            "level": level_string(report.l),
            "overall": report.overall,
            "checks": [
                {
                    "id": r.id,
                    "status": r.status,
                    "elapsed_ms": r.elapsed_ms,
                    "details": r.details,
                }
                for r in report.checks
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [f"rank l = {report.l}, level {level_string(report.l)}"]
    for r in report.checks:
        lines.append(f"  [{r.status.upper():4s}] {r.id} ({r.elapsed_ms} ms)")
        if r.status == "fail":
            lines.append(f"         {json.dumps(r.details, sort_keys=True)}")
        elif r.status == "skip":
            lines.append(f"         blocked by: {', '.join(r.details['blocked_by'])}")
    lines.append(f"overall: {report.overall.upper()}")
    return "\n".join(lines) + "\n"


DUMP_OBJECTS = ("singular", "zhu-image", "v1", "polys", "weights")


def dump_object(l: int, which: str) -> str:
    """Plain-text rendering of one of the central symbolic objects."""
    cap = max_rank()
    if not isinstance(l, int) or not 1 <= l <= cap:
        raise ValueError(f"rank must be an integer in 1..{cap}, got {l!r}")
    if which == "singular":
        return state_string(singular_vector(l)) + "\n"
    if which == "zhu-image":
        ctx = projection_context(l)
        return uea_string(zhu_singular_image(ctx), ctx.alg) + "\n"
    if which == "v1":
        ctx = projection_context(l)
        return uea_string(compute_v1(ctx), ctx.alg) + "\n"
    if which == "polys":
        ctx = projection_context(l)
        lines = [p.factored_h_string() for p in lowered_polynomials(ctx)]
        return "\n".join(lines) + "\n"
    if which == "weights":
        lines = [w.omega_string() for w in all_highest_weights(l)]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown object {which!r}")
