"""Command line interface: batch verification, object dumps, and the
classified weight list, with exact-rational JSON output."""

from __future__ import annotations

import json
import sys

import click

from .affroots import check_admissible, kw_positivity
from .checks import (
    CHECK_IDS,
    DUMP_OBJECTS,
    dump_object,
    level_string,
    max_rank,
    render_report,
    run_checks,
)
from .classify import affinize, all_highest_weights


def _validated_rank(l: int) -> int:
    cap = max_rank()
    if not 1 <= l <= cap:
        raise click.UsageError(
            f"--l must be between 1 and {cap} (raise the cap with A2L2_MAX_L)"
        )
    return l


@click.group()
def main() -> None:
    """Exact verification of the twisted highest-weight classification."""


@main.command()
@click.option("--l", "l", type=int, required=True, help="Rank of the horizontal algebra.")
@click.option(
    "--checks",
    "checks",
    default="all",
    show_default=True,
    help="Comma-separated check ids, or 'all'. Known ids: " + ", ".join(CHECK_IDS) + ".",
)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
)
@click.option(
    "--out",
    "out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the report to a file instead of stdout.",
)
def verify(l: int, checks: str, fmt: str, out: str | None) -> None:
    """Run the registered checks and report pass/fail per check."""
    l = _validated_rank(l)
    if checks.strip() == "all":
        ids: str | tuple[str, ...] = "all"
    else:
        ids = tuple(s.strip() for s in checks.split(",") if s.strip())
    try:
        report = run_checks(l, ids)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    rendered = render_report(report, fmt)
    if out is not None:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        click.echo(rendered, nl=False)
    sys.exit(0 if report.overall == "pass" else 1)


@main.command()
@click.option("--l", "l", type=int, required=True, help="Rank of the horizontal algebra.")
@click.option(
    "--object",
    "which",
    type=click.Choice(list(DUMP_OBJECTS)),
    required=True,
    help="Which symbolic object to print.",
)
def dump(l: int, which: str) -> None:
    """Print one of the central symbolic objects in plain text."""
    l = _validated_rank(l)
    click.echo(dump_object(l, which), nl=False)


@main.command(name="classify")
@click.option("--l", "l", type=int, required=True, help="Rank of the horizontal algebra.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "text"]),
    default="json",
    show_default=True,
)
def classify_cmd(l: int, fmt: str) -> None:
    """List the classified highest weights with their status flags."""
    l = _validated_rank(l)
    rows = []
    for w in all_highest_weights(l):
        lam = affinize(w, l)
        report = check_admissible(lam)
        rows.append(
            {
                "weight": w.omega_string(),
                "coroot_values": [
                    f"{c.numerator}/{c.denominator}" if c.denominator != 1 else int(c)
                    for c in w.coroot_vals
                ],
                "eps_coordinates": [
                    f"{c.numerator}/{c.denominator}" if c.denominator != 1 else int(c)
                    for c in w.eps_coords
                ],
                "dominant_integral": w.is_dominant_integral(),
                "admissible": report.passed,
                "kw_positive": kw_positivity(lam),
            }
        )
    if fmt == "json":
        payload = {"l": l, "level": level_string(l), "weights": rows}
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(f"rank l = {l}, level {level_string(l)}")
        for row in rows:
            flags = []
            if row["dominant_integral"]:
                flags.append("dominant-integral")
            if row["admissible"]:
                flags.append("admissible")
            if row["kw_positive"]:
                flags.append("kw-positive")
            click.echo(f"  {row['weight']}  [{', '.join(flags)}]")


if __name__ == "__main__":
    main()
