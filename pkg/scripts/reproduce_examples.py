#!/usr/bin/env python3
"""
Worked Examples

Recomputes the closed-form conjugacies, moduli and unfolding counts
and prints them next to the expected values.
"""

import math
import sys
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.table import Table

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from classify import classify_germ, normal_forms_table
from conjugacy import c0_conjugacy, c1_conjugator, scale_conjugacy, solve_homological
from flows import GridSpec, verify_conjugacy
from unfold import build_unfolding, sweep

console = Console()


def _status(ok: bool) -> str:
    return "[green]✅ Match[/green]" if ok else "[red]❌ Mismatch[/red]"


def show_signed_square():
    """x -> 2x by x|x|"""
    console.rule("[bold blue]Signed Square")

    w = c0_conjugacy("x", "2*x")
    table = Table(title="phi(x) against x|x|")
    table.add_column("x", style="cyan")
    table.add_column("phi(x)", style="magenta")
    table.add_column("x|x|", style="magenta")
    table.add_column("Status", style="green")

    ok = True
    for x in np.linspace(-0.5, 0.5, 5):
        value, exact = w(x), x * abs(x)
        row_ok = abs(value - exact) < 1e-8
        ok &= row_ok
        table.add_row(f"{x:+.3f}", f"{value:+.10f}", f"{exact:+.10f}", _status(row_ok))

    console.print(table)
    report = verify_conjugacy("x", "2*x", w, GridSpec.uniform())
    console.print(f"Flow commutation: max residual {report.max_residual:.2e} over {report.evaluated} points\n")
    return ok


def show_square_plus_cube():
    """x^2 + x^3 -> x^2 by x / (1 + x log x - x log(x + 1))"""
    console.rule("[bold blue]Degenerate Germ x^2 + x^3")

    c = classify_germ("x^2 + x^3")
    console.print(f"kind={c.kind}  k={c.k}  a={c.a:g}  d={c.d:g}  c0={c.c0_class}")

    forms = Table(title="Normal Forms")
    forms.add_column("Relation", style="cyan")
    forms.add_column("Model", style="magenta")
    for relation, text in normal_forms_table(c).items():
        forms.add_row(relation, text)
    console.print(forms)

    w = c1_conjugator("x^2 + x^3", tti=True)
    xs = np.linspace(0.01, 0.4, 50)
    exact = [x / (1.0 + x * math.log(x) - x * math.log(x + 1.0)) for x in xs]
    error = max(abs(w(x) - e) for x, e in zip(xs, exact))
    console.print(f"C1 conjugator vs closed form: max error {error:.2e} ({w.smoothness_claim})\n")
    return error < 1e-8 and abs(c.d - 1.0) < 1e-12


def show_scalings():
    """Scalings between monomial fields"""
    console.rule("[bold blue]Scalings and Orientation")

    table = Table(title="Monomial Conjugacies")
    table.add_column("Pair", style="cyan")
    table.add_column("Witness", style="magenta")
    table.add_column("Orientation", style="yellow")
    table.add_column("Status", style="green")

    ok = True
    scale = scale_conjugacy(1.0, 4.0, 3)
    row_ok = abs(scale(0.3) - 0.6) < 1e-12
    ok &= row_ok
    table.add_row("4x^3 -> x^3", scale.source, scale.orientation, _status(row_ok))

    flip = c0_conjugacy("x^2", "-x^2")
    row_ok = flip.orientation == "reversing" and abs(flip(0.2) + 0.2) < 1e-10
    ok &= row_ok
    table.add_row("x^2 -> -x^2", flip.source, flip.orientation, _status(row_ok))

    console.print(table)
    console.print()
    return ok


def show_homological():
    """f X' - g X = k in closed form"""
    console.rule("[bold blue]Homological Equation")

    cases = [
        ("x", "x", "0", lambda x: -x * x),
        ("x^2", "0", "x^3", lambda x: -2 * x ** 3),
    ]
    table = Table(title="Solutions")
    table.add_column("(f, g, k)", style="cyan")
    table.add_column("Residual", style="magenta")
    table.add_column("Status", style="green")

    ok = True
    for f, g, k, exact in cases:
        sol = solve_homological(f, g, k)
        error = max(abs(sol(x) - exact(x)) for x in np.linspace(-0.5, 0.5, 11))
        row_ok = error < 1e-9
        ok &= row_ok
        table.add_row(f"({f}, {g}, {k})", f"{sol.residual_bound:.2e}", _status(row_ok))

    console.print(table)
    console.print()
    return ok


def show_unfoldings():
    """Equilibrium counts across the bifurcation value"""
    console.rule("[bold blue]Unfoldings")

    cases = [
        ("Saddle-node F_2, d=0", build_unfolding("F", 2, d=0.0), [2, 1, 0]),
        ("Transcritical Q_2", build_unfolding("Q", 2), [2, 1, 2]),
    ]
    table = Table(title="Equilibria at lambda = -1, 0, 1")
    table.add_column("Family", style="cyan")
    table.add_column("Counts", style="magenta")
    table.add_column("Expected", style="magenta")
    table.add_column("Status", style="green")

    ok = True
    for name, family, expected in cases:
        counts = sweep(family, [[-1.0, 0.0, 1.0]]).counts
        row_ok = counts == expected
        ok &= row_ok
        table.add_row(name, str(counts), str(expected), _status(row_ok))

    console.print(table)
    console.print()
    return ok


def main():
    console.print("\n[bold cyan]GermKit Worked Examples[/bold cyan]\n")

    results = [
        show_signed_square(),
        show_square_plus_cube(),
        show_scalings(),
        show_homological(),
        show_unfoldings(),
    ]

    if all(results):
        console.rule("[bold green]All examples reproduced")
        return 0
    console.rule("[bold red]Some examples did not reproduce")
    return 1


if __name__ == '__main__':
    sys.exit(main())
