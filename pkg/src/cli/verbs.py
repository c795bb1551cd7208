"""
The command-line verbs
"""

from typing import Any, Dict, List, Tuple
import time

import numpy as np
import pandas as pd

from classify import FLAT, ZERO_FIELD, classify_germ, normal_form, normal_forms_table
from conjugacy import (
    ConjugacyWitness,
    c0_conjugacy,
    c1_conjugator,
    get_builtin,
    scale_conjugacy,
    solve_homological,
)
from flows import GridSpec, flow, model_flow, verify_conjugacy
from unfold import build_unfolding, check_transversality, equilibria, grid_axes, instantiate, sweep
from utils.errors import NotFinitelyDeterminedError, UsageError, ZeroFieldError
from .commands import BaseCommand, CommandRequest, CommandResult

DEFAULT_SAMPLES = 21


def parse_pair(text: str, name: str) -> Tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"{name} must look like 'lo,hi', got {text!r}")
    return lo, hi


def parse_floats(text: str, name: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"{name} must be a comma-separated list of numbers, got {text!r}")


def parse_axis(text: str) -> List[float]:
    """'lo:hi:n' for an even grid, or an explicit 'v1,v2,...' list"""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"Axis must look like 'lo:hi:n', got {text!r}")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"Axis must look like 'lo:hi:n', got {text!r}")
        return grid_axes([(lo, hi, n)])[0]
    return parse_floats(text, "axis")


def _verification_grid(request: CommandRequest, x_range: Tuple[float, float]) -> GridSpec:
    if request.get('x_range'):
        x_range = parse_pair(request.get('x_range'), "--x-range")
    t_range = parse_pair(request.get('t_range'), "--t-range") if request.get('t_range') else (-1.0, 1.0)
    return GridSpec.uniform(x_range=x_range, nx=request.get('nx', 11), t_range=t_range, nt=request.get('nt', 9))


def _graph(witness: ConjugacyWitness, samples: int) -> pd.DataFrame:
    return witness.sample(witness.grid(n=samples))


class ClassifyCommand(BaseCommand):
    name = "classify"
    description = "Classify a germ f(x)d/dx at 0 and list its normal forms"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--field", help="Field coefficient f, e.g. 'x^2+x^3'")
        parser.add_argument("--order", type=int, help="Truncation order for the jet")
        parser.add_argument("--sample-flat", action="store_true", help="Sample signs of flat germs near 0")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('field')
        start = time.time()
        c = classify_germ(
            request.get('field'),
            max_order=request.get('order'),
            settings=request.settings,
            sample_flat=request.get('sample_flat', False),
        )
        self.log_step("classified", f"{c.kind} k={c.k}")
        row = {key: c.to_dict().get(key) for key in ('field', 'kind', 'k', 'a', 'sign', 'c0_class', 'd', 'modulus_general')}

        if c.kind in (ZERO_FIELD, FLAT):
            error = ZeroFieldError if c.kind == ZERO_FIELD else NotFinitelyDeterminedError
            message = (
                f"{c.field_text} vanishes identically near 0" if c.kind == ZERO_FIELD
                else f"{c.field_text} is flat through order {c.checked_order}; no finite normal form"
            )
            return CommandResult(
                verb=self.name,
                status="failure",
                data=c.to_dict(),
                table=pd.DataFrame([row]),
                errors=[f"{c.kind}: {message}"],
                warnings=list(c.warnings),
                exit_code=error.exit_code,
                execution_time=time.time() - start,
            )

        forms = normal_forms_table(c)
        row['cinf'] = forms['cinf']
        return CommandResult(
            verb=self.name,
            status="success",
            data=c.to_dict(normal_forms=forms),
            table=pd.DataFrame([row]),
            warnings=list(c.warnings),
            execution_time=time.time() - start,
        )


class NormalFormCommand(BaseCommand):
    name = "normal-form"
    description = "Normal form of a germ under C0, C1 or Cinf conjugacy"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--field", help="Field coefficient f")
        parser.add_argument("--relation", default="Cinf", choices=["C0", "C1", "Cinf"])
        parser.add_argument("--tti", action="store_true", help="Tangent-to-identity conjugacy")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('field')
        c = classify_germ(request.get('field'), settings=request.settings)
        nf = normal_form(c, request.get('relation', "Cinf"), request.get('tti', False))
        self.log_step("normal form", nf.to_text())
        data = {'field': c.field_text, 'kind': c.kind, 'k': c.k, 'normal_form': nf.to_dict()}
        table = pd.DataFrame([{'field': c.field_text, 'relation': nf.relation, 'model': nf.to_text()}])
        return CommandResult(verb=self.name, status="success", data=data, table=table, warnings=list(c.warnings))


class ConjugateCommand(BaseCommand):
    name = "conjugate"
    description = "Build a conjugating map (c0, c1 or scale)"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--kind", default="c1", choices=["c0", "c1", "scale"])
        parser.add_argument("--f", help="Source field (c0)")
        parser.add_argument("--g", help="Target field (c0)")
        parser.add_argument("--field", help="Field to conjugate to its C1 model (c1)")
        parser.add_argument("--tti", action="store_true", help="Target the tangent-to-identity model (c1)")
        parser.add_argument("--strict", action="store_true", help="Fail instead of downgrading to C0 (c1)")
        parser.add_argument("--a", type=float, help="Coefficient of the source model a*x^k (scale)")
        parser.add_argument("--b", type=float, help="Coefficient of the target model b*x^k (scale)")
        parser.add_argument("--k", type=int, help="Degeneracy order (scale)")
        parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Points in the sampled graph")
        parser.add_argument("--verify", action="store_true", help="Check flow commutation on a grid")
        parser.add_argument("--nx", type=int, default=11)
        parser.add_argument("--nt", type=int, default=9)
        parser.add_argument("--x-range", help="lo,hi for verification points")
        parser.add_argument("--t-range", help="lo,hi for verification times")

    def _build(self, request: CommandRequest) -> Tuple[ConjugacyWitness, str, str]:
        s = request.settings
        kind = request.get('kind', "c1")
        if kind == "c0":
            request.require('f', 'g')
            f, g = request.get('f'), request.get('g')
            return c0_conjugacy(f, g, s.eps, s), f, g
        if kind == "c1":
            request.require('field')
            f = request.get('field')
            c = classify_germ(f, settings=s)
            target = normal_form(c, "C1", request.get('tti', False)).to_text()
            w = c1_conjugator(f, s.eps, request.get('tti', False), s, request.get('strict', False))
            return w, f, target
        request.require('a', 'b', 'k')
        a, b, k = request.get('a'), request.get('b'), request.get('k')
        return scale_conjugacy(a, b, k), f"{b!r}*x^{k}", f"{a!r}*x^{k}"

    def execute(self, request: CommandRequest) -> CommandResult:
        w, source, target = self._build(request)
        self.log_step("witness", f"{w.source} ({w.smoothness_claim})")
        graph = _graph(w, request.get('samples', DEFAULT_SAMPLES))
        data: Dict[str, Any] = {
            'kind': request.get('kind', "c1"),
            'f': source,
            'g': target,
            'witness': w.to_dict(),
            'graph': graph.values.tolist(),
            'monotone': w.check_monotone(),
        }
        if request.get('verify', False):
            half = request.settings.eps / 2.0
            grid = _verification_grid(request, (-half, half))
            report = verify_conjugacy(source, target, w, grid, request.settings)
            data['verification'] = report.to_dict()
        return CommandResult(
            verb=self.name,
            status="success",
            data=data,
            table=graph,
            warnings=list(w.warnings),
        )


class VerifyCommand(BaseCommand):
    name = "verify"
    description = "Measure flow commutation phi(f^t(x)) = g^t(phi(x)) on a grid"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--f", help="Source field")
        parser.add_argument("--g", help="Target field")
        parser.add_argument("--map", help="builtin:<name>, c0 or c1")
        parser.add_argument("--nx", type=int, default=11)
        parser.add_argument("--nt", type=int, default=9)
        parser.add_argument("--x-range", help="lo,hi (default -0.5,0.5)")
        parser.add_argument("--t-range", help="lo,hi (default -1,1)")

    def _witness(self, request: CommandRequest) -> ConjugacyWitness:
        name = request.get('map')
        s = request.settings
        if name.startswith("builtin:"):
            return get_builtin(name)
        if name == "c0":
            return c0_conjugacy(request.get('f'), request.get('g'), s.eps, s)
        if name == "c1":
            return c1_conjugator(request.get('f'), s.eps, False, s)
        raise UsageError(f"--map must be builtin:<name>, c0 or c1, got {name!r}")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('f', 'g', 'map')
        w = self._witness(request)
        grid = _verification_grid(request, (-0.5, 0.5))
        report = verify_conjugacy(request.get('f'), request.get('g'), w, grid, request.settings)
        self.log_step("verified", f"max residual {report.max_residual:.3e}, skipped {report.skipped}")
        data = {'f': request.get('f'), 'g': request.get('g'), 'map': request.get('map'), 'witness': w.to_dict()}
        data.update(report.to_dict())
        return CommandResult(verb=self.name, status="success", data=data, table=report.to_frame(), warnings=list(w.warnings))


class HomologicalCommand(BaseCommand):
    name = "homological"
    description = "Solve -X'f + Xf' = fg + f'k with X(0) = 0"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--f", help="Field f")
        parser.add_argument("--g", help="g with g(0) = 0")
        parser.add_argument("--k", help="k with k(0) = k'(0) = 0")
        parser.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Points of X sampled on [-0.5, 0.5]")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('f', 'g', 'k')
        sol = solve_homological(request.get('f'), request.get('g'), request.get('k'), request.settings.eps, request.settings)
        xs = np.linspace(-0.5, 0.5, request.get('samples', DEFAULT_SAMPLES))
        table = sol.sample(xs)
        data = {'f': request.get('f'), 'g': request.get('g'), 'k': request.get('k'), 'graph': table.values.tolist()}
        data.update(sol.to_dict())
        warnings = ["solution unique only up to real multiples of f"] if sol.kernel_note else []
        return CommandResult(verb=self.name, status="success", data=data, table=table, warnings=warnings)


class FlowCommand(BaseCommand):
    name = "flow"
    description = "Flow f^t(x0) of x' = f(x)"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--field", help="Field f")
        parser.add_argument("--x0", type=float, help="Initial point")
        parser.add_argument("--t", type=float, help="Time (negative runs backward)")
        parser.add_argument("--model", choices=["ax", "x^k", "const"], help="Also evaluate a closed-form model flow")
        parser.add_argument("--a", type=float, help="Model coefficient")
        parser.add_argument("--k", type=int, help="Model order")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('field', 'x0', 't')
        x0, t = request.get('x0'), request.get('t')
        result = flow(request.get('field'), x0, t, request.settings)
        data: Dict[str, Any] = {'field': request.get('field'), 'x0': x0, 't': t}
        data.update(result.to_dict())
        # 'status' belongs to the command document
        data['outcome'] = data.pop('status')
        if request.get('model'):
            params = {'a': request.get('a', 1.0), 'k': request.get('k', 2)}
            data['model'] = request.get('model')
            data['model_value'] = model_flow(request.get('model'), params, x0, t)
        return CommandResult(verb=self.name, status="success", data=data, table=pd.DataFrame([data]))


class UnfoldCommand(BaseCommand):
    name = "unfold"
    description = "Equilibria of unfolding families Q, Q1, F, F1"

    def configure_parser(self, parser) -> None:
        parser.add_argument("--family", choices=["Q", "Q1", "F", "F1"])
        parser.add_argument("--k", type=int)
        parser.add_argument("--a", type=float, help="Leading coefficient (Q1, F1)")
        parser.add_argument("--d", type=float, help="Modulus (F, F1)")
        parser.add_argument("--sign", type=int, default=1, choices=[1, -1], help="Sign of x^k (F)")
        parser.add_argument("--sweep-d", action="store_true", help="Add a parameter on x^(2k-1)")
        parser.add_argument("--lambda", dest="lambdas", help="Single node 'l1,l2,...' (use --lambda=-1 for negatives)")
        parser.add_argument("--axis", action="append", help="Per parameter: 'lo:hi:n' or 'v1,v2,...'")
        parser.add_argument("--progress", action="store_true", help="Show sweep progress")

    def execute(self, request: CommandRequest) -> CommandResult:
        request.require('family', 'k')
        family = build_unfolding(
            request.get('family'),
            request.get('k'),
            a=request.get('a'),
            d=request.get('d'),
            sign=request.get('sign', 1),
            sweep_d=request.get('sweep_d', False),
        )
        data: Dict[str, Any] = {'family': family.to_dict(), 'transversality': check_transversality(family)}

        if request.get('lambdas') is not None:
            lambdas = parse_floats(request.get('lambdas'), "--lambda")
            report = equilibria(instantiate(family, lambdas), None, request.settings, params=lambdas)
            data.update(report.to_dict())
            table = pd.DataFrame([e.to_dict() for e in report.equilibria], columns=['location', 'multiplicity', 'stability'])
            return CommandResult(verb=self.name, status="success", data=data, table=table)

        axes = [parse_axis(a) for a in request.get('axis', [])]
        if not axes:
            raise UsageError("unfold needs --lambda or one --axis per parameter")
        table = sweep(family, axes, None, request.settings, progress=request.get('progress', False))
        self.log_step("swept", f"{len(table.rows)} nodes")
        data['counts'] = table.counts
        data['identically_zero_nodes'] = sum(1 for r in table.rows if r.identically_zero)
        data['rows'] = [r.to_dict() for r in table.rows]
        return CommandResult(verb=self.name, status="success", data=data, table=table.to_frame())


COMMANDS = [
    ClassifyCommand,
    NormalFormCommand,
    ConjugateCommand,
    VerifyCommand,
    HomologicalCommand,
    FlowCommand,
    UnfoldCommand,
]
