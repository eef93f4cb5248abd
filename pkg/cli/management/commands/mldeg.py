from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import partial
from typing import Any

import mpmath
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from cli.formatting import FORMATS, Table, cell, parse_index_list, render
from core.jobs import describe_error, run_jobs
from core.rationals import format_rational
from core.seeding import derive_rng, draw_ints
from core.timing import ComputationTimeout, elapsed_ms, time_limit
from lattice.normal_forms import validate_design_matrix
from likelihood.birch import verify_birch
from likelihood.likelihood_engine import CHARTS, AFFINE, DATA_RANGE, count_pattern, ml_degree_count, parse_pattern
from likelihood.reports import MLReport, flag_faces, flag_report, monotonicity_report
from polysolve.counting import count_torus_solutions
from polysolve.groebner import GenericityFailure, SolverOptions
from polysolve.realroots import real_solutions
from polytope.faces import face_from_members
from polytope.volume import normalized_volume
from runs.services import DEFAULT_HISTORY_LIMIT, LedgerRow, recent_runs, record_run
from toric.specs import ModelSpec, ModelSpecError, load_spec
from tropical.cayley import cayley_subdivision_check
from tropical.tropical_engine import TropicalWeights, tropical_eliminant, tropical_system

logger = logging.getLogger(__name__)

VERBOSITY_LEVELS = {0: logging.ERROR, 2: logging.INFO, 3: logging.DEBUG}
SPEC_ERROR, SOLVER_ERROR, TIMEOUT_ERROR = 1, 2, 3
APPROXIMATION_DIGITS = 15


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_path: str
    seed: int
    output_format: str
    modular_gb: bool
    timeout: float | None
    timing: bool
    workers: int
    record: bool

    @classmethod
    def from_options(cls, command: str, options: dict[str, Any]) -> RunConfig:
        seed = options.get("seed")
        timeout = options.get("timeout")
        workers = options.get("workers")
        return cls(
            command=command,
            spec_path=options.get("spec") or "",
            seed=settings.MLDEG_DEFAULT_SEED if seed is None else seed,
            output_format=options.get("format") or settings.MLDEG_OUTPUT_FORMAT,
            modular_gb=bool(options.get("modular_gb")),
            timeout=settings.MLDEG_TIMEOUT_SECONDS if timeout is None else timeout,
            timing=not options.get("no_timing"),
            workers=settings.MLDEG_WORKERS if workers is None else workers,
            record=bool(options.get("record")),
        )

    @property
    def solver(self) -> SolverOptions:
        return SolverOptions(modular=self.modular_gb, prime=settings.MLDEG_MODULAR_PRIME)


def _add_common(parser) -> None:
    parser.add_argument("--spec", required=True, help="Model spec JSON file, or the name of a bundled spec.")
    parser.add_argument("--seed", type=int, default=None, help="Seed for every random draw in the run.")
    parser.add_argument("--format", choices=FORMATS, default=None)
    parser.add_argument("--modular-gb", action="store_true", help="Compute Groebner bases modulo a prime first.")
    parser.add_argument("--timeout", type=float, default=None, help="Seconds per face or row; 0 disables.")
    parser.add_argument("--no-timing", action="store_true", help="Leave out the runtime column.")
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--record", action="store_true", help="Store the run and its rows in the run ledger.")


def _point(names, values) -> str:
    return ", ".join(f"{name}={value}" for name, value in zip(names, values))


def _format_solution(names, solution) -> str:
    if solution.exact is not None:
        return _point(names, (format_rational(value) for value in solution.exact))
    return _point(names, (mpmath.nstr(value, APPROXIMATION_DIGITS) for value in solution.approximate()))


def _format_probabilities(values) -> str:
    if all(not isinstance(value, mpmath.mpf) for value in values):
        return ", ".join(format_rational(value) for value in values)
    return ", ".join(mpmath.nstr(value, APPROXIMATION_DIGITS) for value in values)


class Command(BaseCommand):
    help = "Compute maximum likelihood degrees of scaled toric models and related tables."

    def add_arguments(self, parser):
        subcommands = parser.add_subparsers(dest="subcommand", required=True)

        compute = subcommands.add_parser("compute", help="ML degree and degree of the model.")
        _add_common(compute)
        compute.add_argument("--birch", action="store_true", help="Also verify the unique positive critical point.")

        facets = subcommands.add_parser("facets", help="ML degrees of the faces down to a codimension.")
        _add_common(facets)
        facets.add_argument("--depth", type=int, default=1)

        flag = subcommands.add_parser("flag", help="ML degrees along the flag stored in the model file.")
        _add_common(flag)

        zeros = subcommands.add_parser("zeros", help="Solution counts for data with zeros, per scaling.")
        _add_common(zeros)
        zeros.add_argument("--pattern", action="append", required=True, help='Comma-separated "0"/"u" symbols.')
        zeros.add_argument("--chart", choices=CHARTS, default=AFFINE)

        model = subcommands.add_parser("model", help="Model spec utilities.")
        model_actions = model.add_subparsers(dest="model_action", required=True)
        _add_common(model_actions.add_parser("validate", help="Check a spec and describe its model."))

        tropical = subcommands.add_parser("tropical", help="Likelihood equations deformed by powers of t.")
        tropical_actions = tropical.add_subparsers(dest="tropical_action", required=True)
        eliminate = tropical_actions.add_parser("eliminate", help="Univariate eliminant over Q(t).")
        _add_common(eliminate)
        eliminate.add_argument("--keep", type=int, default=None, help="Variable index kept by the elimination.")
        eliminate.add_argument("--order", default=None, help="Variable order for the elimination, e.g. 0,2,1.")
        subdivide = tropical_actions.add_parser("subdivide", help="Cayley subdivision triangulation check.")
        _add_common(subdivide)
        subdivide.add_argument("--face", default=None, help="Face column indices, e.g. 0,1.")
        subdivide.add_argument("--weights-seed", type=int, default=None, help="Draw weights from this seed.")
        subdivide.add_argument("--drop-last", action="store_true", help="Drop the last Cayley block coordinate.")

        history = subcommands.add_parser("history", help="Recently recorded runs.")
        history.add_argument("--limit", type=int, default=DEFAULT_HISTORY_LIMIT)
        history.add_argument("--format", choices=FORMATS, default=None)

    def handle(self, *args, **options):
        self._configure_logging(options.get("verbosity", 1))
        subcommand = options["subcommand"]
        if subcommand == "model":
            subcommand = f"model {options['model_action']}"
        elif subcommand == "tropical":
            subcommand = f"tropical {options['tropical_action']}"
        config = RunConfig.from_options(subcommand, options)

        try:
            if subcommand == "history":
                table = self._history(options["limit"])
            elif config.record:
                table = self._recorded(config, options)
            else:
                table = self._dispatch(config, options)
        except ComputationTimeout as exc:
            raise CommandError(describe_error(exc), returncode=TIMEOUT_ERROR) from exc
        except GenericityFailure as exc:
            raise CommandError(describe_error(exc), returncode=SOLVER_ERROR) from exc
        except ModelSpecError as exc:
            raise CommandError(f"Invalid model spec: {exc}", returncode=SPEC_ERROR) from exc
        except ValueError as exc:
            raise CommandError(describe_error(exc), returncode=SPEC_ERROR) from exc
        except RuntimeError as exc:
            raise CommandError(describe_error(exc), returncode=SOLVER_ERROR) from exc

        self.stdout.write(render(table, config.output_format, timing=config.timing))

    def _configure_logging(self, verbosity: int) -> None:
        level = VERBOSITY_LEVELS.get(verbosity)
        if level is None:
            return
        for name in settings.LOGGING.get("loggers", {}):
            logging.getLogger(name).setLevel(level)

    def _recorded(self, config: RunConfig, options: dict[str, Any]) -> Table:
        produced: dict[str, Table] = {}

        def produce_rows() -> list[LedgerRow]:
            table = self._dispatch(config, options)
            produced["table"] = table
            return [LedgerRow(key=cell(row[0]), payload=record) for row, record in zip(table.rows, table.records())]

        recorded = record_run(config.command, config.spec_path, config.seed, produce_rows)
        table = produced["table"]
        table.meta["run"] = recorded.run.pk
        return table

    def _dispatch(self, config: RunConfig, options: dict[str, Any]) -> Table:
        spec = load_spec(config.spec_path)
        logger.info("Running %s on %s with seed %s.", config.command, spec.name, config.seed)
        handlers = {
            "compute": partial(self._compute, birch=options.get("birch", False)),
            "facets": partial(self._facets, depth=options.get("depth", 1)),
            "flag": self._flag,
            "zeros": partial(self._zeros, patterns=options.get("pattern") or [], chart=options.get("chart", AFFINE)),
            "model validate": self._validate,
            "tropical eliminate": partial(
                self._eliminate,
                keep=options.get("keep"),
                order=parse_index_list(options.get("order")),
            ),
            "tropical subdivide": partial(
                self._subdivide,
                face=parse_index_list(options.get("face")),
                weights_seed=options.get("weights_seed"),
                drop_last=options.get("drop_last", False),
            ),
        }
        return handlers[config.command](config, spec)

    def _compute(self, config: RunConfig, spec: ModelSpec, birch: bool = False) -> Table:
        M = spec.model
        columns = ["model", "mldeg", "degree", "seed"]
        if birch:
            columns += ["birch", "mle"]
        table = Table(columns=(*columns, "runtime_ms"), title=f"ML degree of {spec.name}")

        started = time.perf_counter()
        with time_limit(config.timeout):
            count = ml_degree_count(M, seed=config.seed, options=config.solver)
            degree = normalized_volume(M.configuration())
            certificate = None
            if birch:
                data = spec.data or tuple(draw_ints(derive_rng(config.seed, "birch"), M.n, *DATA_RANGE))
                certificate = verify_birch(M, data, seed=config.seed, options=config.solver)

        values: list[Any] = [spec.name, count.distinct, degree, config.seed]
        table.summary = f"mldeg={count.distinct} degree={degree}"
        if certificate is not None:
            verdict = "holds" if certificate.holds else "fails"
            values += [verdict, _format_probabilities(certificate.mle) if certificate.mle else ""]
            table.summary += f" birch={verdict}"
        if count.has_multiplicity:
            logger.warning("Distinct count %s is below the quotient dimension %s.", count.distinct, count.quotient_dim)
        table.add(*values, elapsed_ms(started))
        return table

    def _report_table(self, report: MLReport, title: str) -> Table:
        table = Table(columns=("face", "dim", "ML degree", "degree", "note", "runtime_ms"), title=title)
        for row in report.rows:
            table.add(row.face, row.dimension, row.ml_degree, row.degree, row.error or row.note, row.runtime_ms)
        table.summary = f"mldeg={report.ml_degree} faces={len(report.rows)} violations={len(report.violations)}"
        if report.failed:
            self._raise_total_failure([row.error for row in report.rows])
        return table

    def _raise_total_failure(self, errors: list[str]) -> None:
        code = TIMEOUT_ERROR if all(error.startswith(ComputationTimeout.__name__) for error in errors) else SOLVER_ERROR
        raise CommandError(f"Every row failed; first error: {errors[0]}", returncode=code)

    def _facets(self, config: RunConfig, spec: ModelSpec, depth: int = 1) -> Table:
        report = monotonicity_report(
            spec.model,
            depth=depth,
            seed=config.seed,
            options=config.solver,
            workers=config.workers,
            timeout=config.timeout,
        )
        return self._report_table(report, f"ML degrees of the faces of {spec.name}")

    def _flag(self, config: RunConfig, spec: ModelSpec) -> Table:
        if not spec.flag:
            raise ModelSpecError(f"Spec {spec.name} has no flag.")
        report = flag_report(
            spec.model,
            spec.flag,
            seed=config.seed,
            options=config.solver,
            workers=config.workers,
            timeout=config.timeout,
        )
        return self._report_table(report, f"ML degrees of a flag of {spec.name}")

    def _zeros(self, config: RunConfig, spec: ModelSpec, patterns: list[str], chart: str = AFFINE) -> Table:
        M = spec.model
        for pattern in patterns:
            if len(parse_pattern(pattern)) != M.n:
                raise ValueError(f"Pattern {pattern!r} needs {M.n} symbols.")
        scalings = list(spec.scalings) or [("c", M.c)]
        jobs = []
        for position, pattern in enumerate(patterns):
            for label, scaling in scalings:
                model = M.with_scaling(scaling, provenance=label)
                job = partial(count_pattern, model, pattern, seed=config.seed, chart=chart, options=config.solver)
                jobs.append(((position, label), job))
        outcomes = run_jobs(jobs, workers=config.workers, timeout=config.timeout)
        if outcomes and not any(outcome.ok for outcome in outcomes):
            self._raise_total_failure([outcome.error for outcome in outcomes])

        table = Table(
            columns=("pattern", *(label for label, _ in scalings), "runtime_ms"),
            title=f"Solutions for data with zeros ({chart} chart), {spec.name}",
        )
        width = len(scalings)
        for position, pattern in enumerate(patterns):
            chunk = outcomes[position * width : (position + 1) * width]
            cells = []
            for outcome in chunk:
                if not outcome.ok:
                    cells.append("error")
                    continue
                cells.append(str(outcome.value.count) + ("*" if outcome.value.unstable else ""))
            symbols = ",".join("u" if free else "0" for free in parse_pattern(pattern))
            table.add(symbols, *cells, round(sum(outcome.runtime_ms for outcome in chunk), 2))
        if any(not outcome.ok for outcome in outcomes):
            table.summary = "; ".join(f"{outcome.key}: {outcome.error}" for outcome in outcomes if not outcome.ok)
        return table

    def _validate(self, config: RunConfig, spec: ModelSpec) -> Table:
        M = spec.model
        report = validate_design_matrix(M.A)
        if spec.flag:
            flag_faces(M, spec.flag)
        if spec.tropical is not None:
            face = face_from_members(M.configuration(), spec.tropical.face)
            TropicalWeights(face=face, w=spec.tropical.w, w_prime=spec.tropical.w_prime).check(M.n)
        table = Table(columns=("property", "value"), title=f"Model spec {spec.name}")
        table.add("columns", M.n)
        table.add("dimension", M.d)
        table.add("rank", report.rank)
        table.add("lattice index", report.lattice_index)
        table.add("degree", normalized_volume(M.configuration()))
        table.add("scalings", ", ".join(label for label, _ in spec.scalings) or "-")
        table.add("flag length", len(spec.flag))
        table.add("tropical data", spec.tropical is not None)
        table.add("valid", report.ok)
        table.summary = "valid" if report.ok else "invalid: " + "; ".join(report.failures())
        return table

    def _tropical_weights(self, spec: ModelSpec, face, weights_seed: int | None) -> TropicalWeights:
        trop = spec.tropical
        if weights_seed is None and trop is not None and tuple(face.member_indices) == tuple(sorted(trop.face)):
            return TropicalWeights(face=face, w=trop.w, w_prime=trop.w_prime)
        seed = 0 if weights_seed is None else weights_seed
        logger.info("Drawing tropical weights from seed %s.", seed)
        return TropicalWeights.seeded(spec.model.n, face, seed=seed)

    def _eliminate(self, config: RunConfig, spec: ModelSpec, keep: int | None = None, order=None) -> Table:
        trop = spec.tropical
        if trop is None:
            raise ModelSpecError(f"Spec {spec.name} has no tropical section.")
        M = spec.model
        face = face_from_members(M.configuration(), trop.face)
        S = tropical_system(M, trop.data, face, self._tropical_weights(spec, face, None))
        keep = trop.keep if keep is None else keep
        order = order or list(trop.order) or None

        started = time.perf_counter()
        with time_limit(config.timeout):
            eliminant = tropical_eliminant(S, keep, order=order, options=config.solver)
            count = count_torus_solutions(list(S.equations), seed=config.seed, options=config.solver)
            limit = S.facial_limit()
            names = [str(symbol) for symbol in limit.ring.symbols]
            try:
                solutions = real_solutions(list(limit.equations), seed=config.seed, options=config.solver)
                facial = "; ".join(f"({_format_solution(names, solution)})" for solution in solutions) or "none"
            except ValueError as exc:
                facial = describe_error(exc)

        table = Table(columns=("quantity", "value"), title=f"Eliminant over Q(t) for {spec.name}")
        table.add("face", trop.face)
        table.add("t substitution", f"t^{S.t_power}")
        table.add("eliminant", str(eliminant))
        table.add("degree", eliminant.degree())
        table.add("solutions over Q(t)", str(count))
        table.add("facial limit", facial)
        table.meta["runtime_ms"] = elapsed_ms(started)
        table.summary = f"degree={eliminant.degree()} solutions={count}"
        return table

    def _subdivide(
        self,
        config: RunConfig,
        spec: ModelSpec,
        face: list[int] | None = None,
        weights_seed: int | None = None,
        drop_last: bool = False,
    ) -> Table:
        M = spec.model
        trop = spec.tropical
        members = face or (list(trop.face) if trop is not None else None)
        if not members:
            raise ModelSpecError(f"Spec {spec.name} names no face; pass --face.")
        F = face_from_members(M.configuration(), members)
        W = self._tropical_weights(spec, F, weights_seed)

        started = time.perf_counter()
        with time_limit(config.timeout):
            check = cayley_subdivision_check(M, F, W, u=trop.data if trop is not None else None, drop_last=drop_last)
        table = Table(
            columns=("face", "points", "cells", "max cell size", "triangulation", "runtime_ms"),
            title=f"Cayley subdivision for {spec.name}",
        )
        table.add(F.member_indices, len(check.configuration), len(check.cells), check.max_cell_size, check.is_triangulation, elapsed_ms(started))
        table.summary = f"triangulation={'yes' if check.is_triangulation else 'no'}"
        return table

    def _history(self, limit: int) -> Table:
        table = Table(
            columns=("id", "command", "spec", "seed", "status", "rows", "created_at", "runtime_ms"),
            title="Recorded runs",
        )
        for run in recent_runs(limit):
            table.add(
                run.pk,
                run.command,
                run.spec_path,
                run.seed,
                run.status,
                run.notes.get("row_count", 0),
                run.created_at.isoformat(timespec="seconds"),
                run.runtime_ms,
            )
        return table
