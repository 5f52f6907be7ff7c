"""
CLI subcommands. Each takes a validated RunConfig, writes its files under
`output_dir` and returns the one-line summary printed on stdout.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from seirs.cli.config import IncidenceConfig, ModelConfig, RunConfig, initial_states
from seirs.cli.output import (
    frame_from_rows,
    write_frame,
    write_json,
    write_plot_script,
    write_text_report,
    write_trajectory_csv,
)
from seirs.endemic import (
    ThresholdReport,
    apriori_bounds,
    existence_report,
    find_periodic_orbit,
    persistence_estimate,
)
from seirs.errors import ConfigError, SeirsError
from seirs.model import INITIAL_CONDITIONS, InvariantBox, StateVec, check_hypotheses, forced_mass_action_params
from seirs.ode import simulate
from seirs.periodic import PeriodicCoefficient
from seirs.sampling import random_initial_conditions
from seirs.threshold import r0_wang_zhao

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ["beta", "amplitude", "phase", "r0", "rho_fv", "det_m", "verdict", "status"]


def _output_dir(config: RunConfig) -> Path:
    path = Path(config.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _threshold_report(config: RunConfig, params, inc) -> ThresholdReport:
    analysis = config.analysis
    r0_report = r0_wang_zhao(
        params, inc, tol=analysis.r0_tol, rel_tol=config.tol, band=analysis.critical_band
    )
    return existence_report(params, inc, r0_report=r0_report)


# ==================== simulate ====================

def cmd_simulate(config: RunConfig) -> str:
    params, inc = config.params(), config.incidence_spec()
    sim = config.simulate
    rel_tol = sim.rel_tol if sim.rel_tol is not None else config.tol
    out = _output_dir(config)

    states = initial_states(sim)
    if sim.random_initial:
        states += random_initial_conditions(InvariantBox.from_params(params), sim.random_initial, config.seed)
    t_eval = np.linspace(0.0, sim.horizon, sim.samples)

    files = []
    for index, x0 in enumerate(states, start=1):
        trajectory = simulate(params, inc, x0, 0.0, sim.horizon, rel_tol, sim.abs_tol, t_eval=t_eval)
        files.append(write_trajectory_csv(trajectory, out / f"trajectory_{index:02d}.csv"))
    write_plot_script({"trajectories": files}, out / "plot_trajectories.py")
    return f"simulate: {len(files)} trajectories to t={sim.horizon:g} in {out}"


# ==================== analyze ====================

def analysis_document(report: ThresholdReport, label: str) -> Dict[str, Any]:
    """R0Report and ThresholdReport merged into one flat-topped document"""
    r0 = report.r0_report
    matrix = report.threshold_matrix
    return {
        "incidence": label,
        "rho_fv": r0.rho_fv,
        "r0": r0.r0,
        "classification": r0.classification.value,
        "bisection_residual": r0.bisection_residual,
        "r0_bracket": list(r0.bracket),
        "r0_iterations": r0.iterations,
        "comparison_quantity": report.comparison_quantity,
        "point": report.point.model_dump(mode="json") if report.point is not None else None,
        "threshold_matrix": matrix.matrix if matrix is not None else None,
        "det_m": matrix.det if matrix is not None else None,
        "det_nonzero": report.det_nonzero,
        "det_closed_form": (
            report.det_closed_form.model_dump(mode="json") if report.det_closed_form is not None else None
        ),
        "verdict": report.verdict.value,
        "notes": report.notes,
    }


def cmd_analyze(config: RunConfig) -> str:
    params, inc = config.params(), config.incidence_spec()
    out = _output_dir(config)
    report = _threshold_report(config, params, inc)
    document = analysis_document(report, inc.label)
    write_json(document, out / "analysis.json")
    write_text_report(document, out / "analysis.txt")
    r0 = report.r0_report
    return f"analyze: R0 = {r0.r0:.8f} ({r0.classification.value}), rho_FV = {r0.rho_fv:.8f}"


# ==================== endemic ====================

def cmd_endemic(config: RunConfig) -> str:
    params, inc = config.params(), config.incidence_spec()
    analysis = config.analysis
    out = _output_dir(config)

    report = _threshold_report(config, params, inc)
    document = analysis_document(report, inc.label)

    persistence = persistence_estimate(
        params,
        inc,
        burn_in=analysis.burn_in,
        horizon=analysis.persistence_horizon,
        n_initial=analysis.n_initial,
        seed=config.seed,
        rel_tol=config.tol,
    )
    document["persistence"] = persistence.model_dump(mode="json")
    k_lower = analysis.k_lower if analysis.k_lower is not None else persistence.k_lower

    constants = inc.saturation_constants(InvariantBox.from_params(params))
    document["saturation"] = {"c1": constants.c1, "c2": constants.c2, "empirical": constants.empirical}
    document["bounds"] = None
    if report.point is None:
        document["notes"].append("a priori bounds skipped: no algebraic point")
    elif not constants.usable:
        document["notes"].append("a priori bounds skipped: saturation constants unusable")
    elif k_lower <= 0.0:
        document["notes"].append(f"a priori bounds skipped: persistence degenerate ({persistence.reason})")
    else:
        bounds = apriori_bounds(params, report.point, constants.c1, constants.c2, k_lower)
        document["bounds"] = bounds.model_dump(mode="json")

    write_json(document, out / "endemic.json")
    write_text_report(document, out / "endemic.txt")
    return f"endemic: {report.verdict.value} (R0 = {report.r0_report.r0:.8f})"


# ==================== orbit ====================

def cmd_orbit(config: RunConfig) -> str:
    params, inc = config.params(), config.incidence_spec()
    settings = config.orbit
    out = _output_dir(config)

    orbit = find_periodic_orbit(
        params,
        inc,
        guess=StateVec(*settings.guess) if settings.guess is not None else None,
        max_newton=settings.max_newton,
        rel_tol=config.tol,
        samples=settings.samples,
        prerun_periods=settings.prerun_periods,
    )
    write_trajectory_csv(orbit.orbit, out / "orbit.csv")
    document = orbit.summary()
    document["incidence"] = inc.label
    write_json(document, out / "orbit.json")
    return (
        f"orbit: residual {orbit.residual:.3e} after {orbit.newton_iterations} Newton steps, "
        f"{'endemic' if orbit.endemic else 'disease-free'}"
    )


# ==================== sweep ====================

SweepTask = Tuple[Dict[str, Any], Dict[str, Any], float, float, float, Optional[float], Optional[float]]


def sweep_cell(task: SweepTask) -> Dict[str, Any]:
    """One grid cell; module level so worker processes can unpickle it"""
    model_data, incidence_data, beta, amplitude, phase, r0_tol, rel_tol = task
    row: Dict[str, Any] = {
        "beta": beta,
        "amplitude": amplitude,
        "phase": phase,
        "r0": math.nan,
        "rho_fv": math.nan,
        "det_m": math.nan,
        "verdict": "",
        "status": "ok",
    }
    try:
        model = ModelConfig.model_validate(model_data)
        forced = PeriodicCoefficient.cosine(beta, amplitude, model.period, phase=phase)
        params = model.to_params(beta=forced)
        inc = IncidenceConfig.model_validate(incidence_data).to_spec()
        r0_report = r0_wang_zhao(params, inc, tol=r0_tol, rel_tol=rel_tol)
        report = existence_report(params, inc, r0_report=r0_report)
    except (SeirsError, ValueError) as e:
        logger.warning(f"[SWEEP] Cell beta={beta:g} b={amplitude:g} phase={phase:g} failed: {e}")
        row["status"] = f"error: {type(e).__name__}"
        return row

    row.update(
        r0=report.r0_report.r0,
        rho_fv=report.r0_report.rho_fv,
        det_m=report.threshold_matrix.det if report.threshold_matrix is not None else math.nan,
        verdict=report.verdict.value,
    )
    return row


def sweep_tasks(config: RunConfig) -> List[SweepTask]:
    """Grid cells in beta-major, then amplitude, then phase order"""
    if config.sweep is None:
        raise ConfigError("sweep needs a [sweep] section")
    model_data = config.require_model().model_dump(by_alias=True)
    incidence_data = config.incidence.model_dump(mode="json")
    return [
        (model_data, incidence_data, beta, amplitude, phase, config.analysis.r0_tol, config.tol)
        for beta in config.sweep.beta
        for amplitude in config.sweep.amplitude
        for phase in config.sweep.phase
    ]


def cmd_sweep(config: RunConfig) -> str:
    tasks = sweep_tasks(config)
    out = _output_dir(config)
    logger.info(f"[SWEEP] {len(tasks)} cells on {config.jobs} worker(s)")

    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            rows = list(executor.map(sweep_cell, tasks))
    else:
        rows = [sweep_cell(task) for task in tasks]

    write_frame(frame_from_rows(rows, SWEEP_COLUMNS), out / "sweep.csv")
    failed = sum(1 for row in rows if row["status"] != "ok")
    return f"sweep: {len(rows)} cells ({failed} failed) to {out / 'sweep.csv'}"


# ==================== check-hypotheses ====================

def cmd_check_hypotheses(config: RunConfig) -> str:
    params, inc = config.params(), config.incidence_spec()
    out = _output_dir(config)
    report = check_hypotheses(inc, InvariantBox.from_params(params), grid_density=config.hypotheses.grid_density)
    write_json(report.model_dump(mode="json"), out / "hypotheses.json")
    failed = [c.name for c in report.checks if not c.passed]
    status = "all passed" if not failed else f"failed: {', '.join(failed)}"
    return f"check-hypotheses: {inc.label} {status} (c1 = {report.c1:.6g}, c2 = {report.c2:.6g})"


# ==================== figures ====================

def cmd_figures(config: RunConfig) -> str:
    """Trajectories of the forced mass-action cells from the published initial conditions"""
    figures = config.figures
    inc = config.incidence_spec()
    out = _output_dir(config) / "figures"
    t_eval = np.linspace(0.0, figures.horizon, figures.samples)

    groups: Dict[str, List[Path]] = {}
    for beta, amplitude in figures.cells:
        params = forced_mass_action_params(beta, amplitude)
        title = f"beta={beta:g}, b={amplitude:g}"
        groups[title] = []
        for index, x0 in enumerate(INITIAL_CONDITIONS, start=1):
            trajectory = simulate(params, inc, x0, 0.0, figures.horizon, config.tol, t_eval=t_eval)
            path = out / f"beta{beta:g}_b{amplitude:g}_ic{index}.csv"
            groups[title].append(write_trajectory_csv(trajectory, path))
    write_plot_script(groups, out / "plot_figures.py")
    count = sum(len(files) for files in groups.values())
    return f"figures: {count} trajectories for {len(groups)} cells in {out}"


COMMANDS: Dict[str, Callable[[RunConfig], str]] = {
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "endemic": cmd_endemic,
    "orbit": cmd_orbit,
    "sweep": cmd_sweep,
    "check-hypotheses": cmd_check_hypotheses,
    "figures": cmd_figures,
}
