"""
Existence verdict for endemic periodic orbits: R0 > 1 together with det M != 0.
"""

import logging
from typing import Optional

from config.settings import get_settings
from seirs.endemic.algebraic import det_m_closed_form, solve_r, threshold_matrix
from seirs.endemic.models import ThresholdReport, Verdict
from seirs.errors import NoEndemicRootError
from seirs.model.incidence import IncidenceSpec
from seirs.model.models import ModelParams
from seirs.threshold.models import Classification, R0Report
from seirs.threshold.r0 import comparison_quantity, r0_wang_zhao

logger = logging.getLogger(__name__)


def existence_report(
    params: ModelParams,
    inc: IncidenceSpec,
    r0_report: Optional[R0Report] = None,
    tol: Optional[float] = None,
) -> ThresholdReport:
    """
    EndemicGuaranteed when R0 > 1 and |det M| > DET_ZERO_TOL * ||M||_F,
    ExtinctionGuaranteed when R0 < 1, Inconclusive otherwise.
    """
    settings = get_settings()
    try:
        r0_report = r0_report or r0_wang_zhao(params, inc, tol=tol)
    except Exception as e:
        logger.error(f"[ENDEMIC] Reproduction ratio failed: {e}")
        raise

    notes = []
    point = matrix = closed_form = None
    det_nonzero = False
    try:
        point = solve_r(params, inc)
    except NoEndemicRootError as e:
        notes.append(f"no endemic algebraic point: {e}")

    if point is not None:
        matrix = threshold_matrix(point, inc)
        det_nonzero = abs(matrix.det) > settings.DET_ZERO_TOL * matrix.frobenius_norm
        closed_form = det_m_closed_form(point, inc)
        if closed_form is not None:
            agree = (closed_form.value < 0) == (matrix.det < 0)
            notes.append(
                f"closed-form det M ({closed_form.rule}) = {closed_form.value:.10g}, "
                f"sign {'agrees' if agree else 'DISAGREES'} with the matrix determinant"
            )
            if not agree:
                logger.warning(f"[ENDEMIC] Closed-form det M sign disagrees with det M = {matrix.det:.6g}")

    if r0_report.classification == Classification.EXTINCTION:
        verdict = Verdict.EXTINCTION_GUARANTEED
    elif r0_report.classification == Classification.ENDEMIC and det_nonzero:
        verdict = Verdict.ENDEMIC_GUARANTEED
        if closed_form is not None:
            notes.append(f"det M != 0 follows from the {closed_form.rule} closed form")
    else:
        verdict = Verdict.INCONCLUSIVE

    logger.info(f"[ENDEMIC] Verdict {verdict.value} (R0 = {r0_report.r0:.8f})")
    return ThresholdReport(
        r0_report=r0_report,
        point=point,
        threshold_matrix=matrix,
        det_closed_form=closed_form,
        det_nonzero=det_nonzero,
        comparison_quantity=comparison_quantity(params),
        verdict=verdict,
        notes=notes,
    )
