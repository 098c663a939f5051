"""Bounded growth curves for the illocution-ambiguity-resolution coefficient.

The coefficient is the probability that a subjectless imperative is
recognized as an imperative rather than heard as a declarative.  It grows
with exposure, modeled as either a clamped line or a logistic curve over
cumulative utterances, with parameters fitted from three (age, value)
observations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .calendar import Calendar, DEFAULT_CALENDAR, cumulative_utterances

LINEAR = "linear"
LOGISTIC = "logistic"
KINDS = (LINEAR, LOGISTIC)

# Fitting happens in units of millions of utterances so the normal
# equations stay well conditioned; parameters are converted back.
_U_SCALE = 1e6


class FitError(ValueError):
    """Raised when growth parameters cannot be fitted."""


@dataclass(frozen=True)
class GrowthParams:
    """Growth-curve parameters.

    ``m`` is the slope (linear) or growth rate (logistic) per utterance;
    ``c`` is the intercept (linear) or the midpoint in utterances
    (logistic).
    """

    kind: str
    m: float
    c: float

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not (math.isfinite(self.m) and math.isfinite(self.c)):
            raise ValueError("m and c must be finite")


def _expit(z: float) -> float:
    # Overflow-safe logistic; mirrors the simulation kernel expression.
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def iarc_linear(u: float, params: GrowthParams) -> float:
    """Clamped-line coefficient: 0 below the onset, 1 past saturation."""
    if params.kind != LINEAR:
        raise ValueError("params.kind must be 'linear'")
    if params.m == 0.0:
        raise ValueError("linear growth requires m != 0")
    value = params.m * u + params.c
    if value <= 0.0:
        return 0.0
    if value >= 1.0:
        return 1.0
    return value


def iarc_logistic(u: float, params: GrowthParams) -> float:
    """Logistic coefficient with growth rate m and midpoint c."""
    if params.kind != LOGISTIC:
        raise ValueError("params.kind must be 'logistic'")
    return _expit(params.m * (u - params.c))


def evaluate(u: float, params: GrowthParams) -> float:
    """Dispatch on ``params.kind``."""
    if params.kind == LINEAR:
        return iarc_linear(u, params)
    return iarc_logistic(u, params)


def _fit_linear(us: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    ux = us / _U_SCALE
    m, c = np.polyfit(ux, ys, 1)
    return float(m) / _U_SCALE, float(c)


def _logistic_sse(m: float, c: float, ux: np.ndarray, ys: np.ndarray) -> float:
    pred = np.array([_expit(m * (x - c)) for x in ux])
    return float(np.sum((pred - ys) ** 2))


def _fit_logistic(us: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Damped Gauss-Newton on (m, c), grid-search fallback, tol 1e-9."""
    ux = us / _U_SCALE
    if np.ptp(ys) == 0.0:
        raise FitError("logistic fit unidentifiable: all values equal")
    secant = (ys[-1] - ys[0]) / (ux[-1] - ux[0])
    if secant == 0.0:
        raise FitError("logistic fit unidentifiable: flat secant")
    # Logistic slope at the midpoint is m/4, so 4*secant is a fair start.
    m, c = 4.0 * secant, float(ux[len(ux) // 2])

    def gauss_newton(m0, c0):
        m, c = m0, c0
        lam = 1e-3
        sse = _logistic_sse(m, c, ux, ys)
        for _ in range(200):
            s = np.array([_expit(m * (x - c)) for x in ux])
            w = s * (1.0 - s)
            resid = s - ys
            jm = w * (ux - c)
            jc = -w * m
            jtj = np.array(
                [[np.dot(jm, jm), np.dot(jm, jc)], [np.dot(jm, jc), np.dot(jc, jc)]]
            )
            jtr = np.array([np.dot(jm, resid), np.dot(jc, resid)])
            stepped = False
            for _ in range(25):
                try:
                    step = np.linalg.solve(jtj + lam * np.eye(2), -jtr)
                except np.linalg.LinAlgError:
                    lam *= 10.0
                    continue
                m_new, c_new = m + step[0], c + step[1]
                sse_new = _logistic_sse(m_new, c_new, ux, ys)
                if sse_new <= sse:
                    rel = abs(step[0]) / max(abs(m), 1e-30) + abs(step[1]) / max(
                        abs(c), 1e-30
                    )
                    m, c, sse = m_new, c_new, sse_new
                    lam = max(lam / 10.0, 1e-12)
                    stepped = True
                    if rel < 1e-9:
                        return m, c, sse
                    break
                lam *= 10.0
            if not stepped:
                break
        return m, c, sse

    m_fit, c_fit, sse = gauss_newton(m, c)
    if sse > 1e-12:
        # Coarse grid around the data, then polish the best cell.
        span = ux[-1] - ux[0]
        sign = 1.0 if secant > 0 else -1.0
        best = (m_fit, c_fit, sse)
        for mag in np.logspace(-2.5, 2.5, 41):
            for cc in np.linspace(ux[0] - 2 * span, ux[-1] + 2 * span, 41):
                s = _logistic_sse(sign * mag, cc, ux, ys)
                if s < best[2]:
                    best = (sign * mag, cc, s)
        m_fit, c_fit, _ = gauss_newton(best[0], best[1])
    return m_fit / _U_SCALE, c_fit * _U_SCALE


def fit_growth(points, kind: str, calendar: Calendar = DEFAULT_CALENDAR) -> GrowthParams:
    """Least-squares growth parameters from three (age_years, value) pairs.

    Ages are converted to cumulative utterances first; the fit is carried
    out in value space over those utterance counts and is invariant to the
    input order of the points.
    """
    if kind not in KINDS:
        raise FitError(f"kind must be one of {KINDS}")
    pts = sorted((float(a), float(y)) for a, y in points)
    if len(pts) != 3:
        raise FitError("exactly three observation points are required")
    ages = [a for a, _ in pts]
    if len(set(ages)) != 3:
        raise FitError("observation ages must be distinct")
    for _, y in pts:
        if not 0.0 <= y <= 1.0:
            raise FitError(f"observed value {y} outside [0, 1]")
    us = np.array([cumulative_utterances(a, calendar) for a in ages], dtype=float)
    ys = np.array([y for _, y in pts], dtype=float)
    if kind == LINEAR:
        m, c = _fit_linear(us, ys)
    else:
        m, c = _fit_logistic(us, ys)
    return GrowthParams(kind, m, c)


def fit_residual(params: GrowthParams, points, calendar: Calendar = DEFAULT_CALENDAR) -> float:
    """Largest absolute misfit of the curve over the observation points."""
    worst = 0.0
    for age, y in points:
        u = cumulative_utterances(float(age), calendar)
        worst = max(worst, abs(evaluate(u, params) - float(y)))
    return worst
