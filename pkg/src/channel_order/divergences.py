"""f-divergences, contraction coefficients, and maximal correlation on finite alphabets.

All divergences use natural logarithms.  Infinite values are returned as an
explicit ``DivergenceValue(inf)`` produced by an absolute-continuity check,
never as the result of a float overflow; several arguments in this library
(e.g. why no symmetric channel dominates an erasure channel) hinge on telling
finite from infinite apart reliably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import Pmf, as_channel, as_pmf, uniform_pmf


class DivergenceValue(float):
    """A nonnegative divergence in nats; may be ``inf`` when absolute continuity fails."""

    def __new__(cls, value: float):
        if value < 0 and value > -1e-12:
            value = 0.0  # round-off guard; divergences are nonnegative
        if value < 0:
            raise ValueError(f"divergence cannot be negative, got {value}")
        return super().__new__(cls, value)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    pv, qv = as_pmf(p).probs, as_pmf(q).probs
    if pv.size != qv.size:
        raise ValueError(f"dimension mismatch: {pv.size} vs {qv.size}")
    return pv, qv


def kl(p, q) -> DivergenceValue:
    """Kullback-Leibler divergence D(p||q) with the 0 log 0 = 0 convention."""
    pv, qv = _pair(p, q)
    support = pv > 0
    if np.any(qv[support] <= 0):
        return DivergenceValue(math.inf)
    return DivergenceValue(float(np.sum(pv[support] * np.log(pv[support] / qv[support]))))


def chi2(p, q) -> DivergenceValue:
    """Chi-squared divergence sum_i p_i^2/q_i - 1 with the 0/0 = 0 convention."""
    pv, qv = _pair(p, q)
    support = pv > 0
    if np.any(qv[support] <= 0):
        return DivergenceValue(math.inf)
    return DivergenceValue(float(np.sum(pv[support] ** 2 / qv[support]) - 1.0))


def tv_distance(p, q) -> float:
    """Total variation distance, half the l1 distance; lies in [0, 1]."""
    pv, qv = _pair(p, q)
    return float(0.5 * np.abs(pv - qv).sum())


def shannon_entropy(p) -> float:
    """Shannon entropy in nats."""
    pv = as_pmf(p).probs
    support = pv > 0
    return float(-np.sum(pv[support] * np.log(pv[support])))


def eta_tv(w) -> float:
    """Dobrushin contraction coefficient: the maximum TV distance between rows."""
    m = as_channel(w).matrix
    best = 0.0
    for i in range(m.shape[0]):
        d = 0.5 * np.abs(m[i + 1 :] - m[i]).sum(axis=1)
        if d.size:
            best = max(best, float(d.max()))
    return best


def maximal_correlation(p, w) -> float:
    """Maximal correlation of input pmf p and the output of channel w.

    Computed as the second largest singular value of the divergence transition
    matrix diag(p)^{1/2} W diag(pW)^{-1/2}; requires p and pW strictly positive.
    """
    pv = as_pmf(p).probs
    m = as_channel(w).matrix
    if pv.size != m.shape[0]:
        raise ValueError("pmf length does not match channel input size")
    if np.any(pv <= 0):
        raise ValueError("input pmf must be strictly positive")
    out = pv @ m
    if np.any(out <= 0):
        raise ValueError("output pmf must be strictly positive")
    dtm = np.sqrt(pv)[:, None] * m / np.sqrt(out)[None, :]
    sv = np.linalg.svd(dtm, compute_uv=False)
    if sv.size < 2:
        return 0.0
    return float(min(1.0, sv[1]))


def eta_kl_bounds(w, samples: int = 200, seed: int = 0) -> tuple[float, float]:
    """Bracket the KL contraction coefficient of a channel.

    The lower bound is the best squared maximal correlation found over the
    uniform pmf and ``samples`` random interior input pmfs; the upper bound is
    the Dobrushin coefficient.  The same bracket also bounds the chi-squared
    contraction coefficient, which coincides with the KL one.
    """
    ch = as_channel(w)
    q = ch.rows
    rng = np.random.default_rng(seed)
    lower = maximal_correlation(uniform_pmf(q), ch) ** 2
    for _ in range(samples):
        p = rng.dirichlet(np.ones(q))
        p = (1.0 - 1e-6) * p + 1e-6 / q
        lower = max(lower, maximal_correlation(Pmf(p), ch) ** 2)
    upper = eta_tv(ch)
    if lower > upper + 1e-12:
        raise AssertionError(f"contraction bracket inverted: {lower} > {upper}")
    return lower, upper


@dataclass(frozen=True)
class LocalCheckReport:
    """Scaled KL values along a mixture path and their gap to the chi-squared limit."""

    entries: tuple[tuple[float, float], ...]  # (lambda, (2/lambda^2) KL)
    chi2_value: float
    final_gap: float


def kl_chi2_local_check(p, q, lambda_sequence) -> LocalCheckReport:
    """Check that (2/t^2) D(t p + (1-t) q || q) approaches chi2(p||q) as t -> 0."""
    pv, qv = _pair(p, q)
    if np.any(qv <= 0):
        raise ValueError("second argument must be strictly interior")
    target = float(chi2(pv, qv))
    entries = []
    for lam in lambda_sequence:
        if not 0 < lam <= 1:
            raise ValueError(f"mixture weights must lie in (0, 1], got {lam}")
        mix = qv + lam * (pv - qv)  # exact when p = q
        entries.append((float(lam), float(2.0 / lam**2 * kl(Pmf(mix), Pmf(qv)))))
    gap = abs(entries[-1][1] - target) if entries else math.nan
    return LocalCheckReport(entries=tuple(entries), chi2_value=target, final_gap=gap)


@dataclass(frozen=True)
class IntegralCheckReport:
    kl_value: float
    integral_value: float
    relative_error: float
    nodes: int


def kl_chi2_integral_check(p, q, quadrature_nodes: int = 20001) -> IntegralCheckReport:
    """Reproduce KL divergence by integrating chi-squared along a mixture path.

    D(p||q) equals the integral over t in [0, inf) of
    chi2(p || (t p + q)/(t + 1)) / (t + 1); substituting t = s/(1-s) maps the
    half line to s in [0, 1), integrated with composite Simpson quadrature.
    """
    pv, qv = _pair(p, q)
    if np.any(qv <= 0):
        raise ValueError("second argument must be strictly interior")
    n = int(quadrature_nodes)
    if n < 3:
        raise ValueError("need at least 3 quadrature nodes")
    if n % 2 == 0:
        n += 1  # Simpson needs an odd node count
    s = np.linspace(0.0, 1.0, n)
    # integrand in s: chi2(p || (1-s(1-s'))...): mixture (t p + q)/(t+1) with
    # t = s/(1-s) is p + (1-s)(q - p); the 1/(t+1) dt factor becomes ds/(1-s).
    mixtures = pv[None, :] + (1.0 - s)[:, None] * (qv - pv)[None, :]
    vals = np.zeros(n)
    support = pv > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        chis = np.sum(pv[support] ** 2 / mixtures[:, support], axis=1) - 1.0
        integrand = chis / (1.0 - s)
    integrand[-1] = 0.0  # limit: chi2 vanishes quadratically at s = 1
    h = s[1] - s[0]
    weights = np.ones(n)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    integral = float(h / 3.0 * np.sum(weights * integrand))
    exact = float(kl(pv, qv))
    rel = abs(integral - exact) / max(abs(exact), 1e-300)
    return IntegralCheckReport(kl_value=exact, integral_value=integral, relative_error=rel, nodes=n)
