"""Decay-exponent analytics: theoretical diversity orders, empirical
log-log slope fits, bit-scaling of the noiseless error floor, and the
vanishing-floor schedules.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from scipy import optimize as sciopt

from .montecarlo import SimSpec, simulate
from .optimizer import DesignProblem, lemma7_rho_star, optimize, xg_design
from .sep import floor_geometric
from .system import ChannelModel, GeometricConstellation

__all__ = [
    "DvoEstimate",
    "dvo_theory",
    "dvo_fit",
    "dvo_fit_mc",
    "dvo_experiment",
    "dq_metric",
    "dq_successive_slopes",
    "optimal_floor_log2",
    "floor_schedule",
]

SEP_NUMERICAL_FLOOR = 1e-12
MIN_MC_ERRORS = 100


@dataclass(frozen=True)
class DvoEstimate:
    slope: float
    window: tuple  # (lo_db, hi_db)
    r2: float
    points_used: int


def dvo_theory(m, b, M, quantizer_kind="nonuniform", n_r=1):
    """Exact decay exponent as a rational number.

    nonuniform: m * n_r * (2^b - M + 2) / 2^b, valid for 2^b > M - 2.
    uniform: m / 2, derived for M = 4 single-antenna receivers only.
    """
    if quantizer_kind == "nonuniform":
        if 2**b <= M - 2:
            raise ValueError("requires 2^b > M - 2")
        return Fraction(m) * n_r * Fraction(2**b - M + 2, 2**b)
    if quantizer_kind == "uniform":
        if M != 4 or b < 2:
            raise ValueError("uniform decay exponent derived for M = 4, b >= 2")
        if n_r != 1:
            raise ValueError("uniform decay exponent is single-antenna only")
        return Fraction(m, 2)
    raise ValueError(f"unknown quantizer kind {quantizer_kind!r}")


def dvo_fit(curve, window, min_sep=SEP_NUMERICAL_FLOOR):
    """Least-squares slope of -log10(sep) against log10(linear snr).

    curve: iterable of (snr_db, sep); only points inside the dB window and
    above the numerical floor participate.
    """
    pts = [
        (sdb, sep)
        for sdb, sep in curve
        if window[0] <= sdb <= window[1] and sep >= min_sep
    ]
    if len(pts) < 4:
        raise ValueError("need at least 4 usable points in the window")
    x = np.array([sdb / 10.0 for sdb, _ in pts])  # log10 of linear snr
    y = np.array([-math.log10(sep) for _, sep in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DvoEstimate(float(slope), tuple(window), r2, len(pts))


def dvo_fit_mc(estimates, window):
    """Slope fit over Monte Carlo estimates; drops points with < 100 errors."""
    curve = [
        (e.snr_db, e.sep_hat) for e in estimates if e.errors >= MIN_MC_ERRORS
    ]
    return dvo_fit(curve, window)


def _warm_start(m, bits, M, snr, uniform):
    """Analytic geometric-schedule design used to seed the joint optimizer."""
    n = 2**bits - M + 2
    sigma = math.sqrt((2.0 / M) / snr)
    if uniform:
        rho = lemma7_rho_star(A=2.0 * m, B=2.0, C=float(m), sigma=sigma)
    else:
        rho = lemma7_rho_star(A=float(m * n), B=float(M - 2), C=float(m), sigma=sigma)
    rho = min(rho, 0.9)
    cg = GeometricConstellation(rho, M)
    if uniform:
        a_exp = 0.5 * (M - 2 + 4)
    else:
        a_exp = 0.5 * (M - 2 + 2**bits)
    q1 = math.sqrt(cg.C**2 * rho**a_exp)
    cons, quant = xg_design(rho, q1, M, bits)
    if uniform:
        from .system import UniformQuantizer

        quant = UniformQuantizer(q1, bits).materialize()
    return cons, quant


def dvo_experiment(m, b, M, quantizer_kind, n_r, snr_db_grid, budget=10**6,
                   n_starts=6, seed=0):
    """Empirical decay exponent of jointly-optimized designs.

    Per SNR point the constellation and quantizer are re-optimized with a
    continuation warm start; the SEP is evaluated in closed form (n_r = 1)
    or by Monte Carlo with the optimized single-antenna design (n_r > 1).
    Returns (DvoEstimate, theory_value).
    """
    theory = dvo_theory(m, b, M, quantizer_kind, n_r)
    uniform = quantizer_kind == "uniform"
    kind = "joint_uniform" if uniform else "joint_nonuniform"
    ch = ChannelModel(m, 1.0)
    snr_db_grid = list(snr_db_grid)
    init_c, init_q = _warm_start(m, b, M, 10.0 ** (snr_db_grid[0] / 10.0), uniform)

    designs = []
    for sdb in snr_db_grid:
        snr = 10.0 ** (sdb / 10.0)
        p = DesignProblem(
            channel=ch, M=M, bits=b, variables=kind, snr=snr,
            n_starts=n_starts, seed=seed,
            init_quantizer=init_q, init_constellation=init_c,
        )
        r = optimize(p)
        init_c, init_q = r.constellation, r.quantizer
        designs.append(r)

    window = (min(snr_db_grid), max(snr_db_grid))
    if n_r == 1:
        curve = [(sdb, r.sep) for sdb, r in zip(snr_db_grid, designs)]
        return dvo_fit(curve, window), theory

    estimates = []
    for point, (sdb, r) in enumerate(zip(snr_db_grid, designs)):
        spec = SimSpec(
            constellation=r.constellation, quantizer=r.quantizer, channel=ch,
            snr_db=(sdb,), trials=budget, n_r=n_r, seed=seed + point,
        )
        estimates.extend(simulate(spec))
    return dvo_fit_mc(estimates, window), theory


def dq_metric(floor_fn, b_range):
    """Least-squares slope of -log2(floor) against the bit count."""
    bs = list(b_range)
    y = [-math.log2(floor_fn(b)) for b in bs]
    slope = np.polyfit(np.asarray(bs, dtype=float), np.asarray(y), 1)[0]
    return float(slope)


def dq_successive_slopes(log2_floor_fn, b_range):
    """Per-bit increments of -log2(floor); strictly increasing increments
    are the double-exponential signature."""
    bs = list(b_range)
    vals = [-log2_floor_fn(b) for b in bs]
    return [
        (v1 - v0) / (b1 - b0)
        for (b0, v0), (b1, v1) in zip(zip(bs, vals), zip(bs[1:], vals[1:]))
    ]


def optimal_floor_log2(m, bits, quantizer_kind="nonuniform", omega=1.0):
    """log2 of the minimum noiseless SEP of a 4-PAM receiver with
    constellation {+-1, +-3}, optimized over the single free quantizer
    parameter (q_1 with ratio-3 boundaries, or the uniform step).

    For M = 4 both structures make the floor exactly
    0.5 * [P(Z < q_1^2/9) + P(Z > q_K^2)]; evaluated in high precision so
    double-exponentially small floors stay representable.
    """
    k = 2 ** (bits - 1) - 1
    mp_m = mpmath.mpf(m)

    def log2_floor(log_q1):
        q1 = mpmath.e**mpmath.mpf(log_q1)
        if quantizer_kind == "uniform":
            qk = k * q1
        else:
            qk = q1 * mpmath.mpf(3) ** (k - 1)
        low = mpmath.gammainc(mp_m, 0, mp_m * q1**2 / (9 * omega), regularized=True)
        high = mpmath.gammainc(mp_m, mp_m * qk**2 / omega, mpmath.inf, regularized=True)
        return float(mpmath.log(mpmath.mpf("0.5") * (low + high), 2))

    with mpmath.workdps(60):
        res = sciopt.minimize_scalar(
            log2_floor, bounds=(-600.0, 5.0), method="bounded",
            options={"xatol": 1e-10},
        )
        return log2_floor(res.x)


def floor_schedule(rho_grid, a, b, M, ch, uniform=False):
    """Vanishing-floor construction: evaluate the geometric floor bound
    along q_1(rho) = sqrt(C^2 rho^a).

    The exponent must satisfy a in (M-2, 2^b) (non-uniform) or
    a in (M-2, 4) with M = 4 (uniform).
    """
    hi = 4 if uniform else 2**b
    if not (M - 2 < a < hi):
        raise ValueError(f"exponent a must lie in the open interval ({M - 2}, {hi})")
    out = []
    for rho in rho_grid:
        cg = GeometricConstellation(rho, M)
        q1 = math.sqrt(cg.C**2 * rho**a)
        out.append((rho, floor_geometric(cg, q1, ch, b, uniform=uniform)))
    return out
