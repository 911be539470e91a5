"""Symbol error probability engines.

Three routes to the same quantity: an exact finite series (integer m), an
adaptive-quadrature evaluation of the defining integral (any m >= 1/2),
and the closed-form noiseless limit. Error-floor bounds and the AQNM
linearized baseline live here as well.

Throughout, the quantized observation of symbol rho_i over fading gain z
is governed by the integrand Q(-c + sqrt(b*z)) with c = sqrt(2) q_y / sigma
and b = 2 rho_i^2 / sigma^2, where sigma^2 = E_s / SNR.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .detector import decision_region, noiseless_region
from .specfun import SQRT_2PI, f_integral, lower_gamma_reg, q_func, upper_gamma_reg
from .system import sigma2_from_snr, symbol_energy

__all__ = [
    "SepResult",
    "h_function",
    "h_function_quad",
    "sep_closed_form",
    "sep_quadrature",
    "sep_noiseless",
    "floor_bounds",
    "floor_geometric",
    "sep_aqnm",
    "lloyd_max_gaussian",
    "default_alpha",
]

CLAMP_SLACK = 1e-12


@dataclass(frozen=True)
class SepResult:
    value: float
    method: str  # closed_form | quadrature | noiseless | bound_upper | bound_lower | aqnm
    abs_error_est: float = 0.0
    converged: bool = True

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError("SEP outside [0, 1]")
        if self.abs_error_est < 0.0:
            raise ValueError("negative error estimate")


def _clamp_probability(p):
    if not -CLAMP_SLACK <= p <= 1.0 + CLAMP_SLACK:
        raise ArithmeticError(f"probability {p} outside [0,1] beyond slack")
    return min(max(p, 0.0), 1.0)


def _gamma_survival(m, omega, z):
    """P(Z > z) for Z ~ Gamma(m, omega/m); z may be +inf."""
    if math.isinf(z):
        return 0.0
    return float(upper_gamma_reg(m, m * z / omega))


def h_function(m, omega, b, c, z_lo, z_hi):
    """Exact finite-series value of the integral of Q(-c + sqrt(b z)) f_Z(z)
    over (z_lo, z_hi), for integer m >= 1.

    c = +inf reduces to the plain Gamma measure of the interval; b = 0
    reduces to Q(-c) times that measure.
    """
    m = int(m)
    if m < 1 or m != float(m):
        raise ValueError("closed form requires integer m >= 1")
    if b < 0 or c < 0:
        raise ValueError("b and c must be nonnegative")
    if z_lo > z_hi:
        raise ValueError("z_lo must not exceed z_hi")
    if z_lo == z_hi:
        return 0.0
    g_lo = _gamma_survival(m, omega, z_lo)
    g_hi = _gamma_survival(m, omega, z_hi)
    if math.isinf(c):
        return g_lo - g_hi
    if b == 0.0:
        return float(q_func(-c)) * (g_lo - g_hi)

    boundary = float(q_func(-c + math.sqrt(b * z_lo))) * g_lo
    if not math.isinf(z_hi):
        boundary -= float(q_func(-c + math.sqrt(b * z_hi))) * g_hi

    alpha = 2.0 * m / (omega * b)
    s = alpha + 1.0

    def u_of(z):
        if math.isinf(z):
            return math.inf
        return (-c + s * math.sqrt(b * z)) / math.sqrt(s)

    u_hi, u_lo = u_of(z_hi), u_of(z_lo)
    terms = []
    if c > 0.0:
        expo = math.exp(-0.5 * c * c * alpha / s)
        for r in range(m):
            base = (m / (omega * b)) ** r / (SQRT_2PI * math.factorial(r))
            for l in range(2 * r + 1):
                terms.append(
                    base
                    * math.comb(2 * r, l)
                    * expo
                    * c ** (2 * r - l)
                    * f_integral(u_hi, u_lo, l)
                    / s ** (2 * r - 0.5 * (l - 1))
                )
    else:
        scale = math.sqrt(omega * b / (omega * b + 2.0 * m)) / SQRT_2PI
        for r in range(m):
            terms.append(
                (m / (omega * b + 2.0 * m)) ** r
                * scale
                * f_integral(u_hi, u_lo, 2 * r)
                / math.factorial(r)
            )
    # largest-magnitude first, then compensated summation
    terms.sort(key=abs, reverse=True)
    return boundary - math.fsum(terms)


def _log_gamma_pdf(m, omega):
    lg = special.gammaln(m)
    lead = m * math.log(m / omega)

    def pdf(z):
        if z <= 0.0:
            return 0.0
        return math.exp(lead + (m - 1.0) * math.log(z) - m * z / omega - lg)

    return pdf


def h_function_quad(m, omega, b, c, z_lo, z_hi, tol=1e-12):
    """Adaptive-quadrature value of the same integral, any m >= 1/2.

    Returns (value, abs_error_estimate). The integration interval is split
    at the transition point z = c^2 / b of the Q factor.
    """
    if m < 0.5:
        raise ValueError("m must be >= 1/2")
    if z_lo > z_hi:
        raise ValueError("z_lo must not exceed z_hi")
    if z_lo == z_hi:
        return 0.0, 0.0
    pdf = _log_gamma_pdf(m, omega)
    if math.isinf(c):
        val = _gamma_survival_real(m, omega, z_lo) - _gamma_survival_real(m, omega, z_hi)
        return val, 0.0

    def integrand(z):
        return float(q_func(-c + math.sqrt(b * z))) * pdf(z)

    cuts = [z_lo]
    if b > 0.0:
        knee = c * c / b
        if z_lo < knee < z_hi:
            cuts.append(knee)
    # keep one finite split before an infinite tail
    tail_start = max(cuts[-1], omega * (1.0 + 10.0 / math.sqrt(m)))
    if math.isinf(z_hi) and tail_start > cuts[-1]:
        cuts.append(tail_start)
    cuts.append(z_hi)

    total, err = 0.0, 0.0
    for a, bnd in zip(cuts, cuts[1:]):
        v, e = integrate.quad(integrand, a, bnd, epsabs=tol, epsrel=tol, limit=200)
        total += v
        err += e
    return total, err


def _gamma_survival_real(m, omega, z):
    if math.isinf(z):
        return 0.0
    return float(special.gammaincc(m, m * z / omega))


def _iter_regions(c, q, region_fn):
    for y in range(1, q.K + 2):
        for i in range(c.half_size):
            reg = region_fn(c, q, y, i)
            if not reg.empty:
                yield reg


def sep_closed_form(c, q, ch, snr):
    """Average SEP by the exact finite series; requires integer m."""
    if not ch.integer_m:
        raise ValueError("closed form requires integer m; use sep_quadrature")
    sigma2 = sigma2_from_snr(c, snr)
    sigma = math.sqrt(sigma2)
    amps = c.amplitudes
    terms = []
    for reg in _iter_regions(c, q, decision_region):
        b_i = 2.0 * amps[reg.i] ** 2 / sigma2
        c_hi = math.sqrt(2.0) * q.boundary(reg.y) / sigma
        c_lo = math.sqrt(2.0) * q.boundary(reg.y - 1) / sigma
        hi = h_function(int(ch.m), ch.omega, b_i, c_hi, reg.lower, reg.upper)
        lo = h_function(int(ch.m), ch.omega, b_i, c_lo, reg.lower, reg.upper)
        terms.append(hi - lo)
    p_correct = 2.0 / c.M * math.fsum(terms)
    return SepResult(_clamp_probability(1.0 - p_correct), "closed_form")


def sep_quadrature(c, q, ch, snr, tol=1e-12):
    """Average SEP by numerical integration of the defining expression;
    valid for any m >= 1/2."""
    sigma2 = sigma2_from_snr(c, snr)
    sigma = math.sqrt(sigma2)
    amps = c.amplitudes
    total, err = 0.0, 0.0
    for reg in _iter_regions(c, q, decision_region):
        b_i = 2.0 * amps[reg.i] ** 2 / sigma2
        c_hi = math.sqrt(2.0) * q.boundary(reg.y) / sigma
        c_lo = math.sqrt(2.0) * q.boundary(reg.y - 1) / sigma
        v_hi, e_hi = h_function_quad(ch.m, ch.omega, b_i, c_hi, reg.lower, reg.upper, tol)
        v_lo, e_lo = h_function_quad(ch.m, ch.omega, b_i, c_lo, reg.lower, reg.upper, tol)
        total += v_hi - v_lo
        err += e_hi + e_lo
    p_e = _clamp_probability(1.0 - 2.0 / c.M * total)
    return SepResult(p_e, "quadrature", abs_error_est=2.0 / c.M * err)


def sep_noiseless(c, q, ch):
    """Infinite-SNR SEP: Gamma measure of the noiseless decision regions."""
    m, omega = ch.m, ch.omega
    total = 0.0
    for reg in _iter_regions(c, q, noiseless_region):
        hi = 1.0 if math.isinf(reg.upper) else float(lower_gamma_reg(m, m * reg.upper / omega))
        lo = float(lower_gamma_reg(m, m * reg.lower / omega))
        total += hi - lo
    return SepResult(_clamp_probability(1.0 - 2.0 / c.M * total), "noiseless")


def floor_bounds(c, q, ch):
    """(f_L, f_U) bracket on the optimal noiseless SEP.

    The upper bound assumes adjacent boundary ratios equal the minimum
    adjacent amplitude ratio; both collapse to the exact floor at M = 4.
    """
    amps = c.amplitudes
    m, omega = ch.m, ch.omega
    q1 = q.boundary(1)
    qk = q.boundary(q.K)
    low_mass = float(lower_gamma_reg(m, m * (q1 / amps[1]) ** 2 / omega))
    high_mass = float(upper_gamma_reg(m, m * (qk / amps[c.half_size - 2]) ** 2 / omega))
    bracket = low_mass + high_mass
    f_l = _clamp_probability(2.0 / c.M * bracket)
    # the raw upper bound can exceed 1 (vacuous); 1 is still a valid bound
    f_u = _clamp_probability(min(1.0, (c.M / 4.0 - 0.5) * bracket))
    return (
        SepResult(f_l, "bound_lower"),
        SepResult(f_u, "bound_upper"),
    )


def floor_geometric(cg, q1, ch, bits, uniform=False):
    """Upper bound on the noiseless SEP of the geometric constellation.

    Non-uniform path assumes boundaries q_y = q_1 / rho^(y-1) (the noiseless
    optimality condition) and needs 2^b > M - 2; the uniform path takes q1
    as the step and needs M = 4, b > 1.
    """
    m, omega = ch.m, ch.omega
    M = cg.M
    rho = cg.rho
    c2 = cg.C**2
    if q1 <= 0:
        raise ValueError("q1 must be positive")
    coeff = M / 4.0 - 0.5
    if uniform:
        if M != 4 or bits < 2:
            raise ValueError("uniform bound requires M = 4 and b > 1")
        k = 2 ** (bits - 1) - 1
        x_lo = m / omega * q1**2 / (c2 * rho ** (M - 2))
        x_hi = _safe_ratio(m / omega * k**2 * q1**2 / c2, rho, 4)
    else:
        if 2**bits <= M - 2:
            raise ValueError("non-uniform bound requires 2^b > M - 2")
        x_lo = m / omega * q1**2 / (c2 * rho ** (M - 2))
        x_hi = _safe_ratio(m / omega * q1**2 / c2, rho, 2**bits)
    val = float(lower_gamma_reg(m, x_lo)) + float(upper_gamma_reg(m, x_hi))
    return _clamp_probability(coeff * val)


def _safe_ratio(num, rho, power):
    """num / rho^power without intermediate under/overflow."""
    log_x = math.log(num) - power * math.log(rho)
    if log_x > 700.0:
        return math.inf
    return math.exp(log_x)


def sep_aqnm(c, snr, alpha):
    """Linearized quantization-noise baseline SEP."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must be in (0, 1]")
    es = symbol_energy(c)
    sigma2 = es / snr
    sinr = alpha * es / (sigma2 + (1.0 - alpha) * es)
    val = (c.M - 1.0) / c.M * (1.0 - math.sqrt(sinr / (es + sinr)))
    return SepResult(_clamp_probability(val), "aqnm")


def lloyd_max_gaussian(bits, iters=500, tol=1e-14):
    """Minimum-distortion scalar quantizer of a unit Gaussian.

    Returns (boundaries, levels, distortion) with 2^bits symmetric levels.
    Boundaries are the midpoints of neighboring levels; levels are the
    conditional means of their cells.
    """
    n = 2**bits
    levels = np.linspace(-2.0, 2.0, n) + 1e-3
    prev = None
    for _ in range(iters):
        bounds = 0.5 * (levels[:-1] + levels[1:])
        edges = np.concatenate([[-np.inf], bounds, [np.inf]])
        phi = np.exp(-0.5 * edges**2) / SQRT_2PI
        phi[~np.isfinite(edges)] = 0.0
        cdf = special.ndtr(edges)
        mass = np.diff(cdf)
        levels = (phi[:-1] - phi[1:]) / mass
        if prev is not None and np.max(np.abs(levels - prev)) < tol:
            break
        prev = levels.copy()
    bounds = 0.5 * (levels[:-1] + levels[1:])
    distortion = 1.0 - float(np.sum(mass * levels**2))
    return bounds, levels, distortion


def default_alpha(bits):
    """Distortion factor 1 - D of the Lloyd-Max quantizer at this resolution."""
    _, _, d = lloyd_max_gaussian(bits)
    return 1.0 - d
