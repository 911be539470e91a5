"""ML detection for quantized PAM observations.

Detected symbols are reported as signed indices s*(i+1), where i is the
index into the positive half-constellation and s is the sign of the
symbol; this keeps single-antenna and SIMO detectors comparable.
"""
import math
from dataclasses import dataclass

import numpy as np

from .specfun import q_func

__all__ = [
    "DecisionRegion",
    "quantize",
    "ml_detect_midpoint",
    "decision_region",
    "noiseless_region",
    "ml_detect_simo",
]

# natural-log underflow floor for per-factor likelihoods
LOG_FLOOR = -745.0


@dataclass(frozen=True)
class DecisionRegion:
    """Interval on the z = |h|^2 axis where output y decodes to symbol i.

    Empty regions are encoded as lower == upper.
    """

    lower: float
    upper: float
    y: int
    i: int

    @property
    def empty(self):
        return self.lower >= self.upper


def quantize(q, r):
    """Signed ADC output index for real input r.

    Positive side: y with q_(y-1) <= r < q_y (boundaries belong to the
    upper region), y = K+1 for r >= q_K. Inputs in [-q_1, 0) map to y = -1
    and r = 0 maps to y = +1.
    """
    bounds = np.asarray(q.positive_boundaries)
    r = float(r)
    if r >= 0.0:
        return int(np.searchsorted(bounds, r, side="right")) + 1
    # mirror with half-open intervals preserved: -q_y maps to -(y+1)
    return -(int(np.searchsorted(bounds, -r, side="right")) + 1)


def _nearest_amplitude(c, target):
    """Index of the amplitude closest to target; ties go to the lower index."""
    amps = np.asarray(c.amplitudes)
    mids = 0.5 * (amps[:-1] + amps[1:])
    return int(np.searchsorted(mids, target, side="left"))


def ml_detect_midpoint(c, q, h_mag, y):
    """Midpoint ML rule: decode output y to the sign-matched symbol whose
    faded amplitude is closest to the midpoint of the quantization region.

    The saturation region |y| = K+1 has no finite midpoint; there the rule
    degenerates to the largest symbol.
    """
    if h_mag <= 0:
        raise ValueError("h_mag must be positive")
    ay = abs(int(y))
    if not 1 <= ay <= q.K + 1:
        raise ValueError("output index out of range")
    sign = 1 if y > 0 else -1
    if ay == q.K + 1:
        return sign * c.half_size
    mid = 0.5 * (q.boundary(ay - 1) + q.boundary(ay))
    return sign * (_nearest_amplitude(c, mid / h_mag) + 1)


def decision_region(c, q, y, i):
    """Region D_(y,i) on the z axis for positive output y in [1 .. K+1]."""
    half = c.half_size
    if not 1 <= y <= q.K + 1:
        raise ValueError("y out of range")
    if not 0 <= i < half:
        raise IndexError("symbol index out of range")
    amps = c.amplitudes
    if y == q.K + 1:
        if i == half - 1:
            return DecisionRegion(0.0, math.inf, y, i)
        return DecisionRegion(0.0, 0.0, y, i)
    qsum = q.boundary(y - 1) + q.boundary(y)
    lower = 0.0 if i == half - 1 else (qsum / (amps[i] + amps[i + 1])) ** 2
    upper = math.inf if i == 0 else (qsum / (amps[i] + amps[i - 1])) ** 2
    return DecisionRegion(lower, upper, y, i)


def noiseless_region(c, q, y, i):
    """Intersection D_(y,i) with the noiseless reachability region A_(y,i)
    = (q_(y-1)^2 / rho_i^2, q_y^2 / rho_i^2); may be empty."""
    half = c.half_size
    if not 1 <= y <= q.K + 1:
        raise ValueError("y out of range")
    if not 0 <= i < half:
        raise IndexError("symbol index out of range")
    amps = c.amplitudes
    q_lo = q.boundary(y - 1)
    q_hi = q.boundary(y)
    if y == q.K + 1 and i < half - 1:
        return DecisionRegion(0.0, 0.0, y, i)
    qsum = q_lo + q_hi
    if i == half - 1:
        lower = (q_lo / amps[i]) ** 2
        if math.isinf(q_hi):
            upper = math.inf
        else:
            upper = min(qsum / (amps[i] + amps[i - 1]), q_hi / amps[i]) ** 2
    elif i == 0:
        lower = max(qsum / (amps[0] + amps[1]), q_lo / amps[0]) ** 2
        upper = (q_hi / amps[0]) ** 2
    else:
        lower = max(qsum / (amps[i] + amps[i + 1]), q_lo / amps[i]) ** 2
        upper = min(qsum / (amps[i] + amps[i - 1]), q_hi / amps[i]) ** 2
    if lower >= upper:
        return DecisionRegion(lower, lower, y, i)
    return DecisionRegion(lower, upper, y, i)


def _signed_bin(q, y):
    """(lo, hi) amplitude interval of signed output y."""
    ay = abs(int(y))
    lo, hi = q.boundary(ay - 1), q.boundary(ay)
    if y > 0:
        return lo, hi
    return -hi, -lo


def ml_detect_simo(c, q, h, y, sigma2):
    """Product-likelihood ML detection from N_r quantized observations.

    Works in the log domain with a per-factor floor; a symbol whose every
    factor underflows loses to any symbol with a finite factor.
    """
    h = np.asarray(h, dtype=float)
    y = np.asarray(y, dtype=int)
    if h.shape != y.shape:
        raise ValueError("h and y must have equal length")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    s = math.sqrt(sigma2 / 2.0)
    half = c.half_size
    amps = np.asarray(c.amplitudes)
    symbols = np.concatenate([-amps[::-1], amps])  # ascending
    ids = np.concatenate([-np.arange(half, 0, -1), np.arange(1, half + 1)])

    best_id, best_ll = None, -math.inf
    for sym, sid in zip(symbols, ids):
        ll = 0.0
        for hn, yn in zip(h, y):
            lo, hi = _signed_bin(q, yn)
            a, b = (lo - hn * sym) / s, (hi - hn * sym) / s
            # mirror bins left of the mean so both tails stay small
            # (Q(a) - Q(b) cancels catastrophically when both are near 1)
            if b <= 0.0:
                a, b = -b, -a
            p = float(q_func(a) - q_func(b))
            ll += max(math.log(p), LOG_FLOOR) if p > 0.0 else LOG_FLOOR
        if ll > best_ll:
            best_id, best_ll = int(sid), ll
    return best_id
