"""Minimum-SEP design of quantizers and constellations.

Multi-start Nelder-Mead over an unconstrained parameterization: ordered
boundaries (and amplitudes) are cumulative sums of softplus increments, and
unit-energy constellations are renormalized inside the objective, so every
candidate the simplex visits is feasible.
"""
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as sciopt
from scipy.stats import qmc

from .sep import sep_closed_form, sep_noiseless, sep_quadrature
from .system import (
    Constellation,
    GeometricConstellation,
    Quantizer,
    UniformQuantizer,
    symbol_energy,
)

__all__ = [
    "DesignProblem",
    "DesignResult",
    "optimize",
    "check_prop2",
    "lemma7_rho_star",
    "xg_design",
    "problem_to_json",
    "problem_from_json",
    "result_to_json",
    "result_from_json",
]

VARIABLE_KINDS = ("quantizer_only", "uniform_step_only", "joint_nonuniform", "joint_uniform")

# fixed-size start schedule so that best-of-n is monotone in n for a seed
_SCHEDULE_SIZE = 64


@dataclass(frozen=True)
class DesignProblem:
    channel: object
    M: int
    bits: int
    variables: str
    snr: float = None  # linear; None means noiseless design
    constellation: Constellation = None  # fixed constellation for *_only kinds
    unit_energy: bool = True
    n_starts: int = 16
    seed: int = 0
    max_iter: int = 2000
    init_quantizer: Quantizer = None
    init_constellation: Constellation = None

    def __post_init__(self):
        if self.variables not in VARIABLE_KINDS:
            raise ValueError(f"unknown variables kind {self.variables!r}")
        if self.variables in ("quantizer_only", "uniform_step_only"):
            if self.constellation is None:
                raise ValueError("fixed constellation required for this kind")
        if self.snr is not None and self.snr <= 0:
            raise ValueError("snr must be positive (or None for noiseless)")

    @property
    def K(self):
        return 2 ** (self.bits - 1) - 1

    @property
    def n_boundary_vars(self):
        return 1 if self.variables in ("uniform_step_only", "joint_uniform") else self.K

    @property
    def n_amp_vars(self):
        return self.M // 2 if self.variables.startswith("joint") else 0

    @property
    def dim(self):
        return self.n_boundary_vars + self.n_amp_vars


@dataclass(frozen=True)
class DesignResult:
    quantizer: Quantizer
    constellation: Constellation
    sep: float
    starts_used: int
    converged: bool


def _softplus(t):
    return np.logaddexp(0.0, t)


def _softplus_inv(d):
    d = np.asarray(d, dtype=float)
    # log(expm1(d)), stable for both tails
    return np.where(d > 30.0, d, np.log(np.expm1(np.minimum(d, 30.0))))


def _decode(p, theta):
    """Unconstrained vector -> (Quantizer, Constellation)."""
    nb = p.n_boundary_vars
    if p.variables in ("uniform_step_only", "joint_uniform"):
        step = float(_softplus(theta[0]))
        quant = UniformQuantizer(step, p.bits).materialize()
    else:
        inc = _softplus(theta[:nb])
        quant = Quantizer(tuple(np.cumsum(inc)), p.bits)
    if p.n_amp_vars:
        inc = _softplus(theta[nb:])
        amps = np.cumsum(inc)
        if amps[0] <= 0.0 or not np.all(np.isfinite(amps)):
            raise ValueError("degenerate amplitude vector")
        if p.unit_energy:
            amps = amps / math.sqrt(float(np.sum(amps**2)))
        cons = Constellation(tuple(amps))
    else:
        cons = p.constellation
    return quant, cons


def _encode(p, quant, cons):
    """(Quantizer, Constellation) -> unconstrained vector."""
    parts = []
    if p.variables in ("uniform_step_only", "joint_uniform"):
        parts.append(_softplus_inv([quant.positive_boundaries[0]]))
    else:
        q = np.asarray(quant.positive_boundaries)
        parts.append(_softplus_inv(np.diff(np.concatenate([[0.0], q]))))
    if p.n_amp_vars:
        a = np.asarray(cons.amplitudes)
        parts.append(_softplus_inv(np.diff(np.concatenate([[0.0], a]))))
    return np.concatenate(parts)


def _evaluate(p, quant, cons):
    if p.snr is None:
        return sep_noiseless(cons, quant, p.channel).value
    if p.channel.integer_m:
        return sep_closed_form(cons, quant, p.channel, p.snr).value
    return sep_quadrature(cons, quant, p.channel, p.snr).value


def _objective(p):
    def f(theta):
        try:
            quant, cons = _decode(p, theta)
        except (ValueError, FloatingPointError):
            return 1.0
        try:
            return _evaluate(p, quant, cons)
        except (ArithmeticError, ValueError):
            return 1.0

    return f


def _start_points(p):
    """Deterministic start schedule; the first n entries are the same for
    any requested start count with a fixed seed."""
    if p.constellation is not None:
        es = symbol_energy(p.constellation)
    else:
        es = 2.0 / p.M if p.unit_energy else 1.0
    scale = math.sqrt(p.channel.omega * es)
    sampler = qmc.LatinHypercube(d=p.dim, seed=p.seed)
    unit = sampler.random(_SCHEDULE_SIZE)
    starts = []
    nb = p.n_boundary_vars
    for row in unit:
        qvals = np.sort(0.1 * scale + row[:nb] * (3.0 - 0.1) * scale)
        if p.variables in ("uniform_step_only", "joint_uniform"):
            quant = UniformQuantizer(float(qvals[0]), p.bits).materialize()
        else:
            qvals = _force_increasing(qvals)
            quant = Quantizer(tuple(qvals), p.bits)
        if p.n_amp_vars:
            avals = np.sort(0.1 + row[nb:] * 2.9)
            avals = _force_increasing(avals)
            if p.unit_energy:
                avals = avals / math.sqrt(float(np.sum(avals**2)))
            cons = Constellation(tuple(avals))
        else:
            cons = p.constellation
        starts.append(_encode(p, quant, cons))
    return starts


def _force_increasing(v, eps=1e-6):
    out = np.array(v, dtype=float)
    for i in range(1, len(out)):
        if out[i] <= out[i - 1]:
            out[i] = out[i - 1] * (1.0 + eps) + eps
    return out


def optimize(p):
    """Best-of-starts Nelder-Mead minimization of the SEP objective."""
    f = _objective(p)
    starts = []
    if p.init_quantizer is not None:
        cons0 = p.init_constellation or p.constellation
        starts.append(_encode(p, p.init_quantizer, cons0))
    starts.extend(_start_points(p))
    starts = starts[: p.n_starts + (1 if p.init_quantizer is not None else 0)]

    best = None
    any_converged = False
    for theta0 in starts:
        res = sciopt.minimize(
            f,
            theta0,
            method="Nelder-Mead",
            options={
                "xatol": 1e-10,
                "fatol": 1e-14,
                "maxiter": p.max_iter * max(1, p.dim),
                "maxfev": p.max_iter * max(1, p.dim) * 2,
            },
        )
        any_converged = any_converged or bool(res.success)
        if best is None or res.fun < best.fun:
            best = res
    quant, cons = _decode(p, best.x)
    return DesignResult(
        quantizer=quant,
        constellation=cons,
        sep=_evaluate(p, quant, cons),
        starts_used=len(starts),
        converged=any_converged,
    )


def check_prop2(result, cg):
    """Adjacent-boundary-ratio diagnostics against the geometric ratio.

    Returns (ratios, max_abs_deviation); vacuous (empty, 0.0) for a single
    boundary.
    """
    q = np.asarray(result.quantizer.positive_boundaries)
    if len(q) < 2:
        return (), 0.0
    ratios = tuple(q[:-1] / q[1:])
    dev = float(np.max(np.abs(np.asarray(ratios) - cg.rho)))
    return ratios, dev


def lemma7_rho_star(A, B, C, sigma):
    """Minimizer of (sigma^2 / rho^B)^C + rho^A over rho > 0."""
    if min(A, B, C, sigma) <= 0:
        raise ValueError("A, B, C, sigma must be positive")
    if C >= A + B * C:
        raise ValueError("requires C < A + B*C")
    return (B * C / A) ** (1.0 / (A + B * C)) * (sigma**2) ** (C / (A + B * C))


def xg_design(rho, q1, M, bits):
    """Geometric constellation with matching-ratio boundaries q_y = q1 / rho^(y-1)."""
    cg = GeometricConstellation(rho, M)
    k = 2 ** (bits - 1) - 1
    bounds = tuple(q1 / rho ** (y - 1) for y in range(1, k + 1))
    return cg.materialize(), Quantizer(bounds, bits)


# -- JSON round trip --

def problem_to_json(p):
    d = {
        "m": p.channel.m,
        "omega": p.channel.omega,
        "M": p.M,
        "bits": p.bits,
        "variables": p.variables,
        "snr": p.snr,
        "amplitudes": list(p.constellation.amplitudes) if p.constellation else None,
        "unit_energy": p.unit_energy,
        "n_starts": p.n_starts,
        "seed": p.seed,
    }
    return json.dumps(d)


def problem_from_json(text):
    from .system import ChannelModel

    d = json.loads(text)
    cons = Constellation(tuple(d["amplitudes"])) if d.get("amplitudes") else None
    return DesignProblem(
        channel=ChannelModel(d["m"], d["omega"]),
        M=d["M"],
        bits=d["bits"],
        variables=d["variables"],
        snr=d["snr"],
        constellation=cons,
        unit_energy=d["unit_energy"],
        n_starts=d["n_starts"],
        seed=d["seed"],
    )


def result_to_json(r):
    return json.dumps(
        {
            "boundaries": list(r.quantizer.positive_boundaries),
            "bits": r.quantizer.bits,
            "amplitudes": list(r.constellation.amplitudes),
            "sep": r.sep,
            "starts_used": r.starts_used,
            "converged": r.converged,
        }
    )


def result_from_json(text):
    d = json.loads(text)
    return DesignResult(
        quantizer=Quantizer(tuple(d["boundaries"]), d["bits"]),
        constellation=Constellation(tuple(d["amplitudes"])),
        sep=d["sep"],
        starts_used=d["starts_used"],
        converged=d["converged"],
    )
