"""Data model: PAM constellations, symmetric quantizers, fading channel.

All amplitudes and boundaries are dimensionless and stored raw; unit-energy
normalization is always an explicit step, never implicit. Types are frozen
dataclasses and safe to share between workers.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Constellation",
    "GeometricConstellation",
    "Quantizer",
    "UniformQuantizer",
    "ChannelModel",
    "equidistant_constellation",
    "symbol_energy",
    "snr_of",
    "snr_db_of",
    "sigma2_from_snr",
    "per_symbol_snr",
    "sample_fading",
    "to_json",
    "from_json",
]


def _as_tuple(values):
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class Constellation:
    """Positive half of a symmetric M-PAM constellation {+-rho_i}.

    ``amplitudes`` holds the M/2 positive amplitudes in strictly increasing
    order; the full constellation is the union with its mirror image.
    """

    amplitudes: tuple = field()

    def __post_init__(self):
        amps = _as_tuple(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if len(amps) < 2:
            raise ValueError("need at least 2 positive amplitudes (M >= 4)")
        m = 2 * len(amps)
        if m & (m - 1):
            raise ValueError("M = 2 * len(amplitudes) must be a power of 2")
        if amps[0] <= 0:
            raise ValueError("amplitudes must be positive")
        if any(a >= b for a, b in zip(amps, amps[1:])) is True:
            raise ValueError("amplitudes must be strictly increasing")
        for a, b in zip(amps, amps[1:]):
            if a >= b:
                raise ValueError("amplitudes must be strictly increasing")

    @property
    def M(self):
        return 2 * len(self.amplitudes)

    @property
    def half_size(self):
        return len(self.amplitudes)

    def signed_symbols(self):
        """Full signed constellation, ascending."""
        pos = np.asarray(self.amplitudes)
        return np.concatenate([-pos[::-1], pos])

    def normalized(self):
        """Rescaled copy with unit total energy (sum of rho_i^2 = 1)."""
        amps = np.asarray(self.amplitudes)
        return Constellation(tuple(amps / math.sqrt(float(np.sum(amps**2)))))


def equidistant_constellation(M, scale=1.0):
    """Standard equidistant M-PAM: amplitudes {(2i+1) * scale}."""
    if M < 4 or M & (M - 1):
        raise ValueError("M must be a power of 2, M >= 4")
    return Constellation(tuple(scale * (2 * i + 1) for i in range(M // 2)))


@dataclass(frozen=True)
class GeometricConstellation:
    """Geometric constellation with amplitude ratio rho in (0,1).

    Amplitudes are C * rho^(M/2 - i) with C chosen so the total energy of the
    positive half is 1 (C^2 * sum_{i=1}^{M/2} rho^(2i) = 1).
    """

    rho: float
    M: int

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0):
            raise ValueError("rho must lie in (0, 1)")
        if self.M < 4 or self.M & (self.M - 1):
            raise ValueError("M must be a power of 2, M >= 4")

    @property
    def C(self):
        powers = self.rho ** (2 * np.arange(1, self.M // 2 + 1))
        return 1.0 / math.sqrt(float(np.sum(powers)))

    def materialize(self):
        c = self.C
        amps = [c * self.rho ** (self.M // 2 - i) for i in range(self.M // 2)]
        return Constellation(tuple(amps))


@dataclass(frozen=True)
class Quantizer:
    """Symmetric b-bit quantizer given by its K = 2^(b-1) - 1 positive
    finite boundaries; q_0 = 0 and q_(K+1) = +inf are implicit.

    Output indices are signed: y in {-(K+1), ..., -1, 1, ..., K+1}.
    """

    positive_boundaries: tuple
    bits: int

    def __post_init__(self):
        bounds = _as_tuple(self.positive_boundaries)
        object.__setattr__(self, "positive_boundaries", bounds)
        if self.bits < 2:
            raise ValueError("bits must be >= 2")
        k = 2 ** (self.bits - 1) - 1
        if len(bounds) != k:
            raise ValueError(f"expected {k} boundaries for {self.bits} bits")
        if bounds[0] <= 0:
            raise ValueError("boundaries must be positive")
        for a, b in zip(bounds, bounds[1:]):
            if a >= b:
                raise ValueError("boundaries must be strictly increasing")

    @property
    def K(self):
        return len(self.positive_boundaries)

    def boundary(self, y):
        """q_y for y in [0 .. K+1], with q_0 = 0 and q_(K+1) = +inf."""
        if y == 0:
            return 0.0
        if y == self.K + 1:
            return math.inf
        return self.positive_boundaries[y - 1]


@dataclass(frozen=True)
class UniformQuantizer:
    """Uniform symmetric quantizer with step delta: q_y = y * delta."""

    step: float
    bits: int

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("step must be positive")

    def materialize(self):
        k = 2 ** (self.bits - 1) - 1
        return Quantizer(tuple(self.step * y for y in range(1, k + 1)), self.bits)


@dataclass(frozen=True)
class ChannelModel:
    """Nakagami-m amplitude fading: |h| ~ Nakagami(m, omega), so
    Z = |h|^2 ~ Gamma(m, omega/m). sigma2 is the complex-noise variance;
    the in-phase branch seen by the ADC has variance sigma2 / 2.
    """

    m: float
    omega: float = 1.0
    sigma2: float = None

    def __post_init__(self):
        if self.m < 0.5:
            raise ValueError("Nakagami shape m must be >= 1/2")
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.sigma2 is not None and self.sigma2 < 0:
            raise ValueError("sigma2 must be nonnegative")

    @property
    def integer_m(self):
        return float(self.m).is_integer()


def symbol_energy(c):
    """Average symbol energy E_s = (2/M) * sum(rho_i^2)."""
    amps = np.asarray(c.amplitudes)
    return 2.0 * float(np.sum(amps**2)) / c.M


def snr_of(c, ch):
    """Linear SNR = E_s / sigma^2."""
    if ch.sigma2 is None or ch.sigma2 <= 0:
        raise ValueError("channel must carry a positive sigma2")
    return symbol_energy(c) / ch.sigma2


def snr_db_of(c, ch):
    return 10.0 * math.log10(snr_of(c, ch))


def sigma2_from_snr(c, snr_linear):
    """Noise variance realizing a given linear SNR: sigma^2 = E_s / SNR."""
    if snr_linear <= 0:
        raise ValueError("SNR must be positive")
    return symbol_energy(c) / snr_linear


def per_symbol_snr(c, i, snr_linear):
    """Per-symbol SNR_i = 2 rho_i^2 SNR / E_s^2."""
    if not 0 <= i < c.half_size:
        raise IndexError("symbol index out of range")
    es = symbol_energy(c)
    return 2.0 * c.amplitudes[i] ** 2 * snr_linear / es**2


def sample_fading(ch, rng, size=None):
    """Draw |h| samples: sqrt of Gamma(m, omega/m) variates.

    ``rng`` is a numpy Generator (its standard_gamma implements the
    Marsaglia-Tsang method, valid for any m >= 1/2).
    """
    z = rng.standard_gamma(ch.m, size=size) * (ch.omega / ch.m)
    return np.sqrt(z)


# -- JSON serialization (field names fixed: amplitudes, boundaries, bits,
#    m, omega, sigma2) --

def to_json(obj):
    if isinstance(obj, Constellation):
        d = {"amplitudes": list(obj.amplitudes)}
    elif isinstance(obj, Quantizer):
        d = {"boundaries": list(obj.positive_boundaries), "bits": obj.bits}
    elif isinstance(obj, ChannelModel):
        d = {"m": obj.m, "omega": obj.omega, "sigma2": obj.sigma2}
    else:
        raise TypeError(f"unsupported type {type(obj).__name__}")
    return json.dumps(d)


def from_json(text):
    d = json.loads(text) if isinstance(text, str) else dict(text)
    keys = set(d)
    if keys == {"amplitudes"}:
        return Constellation(tuple(d["amplitudes"]))
    if keys == {"boundaries", "bits"}:
        return Quantizer(tuple(d["boundaries"]), int(d["bits"]))
    if keys == {"m", "omega", "sigma2"}:
        return ChannelModel(d["m"], d["omega"], d["sigma2"])
    raise ValueError(f"unrecognized object fields: {sorted(keys)}")
