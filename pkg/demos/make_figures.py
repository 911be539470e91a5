#!/usr/bin/env python3
"""Reproduce the curve data behind each shipped figure recipe.

Usage:
    python3 demos/make_figures.py figures/fig_sep_vs_c.json [more...]
    python3 demos/make_figures.py --all

Each recipe is a JSON file under figures/ with a "kind" field selecting
one of the generators below. Output CSVs land in figures/out/.
"""
import argparse
import json
import math
import pathlib
import sys

import numpy as np

from pamq import (
    ChannelModel,
    Constellation,
    DesignProblem,
    Quantizer,
    SimSpec,
    UniformQuantizer,
    default_alpha,
    dvo_experiment,
    optimal_floor_log2,
    optimize,
    sep_aqnm,
    sep_closed_form,
    sep_quadrature,
    simulate,
)

ROOT = pathlib.Path(__file__).resolve().parents[1]
OUT = ROOT / "figures" / "out"


def _grid(spec):
    if isinstance(spec, str):
        start, step, stop = (float(p) for p in spec.split(":"))
        return list(np.arange(start, stop + 1e-9, step))
    return list(np.linspace(spec["start"], spec["stop"], spec["points"]))


def _cons(text):
    return Constellation(tuple(float(p) for p in text.split(",")))


def _write(name, header, rows):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / f"{name}.csv"
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(
                v if isinstance(v, str) else f"{v:.12e}" for v in row) + "\n")
    print(f"wrote {path} ({len(rows)} rows)")


def boundary_sweep(cfg):
    cons = _cons(cfg["constellation"])
    rows = []
    for omega in cfg["omega_list"]:
        ch = ChannelModel(cfg["m"], omega)
        snr = 10.0 ** (cfg["omega_snr_db"] / 10.0) / omega
        for q1 in _grid(cfg["q1_grid"]):
            quant = Quantizer((q1 * math.sqrt(omega),), cfg["bits"])
            sep = sep_closed_form(cons, quant, ch, snr).value
            rows.append((omega, q1, sep))
    _write(cfg["figure"], ["omega", "q1_over_sqrt_omega", "sep"], rows)


def sep_vs_snr_by_m(cfg):
    cons = _cons(cfg["constellation"]).normalized()
    rows = []
    for m in cfg["m_list"]:
        ch = ChannelModel(m, cfg["omega"])
        init = None
        for sdb in _grid(cfg["snr_db"]):
            snr = 10.0 ** (sdb / 10.0)
            p = DesignProblem(
                channel=ch, M=cons.M, bits=cfg["bits"],
                variables="quantizer_only", snr=snr, constellation=cons,
                n_starts=6, seed=cfg["seed"], init_quantizer=init,
            )
            r = optimize(p)
            init = r.quantizer
            rows.append((m, sdb, r.sep, "closed_form"))
        spec = SimSpec(
            constellation=cons, quantizer=init, channel=ch,
            snr_db=tuple(_grid(cfg["snr_db"])[::5]),
            trials=cfg["mc_trials"], seed=cfg["seed"],
        )
        for est in simulate(spec):
            rows.append((m, est.snr_db, est.sep_hat, "monte_carlo"))
    _write(cfg["figure"], ["m", "snr_db", "sep", "method"], rows)


def exact_vs_aqnm_by_bits(cfg):
    cons = _cons(cfg["constellation"]).normalized()
    ch = ChannelModel(cfg["m"], cfg["omega"])
    rows = []
    for bits in cfg["bits_list"]:
        init = None
        for sdb in _grid(cfg["snr_db"]):
            snr = 10.0 ** (sdb / 10.0)
            p = DesignProblem(
                channel=ch, M=cons.M, bits=bits, variables="quantizer_only",
                snr=snr, constellation=cons, n_starts=6, seed=cfg["seed"],
                init_quantizer=init,
            )
            r = optimize(p)
            init = r.quantizer
            aq = sep_aqnm(cons, snr, default_alpha(bits)).value
            rows.append((bits, sdb, r.sep, aq))
    _write(cfg["figure"], ["bits", "snr_db", "sep_exact", "sep_aqnm"], rows)


def floor_vs_bits(cfg):
    lo, hi = cfg["bits_range"]
    rows = []
    for m in cfg["m_list"]:
        for kind in cfg["quantizer_kinds"]:
            for b in range(lo, hi + 1):
                val = optimal_floor_log2(m, b, kind, cfg["omega"])
                rows.append((m, kind, b, val))
    _write(cfg["figure"], ["m", "quantizer", "bits", "log2_floor"], rows)


def floor_vs_shape(cfg):
    rows = []
    for bits in cfg["bits_list"]:
        for m in _grid(cfg["m_grid"]):
            val = optimal_floor_log2(m, bits, cfg["quantizer_kind"], cfg["omega"])
            rows.append((bits, m, val))
    _write(cfg["figure"], ["bits", "m", "log2_floor"], rows)


def diversity_order(cfg):
    lo, hi = (float(p) for p in cfg["window"].split(":"))
    grid = list(np.arange(lo, hi + 1e-9, 2.5))
    rows = []
    for case in cfg["cases"]:
        est, theory = dvo_experiment(
            case["m"], case["bits"], case["mod"], case["quantizer_kind"],
            1, grid, seed=cfg["seed"],
        )
        rows.append((
            case["m"], case["bits"], case["quantizer_kind"],
            est.slope, float(theory), est.r2,
        ))
        print(f"  {case}: slope {est.slope:.3f} vs theory {float(theory):.3f}")
    _write(cfg["figure"], ["m", "bits", "quantizer", "slope", "theory", "r2"], rows)


def simo_mc(cfg):
    ch = ChannelModel(cfg["m"], 1.0)
    rows = []
    for n_r in cfg["antennas_list"]:
        init_c, init_q = None, None
        for sdb in _grid(cfg["snr_db"]):
            snr = 10.0 ** (sdb / 10.0)
            p = DesignProblem(
                channel=ch, M=cfg["mod"], bits=cfg["bits"],
                variables="joint_nonuniform", snr=snr, n_starts=6,
                seed=cfg["seed"], init_quantizer=init_q,
                init_constellation=init_c,
            )
            r = optimize(p)
            init_c, init_q = r.constellation, r.quantizer
            spec = SimSpec(
                constellation=r.constellation, quantizer=r.quantizer,
                channel=ch, snr_db=(sdb,), trials=cfg["trials"],
                n_r=n_r, seed=cfg["seed"],
            )
            est = simulate(spec)[0]
            rows.append((n_r, sdb, est.sep_hat, est.stderr))
    _write(cfg["figure"], ["antennas", "snr_db", "sep_hat", "stderr"], rows)


KINDS = {
    "boundary_sweep": boundary_sweep,
    "sep_vs_snr_by_m": sep_vs_snr_by_m,
    "exact_vs_aqnm_by_bits": exact_vs_aqnm_by_bits,
    "floor_vs_bits": floor_vs_bits,
    "floor_vs_shape": floor_vs_shape,
    "diversity_order": diversity_order,
    "simo_mc": simo_mc,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("recipes", nargs="*")
    ap.add_argument("--all", action="store_true")
    args = ap.parse_args()
    paths = [pathlib.Path(p) for p in args.recipes]
    if args.all:
        paths = sorted((ROOT / "figures").glob("fig_*.json"))
    if not paths:
        ap.error("give recipe paths or --all")
    for path in paths:
        cfg = json.loads(path.read_text())
        print(f"{cfg['figure']}: {cfg['description']}")
        KINDS[cfg["kind"]](cfg)


if __name__ == "__main__":
    sys.exit(main())
