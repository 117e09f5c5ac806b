"""Batch command-line front end.

Commands: invert, forward, roundtrip, specfun-check.  Inputs are JSON
documents, outputs are machine-readable JSON/CSV files written to an
output directory.  Numeric output uses 17 significant digits so reruns
are byte-comparable.  Exit codes: 0 success, 2 parse error, 3 solver
non-convergence, 4 numerical domain error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .domain import (PhaseShiftEntry, PhaseShiftSet, PotentialCurve, RadialGrid,
                     combine_spin_orbit, default_grid)
from .errors import ConvergenceError, CtinvError, NumericalDomainError, ParseError
from .forward import integrate_radial
from .nlsolve import SolveOptions
from .pipeline import MODES, invert

logger = logging.getLogger(__name__)

_FMT = "{:.16e}"  # 17 significant digits


@dataclass(frozen=True)
class JobConfig:
    command: str
    input_path: Path
    output_dir: Path
    mode: str | None = None
    grid_x_max: float | None = None
    grid_n: int = 2000
    tol: float = 1e-12
    seed: int = 0
    spin_orbit: bool = False
    verify_x_max: float | None = None


# ---------------------------------------------------------------- file formats

def _num(value, where):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParseError(f"expected a number at {where}, got {value!r}")


def _shift_pair(obj, where):
    """A phase shift in the input may be a plain number (eta = 1) or an
    object {"delta": ..., "eta": ...}."""
    if isinstance(obj, dict):
        delta = _num(obj.get("delta"), where + ".delta")
        eta = _num(obj.get("eta", 1.0), where + ".eta")
        return delta, eta
    return _num(obj, where), 1.0


def read_phase_shift_file(path, apply_spin_orbit=False):
    """Parse the phase-shift input document."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read phase-shift file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("phase-shift document must be a JSON object")
    for key in ("energy", "k"):
        if key not in doc:
            raise ParseError(f"phase-shift document lacks {key!r}")
    energy = _num(doc["energy"], "energy")
    k = _num(doc["k"], "k")
    entries = []
    for i, row in enumerate(doc.get("phase_shifts", [])):
        where = f"phase_shifts[{i}]"
        if not isinstance(row, dict) or "l" not in row:
            raise ParseError(f"{where} must be an object with an 'l' field")
        delta, eta = _shift_pair({"delta": row.get("delta"),
                                  "eta": row.get("eta", 1.0)}, where)
        entries.append(PhaseShiftEntry(l=int(row["l"]), delta=delta, eta=eta))
    if apply_spin_orbit:
        block = doc.get("spin_orbit")
        if not block:
            raise ParseError("--spin-orbit given but the document has no "
                             "'spin_orbit' block")
        for i, row in enumerate(block):
            where = f"spin_orbit[{i}]"
            if not isinstance(row, dict) or "l" not in row:
                raise ParseError(f"{where} must be an object with an 'l' field")
            l = int(row["l"])
            dp, ep = _shift_pair(row.get("delta_plus"), where + ".delta_plus")
            dm, em = _shift_pair(row.get("delta_minus"), where + ".delta_minus")
            combined = combine_spin_orbit(
                l,
                complex(dp, -0.5 * np.log(ep)),
                complex(dm, -0.5 * np.log(em)),
            )
            eta = float(np.exp(-2.0 * combined.imag))
            if eta > 1.0:
                raise ParseError(f"{where}: combined elasticity {eta} exceeds 1")
            entries.append(PhaseShiftEntry(l=l, delta=float(combined.real), eta=eta))
    if not entries:
        raise ParseError("no phase shifts in the document")
    try:
        return PhaseShiftSet(energy=energy, k=k, entries=tuple(entries))
    except NumericalDomainError as exc:
        raise ParseError(str(exc)) from exc


def write_phase_shift_file(path, problem, units=""):
    doc = {
        "energy": problem.energy,
        "k": problem.k,
        "units": units,
        "phase_shifts": [
            {"l": e.l, "delta": e.delta, "eta": e.eta} for e in problem.entries
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def write_tset_file(path, tset):
    doc = {
        "parity_tag": tset.parity_tag,
        "members": [{"re": m.real, "im": m.imag} for m in tset.members],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def read_tset_file(path):
    from .domain import TSet
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read T-set file {path}: {exc}") from exc
    members = [complex(m["re"], m["im"]) for m in doc["members"]]
    return TSet(members=tuple(members), parity_tag=doc["parity_tag"])


def write_potential_csv(path, curve, units=""):
    lines = [
        f"# energy = {_FMT.format(curve.energy)}",
        f"# k = {_FMT.format(curve.k)}",
        f"# units = {units}",
        "r,x,re_V,im_V,re_q,im_q",
    ]
    v = curve.v
    for i, x in enumerate(curve.x):
        lines.append(",".join(_FMT.format(val) for val in
                              (x / curve.k, x, v[i].real, v[i].imag,
                               curve.q[i].real, curve.q[i].imag)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_potential_csv(path):
    try:
        text = Path(path).read_text().strip().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read potential CSV {path}: {exc}") from exc
    meta = {}
    rows = []
    for line in text:
        if line.startswith("#"):
            if "=" in line:
                key, _, val = line[1:].partition("=")
                meta[key.strip()] = val.strip()
        elif line and not line.startswith("r,"):
            rows.append([float(tok) for tok in line.split(",")])
    if "energy" not in meta or "k" not in meta:
        raise ParseError(f"potential CSV {path} lacks energy/k metadata lines")
    data = np.asarray(rows)
    if data.ndim != 2 or data.shape[1] != 6:
        raise ParseError(f"potential CSV {path} must have 6 columns")
    x = data[:, 1]
    step = np.diff(x)
    if np.max(np.abs(step - step[0])) > 1e-9 * step[0]:
        raise ParseError("potential CSV grid is not uniform")
    grid = RadialGrid(x_min=float(x[0]), x_max=float(x[-1]), n=len(x))
    q = data[:, 4] + 1j * data[:, 5]
    return PotentialCurve(grid=grid, q=q, energy=float(meta["energy"]),
                          k=float(meta["k"]))


def write_report_json(path, report, potential_csv_name):
    curve = report.potential
    v0 = curve.v_at_origin()
    doc = {
        "input": {
            "energy": report.input.energy,
            "k": report.input.k,
            "phase_shifts": [
                {"l": e.l, "delta": e.delta, "eta": e.eta}
                for e in report.input.entries
            ],
        },
        "tset": {
            "parity_tag": report.tset.parity_tag,
            "members": [{"re": m.real, "im": m.imag} for m in report.tset.members],
        },
        "residual_norm": report.residual_norm,
        "potential_csv": potential_csv_name,
        "v_at_origin": {"re": v0.real, "im": v0.imag},
        "roundtrip": [
            {
                "l": e.l,
                "delta_orig": e.delta_orig,
                "eta_orig": e.eta_orig,
                "delta_recomputed": e.delta_recomputed,
                "eta_recomputed": e.eta_recomputed,
                "delta_diff": e.delta_diff,
                "eta_diff": e.eta_diff,
            }
            for e in report.roundtrip
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def _analytic_gauss_curve(spec, energy, k, grid):
    depth = _num(spec.get("depth"), "potential.depth")
    width = _num(spec.get("width"), "potential.width")
    x = grid.points
    r = x / k
    q = (depth / energy) * np.exp(-width * r ** 2) + 0j
    return PotentialCurve(grid=grid, q=q, energy=energy, k=k)


def read_forward_config(path, grid_x_max=None, grid_n=2000):
    """Forward-run document: energy, k, a potential spec, and l values."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read forward config {path}: {exc}") from exc
    for key in ("energy", "k", "potential"):
        if key not in doc:
            raise ParseError(f"forward config lacks {key!r}")
    energy = _num(doc["energy"], "energy")
    k = _num(doc["k"], "k")
    if "l_values" in doc:
        l_values = [int(l) for l in doc["l_values"]]
    else:
        l_values = list(range(int(doc.get("l_max", 0)) + 1))
    spec = doc["potential"]
    form = spec.get("form")
    if form == "gauss":
        lmax = max(l_values) if l_values else 0
        grid = default_grid((lmax,), x_max=grid_x_max, n=grid_n)
        curve = _analytic_gauss_curve(spec, energy, k, grid)
    elif form == "tabulated":
        curve = read_potential_csv(Path(path).parent / spec["path"])
    else:
        raise ParseError(f"unknown potential form {form!r}")
    return curve, l_values, doc.get("units", "")


# ------------------------------------------------------------------- commands

def _cmd_invert(cfg, want_roundtrip):
    problem = read_phase_shift_file(cfg.input_path, apply_spin_orbit=cfg.spin_orbit)
    grid = default_grid(problem.s_values, x_max=cfg.grid_x_max, n=cfg.grid_n)
    opts = SolveOptions(tol_residual=cfg.tol, seed=cfg.seed)
    report = invert(problem, mode=cfg.mode, grid=grid, opts=opts,
                    verify=want_roundtrip, verify_x_max=cfg.verify_x_max)
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    write_tset_file(out / "tset.json", report.tset)
    write_potential_csv(out / "potential.csv", report.potential)
    write_report_json(out / "report.json", report, "potential.csv")
    for e in report.roundtrip:
        print(f"l={e.l}: Delta={e.delta_diff:.6f} Xi={e.eta_diff:.6f}")
    print(f"wrote {out / 'tset.json'}, {out / 'potential.csv'}, {out / 'report.json'}")
    return 0


def _cmd_forward(cfg):
    curve, l_values, units = read_forward_config(
        cfg.input_path, grid_x_max=cfg.grid_x_max, grid_n=cfg.grid_n)
    entries = []
    for l in l_values:
        sol = integrate_radial(curve, l)
        entries.append(PhaseShiftEntry(l=l, delta=sol.delta, eta=min(sol.eta, 1.0)))
    problem = PhaseShiftSet(energy=curve.energy, k=curve.k, entries=tuple(entries))
    out = cfg.output_dir
    out.mkdir(parents=True, exist_ok=True)
    write_phase_shift_file(out / "phase_shifts.json", problem, units=units)
    for e in entries:
        print(f"l={e.l}: delta={e.delta:+.6f} eta={e.eta:.6f}")
    print(f"wrote {out / 'phase_shifts.json'}")
    return 0


def _cmd_specfun_check():
    import warnings
    from .specfun import riccati_bessel

    orders = [-0.5, -0.0893, 0.5, 0.9392, 3.3, 7.0001, 10.0001,
              complex(-0.581, -0.085)]
    xs = np.logspace(-3, np.log10(60.0), 200)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for nu in orders:
            p = riccati_bessel(nu, xs)
            w = p.u * p.dv - p.du * p.v
            worst = max(worst, float(np.max(np.abs(w + 1.0))))
    print(f"max |Wronskian + 1| over the check set: {worst:.3e}")
    if worst > 1e-10:
        print("FAIL: beyond 1e-10")
        return 4
    print("PASS")
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="ctinv",
        description="Fixed-energy phase-shift inversion and forward verification")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_mode):
        sp.add_argument("--input", required=True, help="input JSON document")
        sp.add_argument("--output-dir", required=True, help="directory for outputs")
        if need_mode:
            sp.add_argument("--mode", required=True, choices=MODES)
            sp.add_argument("--spin-orbit", action="store_true",
                            help="combine split shifts from the spin_orbit block")
            sp.add_argument("--tol", type=float, default=1e-12)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--verify-xmax", type=float, default=None,
                            help="x extent of the round-trip verification grid")
        sp.add_argument("--grid-xmax", type=float, default=None)
        sp.add_argument("--grid-n", type=int, default=2000)

    common(sub.add_parser("invert", help="phase shifts -> potential"), True)
    common(sub.add_parser("roundtrip",
                          help="invert, then forward-solve and report closure"), True)
    common(sub.add_parser("forward", help="potential -> phase shifts"), False)
    sub.add_parser("specfun-check", help="special-function self test")
    return p


def _config_from_args(args):
    return JobConfig(
        command=args.command,
        input_path=Path(args.input),
        output_dir=Path(args.output_dir),
        mode=getattr(args, "mode", None),
        grid_x_max=args.grid_xmax,
        grid_n=args.grid_n,
        tol=getattr(args, "tol", 1e-12),
        seed=getattr(args, "seed", 0),
        spin_orbit=getattr(args, "spin_orbit", False),
        verify_x_max=getattr(args, "verify_xmax", None),
    )


def main(argv=None):
    logging.basicConfig(level=os.environ.get("CTINV_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)
    try:
        if args.command == "specfun-check":
            return _cmd_specfun_check()
        cfg = _config_from_args(args)
        if not cfg.input_path.exists():
            raise ParseError(f"input file {cfg.input_path} does not exist")
        if args.command == "invert":
            return _cmd_invert(cfg, want_roundtrip=True)
        if args.command == "roundtrip":
            return _cmd_invert(cfg, want_roundtrip=True)
        if args.command == "forward":
            return _cmd_forward(cfg)
        raise ParseError(f"unknown command {args.command}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NumericalDomainError, CtinvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
