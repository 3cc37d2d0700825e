"""Command-line entry point: simulate / analyze / averaged / sweep.

Scenario configs are flat INI files with one section per concern
([controller], [field], [initial], [sim]); the bundled presets expand to the
same format.  Exit codes: 0 success, 2 config error, 3 numerical divergence
or singular state, 4 degenerate-parameter analysis error.
"""

import argparse
import configparser
import json
import sys
from math import pi
from pathlib import Path

import numpy as np

from .averaging import AveragedState, averaged_rhs, equilibria
from .controller import ControllerParams
from .errors import ConfigError, DegenerateParameterError, Seek3dError, SimulationDiverged, SingularStateError
from .fields import Acoustic, FieldSpec, QuadraticElliptical, QuadraticSpherical, Rosenbrock
from .presets import DEFAULT_T_END, PRESET_NAMES, preset_config
from .simulator import SimConfig, default_dt, run, summary, write_summary
from .stability import corollary_gate, hurwitz_eq1, hurwitz_eq3, stability_report
from .vehicle import VehicleState

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_DEGENERATE = 4

_FIELD_KINDS = {
    "quadratic_spherical": QuadraticSpherical,
    "quadratic_elliptical": QuadraticElliptical,
    "acoustic": Acoustic,
    "rosenbrock": Rosenbrock,
}


def _fmt_vec(v) -> str:
    return " ".join(repr(float(x)) for x in v)


def _parse_vec(s: str):
    return tuple(float(x) for x in s.replace(",", " ").split())


def config_to_ini(config: SimConfig) -> str:
    """Serialize a SimConfig to the flat INI format (byte-stable)."""
    p = config.params
    lines = ["[controller]"]
    for name in ("a", "c_alpha", "c_theta", "b", "h", "V_c", "omega", "R"):
        lines.append(f"{name} = {repr(getattr(p, name))}")
    f = config.field
    lines += ["", "[field]"]
    kind = {v: k for k, v in _FIELD_KINDS.items()}[type(f)]
    lines.append(f"kind = {kind}")
    if isinstance(f, QuadraticSpherical):
        lines.append(f"f_star = {repr(f.f_star)}")
        lines.append(f"q_r = {repr(f.q_r)}")
    elif isinstance(f, QuadraticElliptical):
        lines.append(f"f_star = {repr(f.f_star)}")
        lines.append(f"diag_coeffs = {_fmt_vec(f.diag_coeffs)}")
    lines.append(f"r_star = {_fmt_vec(f.r_star)}")
    lines += ["", "[initial]"]
    lines.append(f"r_c = {_fmt_vec(config.initial.r_c)}")
    lines.append(f"alpha = {repr(float(config.initial.alpha))}")
    lines.append(f"theta = {repr(float(config.initial.theta))}")
    lines += ["", "[sim]"]
    lines.append(f"dt = {repr(config.dt)}")
    lines.append(f"t_end = {repr(config.t_end)}")
    lines.append(f"record_stride = {config.record_stride}")
    return "\n".join(lines) + "\n"


def parse_config(path) -> SimConfig:
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    try:
        c = cp["controller"]
        params = ControllerParams(a=c.getfloat("a"), c_alpha=c.getfloat("c_alpha"),
                                  c_theta=c.getfloat("c_theta"), b=c.getfloat("b"),
                                  h=c.getfloat("h"), V_c=c.getfloat("V_c"),
                                  omega=c.getfloat("omega"), R=c.getfloat("R"))
        fsec = cp["field"]
        kind = fsec.get("kind")
        if kind not in _FIELD_KINDS:
            raise ConfigError(f"field.kind must be one of {sorted(_FIELD_KINDS)}, got {kind!r}")
        r_star = _parse_vec(fsec.get("r_star", "0 0 0"))
        if kind == "quadratic_spherical":
            field: FieldSpec = QuadraticSpherical(f_star=fsec.getfloat("f_star", 1.0),
                                                  q_r=fsec.getfloat("q_r", 1.0), r_star=r_star)
        elif kind == "quadratic_elliptical":
            field = QuadraticElliptical(f_star=fsec.getfloat("f_star", 1.0),
                                        diag_coeffs=_parse_vec(fsec.get("diag_coeffs", "2 0.5 1")),
                                        r_star=r_star)
        else:
            field = _FIELD_KINDS[kind](r_star=r_star)
        isec = cp["initial"]
        initial = VehicleState(r_c=np.array(_parse_vec(isec.get("r_c", "1 1 1"))),
                               alpha=isec.getfloat("alpha", -pi / 2),
                               theta=isec.getfloat("theta", -pi / 2))
        ssec = cp["sim"] if cp.has_section("sim") else {}
        dt = float(ssec.get("dt", default_dt(params.omega)))
        t_end = float(ssec.get("t_end", DEFAULT_T_END))
        stride = int(ssec.get("record_stride", 1))
        return SimConfig(params=params, field=field, initial=initial, dt=dt,
                         t_end=t_end, record_stride=stride)
    except ConfigError:
        raise
    except (KeyError, ValueError, configparser.Error) as exc:
        raise ConfigError(str(exc)) from exc


def _load_config(args) -> SimConfig:
    if args.config is not None:
        config = parse_config(args.config)
    elif args.preset is not None:
        config = preset_config(args.preset)
    else:
        raise ConfigError("either --config or --preset is required")
    p = config.params
    omega = args.omega if getattr(args, "omega", None) is not None else p.omega
    dt = args.dt if getattr(args, "dt", None) is not None else (
        config.dt if args.omega is None else default_dt(omega))
    t_end = args.t_end if getattr(args, "t_end", None) is not None else config.t_end
    params = ControllerParams(**{**p.__dict__, "omega": omega})
    try:
        return SimConfig(params=params, field=config.field, initial=config.initial,
                         dt=dt, t_end=t_end, record_stride=config.record_stride)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _q_r_for_analysis(args, config: SimConfig | None) -> float:
    if getattr(args, "q_r", None) is not None:
        return args.q_r
    if config is not None and isinstance(config.field, QuadraticSpherical):
        return config.field.q_r
    return 1.0


def cmd_simulate(args) -> int:
    config = _load_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    traj = run(config)
    traj.to_csv(out / "trajectory.csv")
    (out / "config.ini").write_text(config_to_ini(config))
    summ = summary(traj, config.params, config.field)
    write_summary(out / "summary.json", summ)
    print(f"simulate: {len(traj)} rows, final distance "
          f"{summ['final_distance']:.6g}, mean r (last 10 periods) "
          f"{summ['mean_r_tilde_last_periods']:.6g} -> {out}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    config = None
    if args.config is not None or args.preset is not None:
        config = _load_config(args)
        params = config.params
    else:
        raise ConfigError("either --config or --preset is required")
    q_r = _q_r_for_analysis(args, config)
    report = stability_report(params, q_r)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "analysis.json", "w") as f:
        json.dump(report, f, indent=2)
        f.write("\n")
    gate = report["corollary_gate"]
    eq1 = report["equilibria"]["eq1"]
    print(f"analyze: eq1 exists={eq1['exists']}"
          + (f" hurwitz={eq1.get('hurwitz')}" if eq1["exists"] else "")
          + f", corollary1={gate['corollary1']} corollary2={gate['corollary2']} -> {out}")
    return EXIT_OK


def _integrate_averaged(state: AveragedState, p: ControllerParams, q_r: float,
                        tau_end: float, dtau: float):
    n = max(1, int(round(tau_end / dtau)))
    rows = [(0.0, *state.as_array())]
    y = state.as_array()

    def f(y):
        return averaged_rhs(AveragedState.from_array(y), p, q_r)

    for i in range(n):
        k1 = f(y)
        k2 = f(y + dtau / 2 * k1)
        k3 = f(y + dtau / 2 * k2)
        k4 = f(y + dtau * k3)
        y = y + dtau / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        rows.append(((i + 1) * dtau, *y))
    return rows


def cmd_averaged(args) -> int:
    if args.config is not None or args.preset is not None:
        config = _load_config(args)
        params = config.params
    else:
        raise ConfigError("either --config or --preset is required")
    q_r = _q_r_for_analysis(args, config)
    if args.start_at is not None:
        eqs = {e.kind: e for e in equilibria(params, q_r)}
        eq = eqs[args.start_at]
        if not eq.exists:
            raise DegenerateParameterError(f"{args.start_at} (does not exist)")
        state = eq.state
        if args.perturb:
            arr = state.as_array()
            arr[0] += args.perturb
            state = AveragedState.from_array(arr)
    elif args.state is not None:
        vals = _parse_vec(args.state)
        if len(vals) != 5:
            raise ConfigError("--state needs 5 comma-separated values")
        state = AveragedState(*vals)
    else:
        raise ConfigError("either --start-at or --state is required")
    rows = _integrate_averaged(state, params, q_r, args.tau_end, args.dtau)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "averaged.csv"
    with open(path, "w") as f:
        f.write("tau,r_tilde,alpha_star,alpha_hat,theta_tilde,e_hat\n")
        for row in rows:
            f.write(",".join(repr(float(v)) for v in row) + "\n")
    print(f"averaged: {len(rows)} rows, final r_tilde {rows[-1][1]:.6g} -> {path}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.config is not None or args.preset is not None:
        config = _load_config(args)
    else:
        raise ConfigError("either --config or --preset is required")
    q_r = _q_r_for_analysis(args, config)
    base = config.params

    if args.simulate_omegas:
        omegas = [float(w) for w in args.simulate_omegas.split(",")]
        rows = []
        for om in omegas:
            p = ControllerParams(**{**base.__dict__, "omega": om})
            cfg = SimConfig(params=p, field=config.field, initial=config.initial,
                            dt=default_dt(om), t_end=config.t_end,
                            record_stride=config.record_stride)
            traj = run(cfg)
            summ = summary(traj, p, cfg.field)
            eqs = equilibria(p, q_r)
            predicted = next((e.state.r_tilde for e in eqs if e.exists), float("nan"))
            dev = abs(summ["mean_r_tilde_last_periods"] - predicted)
            rows.append((om, summ["mean_r_tilde_last_periods"], predicted, dev))
        path = out / "sweep_omega.csv"
        with open(path, "w") as f:
            f.write("omega,mean_r_tilde,predicted_radius,deviation\n")
            for row in rows:
                f.write(",".join(repr(float(v)) for v in row) + "\n")
        print(f"sweep: {len(rows)} omega runs -> {path}")
        return EXIT_OK

    if args.a_max < args.a_min:
        grid = []
    else:
        grid = list(np.arange(args.a_min, args.a_max + 1e-12, args.a_step))
    rows = []
    for a in grid:
        p = ControllerParams(**{**base.__dict__, "a": float(a)})
        try:
            gate = corollary_gate(p, q_r)
            h1 = hurwitz_eq1(p, q_r)
            eqs = equilibria(p, q_r)
            eq3 = eqs[2]
            h3_verdict = ""
            if eq3.exists:
                h3_verdict = hurwitz_eq3(p, q_r).verdict
            radius3 = eq3.state.r_tilde if eq3.exists else ""
            rows.append((float(a), gate.corollary1, gate.corollary2, h1.verdict,
                         h3_verdict, abs(eqs[0].state.r_tilde), radius3,
                         gate.vc_bar if gate.vc_bar is not None else ""))
        except (DegenerateParameterError, Seek3dError):
            rows.append((float(a), "", "", "", "", "", "", ""))
    path = out / "sweep.csv"
    with open(path, "w") as f:
        f.write("a,corollary1,corollary2,hurwitz_eq1,hurwitz_eq3,abs_gamma1,radius_eq3,vc_bar\n")
        for row in rows:
            f.write(",".join(str(v) for v in row) + "\n")
    print(f"sweep: {len(rows)} grid points -> {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seek3d",
                                 description="3-D nonholonomic source seeking: simulation and stability analysis")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, sim_overrides=True):
        sp.add_argument("--config", type=str, default=None, help="scenario config INI")
        sp.add_argument("--preset", type=str, default=None, choices=PRESET_NAMES)
        sp.add_argument("--out", type=str, default="out", help="output directory")
        if sim_overrides:
            sp.add_argument("--omega", type=float, default=None)
            sp.add_argument("--t-end", dest="t_end", type=float, default=None)
            sp.add_argument("--dt", type=float, default=None)

    sp = sub.add_parser("simulate", help="integrate the closed loop, write CSV + summary")
    common(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("analyze", help="constants, equilibria, stability report JSON")
    common(sp)
    sp.add_argument("--q-r", dest="q_r", type=float, default=None)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("averaged", help="integrate the averaged error system")
    common(sp)
    sp.add_argument("--q-r", dest="q_r", type=float, default=None)
    sp.add_argument("--start-at", choices=("eq1", "eq2", "eq3", "eq4"), default=None)
    sp.add_argument("--perturb", type=float, default=0.0, help="radial offset added to --start-at")
    sp.add_argument("--state", type=str, default=None,
                    help="comma-separated r_tilde,alpha_star,alpha_hat,theta_tilde,e_hat")
    sp.add_argument("--tau-end", dest="tau_end", type=float, default=1000.0)
    sp.add_argument("--dtau", type=float, default=0.5)
    sp.set_defaults(func=cmd_averaged)

    sp = sub.add_parser("sweep", help="a-grid stability sweep or omega simulation sweep")
    common(sp)
    sp.add_argument("--q-r", dest="q_r", type=float, default=None)
    sp.add_argument("--a-min", type=float, default=1.2)
    sp.add_argument("--a-max", type=float, default=2.6)
    sp.add_argument("--a-step", type=float, default=0.05)
    sp.add_argument("--simulate-omegas", type=str, default=None,
                    help="comma-separated omegas; run full simulations instead of the a-grid")
    sp.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationDiverged, SingularStateError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DegenerateParameterError as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
