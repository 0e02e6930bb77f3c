"""Command-line driver: basis / spectrum / quench / pauli / circuit.

Configuration values come from built-in defaults, then a flat JSON config
file (--config), then explicit flags, in increasing precedence. Sweep fields
(m_over_g, n_q, dt, method) accept either a single value or a list; report
commands write CSV plus a rendered PNG figure next to it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from .circuit import build_trotter_circuit, write_qasm
from .evolve import QuenchSeries, quench_series, write_quench_csv
from .fock import SECTORS, basis_for_qubits, enumerate_basis
from .matelem import assemble
from .model import ModelParams
from .pauli import decompose, write_terms
from .spectrum import vector_mass_info, write_spectrum_csv

CLI_METHODS = ("exp", "trotter")


@dataclass(frozen=True)
class RunConfig:
    """One resolved run configuration (sweep fields are tuples)."""

    m_over_g: tuple[float, ...] = (0.2,)
    gl: float = 8.0
    theta: float = 0.0
    n_q: tuple[int, ...] = (2,)
    sector: str = "even"
    method: tuple[str, ...] = ("exp",)
    dt: tuple[float, ...] = (0.3,)
    t_max: float = 25.0
    sample_dt: float = 0.1
    steps: int = 1
    seed: int = 0
    e_max: float | None = None
    zero_mode_delta: bool = False
    out: str = "out"
    plot: bool = True

    def single(self, field: str):
        value = getattr(self, field)
        if len(value) != 1:
            raise ValueError(f"{field} must be a single value here, got {list(value)}")
        return value[0]

    def params(self, m_over_g: float | None = None) -> ModelParams:
        m = self.single("m_over_g") if m_over_g is None else m_over_g
        return ModelParams.from_ratios(m, self.gl, self.theta)


_TUPLE_FIELDS = {
    "m_over_g": float,
    "n_q": int,
    "method": str,
    "dt": float,
}
_SCALAR_FIELDS = {
    "gl": float,
    "theta": float,
    "sector": str,
    "t_max": float,
    "sample_dt": float,
    "steps": int,
    "seed": int,
    "e_max": float,
    "zero_mode_delta": bool,
    "out": str,
    "plot": bool,
}


def _coerce_int(value) -> int:
    # 2.0 from JSON is fine, 2.5 is a config error rather than a silent floor
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    if isinstance(value, float) and value != int(value):
        raise ValueError(f"expected an integer, got {value!r}")
    return int(value)


def _coerce(field: str, value) -> object:
    if field in _TUPLE_FIELDS:
        kind = _TUPLE_FIELDS[field]
        items = value if isinstance(value, (list, tuple)) else [value]
        if kind is int:
            return tuple(_coerce_int(v) for v in items)
        return tuple(kind(v) for v in items)
    kind = _SCALAR_FIELDS[field]
    if kind is int:
        return _coerce_int(value)
    if kind is bool and not isinstance(value, bool):
        raise ValueError(f"{field} must be true or false, got {value!r}")
    return kind(value)


def load_config_file(path: str) -> dict:
    """Flat JSON object mapping config keys to values."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a flat JSON object")
    valid = {f.name for f in fields(RunConfig)}
    out = {}
    for key, value in data.items():
        if key not in valid:
            raise ValueError(f"unknown config key {key!r} in {path}; "
                             f"valid keys: {sorted(valid)}")
        if isinstance(value, dict):
            raise ValueError(f"config key {key!r} must be flat, got an object")
        if value is None:
            continue  # null keeps the built-in default
        out[key] = _coerce(key, value)
    return out


def _split_list(text: str, kind) -> tuple:
    return tuple(kind(item) for item in text.split(",") if item != "")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = replace(cfg, **load_config_file(args.config))
    overrides = {}
    for field in list(_TUPLE_FIELDS) + list(_SCALAR_FIELDS):
        flag = getattr(args, field, None)
        if flag is not None:
            overrides[field] = _coerce(field, flag)
    if overrides:
        cfg = replace(cfg, **overrides)
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> None:
    if cfg.sector not in SECTORS:
        raise ValueError(f"sector must be one of {SECTORS}, got {cfg.sector!r}")
    for method in cfg.method:
        if method not in CLI_METHODS:
            raise ValueError(f"method must be one of {CLI_METHODS}, got {method!r}")
    for n_q in cfg.n_q:
        if n_q < 0:
            raise ValueError(f"n_q must be non-negative, got {n_q}")
    for dt in cfg.dt:
        if dt <= 0.0:
            raise ValueError(f"dt must be positive, got {dt}")
    if cfg.t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {cfg.t_max}")
    if cfg.sample_dt <= 0.0:
        raise ValueError(f"sample_dt must be positive, got {cfg.sample_dt}")
    if cfg.steps < 1:
        raise ValueError(f"steps must be >= 1, got {cfg.steps}")
    if cfg.gl <= 0.0:
        raise ValueError(f"gL must be positive, got {cfg.gl}")
    for m in cfg.m_over_g:
        if m < 0.0:
            raise ValueError(f"m_over_g must be non-negative, got {m}")
    if cfg.e_max is not None and cfg.e_max <= 0.0:
        raise ValueError(f"e_max must be positive, got {cfg.e_max}")


def _outdir(cfg: RunConfig) -> str:
    os.makedirs(cfg.out, exist_ok=True)
    return cfg.out


def cmd_basis(cfg: RunConfig) -> int:
    """Dump the truncated basis and report the state count per sector."""
    out = _outdir(cfg)
    n_q = cfg.single("n_q")
    params = cfg.params()
    if cfg.e_max is not None:
        basis = enumerate_basis(params, cfg.e_max, cfg.sector)
        name = f"basis_{cfg.sector}_emax{cfg.e_max:g}.txt"
    else:
        basis = basis_for_qubits(params, n_q, cfg.sector)
        name = f"basis_{cfg.sector}_nq{n_q}.txt"
    path = os.path.join(out, name)
    with open(path, "w") as fh:
        fh.write(basis.dump())
    n_even = sum(1 for s in basis.states if s.parity == 1)
    print(f"{basis.dim} states (even {n_even}, odd {basis.dim - n_even}) "
          f"at e_max={basis.e_max:g} -> {path}")
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    """Vector-mass sweep over (m_over_g, n_q); CSV plus figure."""
    out = _outdir(cfg)
    rows = []
    for m_over_g in sorted(cfg.m_over_g):
        params = cfg.params(m_over_g)
        for n_q in sorted(cfg.n_q):
            info = vector_mass_info(params, n_q=n_q,
                                    zero_mode_delta=cfg.zero_mode_delta)
            rows.append((m_over_g, n_q, info.mass / params.g))
            print(f"m/g={m_over_g:g} n_q={n_q}: M_V/g={info.mass / params.g:.8f} "
                  f"(even dim {info.basis_even.dim}, odd dim {info.basis_odd.dim})")
    csv_path = os.path.join(out, "spectrum.csv")
    write_spectrum_csv(rows, csv_path)
    print(f"wrote {csv_path}")
    if cfg.plot:
        from .plots import save_spectrum_figure
        png_path = os.path.join(out, "spectrum.png")
        save_spectrum_figure(rows, png_path)
        print(f"wrote {png_path}")
    return 0


def _quench_grid(cfg: RunConfig) -> list[tuple[int, str, float | None]]:
    grid = []
    for n_q in sorted(cfg.n_q):
        for method in sorted(cfg.method):
            if method == "exp":
                grid.append((n_q, method, None))
            else:
                for dt in sorted(cfg.dt):
                    grid.append((n_q, method, dt))
    return grid


def cmd_quench(cfg: RunConfig) -> int:
    """|G(t)|^2 after the mass quench; one CSV per grid point plus a figure."""
    out = _outdir(cfg)
    params = cfg.params()
    series_list: list[QuenchSeries] = []
    for n_q, method, dt in _quench_grid(cfg):
        series = quench_series(params, n_q, cfg.t_max, sample_dt=cfg.sample_dt,
                               method=method, dt=dt, sector=cfg.sector,
                               zero_mode_delta=cfg.zero_mode_delta)
        series_list.append(series)
        name = f"quench_nq{n_q}_{method}"
        if dt is not None:
            name += f"_dt{dt:g}"
        path = os.path.join(out, name + ".csv")
        write_quench_csv(series, path)
        print(f"n_q={n_q} {method}{'' if dt is None else f' dt={dt:g}'}: "
              f"{len(series.times)} samples -> {path}")
    if cfg.plot:
        from .plots import save_quench_figure
        png_path = os.path.join(out, "quench.png")
        save_quench_figure(series_list, png_path)
        print(f"wrote {png_path}")
    return 0


def cmd_pauli(cfg: RunConfig) -> int:
    """Pauli term list of the truncated Hamiltonian."""
    out = _outdir(cfg)
    n_q = cfg.single("n_q")
    params = cfg.params()
    basis = basis_for_qubits(params, n_q, cfg.sector)
    terms = decompose(assemble(basis, params, cfg.zero_mode_delta))
    path = os.path.join(out, f"pauli_nq{n_q}.txt")
    write_terms(terms, path)
    print(f"n_q={n_q}: {len(terms)} Pauli terms -> {path}")
    return 0


def cmd_circuit(cfg: RunConfig) -> int:
    """One-step Trotter circuit as OpenQASM 2.0 plus a resource JSON."""
    out = _outdir(cfg)
    n_q = cfg.single("n_q")
    dt = cfg.single("dt")
    params = cfg.params()
    basis = basis_for_qubits(params, n_q, cfg.sector)
    terms = decompose(assemble(basis, params, cfg.zero_mode_delta))
    circuit = build_trotter_circuit(terms, dt, n_steps=cfg.steps)
    qasm_path = os.path.join(out, f"trotter_nq{n_q}_dt{dt:g}.qasm")
    write_qasm(circuit, qasm_path)
    report = circuit.resource_report()
    json_path = os.path.join(out, "circuit_resources.json")
    with open(json_path, "w") as fh:
        fh.write(json.dumps(report, sort_keys=True) + "\n")
    print(f"n_q={n_q} dt={dt:g}: {report['terms']} terms, "
          f"{report['two_qubit_gates']} two-qubit gates, "
          f"{report['rotations']} rotations per step, {report['steps']} steps")
    print(f"wrote {qasm_path}")
    print(f"wrote {json_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schwinger-ht",
        description="Hamiltonian truncation of the bosonised massive Schwinger "
                    "model: spectra, quench dynamics and Trotter circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat JSON config file")
        p.add_argument("--m-over-g", dest="m_over_g",
                       type=lambda s: _split_list(s, float),
                       help="fermion mass over g (comma list for sweeps)")
        p.add_argument("--gl", type=float, help="circle size g*L")
        p.add_argument("--theta", type=float, help="vacuum angle")
        p.add_argument("--n-q", dest="n_q", type=lambda s: _split_list(s, int),
                       help="qubit count, basis keeps 2^n_q states (comma list)")
        p.add_argument("--sector", choices=SECTORS, help="Z2 parity sector")
        p.add_argument("--method", type=lambda s: _split_list(s, str),
                       help="quench method: exp, trotter (comma list)")
        p.add_argument("--dt", type=lambda s: _split_list(s, float),
                       help="Trotter step (comma list)")
        p.add_argument("--t-max", dest="t_max", type=float, help="quench end time")
        p.add_argument("--sample-dt", dest="sample_dt", type=float,
                       help="sampling step of the exp method")
        p.add_argument("--steps", type=int, help="Trotter steps emitted in QASM")
        p.add_argument("--seed", type=int, help="seed recorded with the run")
        p.add_argument("--e-max", dest="e_max", type=float,
                       help="dump the raw enumeration at this cutoff (basis only)")
        p.add_argument("--zero-mode-delta", dest="zero_mode_delta",
                       action="store_const", const=True,
                       help="enforce the literal zero-mode selection rule")
        p.add_argument("--out", help="output directory")
        p.add_argument("--no-plot", dest="plot", action="store_const", const=False,
                       help="skip figure rendering")

    handlers = {
        "basis": cmd_basis,
        "spectrum": cmd_spectrum,
        "quench": cmd_quench,
        "pauli": cmd_pauli,
        "circuit": cmd_circuit,
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name, help=handler.__doc__)
        add_common(p)
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        np.random.seed(cfg.seed)  # nothing below draws, but runs stay pinned
        return args.handler(cfg)
    except (ValueError, TypeError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
