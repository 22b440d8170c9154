"""Batch command-line front end.

Verbs:
  run         execute one algorithm over a Hamiltonian file (or sweep)
  spectrum    like run, but one column per reported energy level/order
  bench-uccsd time UCCSD circuit construction over (nq, ne) pairs
  list        print the service registry contents

Config files are INI-style ``key = value`` with ``[section]`` headers;
results are CSV with a ``#``-prefixed provenance header (config hash,
seed, version).  All energies are in Hartree.  Exit codes: 0 success,
1 config parse error, 2 missing Hamiltonian file, 3 algorithm error.
"""
from __future__ import annotations

import argparse
import configparser
import hashlib
import sys
import time
from pathlib import Path

from . import __version__, get_accelerator, get_algorithm, get_optimizer
from .ansatz import UccsdSpec, count_double_excitations, hartree_fock_circuit, uccsd_circuit
from .backend import expectation, qalloc
from .errors import QcsimError
from .ir import evaluate
from .kernel import parse_kernel
from .pauli import load_hamiltonian
from .registry import ServiceKind, list_services

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_MISSING_HAMILTONIAN = 2
EXIT_ALGORITHM = 3


class ConfigError(Exception):
    pass


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _parse_config(path: str) -> configparser.ConfigParser:
    config = configparser.ConfigParser(inline_comment_prefixes=("#",))
    read = config.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")
    if not config.has_section("run"):
        raise ConfigError("config needs a [run] section")
    if not config.has_option("run", "algorithm"):
        raise ConfigError("[run] needs an 'algorithm' key")
    return config


def _split_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _hamiltonian_files(config) -> list[tuple[str, str]]:
    """(label, path) pairs of the sweep."""
    if not config.has_section("hamiltonian"):
        raise ConfigError("config needs a [hamiltonian] section")
    section = config["hamiltonian"]
    files = _split_list(section.get("files", section.get("file", "")))
    if not files:
        raise ConfigError("[hamiltonian] needs 'files'")
    labels = _split_list(section.get("labels", ""))
    if labels and len(labels) != len(files):
        raise ConfigError("labels and files have different lengths")
    if not labels:
        labels = [Path(f).stem for f in files]
    return list(zip(labels, files))


def _build_ansatz(config, n_qubits_hint: int):
    if not config.has_section("ansatz"):
        raise ConfigError("config needs an [ansatz] section")
    section = config["ansatz"]
    kind = section.get("kind", "").strip()
    if kind == "uccsd":
        circuit = uccsd_circuit(
            UccsdSpec(section.getint("ne"), section.getint("nq"))
        )
    elif kind == "hartree-fock":
        circuit = hartree_fock_circuit(section.getint("ne"), section.getint("nq"))
    elif kind == "kernel":
        if section.get("file", "").strip():
            source = Path(section["file"]).read_text(encoding="utf-8")
        elif section.get("source", "").strip():
            source = section["source"]
        else:
            raise ConfigError("[ansatz] kind=kernel needs 'source' or 'file'")
        circuit = parse_kernel(source)
    else:
        raise ConfigError(f"unknown ansatz kind '{kind}'")
    params_text = section.get("params", "").strip()
    if params_text:
        circuit = evaluate(circuit, [float(v) for v in _split_list(params_text)])
    return circuit


def _algorithm_options(config, algorithm: str) -> dict:
    """Typed key-value pairs from the algorithm's own config section."""
    out: dict = {}
    if not config.has_section(algorithm):
        return out
    int_keys = {"steps", "cmx-order", "n-electrons", "max-iter", "max-iterations"}
    real_keys = {"step-size", "grad-threshold", "tolerance", "ridge", "overlap-threshold"}
    for key, raw in config[algorithm].items():
        if key in ("optimizer", "gradient-strategy"):
            continue
        if key in int_keys:
            out[key] = int(raw)
        elif key in real_keys:
            out[key] = float(raw)
        else:
            out[key] = raw
    return out


def _prepare_ground_state(circuit, observable, accelerator, config, algorithm):
    """Bind a symbolic ansatz to its VQE-optimal parameters."""
    if circuit.is_concrete:
        return circuit
    section = config[algorithm] if config.has_section(algorithm) else {}
    optimizer = get_optimizer(
        section.get("optimizer", "nelder-mead"),
        {"tolerance": 1e-14, "max-iterations": 2000},
    )
    vqe = get_algorithm(
        "vqe",
        {
            "ansatz": circuit,
            "optimizer": optimizer,
            "observable": observable,
            "accelerator": accelerator,
        },
    )
    scratch = qalloc(max(circuit.max_qubit() + 1, observable.n_qubits(), 1))
    vqe.execute(scratch)
    return evaluate(circuit, scratch.metadata.get_real_list("opt-params"))


def _execute_point(config, algorithm, observable, accelerator, verbose):
    """Run one sweep point; returns the result buffer."""
    n_qubits = observable.n_qubits()
    options = _algorithm_options(config, algorithm)
    section = config[algorithm] if config.has_section(algorithm) else {}

    if algorithm in ("vqe", "adapt"):
        options["optimizer"] = get_optimizer(section.get("optimizer", "nelder-mead"))
    if algorithm == "vqe" and section.get("gradient-strategy", "").strip():
        options["gradient_strategy"] = section["gradient-strategy"].strip()
    if algorithm == "adapt":
        options.setdefault("sub-algorithm", "vqe")
        options.setdefault("pool", "uccsd")

    if algorithm in ("vqe", "qite", "qcmx", "qeom"):
        ansatz = _build_ansatz(config, n_qubits)
        if algorithm in ("qcmx", "qeom"):
            ansatz = _prepare_ground_state(
                ansatz, observable, accelerator, config, algorithm
            )
        options["ansatz"] = ansatz
        n_qubits = max(n_qubits, ansatz.max_qubit() + 1)

    options["observable"] = observable
    options["accelerator"] = accelerator
    instance = get_algorithm(algorithm, options)
    buffer = qalloc(max(n_qubits, 1))
    if verbose:
        print(f"running {algorithm} on {n_qubits} qubit(s)", file=sys.stderr)
    instance.execute(buffer)
    return buffer


def _primary_energy(algorithm: str, buffer) -> float:
    if algorithm == "qcmx":
        return buffer.metadata.get_real_list("pds-energies")[-1]
    if algorithm == "qeom":
        return buffer.metadata.get_real("ground-energy")
    return buffer.metadata.get_real("opt-val")


def _provenance(config_path: str, seed, out_lines: list[str]) -> None:
    digest = hashlib.sha256(Path(config_path).read_bytes()).hexdigest()
    out_lines.append(f"# qcsim-version={__version__}")
    out_lines.append(f"# config-sha256={digest}")
    out_lines.append(f"# seed={'' if seed is None else seed}")
    out_lines.append("# energies in Hartree")


def _accelerator_from(config, args):
    shots = args.shots
    if shots is None:
        shots = config.getint("run", "shots", fallback=0)
    seed = args.seed
    if seed is None and config.has_option("run", "seed"):
        seed = config.getint("run", "seed")
    options = {"shots": shots}
    if seed is not None:
        options["seed"] = seed
    return get_accelerator("statevector", options), seed


def _out_path(config, args, default: str) -> Path:
    if args.out:
        return Path(args.out)
    return Path(config.get("run", "out", fallback=default))


def cmd_run(args) -> int:
    try:
        config = _parse_config(args.config)
        sweep = _hamiltonian_files(config)
    except (ConfigError, configparser.Error, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    algorithm = config.get("run", "algorithm")
    accelerator, seed = _accelerator_from(config, args)

    rows = []
    for label, path in sweep:
        if not Path(path).is_file():
            print(f"missing Hamiltonian file: {path}", file=sys.stderr)
            return EXIT_MISSING_HAMILTONIAN
        observable = load_hamiltonian(path)
        try:
            buffer = _execute_point(
                config, algorithm, observable, accelerator, args.verbose
            )
            rows.append((label, _primary_energy(algorithm, buffer)))
        except (QcsimError, ConfigError, ValueError, KeyError) as exc:
            print(f"algorithm error at '{label}': {exc}", file=sys.stderr)
            return EXIT_ALGORITHM

    lines: list[str] = []
    _provenance(args.config, seed, lines)
    lines.append("label,opt-val")
    for label, energy in rows:
        lines.append(f"{label},{_fmt(energy)}")
    out = _out_path(config, args, "results.csv")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if args.verbose:
        print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


def _spectrum_columns(algorithm: str, config, buffer) -> dict[str, float]:
    if algorithm == "qeom":
        columns = {"E0": buffer.metadata.get_real("ground-energy")}
        for i, energy in enumerate(
            buffer.metadata.get_real_list("excitation-energies"), start=1
        ):
            columns[f"ex{i}"] = energy
        return columns
    if algorithm == "qcmx":
        order = config.getint("qcmx", "cmx-order")
        columns = {}
        for family in ("cmx", "pds", "knowles"):
            values = buffer.metadata.get_real_list(f"{family}-energies")
            for m, value in zip(range(2, order + 1), values):
                columns[f"{family}{m}"] = value
        return columns
    if algorithm == "qite":
        history = buffer.metadata.get_real_list("energy-history")
        return {"E-initial": history[0], "E-final": history[-1]}
    return {"opt-val": buffer.metadata.get_real("opt-val")}


def cmd_spectrum(args) -> int:
    try:
        config = _parse_config(args.config)
        sweep = _hamiltonian_files(config)
    except (ConfigError, configparser.Error, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    algorithm = config.get("run", "algorithm")
    accelerator, seed = _accelerator_from(config, args)

    rows = []
    for label, path in sweep:
        if not Path(path).is_file():
            print(f"missing Hamiltonian file: {path}", file=sys.stderr)
            return EXIT_MISSING_HAMILTONIAN
        observable = load_hamiltonian(path)
        try:
            buffer = _execute_point(
                config, algorithm, observable, accelerator, args.verbose
            )
            rows.append((label, _spectrum_columns(algorithm, config, buffer)))
        except (QcsimError, ConfigError, ValueError, KeyError) as exc:
            print(f"algorithm error at '{label}': {exc}", file=sys.stderr)
            return EXIT_ALGORITHM

    columns: list[str] = []
    for _, row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    lines: list[str] = []
    _provenance(args.config, seed, lines)
    lines.append("label," + ",".join(columns))
    for label, row in rows:
        cells = [(_fmt(row[c]) if c in row else "") for c in columns]
        lines.append(label + "," + ",".join(cells))
    out = _out_path(config, args, "spectrum.csv")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if args.verbose:
        print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


def cmd_bench_uccsd(args) -> int:
    try:
        nq_list = [int(v) for v in _split_list(args.nq)]
        ne_list = [int(v) for v in _split_list(args.ne)]
    except ValueError as exc:
        print(f"bad --nq/--ne list: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    lines = [
        f"# qcsim-version={__version__}",
        "# best construction wall time over repeats; energies not involved",
        "nq,ne,double-excitations,variables,instructions,best-seconds",
    ]
    for nq in nq_list:
        for ne in ne_list:
            if not ne < nq // 2:
                print(
                    f"warning: skipping nq={nq}, ne={ne} (requires ne < nq/2)",
                    file=sys.stderr,
                )
                continue
            try:
                spec = UccsdSpec(ne, nq)
            except ValueError as exc:
                print(f"warning: skipping nq={nq}, ne={ne}: {exc}", file=sys.stderr)
                continue
            best = float("inf")
            circuit = None
            for _ in range(args.repeats):
                start = time.perf_counter()
                circuit = uccsd_circuit(spec)
                best = min(best, time.perf_counter() - start)
            lines.append(
                f"{nq},{ne},{count_double_excitations(nq, ne)},"
                f"{len(circuit.variables)},{circuit.n_instructions()},{best:.6f}"
            )
    out = Path(args.out or "bench_uccsd.csv")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if args.verbose:
        print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


def cmd_list(_args) -> int:
    for kind in ServiceKind:
        names = list_services(kind)
        if names:
            print(f"{kind.value}: {', '.join(names)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcsim", description="hybrid quantum-classical chemistry runner"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, handler in (("run", cmd_run), ("spectrum", cmd_spectrum)):
        p = sub.add_parser(verb)
        p.add_argument("--config", required=True, help="INI config path")
        p.add_argument("--out", help="results CSV path")
        p.add_argument("--shots", type=int, help="override shot count (0 = exact)")
        p.add_argument("--seed", type=int, help="sampling seed")
        p.add_argument("--verbose", action="store_true")
        p.set_defaults(handler=handler)

    bench = sub.add_parser("bench-uccsd")
    bench.add_argument("--nq", required=True, help="comma list of qubit counts")
    bench.add_argument("--ne", required=True, help="comma list of electron counts")
    bench.add_argument("--repeats", type=int, default=10)
    bench.add_argument("--out", help="results CSV path")
    bench.add_argument("--verbose", action="store_true")
    bench.set_defaults(handler=cmd_bench_uccsd)

    lister = sub.add_parser("list")
    lister.set_defaults(handler=cmd_list)
    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
