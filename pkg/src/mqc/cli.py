"""Command-line interface.

Subcommands: gen-model, sample, correct, solve-exact, energy, experiment.
Every randomized path takes an explicit --seed.  QUBO model files are
converted to spin form internally; their sample files stay in 0/1.
Exit codes: 0 success, 1 runtime failure (message on stderr), 2 usage.
"""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from . import experiments, modelio, oracle
from .correction import sqc_population, tournament_aggregate
from .model import IsingModel, QuboModel, bits_to_spins, qubo_to_ising, spins_to_bits
from .samplers import AnnealSchedule, inject_noise, population_from_samples, sample_sa, sample_uniform
from .topology import (
    ChainSpec,
    ChimeraSpec,
    complete_edges,
    erdos_edges,
    gen_chain_model,
    gen_chimera_edges,
    gen_random_model,
)

REPORT_HEADER = "round,pair_index,energy_a,energy_b,energy_merged,tunnels,flipped_tunnels"


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_spin_model(path: str):
    """Load a model file; returns (spin model, native model is qubo?)."""
    model = modelio.load_model(path)
    if isinstance(model, QuboModel):
        return qubo_to_ising(model), True
    return model, False


def _load_population(model: IsingModel, is_qubo: bool, path: str):
    raw = modelio.load_samples(path, model.num_qubits, "binary" if is_qubo else "spin")
    spins = bits_to_spins(raw.reshape(-1)).reshape(raw.shape) if is_qubo else raw
    return population_from_samples(model, spins)


def _samples_text(spins: np.ndarray, is_qubo: bool) -> str:
    spins = np.atleast_2d(spins)
    out = spins_to_bits(spins.reshape(-1)).reshape(spins.shape) if is_qubo else spins
    return modelio.serialize_samples(out)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_gen_model(args) -> int:
    if args.topology == "chain":
        spec = ChainSpec(args.chain_length, args.a, args.b, args.chains)
        model, _ = gen_chain_model(spec)
    else:
        if args.seed is None:
            return _fail("--seed is required for randomized model generation")
        root = np.random.SeedSequence(args.seed)
        graph_seed, coeff_seed = root.spawn(2)
        if args.topology == "chimera":
            spec = ChimeraSpec(args.rows, args.cols, args.shore)
            num_qubits, edges = spec.num_qubits, gen_chimera_edges(spec)
        elif args.topology == "complete":
            num_qubits, edges = args.qubits, complete_edges(args.qubits)
        else:  # erdos
            num_qubits = args.qubits
            edges = erdos_edges(num_qubits, args.edge_prob, graph_seed)
        model = gen_random_model(
            num_qubits,
            edges,
            coeff_seed,
            linear_range=tuple(args.a_range),
            quadratic_range=tuple(args.b_range),
            hardware_range=args.hardware_range,
        )
    _write_text(modelio.serialize_model(model), args.out)
    return 0


def _cmd_sample(args) -> int:
    model, is_qubo = _load_spin_model(args.model)
    schedule = AnnealSchedule(args.sweeps, args.t0, args.t1)
    root = np.random.SeedSequence(args.seed)
    sample_seed, noise_seed = root.spawn(2)
    if args.method == "uniform":
        pop = sample_uniform(model, args.count, sample_seed)
    else:
        pop = sample_sa(model, args.count, sample_seed, schedule)
    if args.noise > 0.0:
        pop = inject_noise(pop, args.noise, noise_seed)
    _write_text(_samples_text(pop.spins, is_qubo), args.out)
    return 0


def _report_csv(result) -> str:
    lines = [REPORT_HEADER]
    for round_index, round_reports in enumerate(result.rounds):
        for pair_index, rep in enumerate(round_reports):
            lines.append(
                f"{round_index},{pair_index},{rep.energy_a!r},{rep.energy_b!r},"
                f"{rep.energy_merged!r},{rep.num_tunnels},{rep.num_flipped}"
            )
    return "\n".join(lines) + "\n"


def _cmd_correct(args) -> int:
    model, is_qubo = _load_spin_model(args.model)
    pop = _load_population(model, is_qubo, args.samples)
    report_text = REPORT_HEADER + "\n"

    if args.method == "none":
        out_spins = pop.spins
    elif args.method == "sqc":
        out_spins = sqc_population(model, pop).spins
    else:
        if args.method == "sqc+mqc":
            pop = sqc_population(model, pop)
        result = tournament_aggregate(model, pop)
        out_spins = result.final[None, :]
        report_text = _report_csv(result)

    if args.report:
        _write_text(report_text, args.report)
    _write_text(_samples_text(out_spins, is_qubo), args.out)
    return 0


def _cmd_solve_exact(args) -> int:
    model, is_qubo = _load_spin_model(args.model)
    ground = oracle.exact_ground(model, args.max_qubits)
    lines = [repr(ground.energy)]
    if args.all_ground:
        lines.append(_samples_text(ground.states, is_qubo).rstrip("\n"))
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_energy(args) -> int:
    model, is_qubo = _load_spin_model(args.model)
    pop = _load_population(model, is_qubo, args.samples)
    _write_text("".join(f"{float(e)!r}\n" for e in pop.energies), args.out)
    return 0


def _cmd_experiment(args) -> int:
    schedule = AnnealSchedule(args.sweeps, args.t0, args.t1)
    if args.name == "random-coeff":
        config = experiments.RandomCoeffConfig(
            seed=args.seed,
            cases=args.cases,
            topology=ChimeraSpec(args.rows, args.cols, args.shore),
            samples_per_case=args.samples,
            batch_size=args.batch,
            schedule=schedule,
            noise_probability=args.noise,
        )
        result = experiments.experiment_random_coeff(config)
        buffer = io.StringIO()
        experiments.write_convergence_csv(result.rows, buffer)
        _write_text(buffer.getvalue(), args.out)
        for line in result.summary_lines():
            print(line, file=sys.stderr)
    else:  # chain
        methods = tuple(m for m in args.methods.split(",") if m) if args.methods else ()
        config = experiments.ChainConfig(
            seed=args.seed,
            chain_length=args.chain_length,
            num_chains=args.chains,
            linear_grid=tuple(np.linspace(-2.0, 2.0, args.a_points)),
            coupling_grid=tuple(np.linspace(-1.0, 1.0, args.b_points)),
            samples_per_point=args.samples,
            schedule=schedule,
            methods=methods,
        )
        result = experiments.experiment_chain(config)
        buffer = io.StringIO()
        experiments.write_chain_csv(result.curve_rows(), buffer)
        _write_text(buffer.getvalue(), args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mqc",
        description="Post-process Ising/QUBO sample populations by tunnel merging.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-model", help="generate a model file")
    p.add_argument("--topology", required=True, choices=["chimera", "chain", "complete", "erdos"])
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--shore", type=int, default=4)
    p.add_argument("--chain-length", type=int, default=12)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--a", type=float, default=0.0, help="chain linear coefficient")
    p.add_argument("--b", type=float, default=-1.0, help="chain coupling coefficient")
    p.add_argument("--qubits", type=int, default=16, help="qubit count for complete/erdos")
    p.add_argument("--edge-prob", type=float, default=0.5, help="edge probability for erdos")
    p.add_argument("--a-range", type=float, nargs=2, default=[-2.0, 2.0], metavar=("LO", "HI"))
    p.add_argument("--b-range", type=float, nargs=2, default=[-1.0, 1.0], metavar=("LO", "HI"))
    p.add_argument("--hardware-range", action="store_true",
                   help="reject ranges outside the [-2,2] / [-1,1] hardware windows")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen_model)

    p = sub.add_parser("sample", help="draw a sample population for a model")
    p.add_argument("--model", required=True)
    p.add_argument("--method", required=True, choices=["uniform", "sa"])
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sweeps", type=int, default=100)
    p.add_argument("--t0", type=float, default=3.0)
    p.add_argument("--t1", type=float, default=0.1)
    p.add_argument("--noise", type=float, default=0.0,
                   help="post-anneal independent spin-flip probability")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("correct", help="correct a sample population")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--method", required=True, choices=["none", "sqc", "mqc", "sqc+mqc"])
    p.add_argument("--report", default=None, help="write per-merge CSV report here")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_correct)

    p = sub.add_parser("solve-exact", help="exhaustive ground-state search")
    p.add_argument("--model", required=True)
    p.add_argument("--max-qubits", type=int, default=oracle.MAX_ENUM_QUBITS)
    p.add_argument("--all-ground", action="store_true",
                   help="also list every ground state")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_solve_exact)

    p = sub.add_parser("energy", help="evaluate sample energies")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("experiment", help="run a desk-scale study, emit CSV")
    p.add_argument("--name", required=True, choices=["random-coeff", "chain"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--sweeps", type=int, default=100)
    p.add_argument("--t0", type=float, default=3.0)
    p.add_argument("--t1", type=float, default=0.1)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--shore", type=int, default=4)
    p.add_argument("--samples", type=int, default=None,
                   help="samples per case (random-coeff, default 2000) or per grid point (chain, default 64)")
    p.add_argument("--batch", type=int, default=200)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--chain-length", type=int, default=12)
    p.add_argument("--chains", type=int, default=40)
    p.add_argument("--a-points", type=int, default=41)
    p.add_argument("--b-points", type=int, default=17)
    p.add_argument("--methods", default="raw,sqc,mqc",
                   help="comma-separated subset of raw,sqc,mqc (empty for theoretical only)")
    p.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.samples is None:
        args.samples = 2000 if args.name == "random-coeff" else 64
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
