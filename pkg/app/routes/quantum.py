"""
Quantum commands: quantum, concurrence, tangle, monogamy, discord, holevo, qfano.
"""
import logging

import numpy as np

from app.models import POVM, BipartiteState, DensityMatrix, Ensemble, ProbDist
from app.routes import int_list, matrix_arg, vector_arg
from app.utils.quantum_info import (
    bipartite_disentropies,
    bit_flip_channel,
    channel_fano_check,
    concurrence,
    depolarizing_channel,
    discord_disentropy,
    disentanglement,
    holevo_disentropy_check,
    identity_channel,
    monogamy_check,
    quantum_degree_of_randomness,
    quantum_disentropy,
    quantum_relative_disentropy,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    three_tangle,
)

logger = logging.getLogger(__name__)


def _rng(args) -> np.random.Generator:
    return np.random.default_rng(args.seed)


def _bipartite(args) -> BipartiteState:
    dims = int_list(args.dims)
    return BipartiteState(joint=DensityMatrix(entries=matrix_arg(args.rho)), dim_a=dims[0], dim_b=dims[1])


def quantum_command(args) -> dict:
    """Spectral disentropy; bipartite forms with --dims, relative form with --gamma."""
    rho = DensityMatrix(entries=matrix_arg(args.rho))
    out = {
        "disentropy": quantum_disentropy(rho, args.q),
        "randomness": quantum_degree_of_randomness(rho, args.q).model_dump() if rho.dim > 1 else None,
        "eigenvalues": rho.eigenvalues.tolist(),
    }
    if args.dims:
        out["bipartite"] = bipartite_disentropies(_bipartite(args), args.q).model_dump()
    if args.gamma:
        gamma = DensityMatrix(entries=matrix_arg(args.gamma))
        out["relative"] = quantum_relative_disentropy(rho, gamma, args.q, args.variant)
    return out


def concurrence_command(args) -> dict:
    c = concurrence(DensityMatrix(entries=matrix_arg(args.rho)))
    return {"concurrence": c, "disentanglement": disentanglement(c, args.q, "concurrence_eq56")}


def tangle_command(args) -> dict:
    tau = three_tangle(vector_arg(args.psi))
    return {"tangle": tau, "disentanglement": disentanglement(min(tau, 1.0), args.q, "tangle_eq60")}


def monogamy_command(args) -> dict:
    """One state given by --psi, or --trials seeded random pure states."""
    if args.psi:
        return monogamy_check(vector_arg(args.psi), args.q).model_dump()
    rng = _rng(args)
    violations = 0
    for _ in range(args.trials):
        report = monogamy_check(random_pure_state(8, rng), args.q)
        violations += not all(report.checks)
    logger.info(f"Monogamy at q={args.q}: {violations} violations in {args.trials} random states")
    return {"trials": args.trials, "violations": violations}


def discord_command(args) -> dict:
    return discord_disentropy(_bipartite(args), args.q, args.search).model_dump()


def holevo_command(args) -> dict:
    """
    Report-only statistics of the Holevo-type bound on random ensembles.

    Each trial draws a random ensemble of --states mixed states and measures
    it in a random orthonormal basis.
    """
    rng = _rng(args)
    satisfied = 0
    worst = -np.inf
    for _ in range(args.trials):
        probs = rng.dirichlet(np.ones(args.states))
        states = [random_density_matrix(args.dim, rng) for _ in range(args.states)]
        basis = random_unitary(args.dim, rng)
        povm = POVM(elements=[np.outer(basis[:, k], basis[:, k].conj()) for k in range(args.dim)])
        report = holevo_disentropy_check(Ensemble(probs=ProbDist.from_array(probs), states=states), povm, args.q)
        satisfied += report.satisfied
        worst = max(worst, report.lhs_mutual - report.rhs_bound)
    logger.info(f"Holevo-type bound at q={args.q}: satisfied in {satisfied} of {args.trials} trials")
    return {"trials": args.trials, "satisfied": satisfied, "max_excess": float(worst)}


def qfano_command(args) -> dict:
    """Report-only statistics of the channel Fano bound on random purifications."""
    if args.channel == "identity":
        ch = identity_channel(2)
    elif args.channel == "bit_flip":
        ch = bit_flip_channel(args.p)
    else:
        ch = depolarizing_channel(args.p, 2)
    rng = _rng(args)
    satisfied = 0
    for _ in range(args.trials):
        satisfied += channel_fano_check(random_pure_state(4, rng), ch, args.q).satisfied
    logger.info(f"Channel Fano bound ({args.channel}, q={args.q}): satisfied in {satisfied} of {args.trials} trials")
    return {"trials": args.trials, "satisfied": satisfied, "channel": args.channel}


def register(subparsers) -> None:
    matrix_help = "JSON matrix of numbers or [re, im] pairs, or @file"

    p = subparsers.add_parser("quantum", help="Quantum disentropy of a density matrix")
    p.add_argument("--rho", required=True, help=matrix_help)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--dims", default=None, help="Subsystem dimensions a,b")
    p.add_argument("--gamma", default=None, help="Second state for the relative disentropy")
    p.add_argument("--variant", choices=["abs_diff", "signed_diff", "of_diff", "of_abs_diff"], default="abs_diff")
    p.set_defaults(handler=quantum_command)

    p = subparsers.add_parser("concurrence", help="Concurrence and disentanglement of two qubits")
    p.add_argument("--rho", required=True, help=matrix_help)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=concurrence_command)

    p = subparsers.add_parser("tangle", help="Three-tangle of a pure three-qubit state")
    p.add_argument("--psi", required=True, help="JSON vector of 8 amplitudes")
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=tangle_command)

    p = subparsers.add_parser("monogamy", help="Monogamy of disentanglement")
    p.add_argument("--psi", default=None)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=monogamy_command)

    p = subparsers.add_parser("discord", help="Disentropy discord of a two-qubit state")
    p.add_argument("--rho", required=True, help=matrix_help)
    p.add_argument("--dims", default="2,2")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--search", type=int, default=None, help="Angular grid size")
    p.set_defaults(handler=discord_command)

    p = subparsers.add_parser("holevo", help="Holevo-type bound statistics")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--states", type=int, default=2)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=holevo_command)

    p = subparsers.add_parser("qfano", help="Channel Fano bound statistics")
    p.add_argument("--channel", choices=["identity", "bit_flip", "depolarizing"], default="depolarizing")
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=qfano_command)
