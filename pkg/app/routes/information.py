"""
Classical information commands: disentropy, randomness, typicality,
source-coding, channel, fano, gllp.
"""
import logging

import numpy as np

from app.models import BinaryChannel, Code, DeformationParams, GLLPParams, ProbDist, SequenceStats, Source
from app.routes import float_list, int_list
from app.utils.classical_info import (
    binary_channel_analysis,
    exact_typical_fraction,
    fano_check,
    gllp_rates,
    sample_sequence_stats,
    source_coding_bounds,
    typicality,
)
from app.utils.disentropy_core import (
    decomposition_residual,
    degree_of_randomness,
    disentropy,
    entropy_for,
    normalization_context,
    normalized_disentropy,
)

logger = logging.getLogger(__name__)

FAMILIES = ["tsallis_q", "shannon_r2", "kaniadakis"]


def _params(args) -> DeformationParams:
    return DeformationParams(q=args.q, kappa=args.kappa, lambda_base=args.lambda_base)


def disentropy_command(args) -> dict:
    p = ProbDist.from_array(float_list(args.p))
    params = _params(args)
    out = {
        "disentropy": disentropy(p.array, params, args.family),
        "entropy": entropy_for(p.array, params, args.family),
    }
    if (args.support or p.K) > 1:
        out["normalized"] = normalized_disentropy(p.array, params, args.family, args.support)
    if args.family == "tsallis_q":
        out["decomposition_residual"] = decomposition_residual(p.array, args.q)
    return out


def randomness_command(args) -> dict:
    p = ProbDist.from_array(float_list(args.p))
    ctx = normalization_context(args.support or p.K, _params(args), args.family)
    logger.debug(f"Randomness normalized over K={ctx.K} ({args.family})")
    return degree_of_randomness(p.array, args.q, ctx).model_dump()


def typicality_command(args) -> dict:
    """Typicality of given counts, or of a sequence sampled with --seed."""
    src = Source(probs=ProbDist.from_array(float_list(args.p)))
    if args.counts:
        seq = SequenceStats(counts=tuple(int_list(args.counts)))
    else:
        seq = sample_sequence_stats(src, args.n, np.random.default_rng(args.seed))
    out = typicality(seq, src, args.delta).model_dump()
    out["counts"] = list(seq.counts)
    if args.exact:
        out["exact_typical_fraction"] = exact_typical_fraction(src, seq.n, args.delta)
    return out


def source_coding_command(args) -> dict:
    src = Source(probs=ProbDist.from_array(float_list(args.p)))
    return source_coding_bounds(src, Code(lengths=tuple(int_list(args.lengths)))).model_dump()


def channel_command(args) -> dict:
    return binary_channel_analysis(BinaryChannel(p_c=args.pc), args.q).model_dump()


def fano_command(args) -> dict:
    return fano_check(BinaryChannel(p_c=args.pc), args.q, args.cardinality).model_dump()


def gllp_command(args) -> dict:
    params = GLLPParams(sigma=args.sigma, q_mu=args.q_mu, e_mu=args.e_mu, q_1=args.q1, e_1=args.e1)
    return gllp_rates(params).model_dump()


def register(subparsers) -> None:
    def deformation(p):
        p.add_argument("--q", type=float, default=1.0)
        p.add_argument("--kappa", type=float, default=0.0)
        p.add_argument("--lambda-base", type=float, default=2.0)
        p.add_argument("--family", choices=FAMILIES, default="tsallis_q")
        p.add_argument("--support", type=int, default=None, help="Normalization support size K")

    p = subparsers.add_parser("disentropy", help="Disentropy of a distribution")
    p.add_argument("--p", required=True, help="Probabilities, comma separated")
    deformation(p)
    p.set_defaults(handler=disentropy_command)

    p = subparsers.add_parser("randomness", help="Degree of randomness of a distribution")
    p.add_argument("--p", required=True)
    deformation(p)
    p.set_defaults(handler=randomness_command)

    p = subparsers.add_parser("typicality", help="Disentropy typicality of a sequence")
    p.add_argument("--p", required=True, help="Source probabilities")
    p.add_argument("--counts", default=None, help="Observed symbol counts")
    p.add_argument("--n", type=int, default=20, help="Sampled sequence length when --counts is absent")
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--exact", action="store_true", help="Also enumerate the exact typical fraction")
    p.set_defaults(handler=typicality_command)

    p = subparsers.add_parser("source-coding", help="Coding bounds for a symbol code")
    p.add_argument("--p", required=True)
    p.add_argument("--lengths", required=True, help="Codeword lengths, comma separated")
    p.set_defaults(handler=source_coding_command)

    p = subparsers.add_parser("channel", help="Binary symmetric channel analysis")
    p.add_argument("--pc", type=float, required=True, help="Crossover probability")
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(handler=channel_command)

    p = subparsers.add_parser("fano", help="Disentropic Fano inequality")
    p.add_argument("--pc", type=float, required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--cardinality", type=int, default=2)
    p.set_defaults(handler=fano_command)

    p = subparsers.add_parser("gllp", help="GLLP key rates")
    p.add_argument("--q-mu", type=float, required=True)
    p.add_argument("--e-mu", type=float, required=True)
    p.add_argument("--q1", type=float, required=True)
    p.add_argument("--e1", type=float, required=True)
    p.add_argument("--sigma", type=float, default=0.5)
    p.set_defaults(handler=gllp_command)
