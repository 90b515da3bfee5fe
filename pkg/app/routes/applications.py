"""
Application commands: blackhole, segment, numbers.
"""
import logging

from app.models import BHParams
from app.utils.black_hole import bh_disentropy, bh_q_from_gamma, bh_residual
from app.utils.number_theory import (
    distance_prime_powers,
    integer_distance,
    integer_randomness,
    number_dist,
    number_to_state,
)
from app.utils.pgm import read_pgm, write_pgm
from app.utils.quantum_info import quantum_disentropy
from app.utils.segmentation import binarize, segmentation_sweep

logger = logging.getLogger(__name__)


def blackhole_command(args) -> dict:
    p = BHParams(a=args.a, gamma_exp=args.gamma, family=args.family)
    out = {"disentropy": bh_disentropy(p, args.index)}
    if args.family == "tsallis":
        q = bh_q_from_gamma(p) if args.index is None else args.index
        out.update({"q": q, "residual": bh_residual(p, args.index)})
    return out


def segment_command(args) -> dict:
    """Threshold a graymap and optionally write the binarized image."""
    img = read_pgm(args.input)
    result = segmentation_sweep(img, args.q, args.weighting)
    t = result.t_disentropy if args.method == "disentropy" else result.t_entropy
    out = {"threshold": t, "method": args.method, "q": args.q, "weighting": args.weighting,
           "t_entropy": result.t_entropy, "t_disentropy": result.t_disentropy}
    if args.output:
        out["output"] = write_pgm(binarize(img, t), args.output, args.mode)
    if args.full:
        out["sweep"] = result.model_dump()
    return out


def numbers_command(args) -> dict:
    nd = number_dist(args.n)
    report = integer_randomness(args.n, args.q, args.support)
    out = {
        "n": args.n,
        "factors": [list(pe) for pe in zip(nd.factorization.primes, nd.factorization.exponents)],
        "weights": list(nd.dist.weights),
        "randomness": report.r,
        "distance": distance_prime_powers(args.n, args.q, args.method, args.support),
    }
    if args.compare is not None:
        out["integer_distance"] = integer_distance(args.n, args.compare, args.q, args.variant)
    if args.state:
        rho = number_to_state(args.n, args.basis)
        out["state_disentropy"] = quantum_disentropy(rho, args.q)
        out["state_dim"] = rho.dim
    return out


def register(subparsers) -> None:
    p = subparsers.add_parser("blackhole", help="Black-hole disentropy")
    p.add_argument("--a", type=float, required=True, help="Area in Planck units")
    p.add_argument("--gamma", type=float, default=0.1, help="Barbero-Immirzi parameter")
    p.add_argument("--family", choices=["tsallis", "kaniadakis"], default="tsallis")
    p.add_argument("--index", type=float, default=None, help="Explicit q or kappa")
    p.set_defaults(handler=blackhole_command)

    p = subparsers.add_parser("segment", help="Entropy or disentropy image thresholding")
    p.add_argument("--in", dest="input", required=True, help="Input PGM (P2 or P5)")
    p.add_argument("--out", dest="output", default=None, help="Binarized PGM output")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--method", choices=["entropy", "disentropy"], default="disentropy")
    p.add_argument("--weighting", choices=["value", "histogram"], default="value")
    p.add_argument("--mode", choices=["P5", "P2"], default="P5")
    p.add_argument("--full", action="store_true", help="Include every threshold's objectives")
    p.set_defaults(handler=segment_command)

    p = subparsers.add_parser("numbers", help="Randomness of an integer's prime-power distribution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--method", choices=["eq108", "eq110"], default="eq108")
    p.add_argument("--support", type=int, default=None, help="Normalization support size")
    p.add_argument("--compare", type=int, default=None, help="Second integer for the relative distance")
    p.add_argument("--variant", choices=["abs_diff", "signed_diff", "of_diff", "of_abs_diff"], default="abs_diff")
    p.add_argument("--state", action="store_true", help="Also build the diagonal density matrix")
    p.add_argument("--basis", choices=["packed", "prime_index"], default="packed")
    p.set_defaults(handler=numbers_command)
