"""
Phase-space command: wigner.
"""
import logging
import math

from app.config import get_settings
from app.models import QuadratureSpec, StateParams
from app.routes import complex_arg
from app.utils.wigner_lab import (
    check_normalization,
    convergence_gap,
    d_q_alpha,
    default_quadrature,
    integrate,
    wigner_disentropy,
    wigner_relative_disentropy,
    wigner_state,
)

logger = logging.getLogger(__name__)

STATES = ["squeezed_vacuum_eq80", "vortex_mixture_eq74", "kerr_eq76", "vacuum", "coherent"]


def wigner_command(args) -> dict:
    """
    Disentropy functionals of one Wigner field.

    --reference adds the relative disentropy against a second field of the
    same kind of phase space; --alpha adds D_{q,alpha}.
    """
    params = StateParams(
        beta=complex_arg(args.beta),
        tau=args.tau,
        sigma=None if args.no_damping else (8 * math.pi if args.sigma is None else args.sigma),
        r=args.r,
        phi=args.phi,
        t=args.t,
    )
    field = wigner_state(args.state, params)
    q = get_settings().default_q if args.q is None else args.q
    quad = default_quadrature(field)
    if args.nodes or args.radius:
        quad = QuadratureSpec(radius=args.radius or quad.radius, nodes=args.nodes or quad.nodes,
                              fock_cutoff=quad.fock_cutoff)
    logger.info(f"{field.kind}: Gauss-Legendre {quad.nodes} nodes on radius {quad.radius}")

    out = {
        "state": field.kind,
        "q": q,
        "disentropy": wigner_disentropy(field, q, quad),
        "normalization": integrate(field, quad),
        "normalized_ok": check_normalization(field, quad),
        "quadrature": quad.model_dump(),
    }
    if args.convergence:
        out["convergence_gap"] = convergence_gap(field, q, quad)
    reference = wigner_state(args.reference, params) if args.reference else None
    if reference is not None:
        out["relative"] = wigner_relative_disentropy(field, reference, q, args.variant, quad)
    if args.alpha is not None:
        out["d_q_alpha"] = d_q_alpha(field, reference, q, args.alpha, quad, args.form)
    return out


def register(subparsers) -> None:
    p = subparsers.add_parser("wigner", help="Disentropy of a Wigner function")
    p.add_argument("--state", choices=STATES, required=True)
    p.add_argument("--beta", default="0", help="Coherent amplitude re or re,im")
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=None, help="Kerr damping constant (default 8 pi)")
    p.add_argument("--no-damping", action="store_true")
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--q", type=float, default=None, help="Tsallis index (default from settings)")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--form", choices=["eq77", "eq78", "eq79"], default="eq77")
    p.add_argument("--reference", choices=STATES, default=None)
    p.add_argument("--variant", choices=["abs_diff", "signed_diff", "of_diff", "of_abs_diff"], default="abs_diff")
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--convergence", action="store_true", help="Also report the node-doubling gap")
    p.set_defaults(handler=wigner_command)
