"""
Special function commands: lambertw, rlambda, wq, wk, deformed.
"""
import logging

from app.models import DeformationParams
from app.routes import float_list
from app.utils.special_functions import (
    deformed_exp_log,
    lambert_w,
    r_lambda,
    r_lambda_branch_point,
    wk,
    wk_branch_point,
    wq,
    wq_branch_point,
    wq_closed_form,
)

logger = logging.getLogger(__name__)


def _values(z, result) -> dict:
    values = [float(v) for v in (result if len(z) > 1 else [result])]
    return {"value": values[0]} if len(z) == 1 else {"values": values}


def lambertw_command(args) -> dict:
    z = float_list(args.z)
    return _values(z, lambert_w(z if len(z) > 1 else z[0], args.branch))


def rlambda_command(args) -> dict:
    z = float_list(args.z)
    out = _values(z, r_lambda(z if len(z) > 1 else z[0], args.base, args.branch))
    out["branch_point"] = r_lambda_branch_point(args.base).model_dump()
    return out


def wq_command(args) -> dict:
    """
    W_q at one or more points.

    With --closed-form the algebraic solution is used instead of the solver
    (q in {1/2, 4/3, 3/2, 2}).
    """
    z = float_list(args.z)
    arg = z if len(z) > 1 else z[0]
    if args.closed_form:
        result = wq_closed_form(arg, args.q)
    else:
        result = wq(arg, args.q, args.branch)
    out = _values(z, result)
    if args.show_branch_point:
        out["branch_point"] = wq_branch_point(args.q).model_dump()
    return out


def wk_command(args) -> dict:
    z = float_list(args.z)
    out = _values(z, wk(z if len(z) > 1 else z[0], args.kappa, args.branch))
    if args.show_branch_point:
        out["branch_point"] = wk_branch_point(args.kappa).model_dump()
    return out


def deformed_command(args) -> dict:
    x = float_list(args.x)
    params = DeformationParams(q=args.q, kappa=args.kappa)
    return _values(x, deformed_exp_log(x if len(x) > 1 else x[0], params, args.kind))


def register(subparsers) -> None:
    branches = ["principal", "lower"]

    p = subparsers.add_parser("lambertw", help="Lambert W function")
    p.add_argument("--z", required=True, help="Argument(s), comma separated")
    p.add_argument("--branch", choices=branches, default="principal")
    p.set_defaults(handler=lambertw_command)

    p = subparsers.add_parser("rlambda", help="Generalized Lambert function R_lambda")
    p.add_argument("--z", required=True)
    p.add_argument("--base", type=float, default=2.0, help="Logarithm base lambda")
    p.add_argument("--branch", choices=branches, default="principal")
    p.set_defaults(handler=rlambda_command)

    p = subparsers.add_parser("wq", help="Lambert-Tsallis function W_q")
    p.add_argument("--z", required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--branch", choices=branches, default="principal")
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--show-branch-point", action="store_true")
    p.set_defaults(handler=wq_command)

    p = subparsers.add_parser("wk", help="Lambert-Kaniadakis function W_kappa")
    p.add_argument("--z", required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--branch", choices=branches, default="principal")
    p.add_argument("--show-branch-point", action="store_true")
    p.set_defaults(handler=wk_command)

    p = subparsers.add_parser("deformed", help="Deformed exponentials and logarithms")
    p.add_argument("--x", required=True)
    p.add_argument("--kind", choices=["exp_q", "ln_q", "exp_kappa", "ln_kappa"], required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=0.0)
    p.set_defaults(handler=deformed_command)
