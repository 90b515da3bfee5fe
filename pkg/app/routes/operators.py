"""
Operator equation commands: operator, gate.
"""
import logging

from app.models import DensityMatrix, HermitianMatrix
from app.routes import matrix_arg
from app.utils.operator_eq import (
    disentropy_via_operator,
    gate_family_uq,
    lambert_tsallis_apply,
    matrix_q_exp,
    solve_operator_equation,
)

logger = logging.getLogger(__name__)


def operator_command(args) -> dict:
    """
    Matrix functions of a Hermitian input.

    solve: A with A e_q^A = B; apply: B e_q^B; exp: e_q^B; disentropy: Tr(B^q A)
    for a density matrix B.
    """
    m = matrix_arg(args.matrix)
    if args.mode == "disentropy":
        return {"disentropy": disentropy_via_operator(DensityMatrix(entries=m), args.q)}
    b = HermitianMatrix(entries=m)
    if args.mode == "solve":
        a, report = solve_operator_equation(b, args.q)
        return {"matrix": a.entries, "report": report.model_dump()}
    if args.mode == "apply":
        return {"matrix": lambert_tsallis_apply(b, args.q).entries}
    return {"matrix": matrix_q_exp(b, args.q).entries}


def gate_command(args) -> dict:
    return {"unitary": gate_family_uq(HermitianMatrix(entries=matrix_arg(args.generator)), args.q)}


def register(subparsers) -> None:
    p = subparsers.add_parser("operator", help="Operator Lambert-Tsallis equation")
    p.add_argument("--matrix", required=True, help="JSON Hermitian matrix or @file")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--mode", choices=["solve", "apply", "exp", "disentropy"], default="solve")
    p.set_defaults(handler=operator_command)

    p = subparsers.add_parser("gate", help="Gate family exp(i G e_q^G) of an involution")
    p.add_argument("--generator", required=True, help="JSON Hermitian involution or @file")
    p.add_argument("--q", type=float, required=True)
    p.set_defaults(handler=gate_command)
