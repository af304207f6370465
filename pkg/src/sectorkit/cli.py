"""Command-line interface: every module behind stable JSON output.

Exit codes: 0 success with all residuals below tolerance, 2 verification
failure (the residual report is still emitted), 1 input/usage error.
The default tolerance is 1e-9, overridable per run with --tol or globally
with the SECTORKIT_TOL environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import double, groups, inclusions, jsonio, spinchain, tl, verlinde, wedge
from .errors import InputError, SectorKitError
from .jsonio import SCHEMA_TAG


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _default_tol() -> float:
    raw = os.environ.get("SECTORKIT_TOL")
    if raw is None:
        return 1e-9
    try:
        return float(raw)
    except ValueError as exc:
        raise InputError(f"bad SECTORKIT_TOL {raw!r}") from exc


def _load_json_arg(text: str):
    try:
        return jsonio.loads(text)
    except Exception as exc:
        raise InputError(f"bad JSON argument: {exc}") from exc


def _read_input(path: str | None):
    if path is None:
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = jsonio.loads(fh.read())
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from exc
    return data


def _require_keys(data: dict, allowed: set[str], context: str):
    unknown = set(data) - allowed - {"schema"}
    if unknown:
        raise InputError(f"unknown fields in {context}: {sorted(unknown)}")


def _complex_matrix(entries) -> np.ndarray:
    def one(z):
        if isinstance(z, (int, float)):
            return complex(z)
        if isinstance(z, list) and len(z) == 2:
            return complex(z[0], z[1])
        raise InputError(f"bad complex entry {z!r}")

    return np.array([[one(z) for z in row] for row in entries])


def _complex_vector(entries) -> np.ndarray:
    return _complex_matrix([entries])[0]


# ---------------------------------------------------------------------------
# subcommands


def _group_args(data, args):
    if data is not None:
        _require_keys(data, {"degree", "generators"}, "group input")
        return int(data["degree"]), data["generators"]
    if args.degree is None or args.gens is None:
        raise InputError("group needs --input or both --degree and --gens")
    return int(args.degree), _load_json_arg(args.gens)


def cmd_group(args, tol: float) -> tuple[dict, bool]:
    degree, gens = _group_args(_read_input(args.input), args)
    report = groups.group_report(degree, gens)
    residual = max(
        report["orthogonality_residual"],
        report["s_unitarity_residual"],
        report["relation_residuals"]["max_residual"],
        report["fusion_commutator_max"],
    )
    out = {"schema": SCHEMA_TAG, "command": "group"}
    out.update(report)
    return out, residual <= tol


def cmd_double(args, tol: float) -> tuple[dict, bool]:
    degree, gens = _group_args(_read_input(args.input), args)
    g = groups.enumerate_group(degree, gens)
    md = double.double_modular_data(g)
    report = verlinde.modular_report(md)
    sectors = double.enumerate_double_sectors(g)
    out = {
        "schema": SCHEMA_TAG,
        "command": "double",
        "labels": md.labels,
        "qdims": md.qdims,
        "S": md.s,
        "kappa": md.kappa,
        "sectors": [
            {"class_index": s.class_index, "centralizer_irrep": s.centralizer_irrep,
             "qdim": s.qdim}
            for s in sectors
        ],
        "relation_residuals": report["relation_residuals"],
        "fusion": report["fusion"],
        "central_charge_mod8": report["central_charge_mod8"],
    }
    ok = report["relation_residuals"]["max_residual"] <= tol
    return out, ok


def cmd_index(args, tol: float) -> tuple[dict, bool]:
    data = _read_input(args.input)
    out = {"schema": SCHEMA_TAG, "command": "index"}
    if data is not None:
        _require_keys(data, {"small", "big", "incidence"}, "inclusion input")
        spec = inclusions.InclusionSpec(
            small=inclusions.MultiMatrixAlgebra(data["small"]),
            big=inclusions.MultiMatrixAlgebra(data["big"]),
            incidence=data["incidence"],
        )
        out.update(inclusions.inclusion_report(spec))
        ok = out["index_incidence"] == out["index_projector"]
        out["index"] = out["index_incidence"]
        return out, ok
    if args.incidence is None:
        raise InputError("index needs --input or --incidence")
    lam = _load_json_arg(args.incidence)
    result = inclusions.jones_index_incidence(lam)
    out["index"] = result.index
    out["opnorm_sq"] = result.opnorm_sq
    return out, True


def cmd_tl(args, tol: float) -> tuple[dict, bool]:
    params = tl.HeckeParams(math.inf if args.q == "inf" else int(args.q))
    out = {"schema": SCHEMA_TAG, "command": "tl", "q": args.q,
           "delta": params.delta, "tau": params.tau}
    ok = True
    if args.word is not None:
        word = _load_json_arg(args.word)
        out["word"] = word
        out["markov_trace"] = tl.braid_markov_trace(word, params, args.strands)
        out["markov_parameter"] = tl.markov_parameter(params)
    if args.jones_wenzl is not None:
        n = int(args.jones_wenzl)
        element = tl.jones_wenzl(n, params)
        trace = tl.markov_trace(element)
        oracle = tl.jones_wenzl_trace_oracle(n, params.delta)
        out["jones_wenzl"] = {
            "n": n,
            "terms": len(element.terms),
            "markov_trace": trace,
            "chebyshev_oracle": oracle,
        }
        ok = ok and abs(trace - oracle) <= max(tol, 1e-9)
    if args.gram is not None:
        n = int(args.gram)
        eigs = np.linalg.eigvalsh(tl.gram_matrix(n, params.delta))
        out["gram"] = {"n": n, "min_eigenvalue": float(eigs.min()),
                       "dimension": len(eigs)}
        ok = ok and eigs.min() >= -max(tol, 1e-9)
    return out, ok


def cmd_scan(args, tol: float) -> tuple[dict, bool]:
    alphas = np.arange(args.alpha_min, args.alpha_max + args.alpha_step / 2,
                       args.alpha_step)
    etas = np.arange(0.0, 1.0 + args.eta_step / 2, args.eta_step)
    survivors = tl.positivity_scan(alphas, etas, n_max=args.n_max)
    out = {
        "schema": SCHEMA_TAG,
        "command": "scan",
        "n_max": args.n_max,
        "alpha_step": args.alpha_step,
        "eta_step": args.eta_step,
        "survivors": survivors,
    }
    return out, True


def cmd_verlinde(args, tol: float) -> tuple[dict, bool]:
    if args.dataset is not None:
        md = {
            "toric": verlinde.toric_code_data,
            "fibonacci": verlinde.fibonacci_data,
            "semion": verlinde.semion_data,
            "trivial": lambda: verlinde.ModularData(
                labels=["1"], s=np.array([[1.0]]), kappa=np.array([1.0])
            ),
        }.get(args.dataset, lambda: None)()
        if md is None:
            raise InputError(f"unknown dataset {args.dataset!r}")
    else:
        data = _read_input(args.input)
        if data is None:
            raise InputError("verlinde needs --dataset or --input")
        _require_keys(data, {"labels", "S", "kappa"}, "modular data input")
        md = verlinde.ModularData(
            labels=[str(x) for x in data["labels"]],
            s=_complex_matrix(data["S"]),
            kappa=_complex_vector(data["kappa"]),
        )
    report = verlinde.modular_report(md)
    out = {"schema": SCHEMA_TAG, "command": "verlinde"}
    out.update(report)
    ok = (
        report["relation_residuals"]["max_residual"] <= max(tol, 1e-9)
        and report["fusion_axiom_residuals"]["max_residual"] == 0
        and report["nondegeneracy"]["nondegenerate"]
    )
    return out, ok


def cmd_zf(args, tol: float) -> tuple[dict, bool]:
    factories = {
        "free": wedge.free_model,
        "ising": wedge.ising_model,
        "sinh_gordon": lambda: wedge.sinh_gordon_model(args.b),
        "crossing_broken": lambda: wedge.crossing_broken_model(args.b),
    }
    if args.model not in factories:
        raise InputError(f"unknown model {args.model!r}")
    model = factories[args.model]()
    grid = wedge.RapidityGrid(theta_max=args.theta_max, points=args.points,
                              mass=args.mass)
    out = {"schema": SCHEMA_TAG, "command": "zf", "model": args.model}
    checks = ["relations", "crossing", "kms"] if args.check == "all" else [args.check]
    ok = True
    for check in checks:
        if check == "crossing":
            residual = wedge.crossing_check(model, grid)
            out["crossing_residual"] = residual
            ok = ok and residual <= 1e-12
        elif check == "relations":
            coarse = wedge.RapidityGrid(theta_max=4.0, points=25, mass=grid.mass)
            report = wedge.zf_relations_check(model, coarse)
            out["zf_relations_residual"] = report["max_residual"]
            ok = ok and report["max_residual"] <= 1e-10
        elif check == "kms":
            f1 = wedge.WedgeBump(x0=1.8, t0=0.0, radius=0.3)
            f2 = wedge.WedgeBump(x0=2.4, t0=0.2, radius=0.3)
            f1p = wedge.WedgeBump(x0=2.0, t0=-0.3, radius=0.3)
            f2p = wedge.WedgeBump(x0=2.9, t0=0.1, radius=0.3)
            report = wedge.kms_fourpoint_check(model, f1, f2, f1p, f2p, grid)
            out["kms_residual"] = report["residual"]
            ok = ok and report["residual"] <= 1e-6
        else:
            raise InputError(f"unknown check {check!r}")
    out["pass"] = ok
    return out, ok


def cmd_chain(args, tol: float) -> tuple[dict, bool]:
    factors = _load_json_arg(args.monomial) if args.monomial else {}
    mono = spinchain.PauliMonomial({int(k): int(v) for k, v in factors.items()})
    out = {"schema": SCHEMA_TAG, "command": "chain",
           "monomial": {str(x): k for x, k in mono.factors}}
    if args.n is not None:
        out["commutator_norm"] = spinchain.magnetization_commutator_norm(mono, args.n)
        out["n"] = args.n
    window = max([args.window] + [abs(x) for x in mono.support])
    plus = spinchain.TailState.uniform(window, +1)
    minus = spinchain.TailState.uniform(window, -1)
    out["overlap_plus_minus"] = spinchain.sector_overlap(plus, mono, minus)
    out["overlap_plus_plus"] = spinchain.sector_overlap(plus, mono, plus)
    return out, True


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="verification tolerance (default 1e-9 or SECTORKIT_TOL)")
    common.add_argument("--output", default=None,
                        help="write JSON here instead of stdout")
    parser = _Parser(prog="sector-kit", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("group", help="character data of a permutation group")
    p.add_argument("--degree", type=int)
    p.add_argument("--gens", help="JSON list of image lists")
    p.add_argument("--input", help="JSON file {degree, generators}")

    p = add_parser("double", help="modular data of the quantum double")
    p.add_argument("--degree", type=int)
    p.add_argument("--gens")
    p.add_argument("--input")

    p = add_parser("index", help="Jones index of an inclusion")
    p.add_argument("--incidence", help="JSON incidence matrix")
    p.add_argument("--input", help="JSON file {small, big, incidence}")

    p = add_parser("tl", help="Temperley-Lieb traces and projectors")
    p.add_argument("--q", default="5")
    p.add_argument("--word", help="JSON braid word of signed generator indices")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--jones-wenzl", dest="jones_wenzl", type=int, default=None)
    p.add_argument("--gram", type=int, default=None)

    p = add_parser("scan", help="positivity scan of the statistics parameters")
    p.add_argument("--alpha-min", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=0.7)
    p.add_argument("--alpha-step", type=float, default=1e-3)
    p.add_argument("--eta-step", type=float, default=1e-3)
    p.add_argument("--n-max", type=int, default=100)

    p = add_parser("verlinde", help="modular data checks and Verlinde fusion")
    p.add_argument("--dataset", choices=["toric", "fibonacci", "semion", "trivial"])
    p.add_argument("--input", help="JSON file {labels, S, kappa}")

    p = add_parser("zf", help="ZF relations, crossing, and the KMS identity")
    p.add_argument("--model", default="free")
    p.add_argument("--b", type=float, default=0.4)
    p.add_argument("--check", default="all",
                   choices=["all", "relations", "crossing", "kms"])
    p.add_argument("--theta-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=481)
    p.add_argument("--mass", type=float, default=1.0)

    p = add_parser("chain", help="spin-chain commutators and sector overlaps")
    p.add_argument("--monomial", help='JSON {"site": pauli}, e.g. {"0": 1}')
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--window", type=int, default=3)
    return parser


_COMMANDS = {
    "group": cmd_group,
    "double": cmd_double,
    "index": cmd_index,
    "tl": cmd_tl,
    "scan": cmd_scan,
    "verlinde": cmd_verlinde,
    "zf": cmd_zf,
    "chain": cmd_chain,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        tol = args.tol if args.tol is not None else _default_tol()
        out, ok = _COMMANDS[args.command](args, tol)
    except InputError as exc:
        print(f"sector-kit: {exc}", file=sys.stderr)
        return 1
    except SectorKitError as exc:
        print(f"sector-kit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = jsonio.dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
