"""Command line interface: ``troplat <command> -i matrix.json [options]``.

Exit status is 0 on success, 1 on a domain error (an error document with a
stable ``error`` code is written to stdout) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import amoeba, catalog, measure, oracle, serialize
from .entropy import (
    bimatroid_axiom_check,
    entropy_from_bimatroid,
    entropy_vector,
    is_supermodular,
    minor_valuations,
)
from .errors import NotMemberError, TroplatError
from .polyhedral import sigma_complex
from .subsets import mask_to_str, str_to_mask
from .tropical import (
    directional_member,
    generators,
    in_span,
    is_member,
    phi_eval,
    reconstruct,
)

COMMANDS = (
    "entropy",
    "complex",
    "generators",
    "member",
    "reconstruct",
    "sample",
    "witness",
    "ff-survival",
    "amoeba",
    "measure",
    "bimatroid",
    "export-plot",
)


class InputError(TroplatError):
    code = "invalid_input"


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("-i", "--input", help="matrix or entropy-vector JSON document")
    p.add_argument("--example", help=f"named matrix instead of -i ({', '.join(catalog.names())})")
    p.add_argument("-o", "--output", help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--prime", type=int, default=101)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=10.0)
    p.add_argument("--point", help='comma separated rationals, e.g. "0,1/2,inf"')
    p.add_argument("--subset", help='subset of [n] such as "13"')
    p.add_argument("--sigma-only", action="store_true")
    p.add_argument("--json-indent", type=int, default=2)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="troplat", description="Tropicalization of lattices over Puiseux series.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    helps = {
        "entropy": "entropy vector and supermodularity",
        "complex": "cells of the linearity complex and of Sigma",
        "generators": "tropical generators u_J",
        "member": "membership of --point in the support of Sigma",
        "reconstruct": "coefficients expressing --point in the generators",
        "sample": "valuations of random lattice points",
        "witness": "lattice element with valuation u_J for --subset (all J if omitted)",
        "ff-survival": "finite-field survival probability at --point",
        "amoeba": "sampled amoeba at t = exp(-lambda) and its distance to Sigma",
        "measure": "survival function, box-mass scan and negative boxes",
        "bimatroid": "valuated bimatroid axioms for the minor valuations",
        "export-plot": "vertices and rays of every cell (n <= 3)",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "measure":
            sp.add_argument("--radius", type=float, default=5.0, help="box radius for the scan")
            sp.add_argument("--density", help=f"closed-form density ({', '.join(measure.DENSITY_EXAMPLES)})")
    return parser


# -- input -----------------------------------------------------------------------


def _load(args):
    """Returns ``(matrix or None, entropy vector)``."""
    if args.example:
        A = catalog.matrix(args.example)
        return A, entropy_vector(A)
    if not args.input:
        raise InputError("an input document (-i) or --example is required")
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.input} is not valid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    if "rows" in doc:
        A = serialize.matrix_from_doc(doc)
        return A, entropy_vector(A)
    if "h" in doc:
        return None, serialize.entropy_from_doc(doc)
    raise InputError("input document needs 'rows' (matrix) or 'h' (entropy vector)")


def _need_matrix(A):
    if A is None:
        raise InputError("this command needs a matrix document, not an entropy vector")
    return A


def _point(args, n):
    if args.point is None:
        raise InputError("--point is required")
    try:
        v = serialize.parse_point(args.point)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    if len(v) != n:
        raise InputError(f"--point has {len(v)} coordinates, expected {n}")
    return v


def _subset(args, n):
    try:
        return str_to_mask(args.subset, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# -- commands --------------------------------------------------------------------


def cmd_entropy(args):
    A, h = _load(args)
    doc = serialize.entropy_to_doc(h)
    if A is not None:
        doc["r"] = A.r
    doc["rank"] = h.rank
    doc["supermodular"] = is_supermodular(h)
    return doc


def cmd_complex(args):
    _, h = _load(args)
    return serialize.complex_to_doc(sigma_complex(h), sigma_only=args.sigma_only)


def cmd_generators(args):
    _, h = _load(args)
    return {"n": h.n, "generators": {mask_to_str(J, h.n): serialize.point(u) for J, u in generators(h).items()}}


def cmd_member(args):
    _, h = _load(args)
    v = _point(args, h.n)
    if any(x == math.inf for x in v):
        return {"member": in_span(h, v), "criterion": "span"}
    value, act = phi_eval(h, v)
    return {
        "member": is_member(h, v),
        "phi": serialize.rat(value),
        "active": serialize.subsets(act, h.n),
        "directional": directional_member(h, v),
    }


def cmd_reconstruct(args):
    _, h = _load(args)
    rec = reconstruct(h, _point(args, h.n))
    return {
        "lambdas": {mask_to_str(J, h.n): serialize.rat(x) for J, x in rec.lambdas.items()},
        "recombined": serialize.point(rec.recombined),
        "ok": rec.ok,
        "bad_coordinate": None if rec.bad_coordinate is None else rec.bad_coordinate + 1,
    }


def cmd_sample(args):
    A, h = _load(args)
    A = _need_matrix(A)
    cfg = oracle.SampleConfig(seed=args.seed, trials=args.trials or 100)
    samples = oracle.sample_lattice_valuation(A, cfg)
    return {
        "samples": [serialize.point(s) for s in samples],
        "all_members": all(is_member(h, s) for s in samples),
    }


def cmd_witness(args):
    A, h = _load(args)
    A = _need_matrix(A)
    cfg = oracle.SampleConfig(seed=args.seed)
    gens = generators(h)
    if args.subset is not None:
        J = _subset(args, h.n)
        if J not in gens:
            raise NotMemberError(f"no generator for subset {args.subset!r} (h_J infinite or J = [n])")
        todo = [J]
    else:
        todo = list(gens)
    out = {}
    for J in todo:
        x = oracle.witness_for_generator(A, J, cfg, h=h)
        out[mask_to_str(J, h.n)] = {
            "element": [str(c) for c in x],
            "valuation": serialize.point(oracle.valuation(x)),
            "target": serialize.point(gens[J]),
        }
    return {"witnesses": out}


def cmd_ff_survival(args):
    A, h = _load(args)
    A = _need_matrix(A)
    v = _point(args, A.n)
    trunc = args.trunc if args.trunc is not None else oracle.required_truncation(A, v)
    cfg = oracle.FfConfig(prime=args.prime, trunc=trunc, trials=args.trials or 10_000, seed=args.seed)
    est = oracle.ff_survival(A, v, cfg)
    return {
        "point": serialize.point(v),
        "prime": cfg.prime,
        "trunc": cfg.trunc,
        "trials": est.trials,
        "hits": est.hits,
        "empirical": serialize.real(est.empirical),
        "exact": serialize.real(est.exact),
        "within_3sigma": est.within(3.0),
    }


def cmd_amoeba(args):
    A, h = _load(args)
    A = _need_matrix(A)
    t = math.exp(-args.lam)
    cloud = amoeba.sample_amoeba(A, t, args.trials or 1000, args.seed)
    doc = {
        "lambda": serialize.real(args.lam),
        "t": serialize.real(t),
        "samples": cloud.count,
        "kept": int(len(cloud.points)),
        "distance": serialize.real(amoeba.distance_to_sigma(cloud, sigma_complex(h))),
        "points": [[serialize.real(x) for x in p] for p in cloud.points],
    }
    return doc


def cmd_measure(args):
    if args.density:
        if args.point is None:
            raise InputError("--point is required with --density")
        pt = [float(x) for x in serialize.parse_point(args.point)]
        return {
            "density": serialize.real(measure.projected_density(args.density, args.alpha, pt)),
            "atom": serialize.real(measure.projected_atom(args.density, args.alpha)),
        }
    _, h = _load(args)
    spec = measure.SurvivalSpec(h, args.alpha)
    doc = {"alpha": serialize.real(args.alpha), "supermodular": is_supermodular(h)}
    if args.point is not None:
        doc["survival"] = serialize.real(measure.survival_q(spec, _point(args, h.n)))
    rep = measure.positivity_scan(spec, args.trials or 1000, args.radius, args.seed)
    doc["scan"] = {
        "trials": rep.trials,
        "min_mass": serialize.real(rep.min_mass),
        "negative": rep.negative,
        "cube": [[serialize.real(x) for x in c] for c in rep.cube],
    }
    if not doc["supermodular"] and all(h[m] != math.inf for m in range(1 << h.n)):
        cube = measure.find_negative_cube(h, args.alpha)
        doc["negative_cube"] = {
            "u": [serialize.real(x) for x in cube.u],
            "v": [serialize.real(x) for x in cube.v],
            "mass": serialize.real(cube.mass),
        }
    return doc


def cmd_bimatroid(args):
    A, h = _load(args)
    A = _need_matrix(A)
    nu = minor_valuations(A)
    viol = bimatroid_axiom_check(nu)
    return {
        "violations": [v.describe(A.r, A.n) for v in viol],
        "count": len(viol),
        "entropy_matches": entropy_from_bimatroid(nu) == h,
    }


def cmd_export_plot(args):
    _, h = _load(args)
    return serialize.plot_doc(sigma_complex(h), sigma_only=args.sigma_only)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def _emit(doc, args, stream):
    text = serialize.dumps(doc, args.json_indent if args.json_indent >= 0 else None)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = HANDLERS[args.command](args)
    except TroplatError as exc:
        sys.stdout.write(serialize.dumps(exc.to_json(), None))
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        sys.stdout.write(serialize.dumps(InputError(str(exc)).to_json(), None))
        return 1
    _emit(doc, args, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
