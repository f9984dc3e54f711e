"""Command-line interface: every computation and check as a batch command with a JSON report.

Exit status is 0 when the report's ``ok`` is true, 1 when a verification fails
and 2 on usage errors. Reports are deterministic for fixed flags and seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

from . import algebras, criteria, hochschild, posets, seq, trees
from .combinat import TwoTree
from .errors import SwissCheeseError
from .fields import DEFAULT_PRIME, FIELD_ENV, Field, field_from_string

SCHEMA = "swisscheese.report/1"


class UsageError(Exception):
    """Bad flag values; reported with exit status 2."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_jsonable(v) for v in x), key=repr)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


def _load_json(text: str, flag: str):
    """Inline JSON or a path to a JSON file."""
    try:
        if os.path.isfile(text):
            with open(text) as fh:
                return json.load(fh)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: not valid JSON or a readable JSON file ({exc})")


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}")


def _positive(value: int, flag: str) -> int:
    if value < 1:
        raise UsageError(f"{flag} must be positive, got {value}")
    return value


def _field(args, default: str | None = None) -> Field:
    spec = args.field or os.environ.get(FIELD_ENV) or default
    try:
        return field_from_string(spec)
    except ValueError as exc:
        raise UsageError(f"--field: {exc}")


def _tree_arg(text: str) -> TwoTree:
    d = _load_json(text, "--tau")
    if isinstance(d, list):
        d = {"values": d, "target": max(d, default=-1) + 1}
    return TwoTree.from_json(d)


# commands


def cmd_tree_normalize(args) -> dict:
    t = trees.Vertex.from_json(_load_json(args.tree, "--tree"))
    prof = trees.validate_tree(t, args.sc)
    m = trees.to_minimal(t)
    return {
        "claim": "every tree reduces to a unique minimal tree",
        "minimal": m.to_json(),
        "word": trees.nu_ord(t, args.sc).to_json(),
        "n_tokens": prof.n_tokens,
        "was_minimal": trees.is_minimal(t),
        "ok": trees.is_minimal(m),
    }


def cmd_tree_roundtrip(args) -> dict:
    return criteria.tree_roundtrip(_positive(args.max_tokens, "--max-tokens"))


def cmd_tree_example(args) -> dict:
    return criteria.tree_example(_positive(args.trials, "--trials"), args.seed, _field(args))


def cmd_operad_enumerate(args) -> dict:
    blocks = _ints(args.blocks, "--blocks")
    alg = frozenset(_ints(args.algebra, "--algebra")) if args.algebra else frozenset()
    tau = _tree_arg(args.tau) if args.tau else None
    if tau is not None and tau.source != len(blocks):
        raise UsageError("--tau must have one input per block")
    elems = [
        e
        for e in seq.enumerate_elements(blocks, args.J, alg, args.sc or bool(alg))
        if tau is None or seq.in_seq_tau(e, tau)
    ]
    return {
        "claim": "elements with the given input and output sizes",
        "count": len(elems),
        "elements": [e.to_json() for e in elems[: args.limit]],
        "ok": True,
    }


def cmd_operad_compose(args) -> dict:
    outer = seq.SeqElem.from_json(_load_json(args.outer, "--outer"))
    inners = [seq.SeqElem.from_json(d) for d in _load_json(args.inners, "--inners")]
    z = seq.compose(outer, inners)
    lhs = seq.filtration_level(z)
    rhs = seq.filtration_level(outer) + sum(seq.filtration_level(v) for v in inners)
    return {
        "claim": "operadic composite and its filtration level",
        "composite": z.to_json(),
        "word": seq.to_word(z),
        "filtration_level": lhs,
        "bound": rhs,
        "ok": lhs <= rhs,
    }


def cmd_operad_validate(args) -> dict:
    d = _load_json(args.element, "--element")
    try:
        e = seq.SeqElem.from_json(d)
    except SwissCheeseError as exc:
        return {"claim": "the element is valid", "error": str(exc), "ok": False}
    return {
        "claim": "the element is valid",
        "degree": e.degree(),
        "elementary_classes": seq.elementary_classes(e),
        "filtration_level": seq.filtration_level(e),
        "word": seq.to_word(e),
        "ok": True,
    }


def cmd_operad_filtration(args) -> dict:
    return criteria.subadditivity(_positive(args.samples, "--samples"), args.seed)


def cmd_xi_homology(args) -> dict:
    ks = _ints(args.k, "--k")
    cut = _ints(args.cutoffs, "--cutoffs")
    if len(cut) != 2 or min(cut) < 1 or min(ks, default=0) < 1:
        raise UsageError("--cutoffs takes SIMPLICIAL_DIM,J (two positive integers); --k positive")
    return criteria.xi_check(ks, cut[1], cut[0], _field(args))


def cmd_graded_verify(args) -> dict:
    f = _field(args)
    if args.tau:
        tau = _tree_arg(args.tau)
        if not tau.is_pruned():
            raise UsageError("--tau must be a pruned tree")
        r = criteria.graded_check(tau, args.N, args.J_cut, f)
        r["claim"] = "the graded piece has cohomology of dimension |D(tau,N)| in degree -N"
        return r
    return criteria.graded_all(args.max_inputs, args.N, (args.J_cut - 1, args.J_cut), f)


def cmd_graded_reduced(args) -> dict:
    return criteria.reduced_check(args.max_inputs, args.N, _field(args))


def cmd_dsets_count(args) -> dict:
    d = _load_json(args.target, "--target")
    target = d if isinstance(d, int) else _tree_arg(args.target)
    alg = _ints(args.algebra, "--algebra") if args.algebra else ()
    return criteria.dsets_count(target, args.N, alg)


def cmd_dsets_inclusion(args) -> dict:
    return criteria.inclusion_check(args.max_inputs, args.N)


def cmd_poset_nerve(args) -> dict:
    f = _field(args)
    if args.sigma:
        sigma = _load_json(args.sigma, "--sigma")
        alg = _load_json(args.algebra, "--algebra") if args.algebra else []
        r = criteria.nerve_check(tuple(sigma), args.sc or bool(alg), tuple(alg), f)
        r["claim"] = "the poset of trees compatible with the surjection has a contractible nerve"
        if args.edges:
            r["edges"] = posets.build_J_sigma(tuple(sigma), args.sc or bool(alg), tuple(alg)).to_edge_list()
        return r
    return criteria.nerve_all(args.max_inputs, args.N, f)


def cmd_retraction_suite(args) -> dict:
    sigma = tuple(_load_json(args.sigma, "--sigma")) if args.sigma else None
    alg = tuple(_load_json(args.algebra, "--algebra")) if args.algebra else None
    return criteria.retraction_check(sigma, args.sc or None, alg, _positive(args.samples, "--samples"), args.seed)


def _algebra_names(text: str) -> list[str]:
    return [n.strip() for n in text.split(",") if n.strip()]


def cmd_algebra_check(args) -> dict:
    f = _field(args)
    out = []
    for name in _algebra_names(args.algebra):
        A = algebras.load_algebra(name, f)
        e = [A.basis(i) for i in range(A.dim)]
        out.append(
            {
                "algebra": A.name,
                "dim": A.dim,
                "commutative": all(A.mul(x, y) == A.mul(y, x) for x in e for y in e),
                "structure": A.to_json(),
            }
        )
    return {"claim": "structure constants define a unital associative algebra", "results": out, "ok": True}


def cmd_hh_compute(args) -> dict:
    f = _field(args)
    names = _algebra_names(args.algebra)
    r = criteria.hh_check(names, args.nmax, f)
    if args.representatives:
        r["representatives"] = {
            n: hochschild.hh(algebras.load_algebra(n, f), args.nmax, oracle=False).to_json()["representatives"]
            for n in names
        }
    return r


def cmd_hsc2_verify(args) -> dict:
    return criteria.hsc2_check(_algebra_names(args.algebra), args.max_arity, _field(args))


def cmd_action_chainmap(args) -> dict:
    f = _field(args, default=str(DEFAULT_PRIME))
    return criteria.chain_map_check(args.algebra, _positive(args.budget, "--budget"), args.seed, f)


def cmd_acceptance(args) -> dict:
    chosen = _ints(args.criterion, "--criterion") if args.criterion else sorted(criteria.CRITERIA)
    bad = [k for k in chosen if k not in criteria.CRITERIA]
    if bad:
        raise UsageError(f"--criterion: unknown {bad}; choose from 1..{len(criteria.CRITERIA)}")
    results = {}
    for k in chosen:
        name, run = criteria.CRITERIA[k]
        start = time.perf_counter()
        r = run()
        secs = time.perf_counter() - start
        results[str(k)] = {"name": name, "ok": r["ok"], "claim": r["claim"], "report": r}
        print(f"criterion {k:>2} {name}: {'PASS' if r['ok'] else 'FAIL'} ({secs:.1f}s)", file=sys.stderr)
    return {
        "claim": "acceptance checks",
        "summary": {k: v["ok"] for k, v in results.items()},
        "results": results,
        "ok": all(v["ok"] for v in results.values()),
    }


# parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", help=f"Q, p (F_{DEFAULT_PRIME}) or F_<prime>; default from ${FIELD_ENV} or Q")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swisscheese", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group: str, name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        if group not in subs:
            g = groups.add_parser(group, help=f"{group} commands")
            subs[group] = g.add_subparsers(dest="command", required=True)
        p = subs[group].add_parser(name, help=help)
        _common(p)
        p.set_defaults(func=fn, command_name=f"{group} {name}")
        return p

    subs: dict = {}
    p = sub("tree", "normalize", cmd_tree_normalize, "minimal form and boundary word of a tree")
    p.add_argument("--tree", required=True, help="tree JSON or file")
    p.add_argument("--sc", action="store_true", help="algebra-colored output")
    p = sub("tree", "roundtrip", cmd_tree_roundtrip, "exhaustive tree/word bijection check")
    p.add_argument("--max-tokens", type=int, default=8)
    p = sub("tree", "example", cmd_tree_example, "four equivalent trees evaluated over 2x2 matrices")
    p.add_argument("--trials", type=int, default=100)

    p = sub("operad", "enumerate", cmd_operad_enumerate, "elements with given input and output sizes")
    p.add_argument("--blocks", required=True, help="input sizes, e.g. 2,1")
    p.add_argument("--J", type=int, default=1, help="output size")
    p.add_argument("--algebra", help="algebra-colored inputs, e.g. 1")
    p.add_argument("--sc", action="store_true")
    p.add_argument("--tau", help="restrict to the 2-operadic part of this tree (JSON)")
    p.add_argument("--limit", type=int, default=50, help="elements listed in the report")
    p = sub("operad", "compose", cmd_operad_compose, "compose elements")
    p.add_argument("--outer", required=True)
    p.add_argument("--inners", required=True, help="JSON list of elements")
    p = sub("operad", "validate", cmd_operad_validate, "validate an element")
    p.add_argument("--element", required=True)
    p = sub("operad", "filtration", cmd_operad_filtration, "filtration compatibility on random composites")
    p.add_argument("--samples", type=int, default=1000)

    p = sub("xi", "homology", cmd_xi_homology, "cohomology of concatenation complexes")
    p.add_argument("--k", default="1,2,3", help="comma-separated k values")
    p.add_argument("--cutoffs", default="4,5", help="SIMPLICIAL_DIM,J cutoffs")

    p = sub("graded", "verify", cmd_graded_verify, "graded pieces against surjection counts")
    p.add_argument("--tau", help="one pruned tree (JSON); default: every tree within --max-inputs")
    p.add_argument("--N", type=int, default=2, help="filtration level (bound for the sweep)")
    p.add_argument("--max-inputs", type=int, default=3)
    p.add_argument("--J-cut", type=int, default=4)
    p = sub("graded", "reduced", cmd_graded_reduced, "G-construction for trees with at most one input")
    p.add_argument("--max-inputs", type=int, default=1)
    p.add_argument("--N", type=int, default=2)

    p = sub("dsets", "count", cmd_dsets_count, "count surjections for a tree or a label set")
    p.add_argument("--target", required=True, help="tree JSON, or the number of labels")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--algebra", help="algebra labels when the target is a label count")
    p = sub("dsets", "inclusion", cmd_dsets_inclusion, "tree surjections lie in label-set surjections")
    p.add_argument("--max-inputs", type=int, default=3)
    p.add_argument("--N", type=int, default=2)

    p = sub("poset", "nerve", cmd_poset_nerve, "reduced homology of compatible-tree posets")
    p.add_argument("--sigma", help="surjection as a JSON list of labels; default: sweep")
    p.add_argument("--algebra", help="JSON list of algebra labels")
    p.add_argument("--sc", action="store_true")
    p.add_argument("--edges", action="store_true", help="include the cover relations")
    p.add_argument("--max-inputs", type=int, default=3)
    p.add_argument("--N", type=int, default=2)

    p = sub("retraction", "suite", cmd_retraction_suite, "explicit deformation retractions on samples")
    p.add_argument("--sigma", help="JSON list of labels; default: the four-label example")
    p.add_argument("--algebra", help="JSON list of algebra labels")
    p.add_argument("--sc", action="store_true")
    p.add_argument("--samples", type=int, default=500)

    p = sub("algebra", "check", cmd_algebra_check, "validate algebras")
    p.add_argument("--algebra", default="dual_numbers", help="builtin names or JSON files, comma-separated")
    p = sub("hh", "compute", cmd_hh_compute, "Hochschild cohomology dimensions")
    p.add_argument("--algebra", default="dual_numbers,m2")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--representatives", action="store_true", help="include cocycle representatives")
    p = sub("hsc2", "verify", cmd_hsc2_verify, "Swiss-cheese homology relations on (HH(A), A)")
    p.add_argument("--algebra", default="dual_numbers,group_z2,upper_triangular")
    p.add_argument("--max-arity", type=int, default=4)
    p = sub("action", "chainmap", cmd_action_chainmap, "chain-map identity of the action on cochains")
    p.add_argument("--algebra", default="dual_numbers")
    p.add_argument("--budget", type=int, default=4, help="token budget")

    p = groups.add_parser("acceptance", help="run acceptance checks")
    _common(p)
    p.add_argument("--criterion", help="comma-separated criterion numbers (default all)")
    p.set_defaults(func=cmd_acceptance, command_name="acceptance")
    return parser


def _config(args) -> dict:
    skip = {"func", "command_name", "group", "command", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _check_counts(args) -> None:
    # every integer option except the seed is a size or a level
    for key, value in vars(args).items():
        if key != "seed" and isinstance(value, int) and not isinstance(value, bool) and value < 0:
            raise UsageError(f"--{key.replace('_', '-')} must be non-negative, got {value}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.field = args.field or os.environ.get(FIELD_ENV)
    try:
        _check_counts(args)
        result = args.func(args)
    except (UsageError, SwissCheeseError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"swisscheese {args.command_name}: error: {msg}", file=sys.stderr)
        return 2
    report = {
        "schema": SCHEMA,
        "command": args.command_name,
        "config": _config(args),
        "claim": result.get("claim", ""),
        "ok": bool(result["ok"]),
        "result": result,
    }
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
