"""``kernobs`` command-line entry point.

Exit codes: 0 all checks passed, 1 some check failed, 2 usage error,
3 unreadable or malformed input file, 4 size cap exceeded.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import composition as comp
from . import decomp, generated, graph as gr, quasiorder as qo, verify
from .errors import CapExceededError, KernobsError
from .interval import pathwidth_via_interval
from .obstructions import ternary_tree_obstruction, verify_ternary_obstruction
from .pathwidth import SOLVER_CAP, pathwidth, pathwidth_le

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_CAP = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def _load_graph(path: str) -> gr.Graph:
    try:
        return gr.from_text(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_instance(path: str) -> qo.ParamInstance:
    try:
        return qo.read_instance(_read(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def report(experiment: str, parameters: dict, checks: dict) -> dict:
    return {
        "schema": verify.SCHEMA,
        "experiment": experiment,
        "parameters": parameters,
        "checks": checks,
        "passed": all(c["status"] != "fail" for c in checks.values()),
    }


def _check(ok: bool, **measured) -> dict:
    return {"status": "pass" if ok else "fail", "measured": measured}


def dump_json(rep: dict) -> str:
    return json.dumps(rep, sort_keys=True, indent=2) + "\n"


def _emit(rep: dict, args, lines: list[str] = ()) -> int:
    for line in lines:
        print(line)
    for name, c in rep["checks"].items():
        print(f"{c['status'].upper():7s} {name}")
    if getattr(args, "json", None):
        _write(args.json, dump_json(rep))
    return EXIT_OK if rep["passed"] else EXIT_FAIL


# -- subcommands ---------------------------------------------------------------

def cmd_pw(args) -> int:
    path = args.graph or args.graph_file
    if path is None:
        raise argparse.ArgumentError(None, "pw needs a graph file")
    g = _load_graph(path)
    res = pathwidth(g, args.cap)
    lines = [f"pathwidth {res.value}"]
    checks = {"witness_valid": _check(decomp.validate(res.witness, g) and decomp.width(res.witness) == res.value,
                                      width=decomp.width(res.witness))}
    if args.le is not None:
        answer = pathwidth_le(g, args.le, args.cap)
        lines.append(f"pathwidth <= {args.le}: {'yes' if answer else 'no'}")
        checks["early_exit_agrees"] = _check(answer == (res.value <= args.le), k=args.le)
    if args.interval_oracle:
        other = pathwidth_via_interval(g)
        lines.append(f"interval oracle {other}")
        checks["interval_oracle_agrees"] = _check(other == res.value, interval=other)
    lines.append("witness")
    lines.extend("  " + " ".join(map(str, sorted(b))) for b in res.witness.bags)
    if args.witness:
        _write(args.witness, decomp.to_text(res.witness))
    rep = report("pw", {"vertices": g.n, "edges": g.m, "pathwidth": res.value}, checks)
    return _emit(rep, args, lines)


def cmd_obstruction(args) -> int:
    if args.action == "gen":
        obs = ternary_tree_obstruction(args.height)
        text = gr.to_text(obs.graph)
        if args.out:
            _write(args.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    r = verify_ternary_obstruction(args.height, args.cap)
    rep = report("obstruction-verify", {"height": args.height}, {
        "minor_minimal_obstruction": _check(r.ok, **r.as_dict()),
    })
    lines = [f"height {r.height}: {r.vertices} vertices, pathwidth {r.pathwidth}, "
             f"{r.minors_within}/{r.minors_checked} one-step minors have pathwidth <= {r.height}"]
    return _emit(rep, args, lines)


def _pattern(text: str) -> tuple[bool, ...]:
    if not text or set(text) - {"y", "n"}:
        raise argparse.ArgumentTypeError("pattern is a string over 'y'/'n', e.g. 'nyn'")
    return tuple(ch == "y" for ch in text)


def cmd_compose(args) -> int:
    if args.demo:
        patterns = [args.pattern] if args.pattern else list(itertools.product((False, True), repeat=3))
        checks, lines = {}, []
        for pat in patterns:
            c = comp.cross_compose(comp.demo_inputs(pat))
            r = comp.verify_or_semantics(c, exact=True, cap=args.cap)
            tag = "".join("y" if b else "n" for b in pat)
            checks[f"or_semantics_{tag}"] = _check(r.agrees, **r.as_dict())
            lines.append(f"{tag}: |V(G')|={c.g_prime.n} k'={c.k_prime} pw(G')={r.composed_pathwidth} "
                         f"OR={'yes' if any(r.input_answers) else 'no'}")
        return _emit(report("compose-demo", {"t": 3, "k": 3, "k_prime": 7}, checks), args, lines)

    if not args.inputs:
        raise argparse.ArgumentError(None, "compose needs --inputs or --demo")
    blobs = [_read_bytes(p) for p in args.inputs]
    try:
        g, k_prime, c = comp.compose_raw(blobs)
    except ValueError as exc:
        if isinstance(exc, CapExceededError):
            raise
        raise InputError(str(exc)) from None
    text = gr.to_text(g) + f"k {k_prime}\n"
    if args.out:
        _write(args.out, text)
    params = {"inputs": len(blobs), "vertices": g.n, "k_prime": k_prime}
    if c is not None:
        params["provenance"] = c.provenance()
    lines = [f"composed graph: {g.n} vertices, {g.m} edges, k' = {k_prime}"]
    checks = {}
    if c is not None and args.verify:
        r = comp.verify_or_semantics(c, exact=args.exact, cap=args.cap)
        checks["or_semantics"] = _check(r.agrees, **r.as_dict())
    if c is not None and args.witness_if_yes:
        answers = [inst.answer(args.cap) for inst in c.inputs]
        if any(answers):
            i = answers.index(True)
            w = comp.witness_decomposition(c, i, pathwidth(c.inputs[i].g, args.cap).witness)
            _write(args.witness_if_yes, decomp.to_text(w))
            lines.append(f"witness from input {i}: width {decomp.width(w)}")
        else:
            lines.append("no input is a yes-instance; no witness written")
    return _emit(report("compose", params, checks), args, lines)


def _problem(name: str):
    if name == "threecol":
        return qo.threecol_precedes, qo.threecol_oracle, qo.threecol_obstruction_bound, qo.threecol_instances
    kernel = qo.pathwidth_kernel()
    order = lambda a, b: qo.kernel_order_precedes(a, b, kernel)  # noqa: E731
    return order, qo.pathwidth_oracle, qo.pathwidth_kernel_bound, qo.matrix_instances


def cmd_qorder(args) -> int:
    order, oracle, bound, enum = _problem(args.problem)
    if args.action == "test":
        a, b = _load_instance(args.a), _load_instance(args.b)
        ans = order(a, b)
        print(f"precedes: {'true' if ans else 'false'}")
        rep = report("qorder-test", {"problem": args.problem}, {})
        rep["result"] = ans
        if args.json:
            _write(args.json, dump_json(rep))
        return EXIT_OK
    if args.action == "obstructions":
        obs = qo.compute_obstruction_set(args.k, order, bound, oracle, enum)
        lines = [f"{len(obs)} obstruction(s) at k={args.k}, size bound {bound(args.k)}"]
        for o in obs.elements:
            g = o.graph()
            desc = f"{g.n} vertices, {g.m} edges" if g is not None else "malformed"
            lines.append(f"  {o.x.decode('ascii', 'replace')}  ({desc})")
        rep = report("qorder-obstructions", {"problem": args.problem, "k": args.k}, {
            "all_no_instances": _check(all(not oracle(o) for o in obs.elements), count=len(obs)),
        })
        rep["obstructions"] = [o.x.decode("ascii", "replace") for o in obs.elements]
        return _emit(rep, args, lines)
    inst = _load_instance(args.instance)
    truth = oracle(inst)
    if args.via_obstructions:
        obs = qo.compute_obstruction_set(inst.k, order, bound, oracle, enum)
        ans = qo.decide_via_obstructions(inst, obs, order)
    else:
        ans = truth
    checks = {"agrees_with_oracle": _check(ans == truth, answer=ans, oracle=truth)}
    rep = report("qorder-decide", {"problem": args.problem, "k": inst.k, "via_obstructions": args.via_obstructions},
                 checks)
    return _emit(rep, args, [f"answer: {'yes' if ans else 'no'}"])


def cmd_gorder(args) -> int:
    g = _load_graph(args.graph)
    inst = qo.ParamInstance.of_graph(g, args.k)
    if args.action == "enumerate":
        outs = generated.enumerate_order(inst, args.order, args.mode)
        codes = sorted(o.x for o in outs)
        lines = [f"{len(codes)} element(s) below the input under the {args.order} order ({args.mode})"]
        lines.extend("  " + c.decode("ascii") for c in codes)
        rep = report("gorder-enumerate", {"order": args.order, "mode": args.mode, "vertices": g.n}, {})
        rep["outputs"] = [c.decode("ascii") for c in codes]
        return _emit(rep, args, lines)
    if args.problem == "clique":
        enumerator, p, oracle = generated.enumerate_induced_subgraph_order, generated.clique_bound, generated.clique_oracle
    else:
        enumerator, p, oracle = generated.enumerate_minor_order, generated.pathwidth_obstruction_bound, qo.pathwidth_oracle
    out = generated.conp_kernel(inst, enumerator, p, generated.yes_constant(args.k))
    no_outputs = sum(not oracle(o) for o in out.outputs)
    lines = [f"{len(out.outputs)} output(s), size bound {out.bound}, input is a "
             f"{'yes' if oracle(inst) else 'no'}-instance, {no_outputs} no-output(s)"]
    checks = {}
    if args.verify:
        checks["conp_kernel"] = _check(generated.verify_conp_kernel(inst, out, oracle),
                                       outputs=len(out.outputs), no_outputs=no_outputs, bound=out.bound)
    rep = report("gorder-conp-kernel", {"problem": args.problem, "k": args.k, "vertices": g.n}, checks)
    return _emit(rep, args, lines)


def cmd_verify_all(args) -> int:
    rep = verify.run_all(args.level, args.only)
    return _emit(rep, args)


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kernobs", description="pathwidth obstructions and kernel experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, cap=True):
        p.add_argument("--json", metavar="PATH", help="write a machine-readable report")
        if cap:
            p.add_argument("--cap", type=int, default=SOLVER_CAP, help="solver vertex cap")

    p = sub.add_parser("pw", help="exact pathwidth of a graph file")
    p.add_argument("graph_file", nargs="?")
    p.add_argument("--graph")
    p.add_argument("--le", type=int, metavar="K", help="also answer pw <= K with the early-exit search")
    p.add_argument("--witness", metavar="OUT", help="write the optimal decomposition here")
    p.add_argument("--interval-oracle", action="store_true", help="cross-check with interval supergraphs")
    common(p)
    p.set_defaults(func=cmd_pw)

    p = sub.add_parser("obstruction", help="ternary tree obstructions")
    osub = p.add_subparsers(dest="action", required=True)
    q = osub.add_parser("gen")
    q.add_argument("--height", type=int, required=True)
    q.add_argument("--out")
    q.set_defaults(func=cmd_obstruction)
    q = osub.add_parser("verify")
    q.add_argument("--height", type=int, required=True)
    common(q)
    q.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("compose", help="cross-compose improvement instances")
    p.add_argument("--inputs", nargs="+", metavar="FILE")
    p.add_argument("--out")
    p.add_argument("--witness-if-yes", metavar="PD")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--exact", action="store_true", help="compute pw(G') instead of the early-exit test")
    p.add_argument("--demo", action="store_true", help="t=3, k=3 instances built from P_3 and K_3")
    p.add_argument("--pattern", type=_pattern, help="demo pattern such as 'nyn' (default: all eight)")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("qorder", help="kernel-derived quasi-orders")
    qsub = p.add_subparsers(dest="action", required=True)
    for name in ("test", "obstructions", "decide"):
        q = qsub.add_parser(name)
        q.add_argument("--problem", choices=("threecol", "pathwidth"), required=True)
        q.add_argument("--json", metavar="PATH")
        q.set_defaults(func=cmd_qorder)
        if name == "test":
            q.add_argument("--a", required=True)
            q.add_argument("--b", required=True)
        elif name == "obstructions":
            q.add_argument("--k", type=int, required=True)
        else:
            q.add_argument("--instance", required=True)
            q.add_argument("--via-obstructions", action="store_true")

    p = sub.add_parser("gorder", help="generated orders and coNP-kernels")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("enumerate")
    q.add_argument("--order", choices=("minor", "subgraph", "induced"), required=True)
    q.add_argument("--graph", required=True)
    q.add_argument("--k", type=int, default=0)
    q.add_argument("--mode", choices=("canonical", "raw"), default="canonical")
    q.add_argument("--json", metavar="PATH")
    q.set_defaults(func=cmd_gorder)
    q = gsub.add_parser("conp-kernel")
    q.add_argument("--problem", choices=("pathwidth", "clique"), required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--graph", required=True)
    q.add_argument("--verify", action="store_true")
    q.add_argument("--json", metavar="PATH")
    q.set_defaults(func=cmd_gorder)

    p = sub.add_parser("verify-all", help="run every claim check")
    p.add_argument("--level", choices=tuple(verify.LEVELS), default="small")
    p.add_argument("--only", nargs="+", choices=tuple(verify.CHECKS), metavar="CLAIM")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except argparse.ArgumentError as exc:
        print(f"kernobs: error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"kernobs: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CapExceededError as exc:
        print(f"kernobs: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except KernobsError as exc:
        print(f"kernobs: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
