"""Command-line entry point: ``tropkit <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import automorphism as aut
from .classical import attack_trials
from .kex import STANDARD_KEX, TOY_KEX, kex_run_demo, key_space_log10
from .sat import parse_dimacs, project_assignment, reduce_to_tropical, solve_tropical_brute
from .selftest import run_selftest

KEX_PRESETS = {"standard": STANDARD_KEX, "toy": TOY_KEX}
AUT_PRESETS = {"standard": aut.STANDARD_AUT, "toy": aut.TOY_AUT}


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(lines))


def _fmt_matrix(M) -> str:
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in M.to_json()) + "]"


def _parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError:
        raise ValueError(f"cannot parse point {text!r}; expected comma-separated integers") from None


def cmd_kex(args) -> int:
    params = KEX_PRESETS[args.preset].with_seed(args.seed)
    tr = kex_run_demo(params)
    payload = tr.to_json()
    payload["key_space_log10"] = round(key_space_log10(params), 3)
    lines = [
        f"preset={args.preset} seed={args.seed} n={params.n}",
        f"A = {_fmt_matrix(tr.public.A)}",
        f"B = {_fmt_matrix(tr.public.B)}",
        f"alice p1 = {tr.alice.p1}",
        f"alice p2 = {tr.alice.p2}",
        f"bob   q1 = {tr.bob.p1}",
        f"bob   q2 = {tr.bob.p2}",
        f"u = {_fmt_matrix(tr.u)}",
        f"v = {_fmt_matrix(tr.v)}",
        f"K_A = {_fmt_matrix(tr.key_alice)}",
        f"K_B = {_fmt_matrix(tr.key_bob)}",
        f"agreement={'true' if tr.agreement else 'false'}",
    ]
    _emit(args, payload, lines)
    return 0 if tr.agreement else 1


def cmd_classical_attack(args) -> int:
    stats = attack_trials(args.k, args.p, args.trials, args.seed)
    payload = {"k": args.k, "p": args.p, "seed": args.seed, **stats.to_json()}
    lines = [
        f"k={args.k} p={args.p} trials={stats.trials} seed={args.seed}",
        f"recovered={stats.recovered} failures={stats.failures} wrong={stats.wrong}",
        f"success_rate={stats.success_rate:.4f}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_aut_keygen(args) -> int:
    params = AUT_PRESETS[args.preset]
    if args.n is not None:
        params = aut.AutParams(n=args.n, n_triangular=params.n_triangular,
                               coeff_range=params.coeff_range, q_degree=params.q_degree,
                               q_shape=params.q_shape, swap_prob=params.swap_prob,
                               max_retries=params.max_retries)
    params = params.with_seed(args.seed)
    pk, chain = aut.aut_keygen(params)
    aut.dump_json(pk, args.out_pub)
    aut.dump_json(chain, args.out_priv)
    sizes = [c.size() for c in pk.coords]
    payload = {"n": pk.n, "seed": args.seed, "factors": len(chain.factors),
               "monomials": sizes, "public": args.out_pub, "private": args.out_priv}
    lines = [f"n={pk.n} seed={args.seed} factors={len(chain.factors)}",
             f"public key monomials per coordinate: {sizes}",
             f"wrote {args.out_pub} and {args.out_priv}"]
    _emit(args, payload, lines)
    return 0


def cmd_aut_encrypt(args) -> int:
    pk = aut.load_public(args.pub)
    c = aut.encrypt(pk, _parse_point(args.point))
    _emit(args, {"ciphertext": list(c)}, [",".join(map(str, c))])
    return 0


def cmd_aut_decrypt(args) -> int:
    chain = aut.load_private(args.priv)
    s = aut.decrypt(chain, _parse_point(args.point))
    _emit(args, {"plaintext": list(s)}, [",".join(map(str, s))])
    return 0


def cmd_sat_reduce(args) -> int:
    with open(args.file) as fh:
        formula = parse_dimacs(fh.read())
    system = reduce_to_tropical(formula)
    payload = system.to_json()
    lines = system.render()
    if args.solve:
        domain = _parse_point(args.domain)
        sol = solve_tropical_brute(system, domain)
        payload["solvable"] = sol is not None
        payload["solution"] = None if sol is None else list(sol)
        if sol is None:
            lines.append("unsolvable")
        else:
            lines.append("solvable: " + ",".join(map(str, sol)))
            try:
                lines.append("assignment: " + ",".join(map(str, project_assignment(sol))))
            except ValueError:
                pass
    _emit(args, payload, lines)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest()
    ok = all(r for _, r in results)
    payload = {"checks": [{"name": n, "pass": r} for n, r in results], "pass": ok}
    lines = [f"{'PASS' if r else 'FAIL'}  {n}" for n, r in results]
    _emit(args, payload, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropkit",
        description="Min-plus key exchange, automorphism encryption and the CNF reduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("kex", cmd_kex, "run the tropical matrix key exchange")
    p.add_argument("--preset", choices=sorted(KEX_PRESETS), default="standard")
    p.add_argument("--seed", type=int, required=True)

    p = add("classical-attack", cmd_classical_attack, "attack the classical exchange mod p")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--p", type=int, default=101)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)

    p = add("aut-keygen", cmd_aut_keygen, "generate an automorphism key pair")
    p.add_argument("--preset", choices=sorted(AUT_PRESETS), default="standard")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-pub", required=True)
    p.add_argument("--out-priv", required=True)

    p = add("aut-encrypt", cmd_aut_encrypt, "encrypt an integer point")
    p.add_argument("--pub", required=True)
    p.add_argument("--point", required=True, help='e.g. --point=3,-1,4')

    p = add("aut-decrypt", cmd_aut_decrypt, "decrypt an integer point")
    p.add_argument("--priv", required=True)
    p.add_argument("--point", required=True)

    p = add("sat-reduce", cmd_sat_reduce, "reduce a DIMACS CNF to tropical equations")
    p.add_argument("file")
    p.add_argument("--solve", action="store_true")
    p.add_argument("--domain", default="0,1")

    add("selftest", cmd_selftest, "re-check the worked examples")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OverflowError, ZeroDivisionError, OSError, KeyError) as exc:
        print(f"tropkit {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
