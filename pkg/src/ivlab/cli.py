"""Command line client for the workbench.

Every subcommand calls the matching handler from commands.py in process
and prints its payload, as aligned text by default or as canonical JSON
with --format json.  JSON output is byte-identical across runs of the
same invocation: keys are sorted and all sampling is seeded.

Exit status: 0 on success, 1 when an audit or round trip reports
findings, 2 when the invocation itself is unusable.

The environment variable IVLAB_DEGREE_BOUND overrides the iteration
bound on monomial saturation chains (default 64).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import commands


def _fmt_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _text_lines(payload) -> list[str]:
    lines = [f"command: {payload['command']}"]
    if payload["ring"]:
        lines.append(f"ring: {payload['ring']}")
    for key in sorted(payload["inputs"]):
        lines.append(f"{key}: {_fmt_scalar(payload['inputs'][key])}")
    result = payload["result"]
    if isinstance(result, dict):
        lines.append("result:")
        for key in sorted(result):
            value = result[key]
            if isinstance(value, list):
                lines.append(f"  {key}:")
                for item in value:
                    if isinstance(item, dict):
                        body = ", ".join(f"{k}={_fmt_scalar(item[k])}"
                                         for k in sorted(item))
                        lines.append(f"    {body}")
                    else:
                        lines.append(f"    {_fmt_scalar(item)}")
            elif isinstance(value, dict):
                lines.append(f"  {key}:")
                for k in sorted(value):
                    lines.append(f"    {k}: {_fmt_scalar(value[k])}")
            else:
                lines.append(f"  {key}: {_fmt_scalar(value)}")
    elif isinstance(result, list):
        lines.append("result:")
        for item in result:
            if isinstance(item, dict):
                body = ", ".join(f"{k}={_fmt_scalar(item[k])}"
                                 for k in sorted(item))
                lines.append(f"  {body}")
            else:
                lines.append(f"  {_fmt_scalar(item)}")
    elif result is not None:
        lines.append(f"result: {result}")
    if payload["diagnostics"]:
        lines.append("diagnostics:")
        for entry in payload["diagnostics"]:
            line = f"  {entry['law']}: {entry['status']}"
            if "witness" in entry:
                line += f" ({entry['witness']})"
            lines.append(line)
    return lines


def _emit(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(_text_lines(payload)))


def _add_common(sub, *, valuation=False, ideal=False, op=False, chain=False,
                family=False, n=False, samples=None, seed=False,
                levels=False):
    sub.add_argument("--ring", required=True,
                     help="dedekind{p,q} | valuation{group=lexZ(2)|"
                          "lexZ(omega)|Q} | monomial{vars=[x,y,z]}")
    if valuation:
        sub.add_argument("--valuation",
                         help="pgrade | primes{p=1,q=3} | induced{...} | "
                              "fromls{...}")
    if ideal:
        sub.add_argument("--ideal", help="module in the ring's text form")
    if op:
        sub.add_argument("--op", required=True,
                         help="d | e | v | w | level(valuation, n) | "
                              "spectral{...} | lsop{...}")
    if chain:
        sub.add_argument("--chain",
                         help="chain{prefix=[...], tail=...}")
    if family:
        sub.add_argument("--family", required=True,
                         help="levels=[1,2]; tail=constant|increasing")
    if n:
        sub.add_argument("--n", type=int, default=None,
                         help="closure level / member count")
    if samples is not None:
        sub.add_argument("--samples", type=int, default=samples)
    if seed:
        sub.add_argument("--seed", type=int, default=0)
    if levels:
        sub.add_argument("--levels", type=int, default=8,
                         help="chain members compared in a round trip")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ivlab",
        description="Exact workbench for ideal valuations, localizing "
                    "systems, and semistar closures on computable "
                    "integral-domain models.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("value", help="evaluate a valuation on an ideal")
    _add_common(sub, valuation=True, ideal=True)

    sub = subs.add_parser("closure", help="apply a closure operation")
    _add_common(sub, op=True, ideal=True, n=True)

    sub = subs.add_parser("chain",
                          help="inspect the chain of a valuation, or a "
                               "given chain")
    _add_common(sub, valuation=True, chain=True, ideal=True, n=True)

    sub = subs.add_parser("decompose", help="primary decomposition")
    _add_common(sub, ideal=True)

    sub = subs.add_parser("min-primes", help="minimal primes of an ideal")
    _add_common(sub, ideal=True)

    sub = subs.add_parser("check-axioms",
                          help="audit the valuation laws on sampled ideals")
    _add_common(sub, valuation=True, samples=100, seed=True)

    sub = subs.add_parser("roundtrip",
                          help="valuation->chain->valuation, or "
                               "chain->prime data->chain")
    _add_common(sub, valuation=True, chain=True, samples=60, seed=True,
                levels=True)

    sub = subs.add_parser("finite-type",
                          help="decide finite type for a family of "
                               "localizations")
    _add_common(sub, family=True, samples=30, seed=True)

    sub = subs.add_parser("range-bound",
                          help="realized values against the rank bound")
    _add_common(sub, valuation=True, samples=60, seed=True)

    sub = subs.add_parser("equivalences",
                          help="the four finite-type characterizations of "
                               "a standard chain")
    _add_common(sub, chain=True, samples=40, seed=True)

    sub = subs.add_parser("serve", help="run the HTTP service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    if args.command == "value":
        payload, code = commands.run_value(args.ring, args.valuation,
                                           args.ideal)
    elif args.command == "closure":
        payload, code = commands.run_closure(args.ring, args.op, args.ideal,
                                             args.n)
    elif args.command == "chain":
        payload, code = commands.run_chain(
            args.ring, args.valuation, args.chain, args.ideal,
            args.n if args.n is not None else 6)
    elif args.command == "decompose":
        payload, code = commands.run_decompose(args.ring, args.ideal)
    elif args.command == "min-primes":
        payload, code = commands.run_min_primes(args.ring, args.ideal)
    elif args.command == "check-axioms":
        payload, code = commands.run_check_axioms(args.ring, args.valuation,
                                                  args.samples, args.seed)
    elif args.command == "roundtrip":
        payload, code = commands.run_roundtrip(args.ring, args.valuation,
                                               args.chain, args.samples,
                                               args.seed, args.levels)
    elif args.command == "finite-type":
        payload, code = commands.run_finite_type(args.ring, args.family,
                                                 args.samples, args.seed)
    elif args.command == "range-bound":
        payload, code = commands.run_range_bound(args.ring, args.valuation,
                                                 args.samples, args.seed)
    else:
        payload, code = commands.run_equivalences(args.ring, args.chain,
                                                  args.samples, args.seed)

    _emit(payload, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
