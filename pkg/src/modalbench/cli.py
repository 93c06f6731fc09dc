"""Command-line front end. One subcommand per library entry point.

Exit codes: 0 when the queried property is confirmed (valid, certificate
valid, consequence holds, index found), 1 when refuted (countermodel found,
certificate invalid, nothing found up to the bound), 2 on input errors, and
3 when a resource cap refuses the computation or leaves it undecided.

Frame specifiers: `chain:N` for the irreflexive N-chain, `chain:N:refl=0,2`
to add self-loops, or a path to a frame JSON file ({"worlds": N, "edges":
[[i, j], ...]}). Valuations are inline JSON ({"x": [0, 2]}) or @file.json.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (DEFAULT_BIT_CAP, check_validity, fixpoint_index,
                      transitivity_degree, uniform_stabilization)
from .chains import check_lemma, enumerate_chains, make_chain
from .consequence import ConsequenceProblem, check_consequence
from .errors import CapExceededError, InputError
from .kripke import (Frame, Model, Valuation, bits_to_worlds, evaluate,
                     frame_to_json, load_frame, valuation_from_json)
from .syntax import parse_formula, parse_statement
from .terms import free_vars

_EXIT_CONFIRMED = 0
_EXIT_REFUTED = 1
_EXIT_INPUT = 2
_EXIT_CAP = 3


def parse_frame_spec(spec: str) -> Frame:
    if spec.startswith("chain:"):
        parts = spec.split(":")
        try:
            size = int(parts[1])
        except ValueError:
            raise InputError(f"bad chain size in {spec!r}") from None
        if len(parts) == 2:
            return make_chain(size)
        if len(parts) == 3 and parts[2].startswith("refl="):
            return make_chain(size, _world_list(parts[2][len("refl="):]))
        raise InputError(f"bad frame specifier {spec!r}; "
                         "use chain:N, chain:N:refl=0,2 or a JSON file path")
    return load_frame(spec)


def _world_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InputError(f"expected a comma-separated world list, got {text!r}") from None


def _valuation_arg(text: str) -> Valuation:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise InputError(str(exc)) from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{text[1:]}: {exc}") from None
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad valuation JSON: {exc}") from None
    return valuation_from_json(data)


def _emit(args: argparse.Namespace, payload: dict, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def _cmd_eval(args: argparse.Namespace) -> int:
    frame = parse_frame_spec(args.frame)
    term = parse_formula(args.formula)
    valuation = _valuation_arg(args.val) if args.val else Valuation()
    model = Model(frame, valuation)
    bits = evaluate(model, term)
    worlds = bits_to_worlds(bits)
    globally = bits == frame.mask
    _emit(args,
          {"formula": args.formula, "worlds": worlds, "holds_globally": globally},
          f"holds at worlds {worlds}" + (" (globally)" if globally else ""))
    return _EXIT_CONFIRMED if globally else _EXIT_REFUTED


def _cmd_check_valid(args: argparse.Namespace) -> int:
    frame = parse_frame_spec(args.frame)
    stmt = parse_statement(args.stmt)
    variables = args.vars.split(",") if args.vars else None
    report = check_validity(frame, stmt, variables, bit_cap=args.cap,
                            sampling=args.sample is not None,
                            sample_count=args.sample or 0, seed=args.seed,
                            threads=args.threads)
    payload = {"statement": args.stmt, **report.to_json()}
    if report.verdict == "valid":
        human = f"valid ({report.valuations_tried} valuations)"
        code = _EXIT_CONFIRMED
    elif report.verdict == "countermodel":
        human = (f"countermodel after {report.valuations_tried} valuations: "
                 f"{report.valuation.to_sets()}")
        code = _EXIT_REFUTED
    else:
        human = f"unknown: {report.valuations_tried} sampled valuations found nothing"
        code = _EXIT_CAP
    _emit(args, payload, human)
    return code


def _cmd_lemma(args: argparse.Namespace) -> int:
    cert = check_lemma(args.n, _world_list(args.refl))
    _emit(args, cert.to_json(),
          cert.render_table() + f"\ncertificate valid: {cert.valid}")
    return _EXIT_CONFIRMED if cert.valid else _EXIT_REFUTED


def _cmd_chains(args: argparse.Namespace) -> int:
    frames = enumerate_chains(args.size)
    lines = [f"{len(frames)} chains of size {args.size}"]
    for index, frame in enumerate(frames):
        loops = [w for w in range(frame.worlds) if frame.succ[w] >> w & 1]
        lines.append(f"  {index:>4}: reflexive at {loops}")
    _emit(args,
          {"size": args.size, "count": len(frames),
           "frames": [frame_to_json(f) for f in frames]},
          "\n".join(lines))
    return _EXIT_CONFIRMED


def _cmd_transitivity(args: argparse.Namespace) -> int:
    frame = parse_frame_spec(args.frame)
    degree = transitivity_degree(frame, args.max)
    human = (f"degree {degree}" if degree is not None
             else f"no degree up to {args.max}")
    _emit(args, {"degree": degree, "max_n": args.max}, human)
    return _EXIT_CONFIRMED if degree is not None else _EXIT_REFUTED


def _cmd_fixpoint(args: argparse.Namespace) -> int:
    frame = parse_frame_spec(args.frame)
    term = parse_formula(args.term)
    base = 0
    for w in _world_list(args.base):
        base |= 1 << w
    params = _valuation_arg(args.params) if args.params else None
    result = fixpoint_index(frame, term, args.pivot, base, params)
    _emit(args, result.to_json(),
          f"index {result.index}, fixpoint {bits_to_worlds(result.fixpoint)}")
    return _EXIT_CONFIRMED


def _cmd_consequence(args: argparse.Namespace) -> int:
    frames = [parse_frame_spec(spec) for spec in args.frame]
    premises = [parse_statement(text) for text in args.premise or []]
    conclusion = parse_statement(args.conclusion)
    problem = ConsequenceProblem(premises, conclusion, frames, max_bits=args.budget)
    result = check_consequence(problem, threads=args.threads)
    if result.holds:
        human = (f"holds on all {len(frames)} frames "
                 f"({result.assignments} assignments covered; finite search only)")
        code = _EXIT_CONFIRMED
    else:
        human = (f"countermodel on frame {result.frame_index}, conclusion fails "
                 f"at world {result.failure_world}: {result.valuation.to_sets()}")
        code = _EXIT_REFUTED
    _emit(args, result.to_json(), human)
    return code


def _cmd_stabilize(args: argparse.Namespace) -> int:
    frames = [parse_frame_spec(spec) for spec in args.frame or []]
    if args.all_chains is not None:
        frames.extend(enumerate_chains(args.all_chains))
    if not frames:
        raise InputError("no frames given; use --frame or --all-chains")
    term = parse_formula(args.term)
    params = sorted(free_vars(term) - {args.pivot})
    index = uniform_stabilization(frames, term, args.pivot, params, args.max,
                                  bit_cap=args.cap,
                                  sampling=args.sample is not None,
                                  sample_count=args.sample or 0, seed=args.seed)
    human = (f"stabilizes at {index}" if index is not None
             else f"no stabilization up to {args.max}")
    _emit(args, {"index": index, "max_n": args.max}, human)
    return _EXIT_CONFIRMED if index is not None else _EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modalbench",
        description="Finite Kripke frame and complex-algebra workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(handler=handler)
        return p

    p = add("eval", _cmd_eval, "evaluate a formula on one model")
    p.add_argument("--frame", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--val", help="valuation as inline JSON or @file")

    p = add("check-valid", _cmd_check_valid, "check a statement under all valuations")
    p.add_argument("--frame", required=True)
    p.add_argument("--stmt", required=True)
    p.add_argument("--vars", help="comma-separated variables to enumerate")
    p.add_argument("--cap", type=int, default=DEFAULT_BIT_CAP)
    p.add_argument("--sample", type=int, nargs="?", const=4096,
                   help="over-cap sampling budget, default 4096 (never concludes valid)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)

    p = add("lemma", _cmd_lemma, "non-stabilization certificate on a (2n+1)-chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--refl", default="", help="comma-separated self-loop points")

    p = add("chains", _cmd_chains, "enumerate all chains of a size")
    p.add_argument("--size", type=int, required=True)

    p = add("transitivity", _cmd_transitivity, "degree of the reflexive closure")
    p.add_argument("--frame", required=True)
    p.add_argument("--max", type=int, required=True)

    p = add("fixpoint", _cmd_fixpoint, "iterate an increasing term to its fixpoint")
    p.add_argument("--frame", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--pivot", required=True)
    p.add_argument("--base", default="", help="comma-separated world list")
    p.add_argument("--params", help="parameter valuation as inline JSON or @file")

    p = add("consequence", _cmd_consequence, "global consequence over frames")
    p.add_argument("--frame", action="append", required=True)
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--conclusion", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BIT_CAP)
    p.add_argument("--threads", type=int, default=1)

    p = add("stabilize", _cmd_stabilize, "least n where iterates n and n+1 agree")
    p.add_argument("--frame", action="append", default=[])
    p.add_argument("--all-chains", type=int,
                   help="also include every chain of this size")
    p.add_argument("--term", required=True)
    p.add_argument("--pivot", required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_BIT_CAP)
    p.add_argument("--sample", type=int, nargs="?", const=4096,
                   help="over-cap sampling budget per frame, default 4096")
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return _EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
