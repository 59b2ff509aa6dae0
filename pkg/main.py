import argparse
import logging
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import orjson

from core.algebra import VirasoroElement, bracket, commutator_word
from core.classify import Family, ModuleDescriptor, are_isomorphic, classify_E
from core.cm_compat import EParams, e_to_l
from core.config_loader import load_config, load_env, logging_settings
from core.errors import InvalidParameterError, VirasoroError
from core.grammar import (
    parse_descriptor,
    parse_element,
    parse_profile,
    parse_virasoro,
    render_descriptor,
    render_element,
    render_profile,
)
from core.loopmod import LoopElement, LParams, NParams, act_element, apply_word
from core.pbw import Level, clear_caches
from core.profiles import SuiteConfig, TruncationProfile, suite_from_config
from core.sampling import random_loop_element
from core.structure import cyclic_slice_dims, is_simple_L, non_simplicity_witness
from core.suite import crosscheck_cm, crosscheck_level1, run_suite

COMMANDS = ("act", "axioms", "simplicity", "scan", "iso", "crosscheck", "classify-e", "report")

LoopHandle = Union[LParams, NParams]


def configure_logging(cfg: dict, env: dict) -> None:
    """Log file and level: environment first, then config.yaml."""
    filename, level = logging_settings(cfg, env)
    logging.basicConfig(
        filename=filename,
        level=level,
        format='%(asctime)s - %(levelname)s - [%(module)s] %(message)s',
        force=True
    )


@dataclass
class Inputs:
    module: Optional[Union[ModuleDescriptor, EParams]] = None
    other: Optional[Union[ModuleDescriptor, EParams]] = None
    elements: List[LoopElement] = field(default_factory=list)
    operator: Optional[VirasoroElement] = None
    profile: Optional[TruncationProfile] = None


def _as_l_descriptor(desc: Union[ModuleDescriptor, EParams]) -> ModuleDescriptor:
    if isinstance(desc, EParams):
        return ModuleDescriptor.of(e_to_l(desc))
    return desc


def loop_module(desc: Union[ModuleDescriptor, EParams]) -> LoopHandle:
    """The module handle acting on loop elements; parity summands act through their ambient module."""
    desc = _as_l_descriptor(desc)
    if desc.family is Family.PARITY:
        return desc.params.ambient()
    if desc.family is Family.A:
        raise InvalidParameterError("A-modules act on the basis v_n, not on loop elements; use an N- or L-module")
    return desc.params


def _require(value, flag: str, command: str):
    if value is None:
        raise InvalidParameterError(f"'{command}' needs {flag}")
    return value


def _generators(rng: random.Random, module: LoopHandle, profile: TruncationProfile, count: int) -> List[LoopElement]:
    level = Level.B if isinstance(module, NParams) else Level.W
    return [
        random_loop_element(rng, module.spec, profile.dmax, profile.bmax, profile.window, level=level,
                            index=rng.randint(*profile.window))
        for _ in range(count)
    ]


# ─── Commands ────────────────────────────────────────────────────────────────

Outcome = Tuple[str, Dict[str, Any], int]


def cmd_act(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    module = loop_module(_require(inp.module, "--module", "act"))
    if not inp.elements:
        raise InvalidParameterError("'act' needs at least one --element")
    if inp.operator is None and args.index is None:
        raise InvalidParameterError("'act' needs --index or --operator")
    results = []
    for v in inp.elements:
        image = act_element(module, inp.operator, v) if inp.operator is not None else module.act(args.index, v)
        results.append(render_element(image))
    return "\n".join(results), {"results": results}, 0


def cmd_axioms(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    module = loop_module(_require(inp.module, "--module", "axioms"))
    profile = inp.profile or suite.profile
    rng = random.Random(f"{suite.seed}:axioms")
    elements = inp.elements or _generators(rng, module, profile, suite.samples)
    span = range(-profile.kmax, profile.kmax + 1)
    failures = []
    for v in elements:
        for m in span:
            for n in span:
                if act_element(module, bracket(m, n), v) != apply_word(commutator_word(m, n), module, v):
                    failures.append([m, n, render_element(v)])
    checked = len(elements) * len(span) ** 2
    text = f"module axiom: {checked - len(failures)}/{checked} pairs hold"
    return text, {"checked": checked, "failures": failures}, 1 if failures else 0


def cmd_simplicity(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    desc = _as_l_descriptor(_require(inp.module, "--module", "simplicity"))
    if desc.family is not Family.L:
        raise InvalidParameterError("simplicity is decided for L-modules only")
    P = desc.params
    profile = inp.profile or suite.profile
    if is_simple_L(P):
        return "simple", {"simple": True, "witness": None}, 0
    witness = non_simplicity_witness(P, profile, suite.samples, random.Random(f"{suite.seed}:simplicity"))
    return f"not simple ({witness['kind']} witness, {witness['checked']} images checked)", \
        {"simple": False, "witness": witness}, 0


def cmd_scan(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    module = loop_module(_require(inp.module, "--module", "scan"))
    if not isinstance(module, LParams):
        raise InvalidParameterError("closure scans run on L-modules")
    profile = inp.profile or suite.scan_profile
    rng = random.Random(f"{suite.seed}:scan")
    generators = inp.elements or _generators(rng, module, profile, 5)
    scan = cyclic_slice_dims(module, generators, profile)
    rows = [f"t^{n}: {attained}/{full}" for n, (attained, full) in sorted(scan.dims.items())]
    dims = {str(n): list(pair) for n, pair in sorted(scan.dims.items())}
    return "\n".join(rows + [f"full rank: {scan.full_rank()}"]), \
        {"profile": render_profile(profile), "dims": dims, "full_rank": scan.full_rank()}, 0


def cmd_iso(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    left = _as_l_descriptor(_require(inp.module, "--module", "iso"))
    right = _as_l_descriptor(_require(inp.other, "--other", "iso"))
    verdict = are_isomorphic(left, right)
    text = f"{'isomorphic' if verdict.iso else 'not isomorphic'} ({verdict.witness.value})"
    return text, {"other": render_descriptor(right), "iso": verdict.iso, "witness": verdict.witness.value}, 0


def cmd_crosscheck(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    desc = _require(inp.module, "--module", "crosscheck")
    if isinstance(desc, EParams):
        count, oracle = crosscheck_cm(desc), "t-basis"
    elif desc.family is Family.L:
        count, oracle = crosscheck_level1(desc.params), "level-1"
    else:
        raise InvalidParameterError("crosscheck needs an E-descriptor or a level-1 L-descriptor")
    return f"{oracle} closed form agrees with the engine on {count} actions", {"oracle": oracle, "checked": count}, 0


def cmd_classify_e(args, suite: SuiteConfig, inp: Inputs) -> Outcome:
    E = _require(inp.module, "--module", "classify-e")
    if not isinstance(E, EParams):
        raise InvalidParameterError("classify-e needs an E(lambda=..; b=..; gamma=..; p=..) descriptor")
    result = classify_E(E.lam, E.b, E.gamma, E.p)
    subs = [render_descriptor(d) for d in result.submodules]
    quotients = [render_descriptor(d) for d in result.quotients]
    lines = [
        f"case: {result.case if result.case is not None else 'none'}",
        f"simple: {result.simple}",
        f"module: {render_descriptor(result.module)}",
    ]
    lines += [f"  submodule: {s}" for s in subs] + [f"  quotient: {q}" for q in quotients]
    if result.note:
        lines.append(f"note: {result.note}")
    return "\n".join(lines), {"case": result.case, "simple": result.simple, "submodules": subs,
                              "quotients": quotients, "note": result.note}, 0


HANDLERS = {
    "act": cmd_act,
    "axioms": cmd_axioms,
    "simplicity": cmd_simplicity,
    "scan": cmd_scan,
    "iso": cmd_iso,
    "crosscheck": cmd_crosscheck,
    "classify-e": cmd_classify_e,
}


def _suite_settings(args, cfg: dict, env: dict) -> SuiteConfig:
    """Flags override environment, which overrides config.yaml."""
    suite = suite_from_config(cfg, env)
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.json and args.command == "report":
        updates["output"] = args.json
    if args.check:
        updates["checks"] = args.check
    if args.samples is not None:
        updates["samples"] = args.samples
    if not updates:
        return suite
    return SuiteConfig.model_validate({**suite.model_dump(), **updates})


def _read_inputs(args, suite: SuiteConfig) -> Inputs:
    inp = Inputs()
    if args.module:
        inp.module = parse_descriptor(args.module)
    if args.other:
        inp.other = parse_descriptor(args.other)
    if args.profile:
        base = suite.scan_profile if args.command == "scan" else suite.profile
        inp.profile = parse_profile(args.profile, base)
    if args.operator:
        inp.operator = parse_virasoro(args.operator)
    if args.element:
        spec = loop_module(inp.module).spec if inp.module is not None else None
        for text in args.element:
            v = parse_element(text, spec)
            if not isinstance(v, LoopElement):
                raise InvalidParameterError(f"element {text!r} needs a loop index '(x) t^n'")
            inp.elements.append(v)
    return inp


def main(args):
    # 1. Load configuration
    try:
        cfg = load_config(args.config)
        env = load_env()
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)
    except Exception as e:
        print(f"error: could not read configuration: {e}", file=sys.stderr)
        sys.exit(1)
    configure_logging(cfg, env)
    logging.info(f"Command '{args.command}' started")

    try:
        suite = _suite_settings(args, cfg, env)
    except ValueError as e:
        logging.error(f"Invalid suite settings: {e}", exc_info=True)
        print(f"error: invalid suite settings: {e}", file=sys.stderr)
        sys.exit(1)

    # 2. Run the check suite
    if args.command == "report":
        try:
            report = run_suite(suite, quiet=args.quiet)
        except VirasoroError as e:
            logging.error(f"Suite aborted: {e}", exc_info=True)
            print(f"error: {e}", file=sys.stderr)
            sys.exit(1)
        failed = report.failures
        print(f"{len(report.records) - len(failed)}/{len(report.records)} check instances passed")
        for record in failed:
            print(f"  • {record.check} {record.params}: {record.witness}")
        if suite.output:
            print(f"Report written to {suite.output}")
        sys.exit(report.exit_code)

    # 3. Parse module descriptors, elements and profile
    try:
        inputs = _read_inputs(args, suite)
    except VirasoroError as e:
        logging.error(f"Could not parse the inputs: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)

    # 4. Run the command
    try:
        text, record, code = HANDLERS[args.command](args, suite, inputs)
    except VirasoroError as e:
        logging.error(f"Command '{args.command}' failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)
    finally:
        clear_caches()
    print(text)

    # 5. Write the certificate
    if args.json:
        record = {"command": args.command, "module": args.module, **record}
        try:
            with open(args.json, "wb") as f:
                f.write(orjson.dumps(record, option=orjson.OPT_SORT_KEYS) + b"\n")
            logging.info(f"Certificate written to {args.json}")
        except OSError as e:
            logging.error(f"Could not write {args.json}: {e}", exc_info=True)
            print(f"error: could not write {args.json}: {e}", file=sys.stderr)
            sys.exit(1)

    logging.info(f"Command '{args.command}' finished with status {code}")
    sys.exit(code)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact computations in weight Virasoro modules L(W, lambda, a, b).")

    parser.add_argument("command", choices=COMMANDS, help="What to compute.")
    parser.add_argument(
        "--module",
        type=str,
        default=None,
        help="Module descriptor, e.g. 'L(vac(r=0; 1); lambda=2; a=0; b=0)' or 'E(lambda=2; b=0; gamma=1; p=1)'."
    )
    parser.add_argument("--other", type=str, default=None, help="Second descriptor for 'iso'.")
    parser.add_argument(
        "--element",
        action="append",
        default=[],
        help="Loop element, e.g. '3/2*d(-1)^2|vac> (x) t^-3'. Repeatable."
    )
    parser.add_argument("--index", type=int, default=None, help="Generator index k for 'act'.")
    parser.add_argument("--operator", type=str, default=None, help="Virasoro element for 'act', e.g. 'd(2) - 1/2*d(-1)'.")
    parser.add_argument("--profile", type=str, default=None, help="Truncation profile 'dmax=..,bmax=..,win=..,fuel=..,kmax=..'.")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (overrides VIRASORO_SEED and config.yaml).")
    parser.add_argument("--samples", type=int, default=None, help="Sampled elements per grid point.")
    parser.add_argument("--check", action="append", default=[], help="Suite check to run with 'report'. Repeatable.")
    parser.add_argument("--json", type=str, default=None, help="Write a JSON certificate (JSON-lines report for 'report').")
    parser.add_argument("--config", type=str, default=None, help="Path to config.yaml (default: project root).")
    parser.add_argument("--quiet", action="store_true", help="No progress bars.")
    return parser


if __name__ == "__main__":
    args = build_parser().parse_args()
    main(args)
