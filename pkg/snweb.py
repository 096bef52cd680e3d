"""Command-line entry point: evaluate webs, MOY graphs and singular links, run suites."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple

from algebra.poly import LaurentPoly
from checks.kauffman import kauffman_compare
from checks.singular import ring_report, singular_bracket
from checks.suites import SUITES, get_suite
from evaluate.moy import eta, moy_bracket, moy_normalization, moy_original_bracket
from evaluate.statesum import state_sum_resolved
from store.bracket_cache import cached_evaluate
from webs.diagram import SlicedDiagram, parse_web
from webs.library import BUILTINS, builtin
from webs.moy_graph import parse_moy
from errors import InconsistencyError, InputError, SnwebError
from utils import configure_file_logging, dump_yaml, logger
import config


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; usage errors are input errors here."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise InputError(f"{self.prog}: {message}")


def _n_value(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"n must be an integer, got {raw!r}") from exc
    if value < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return value


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}", path=path) from exc


def render_value(value: LaurentPoly, var: str, n: int) -> Tuple[str, str | None]:
    """Render a bracket held in t as ``var``; the note explains a fallback to t.

    q = t^n, so q needs every exponent divisible by n. A = t only at n = 2.
    """
    if var == "q":
        in_q = value.rescaled(n)
        if in_q is not None:
            return in_q.render("q"), None
        return value.render("t"), f"exponents are not multiples of {n}; printed in t with q = t^{n}"
    if var == "A":
        if n == 2:
            return value.render("A"), None
        return value.render("t"), "A is only defined for n = 2; printed in t"
    return value.render("t"), None


def _emit(text: str, note: str | None = None) -> None:
    print(text)
    if note:
        print(f"note: {note}", file=sys.stderr)


def _diagram(args: argparse.Namespace) -> SlicedDiagram:
    if args.builtin:
        if args.file:
            raise InputError("give either FILE or --builtin, not both")
        n = args.n if args.n is not None else 3
        return builtin(args.builtin, n)
    if not args.file:
        raise InputError("a diagram FILE or --builtin NAME is required")
    return parse_web(_read(args.file), require_closed=True, n_override=args.n)


# -- subcommands ------------------------------------------------------------------


def _cmd_eval(args: argparse.Namespace) -> int:
    diagram = _diagram(args)
    value = cached_evaluate(diagram)
    logger.info("Bracket evaluated", n=diagram.n, slices=len(diagram.slices), width=diagram.width)
    _emit(*render_value(value, args.var, diagram.n))
    return 0


def _cmd_statesum(args: argparse.Namespace) -> int:
    diagram = _diagram(args)
    value = state_sum_resolved(diagram)
    logger.info("State sum evaluated", n=diagram.n, planar=diagram.is_planar)
    _emit(*render_value(value, args.var, diagram.n))
    return 0


def _cmd_moy(args: argparse.Namespace) -> int:
    graph = parse_moy(_read(args.file), n_override=args.n)
    n = graph.n
    bracket = moy_bracket(graph)
    normalization = moy_normalization(graph)
    original = moy_original_bracket(graph)
    notes: List[str] = []

    bracket_text, note = render_value(bracket, args.var, n)
    notes.extend(filter(None, [note]))
    normalization_text, note = render_value(normalization, args.var, n)
    notes.extend(filter(None, [note]))
    original_in_q = original.rescaled(4) if args.var == "q" else None
    if original_in_q is not None:
        original_text = original_in_q.render("q")
    else:
        original_text = original.render("u")
        notes.append("original bracket printed in u = q^(1/4)")

    payload: Dict[str, object] = {
        "n": n,
        "bracket": bracket_text,
        "normalization": normalization_text,
        "original_bracket": original_text,
        "eta": eta(graph),
    }
    _emit(dump_yaml(payload).rstrip(), "; ".join(dict.fromkeys(notes)) or None)
    return 0


def _cmd_kauffman(args: argparse.Namespace) -> int:
    report = kauffman_compare(_diagram(args))
    _emit(dump_yaml(report.summary()).rstrip())
    return 0 if report.ok else 2


def _cmd_singular(args: argparse.Namespace) -> int:
    diagram = parse_web(_read(args.file), singular=True, require_closed=True, n_override=args.n)
    value = singular_bracket(diagram)
    ring = ring_report(value, diagram.n)
    if not ring.in_q_ring:
        logger.error("Singular bracket left Z[q, q^-1]", value=value.render(), **ring.summary())
        raise InconsistencyError("singular bracket is not a Laurent polynomial in q", n=diagram.n)
    if not ring.in_qn_ring:
        logger.info("Singular bracket is not in Z[q^n, q^-n]", **ring.summary())
    _emit(*render_value(value, args.var, diagram.n))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    # Imported here so plain evaluations never build the Celery app.
    from tasks import dispatch_suite

    suite = get_suite(args.suite)
    if args.n is not None and args.n not in suite.ns:
        raise InputError(f"suite {suite.name!r} does not run at n={args.n}", supported=list(suite.ns))
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    size = config.DEFAULT_SIZE if args.size is None else args.size
    if size < 1:
        raise InputError("--size must be positive", size=size)
    ns = None if args.n is None else (args.n,)
    report = dispatch_suite(suite.name, seed=seed, size=size, ns=ns)
    _emit(dump_yaml(report.summary()).rstrip())
    if not report.ok:
        logger.error("Suite failed", suite=suite.name, seed=seed, size=size, failures=len(report.failures))
        return 2
    return 0


# -- argument parsing -------------------------------------------------------------


def _add_diagram_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", nargs="?", metavar="FILE", help="diagram JSON file")
    parser.add_argument("--builtin", choices=sorted(BUILTINS), metavar="NAME", help="named diagram instead of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snweb", description="Exact SU_n bracket evaluation for webs and links.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("-n", type=_n_value, default=None, help="override the n stored in the file")
        sub.set_defaults(handler=handler)
        return sub

    for name, handler, help_text in (
        ("eval", _cmd_eval, "tensor-contraction bracket of a closed diagram"),
        ("statesum", _cmd_statesum, "state-sum bracket, resolving crossings first"),
    ):
        sub = command(name, handler, help_text)
        _add_diagram_source(sub)
        sub.add_argument("--var", choices=("t", "q", "A"), default="t")

    sub = command("moy", _cmd_moy, "MOY bracket, normalization, original bracket and sign")
    sub.add_argument("file", metavar="FILE")
    sub.add_argument("--var", choices=("t", "q"), default="t")

    sub = command("kauffman", _cmd_kauffman, "Kauffman bracket and its comparison at n = 2")
    _add_diagram_source(sub)
    sub.set_defaults(n=2)

    sub = command("singular", _cmd_singular, "bracket of a singular link diagram")
    sub.add_argument("file", metavar="FILE")
    sub.add_argument("--var", choices=("t", "q"), default="t")

    sub = command("check", _cmd_check, "run a named property suite")
    sub.add_argument("--suite", required=True, choices=sorted(SUITES), metavar="NAME")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--size", type=int, default=None)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except SnwebError as exc:
        if isinstance(exc, InputError):
            logger.warning("Input rejected", error=str(exc), **exc.context)
        else:
            logger.error("Internal inconsistency", error=str(exc), **exc.context)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def main() -> None:
    configure_file_logging("log_snweb.log")
    sys.exit(run())


if __name__ == "__main__":
    main()
