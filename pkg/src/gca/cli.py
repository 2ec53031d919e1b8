"""Command-line surface: seed files, canonical text rendering, subcommands.

Seed files are JSON with an explicit schema_version.  Polynomials render to
a stable canonical text (terms in descending lexicographic order) and the
same grammar parses back to the identical polynomial, so golden tests can
diff machine output bit for bit.

Exit codes: 0 success, 1 negative verdict (not coprime, not a member, ...),
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from importlib import resources
from pathlib import Path
from typing import Mapping

from . import bounds, explore, structure
from .errors import (
    FreezeAll,
    InvalidIndex,
    NoNegativeEntry,
    NotASource,
    NotIsolated,
    ParseError,
    RankNotTwo,
    ValidationError,
)
from .laurent import LaurentPoly, sorted_terms
from .seed import GeneralizedSeed, GeneralizedString, freeze, mutate, validate_seed

SCHEMA_VERSION = 1


# -- canonical rendering --------------------------------------------------


def format_laurent_canonical(
    p: LaurentPoly, names: Mapping[int, str] | None = None
) -> str:
    """Deterministic text form: descending lex terms, explicit signs.

    Variables with display names print first inside each term (they play
    the role of coefficients), then the x-named variables by index.
    """
    if p.is_zero():
        return "0"
    names = dict(names or {})
    pieces: list[str] = []
    for mono, coeff in sorted_terms(p, reverse=True):
        named = sorted((v, e) for v, e in mono if v in names)
        plain = sorted((v, e) for v, e in mono if v not in names)
        factors = []
        for v, e in named + plain:
            label = names.get(v, f"x{v}")
            factors.append(label if e == 1 else f"{label}^{e}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")


def parse_laurent(text: str, names: Mapping[int, str] | None = None) -> LaurentPoly:
    """Parse the canonical rendering grammar back into a polynomial."""
    reverse = {v: k for k, v in (names or {}).items()}
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at position {pos}: {text[pos]!r}")
            break
        tokens.append(match.group(1))
        pos = match.end()

    idx = 0

    def peek() -> str | None:
        return tokens[idx] if idx < len(tokens) else None

    def take() -> str:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def resolve(name: str) -> int:
        if name in reverse:
            return reverse[name]
        m = re.fullmatch(r"x(\d+)", name)
        if not m:
            raise ParseError(f"unknown variable name {name!r}")
        v = int(m.group(1))
        if v < 1:
            raise ParseError(f"variable index must be positive: {name!r}")
        return v

    def parse_factor() -> LaurentPoly:
        tok = take()
        if tok.isdigit():
            return LaurentPoly.constant(int(tok))
        v = resolve(tok)
        e = 1
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            exp_tok = peek()
            if exp_tok is None or not exp_tok.isdigit():
                raise ParseError("expected integer exponent after '^'")
            take()
            e = sign * int(exp_tok)
        return LaurentPoly.term(1, {v: e})

    def parse_term() -> LaurentPoly:
        out = parse_factor()
        while peek() == "*":
            take()
            out = out * parse_factor()
        return out

    if not tokens:
        raise ParseError("empty polynomial expression")

    total = LaurentPoly.zero()
    sign = 1
    if peek() in {"+", "-"}:
        sign = -1 if take() == "-" else 1
    total = total + sign * parse_term()
    while peek() is not None:
        op = take()
        if op not in {"+", "-"}:
            raise ParseError(f"expected '+' or '-', got {op!r}")
        term = parse_term()
        total = total + (term if op == "+" else -term)
    return total


# -- seed files -----------------------------------------------------------


def parse_seed_file(doc: Mapping | str | Path) -> tuple[GeneralizedSeed, dict[int, str]]:
    """Parse a JSON seed document; returns the validated seed and name map.

    Accepts a mapping, a JSON string, or a path.  Omitted degrees default
    to 1 and omitted strings to the trivial all-ones string.
    """
    if isinstance(doc, (str, Path)):
        try:
            path = Path(doc)
            text = path.read_text() if path.exists() else str(doc)
        except OSError:
            text = str(doc)
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in seed file: {exc}") from exc
    else:
        data = dict(doc)

    if not isinstance(data, dict):
        raise ParseError("seed file must be a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version}")

    try:
        m = int(data["m"])
        ex = [int(i) for i in data["ex"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"seed file needs integer 'm' and integer list 'ex': {exc}") from exc

    raw_d = data.get("d", {})
    if isinstance(raw_d, list):
        if len(raw_d) != len(ex):
            raise ParseError("field 'd': list form must parallel 'ex'")
        d = [int(x) for x in raw_d]
    else:
        d = [int(raw_d.get(str(i), 1)) for i in ex]

    matrix = data.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != m:
        raise ParseError(f"field 'matrix': expected {m} rows")
    try:
        bmat = [[int(x) for x in row] for row in matrix]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field 'matrix': entries must be integers: {exc}") from exc
    if any(len(row) != len(ex) for row in bmat):
        raise ParseError(f"field 'matrix': every row needs {len(ex)} columns")

    raw_strings = data.get("strings", {})
    strings = []
    for pos, i in enumerate(ex):
        entries_doc = raw_strings.get(str(i)) if isinstance(raw_strings, dict) else None
        if entries_doc is None:
            strings.append(GeneralizedString.trivial(d[pos]))
            continue
        entries = []
        for k, entry in enumerate(entries_doc):
            try:
                coeff = int(entry.get("coeff", 1))
                exps = {int(v): int(e) for v, e in entry.get("exps", {}).items()}
            except (AttributeError, TypeError, ValueError) as exc:
                raise ParseError(f"string {i} entry {k}: {exc}") from exc
            entries.append(LaurentPoly.term(coeff, exps))
        strings.append(GeneralizedString(tuple(entries)))

    names = {int(k): str(v) for k, v in data.get("names", {}).items()}

    seed = GeneralizedSeed.initial(m=m, ex=ex, d=d, strings=strings, bmat=bmat)
    report = validate_seed(seed)
    if not report.ok:
        raise ValidationError("; ".join(report.violations))
    return seed, names


def serialize_seed(seed: GeneralizedSeed, names: Mapping[int, str] | None = None) -> dict:
    """Seed back to its JSON document form (initial seeds round-trip exactly)."""
    strings_doc = {}
    for pos, i in enumerate(seed.ex):
        entries = []
        for entry in seed.strings[pos].entries:
            if entry.is_zero():
                entries.append({"coeff": 0})
                continue
            mono, coeff = next(iter(entry.terms.items()))
            doc: dict = {"coeff": coeff}
            if mono:
                doc["exps"] = {str(v): e for v, e in mono}
            entries.append(doc)
        strings_doc[str(i)] = entries
    doc = {
        "schema_version": SCHEMA_VERSION,
        "m": seed.m,
        "ex": list(seed.ex),
        "d": {str(i): seed.d[pos] for pos, i in enumerate(seed.ex)},
        "matrix": [list(row) for row in seed.bmat],
        "strings": strings_doc,
    }
    if names:
        doc["names"] = {str(k): v for k, v in names.items()}
    return doc


def load_seed(arg: str) -> tuple[GeneralizedSeed, dict[int, str]]:
    """Resolve a seed argument: a file path or the name of a shipped preset."""
    path = Path(arg)
    if path.exists():
        return parse_seed_file(path)
    preset = arg if arg.endswith(".seed") else f"{arg}.seed"
    try:
        text = resources.files("gca.presets").joinpath(preset).read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        raise ParseError(f"no such seed file or preset: {arg}")
    return parse_seed_file(text)


# -- subcommands ----------------------------------------------------------


def _emit(args, payload: dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_validate(args) -> int:
    try:
        seed, _ = load_seed(args.seed)
    except ValidationError as exc:
        _emit(args, {"valid": False, "violations": str(exc).split("; ")}, f"invalid: {exc}")
        return 1
    report = validate_seed(seed)
    _emit(
        args,
        {"valid": report.ok, "violations": report.violations},
        "valid" if report.ok else "invalid: " + "; ".join(report.violations),
    )
    return 0 if report.ok else 1


def _cmd_mutate(args) -> int:
    seed, names = load_seed(args.seed)
    if args.sequence:
        directions = [int(x) for x in args.sequence.split(",") if x.strip()]
    elif args.direction is not None:
        directions = [args.direction]
    else:
        print("mutate needs -i or -s", file=sys.stderr)
        return 2
    current = seed
    for i in directions:
        current = mutate(current, i)
    rendered = {
        str(i): format_laurent_canonical(current.cluster[i - 1], names) for i in current.ex
    }
    last = directions[-1]
    payload = {
        "directions": directions,
        "cluster": rendered,
        "new_variable": format_laurent_canonical(current.cluster[last - 1], names),
        "matrix": [list(row) for row in current.bmat],
    }
    lines = [f"applied mu_{','.join(str(i) for i in directions)}"]
    lines += [f"x{i} = {rendered[str(i)]}" for i in current.ex]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_explore(args) -> int:
    seed, names = load_seed(args.seed)
    report = explore.explore_exchange_graph(seed, max_depth=args.depth)
    payload = {
        "seeds": len(report.nodes),
        "variables": [format_laurent_canonical(v, names) for v in report.variables],
        "distinct_variables": len(report.variables),
        "depth": report.depth,
        "frontier_exhausted": report.frontier_exhausted,
        "period": report.period,
        "laurent_audit": report.laurent_audit,
        "laurent_ok": explore.verify_laurent_phenomenon(report),
    }
    text = (
        f"seeds: {payload['seeds']}\n"
        f"distinct variables: {payload['distinct_variables']}\n"
        f"depth: {payload['depth']}\n"
        f"frontier exhausted: {payload['frontier_exhausted']}\n"
        f"period: {payload['period']}\n"
        f"exact divisions: {payload['laurent_audit']} (all succeeded)"
    )
    _emit(args, payload, text)
    return 0


def _cmd_period(args) -> int:
    seed, _ = load_seed(args.seed)
    try:
        period = explore.detect_period(seed)
    except RankNotTwo as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(args, {"period": period}, f"period: {period if period else 'none'}")
    return 0 if period else 1


def _cmd_check(args) -> int:
    seed, names = load_seed(args.seed)
    if args.property == "acyclic":
        cert = structure.acyclic_certificate(seed)
        payload = {"acyclic": cert.present, "order": list(cert.order) if cert.order else None}
        text = f"acyclic: {cert.present}" + (f" (order {cert.order})" if cert.order else "")
        _emit(args, payload, text)
        return 0 if cert.present else 1
    if args.property == "coprime":
        verdict = structure.coprimality_check(seed)
        payload = {"coprime": verdict.member}
        text = "coprime: true"
        if not verdict.member:
            witness = format_laurent_canonical(verdict.witness, names)
            payload.update({"pair": list(verdict.failing), "gcd": witness})
            text = f"coprime: false (pair {verdict.failing}, gcd {witness})"
        _emit(args, payload, text)
        return 0 if verdict.member else 1
    from .seed import skew_symmetrizer

    d = skew_symmetrizer(seed.principal())
    payload = {"skew_symmetrizable": d is not None, "symmetrizer": list(d) if d else None}
    _emit(args, payload, f"skew-symmetrizer: {d}")
    return 0 if d is not None else 1


def _cmd_basis(args) -> int:
    seed, names = load_seed(args.seed)
    indices = bounds.enumerate_standard_monomials(seed, args.bound)
    independent = bounds.independence_check(seed, args.bound)
    payload = {
        "bound": args.bound,
        "count": len(indices),
        "independent": independent,
    }
    if args.expand:
        payload["monomials"] = {
            str(list(a)): format_laurent_canonical(bounds.standard_monomial_expand(seed, a), names)
            for a in indices
        }
    _emit(
        args,
        payload,
        f"standard monomials (bound {args.bound}): {len(indices)}\nindependent: {independent}",
    )
    return 0 if independent else 1


def _cmd_member(args) -> int:
    seed, names = load_seed(args.seed)
    element = parse_laurent(args.element, names)
    if args.ring == "upper":
        verdict = bounds.upper_bound_membership(seed, element)
        payload = {"member": verdict.member}
        if verdict.member:
            payload["quotients"] = {
                f"({k},{j})": format_laurent_canonical(q, names)
                for (k, j), q in verdict.quotients.items()
            }
        else:
            payload["failing"] = list(verdict.failing)
    elif args.ring == "lower":
        verdict = bounds.reduce_to_standard(seed, element, args.bound)
        payload = {"member": verdict.member, "bound": verdict.bound}
        if verdict.member:
            payload["coefficients"] = {
                str(list(a)): format_laurent_canonical(c, names)
                for a, c in verdict.coefficients.items()
            }
        elif verdict.detail:
            payload["detail"] = verdict.detail
    else:
        report = explore.explore_exchange_graph(seed, max_depth=args.depth)
        verdict = explore.finite_upper_intersection_membership(report, element)
        payload = {
            "member": verdict.member,
            "exhaustive": verdict.exhaustive,
        }
        if not verdict.member:
            payload["failing_path"] = list(verdict.failing)
    text = f"member ({args.ring}): {payload['member']}"
    if args.ring == "ubar":
        text += f" (intersection {'exact' if payload['exhaustive'] else 'partial'})"
    _emit(args, payload, text)
    return 0 if verdict.member else 1


def _cmd_freeze(args) -> int:
    seed, names = load_seed(args.seed)
    subset = [int(x) for x in args.at.split(",") if x.strip()]
    try:
        frozen = freeze(seed, subset)
    except (FreezeAll, InvalidIndex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = serialize_seed(frozen, names)
    text = json.dumps(payload, indent=2, sort_keys=True)
    _emit(args, payload, text)
    return 0


def _cmd_cover_cert(args) -> int:
    seed, names = load_seed(args.seed)
    try:
        cert = explore.unit_ideal_certificate(seed, args.source)
    except (NotASource, NoNegativeEntry) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "source": cert.source,
        "witness": cert.witness,
        "product_piece": format_laurent_canonical(cert.product_piece, names),
        "subtracted": [format_laurent_canonical(p, names) for p in cert.subtracted],
        "verified": cert.verified(),
    }
    text = (
        f"source: {cert.source}, witness: {cert.witness}\n"
        f"1 = [{payload['product_piece']}]"
        + "".join(f" - [{p}]" for p in payload["subtracted"])
        + f"\nverified: {cert.verified()}"
    )
    _emit(args, payload, text)
    return 0


def _cmd_isolated(args) -> int:
    seed, names = load_seed(args.seed)
    try:
        report = explore.isolated_closure(seed)
    except NotIsolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {
        "seeds": len(report.nodes),
        "variables": [format_laurent_canonical(v, names) for v in report.variables],
        "frontier_exhausted": report.frontier_exhausted,
    }
    text = (
        f"seeds: {payload['seeds']}\n"
        f"variables: {', '.join(payload['variables'])}\n"
        f"closed: {report.frontier_exhausted}"
    )
    _emit(args, payload, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gca",
        description="Exact workbench for generalized cluster algebras of geometric type.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("seed", help="seed file path or preset name")
        p.add_argument("--output", choices=["text", "json"], default="text")
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, help="check the seed invariants")

    p = add("mutate", _cmd_mutate, help="mutate in one direction or a sequence")
    p.add_argument("-i", "--direction", type=int)
    p.add_argument("-s", "--sequence", help="comma separated directions, e.g. 1,2,1")

    p = add("explore", _cmd_explore, help="breadth-first exchange graph exploration")
    p.add_argument("--depth", type=int, default=explore.DEFAULT_MAX_DEPTH)

    add("period", _cmd_period, help="alternating mutation period (rank 2)")

    p = add("check", _cmd_check, help="structural verdicts")
    p.add_argument("property", choices=["acyclic", "coprime", "skew"])

    p = add("basis", _cmd_basis, help="standard monomials and independence")
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--expand", action="store_true", help="also print expansions")

    p = add("member", _cmd_member, help="membership checks")
    p.add_argument("ring", choices=["upper", "lower", "ubar"])
    p.add_argument("--element", required=True, help="canonical polynomial expression")
    p.add_argument("--bound", type=int, default=None, help="lower-bound reduction bound")
    p.add_argument("--depth", type=int, default=explore.DEFAULT_MAX_DEPTH)

    p = add("freeze", _cmd_freeze, help="freeze cluster variables")
    p.add_argument("--at", required=True, help="comma separated directions")

    p = add("cover-cert", _cmd_cover_cert, help="unit-ideal certificate at a source")
    p.add_argument("--source", type=int, required=True)

    add("isolated", _cmd_isolated, help="full closure of an isolated seed")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
