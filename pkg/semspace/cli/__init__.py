"""
Command-line interface for the semantic space.

Run the HTTP service, inspect an ontology index locally, or issue client
operations against a running service. Exit status is 0 on success, 1 on user
errors (bad flags, unreadable files, client errors reported by the server)
and 2 on internal faults.
"""

import argparse
import base64
import json
import sys
from fractions import Fraction

import httpx

from ..errors import SemspaceError

EXIT_OK = 0
EXIT_USER = 1
EXIT_INTERNAL = 2


class UserError(Exception):
    """A failure caused by the invocation; exits with status 1."""


class InternalError(Exception):
    """A failure on the service side; exits with status 2."""


class ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for internal faults
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, "{0}: error: {1}\n".format(self.prog, message))


def http_client(server):
    return httpx.Client(base_url=server, timeout=60.0)


def format_degree(value):
    """
    Render a degree with 6 decimals, rounding half to even on the exact value.

    >>> format_degree(Fraction(4, 7))
    '0.571429'
    """
    scaled = round(Fraction(value) * 10 ** 6)
    return "{0}.{1:06d}".format(scaled // 10 ** 6, scaled % 10 ** 6)


def _emit(args, document, lines):
    if args.json:
        print(json.dumps(document, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _read_file(path, binary=False):
    try:
        if path is None or path == "-":
            return sys.stdin.buffer.read() if binary else sys.stdin.read()
        with open(path, "rb" if binary else "r", **({} if binary else {"encoding": "utf-8"})) as f:
            return f.read()
    except OSError as exc:
        raise UserError("cannot read {0}: {1}".format(path, exc.strerror or exc)) from None


def _load_index(path, format):
    from ..ontology import load_ontology
    return load_ontology(_read_file(path), format)


# local subcommands

def cmd_sdice(args):
    from ..similarity import s_dice_fraction

    index = _load_index(args.ontology, args.format)
    exact = s_dice_fraction(index, args.c1, args.c2)
    text = format_degree(exact)
    _emit(args, {"c1": args.c1, "c2": args.c2, "degree": float(text),
                 "exact": "{0}/{1}".format(exact.numerator, exact.denominator)}, [text])


def cmd_paths(args):
    from ..ontology import paths_of

    paths = paths_of(_load_index(args.ontology, args.format), args.concept)
    _emit(args, {"concept": args.concept, "paths": [list(p) for p in paths]},
          (" -> ".join(p) for p in paths))


def cmd_serve(args):
    from ..config import OntologySource, ServiceConfig, parse_listen
    from ..service import serve

    formats = args.formats or []
    models = args.models or []
    sources = []
    for i, path in enumerate(args.ontologies or []):
        sources.append(OntologySource(
            path,
            formats[i] if i < len(formats) else "pairs",
            models[i] if i < len(models) else "RDFS",
        ))
    host = port = None
    try:
        if args.listen:
            host, port = parse_listen(args.listen)
        config = ServiceConfig.from_env(
            host=host, port=port,
            max_lease_ms=args.max_lease_ms,
            max_payload_bytes=args.max_payload_bytes,
            reaper_interval_ms=args.reaper_interval_ms,
            ontologies=tuple(sources) or None,
        )
    except ValueError as exc:
        raise UserError(str(exc)) from None
    _emit(args, {"listen": config.listen, "ontologies": [s.path for s in sources]},
          ["serving on {0}".format(config.listen)])
    sys.stdout.flush()
    try:
        serve(config, log_level="debug" if args.verbose else "info")
    except OSError as exc:
        raise UserError("cannot load ontology: {0}".format(exc)) from None


def cmd_bench(args):
    from ..bench import FULL_SIZES, BenchConfig, check_properties, run_bench
    from ..ontology import load_ontology, swing_fragment
    from ..space import Space

    text = _read_file(args.ontology) if args.ontology else swing_fragment()
    space = Space()
    space.load_model(args.model, load_ontology(text, args.format))
    try:
        cfg = BenchConfig(
            op=args.op,
            sizes=FULL_SIZES if args.full_range else tuple(args.sizes),
            threads=tuple(args.threads),
            floors=tuple(args.floors),
            reps=args.reps,
            warmup=args.warmup,
            seed=args.seed,
            entries=args.entries,
            out=args.out,
            model=args.model,
            concept=args.concept,
        )
    except ValueError as exc:
        raise UserError(str(exc)) from None
    report = run_bench(cfg, space)
    verdicts = check_properties(report, space)
    rows = [{"op": r.op, "size_bytes": r.size_bytes, "threads": r.threads, "floor": r.floor,
             "count": r.count, "mean_ms": r.mean_ms, "p50_ms": r.p50_ms, "p95_ms": r.p95_ms}
            for r in report.rows]
    lines = ["{op} size={size_bytes} threads={threads} floor={floor} count={count} "
             "mean={mean_ms:.4f}ms p50={p50_ms:.4f}ms p95={p95_ms:.4f}ms".format(**row)
             for row in rows]
    lines.extend(str(v) for v in verdicts)
    _emit(args, {"rows": rows, "environment": report.environment,
                 "verdicts": [{"name": v.name, "passed": v.passed, "detail": v.detail}
                              for v in verdicts]}, lines)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_USER


# client subcommands

def _request(args, method, path, **kwargs):
    try:
        with http_client(args.server) as client:
            response = client.request(method, path, **kwargs)
    except httpx.HTTPError as exc:
        raise UserError("cannot reach {0}: {1}".format(args.server, exc)) from None
    try:
        body = response.json()
    except ValueError:
        body = {"code": "INTERNAL", "message": response.text}
    if response.status_code >= 500:
        raise InternalError("{0}: {1}".format(body.get("code"), body.get("message")))
    if response.status_code >= 400:
        raise UserError("{0}: {1}".format(body.get("code"), body.get("message")))
    return body


def _result_lines(body):
    for item in body["results"]:
        yield "{0}\t{1}\t{2}\t{3}\t{4} bytes".format(
            item["id"], format_degree(item["degree"]), item["concept"], item["identifier"],
            len(base64.b64decode(item["payload_b64"])))


def cmd_write(args):
    payload = _read_file(args.payload, binary=True)
    body = _request(args, "POST", "/v1/write", json={
        "model": args.model, "concept": args.concept, "lease_ms": args.lease_ms,
        "payload_b64": base64.b64encode(payload).decode("ascii")})
    _emit(args, body, ["id={id} granted_lease_ms={granted_lease_ms} "
                       "expires_at_ms={expires_at_ms}".format(**body)])


def cmd_read(args):
    body = _request(args, "POST", "/v1/read", json={
        "model": args.model, "concept": args.concept, "floor": args.floor})
    _emit(args, body, _result_lines(body))


def cmd_read_by_id(args):
    body = _request(args, "POST", "/v1/read_by_id", json={"identifier": args.identifier})
    _emit(args, body, _result_lines(body))


def cmd_take(args):
    body = _request(args, "POST", "/v1/take", json={"model": args.model, "concept": args.concept})
    _emit(args, body, _result_lines(body))


def cmd_ontology(args):
    body = _request(args, "POST", "/v1/ontology", json={
        "model": args.model, "format": args.format, "data": _read_file(args.file)})
    _emit(args, body, ["{0} concepts loaded".format(body["concepts"])])


def cmd_stats(args):
    body = _request(args, "GET", "/v1/stats")
    _emit(args, body, ("{0}: {1}".format(k, body[k]) for k in sorted(body)))


# argument parsing

def _size(text):
    units = {"": 1, "B": 1, "K": 1024, "KB": 1024, "M": 1024 ** 2, "MB": 1024 ** 2}
    number = text.rstrip("KMBkmb")
    unit = text[len(number):].upper()
    if unit not in units or not number.isdigit():
        raise argparse.ArgumentTypeError("invalid size {0!r}".format(text))
    return int(number) * units[unit]


def _list_of(convert):
    def parse(text):
        try:
            return [convert(part) for part in text.split(",") if part]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def build_parser():
    parser = ArgumentParser(prog="semspace", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=ArgumentParser)
    sub.required = True

    common = ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print one JSON document.")
    common.add_argument("--verbose", "-v", action="store_true",
                        help="Print debugging information.")

    ontology = ArgumentParser(add_help=False)
    ontology.add_argument("--ontology", required=True, help="Ontology file.")
    ontology.add_argument("--format", choices=("pairs", "ntriples"), default="pairs")

    client = ArgumentParser(add_help=False)
    client.add_argument("--server", default="http://127.0.0.1:8765", help="Service base URL.")

    model = ArgumentParser(add_help=False)
    model.add_argument("--model", choices=("RDFS", "WSML"), default="RDFS")

    p = sub.add_parser("serve", parents=[common], help="Run the HTTP service.")
    p.add_argument("--listen", help="host:port to listen on.")
    p.add_argument("--max-lease-ms", type=int)
    p.add_argument("--max-payload-bytes", type=int)
    p.add_argument("--reaper-interval-ms", type=int)
    p.add_argument("--ontology", action="append", dest="ontologies", metavar="PATH",
                   help="Ontology to preload; repeatable.")
    p.add_argument("--format", action="append", dest="formats", choices=("pairs", "ntriples"),
                   help="Format of the matching --ontology.")
    p.add_argument("--model", action="append", dest="models", choices=("RDFS", "WSML"),
                   help="Meta-model of the matching --ontology.")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("sdice", parents=[common, ontology], help="Similarity of two concepts.")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.set_defaults(func=cmd_sdice)

    p = sub.add_parser("paths", parents=[common, ontology], help="Root paths of a concept.")
    p.add_argument("--concept", required=True)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("write", parents=[common, client, model], help="Write an entry.")
    p.add_argument("--concept", required=True)
    p.add_argument("--lease-ms", type=int, default=60000)
    p.add_argument("--payload", help="Payload file; stdin when omitted.")
    p.set_defaults(func=cmd_write)

    p = sub.add_parser("read", parents=[common, client, model], help="Semantic read.")
    p.add_argument("--concept", required=True)
    p.add_argument("--floor", type=float, required=True)
    p.set_defaults(func=cmd_read)

    p = sub.add_parser("read-by-id", parents=[common, client], help="Read by identifier.")
    p.add_argument("--identifier", required=True)
    p.set_defaults(func=cmd_read_by_id)

    p = sub.add_parser("take", parents=[common, client, model], help="Take exact matches.")
    p.add_argument("--concept", required=True)
    p.set_defaults(func=cmd_take)

    p = sub.add_parser("ontology", parents=[common, client, model], help="Upload an ontology.")
    p.add_argument("--file", required=True)
    p.add_argument("--format", choices=("pairs", "ntriples"), default="pairs")
    p.set_defaults(func=cmd_ontology)

    p = sub.add_parser("stats", parents=[common, client], help="Service statistics.")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", parents=[common, model], help="Run the latency benchmark.")
    p.add_argument("--op", choices=("write", "read", "take"), default="write")
    p.add_argument("--sizes", type=_list_of(_size), default=[1024, 64 * 1024, 1024 ** 2, 8 * 1024 ** 2])
    p.add_argument("--full-range", action="store_true", help="Sizes up to 51MB.")
    p.add_argument("--threads", type=_list_of(int), default=[1])
    p.add_argument("--floors", type=_list_of(float),
                   default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0])
    p.add_argument("--reps", type=int, default=200)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entries", type=int, default=3430)
    p.add_argument("--out", help="CSV output path.")
    p.add_argument("--ontology", help="Ontology file; the bundled Swing fragment by default.")
    p.add_argument("--format", choices=("pairs", "ntriples"), default="pairs")
    p.add_argument("--concept", help="Query concept for read/take.")
    p.set_defaults(func=cmd_bench)

    return parser


def run(args):
    import logging
    # Importing `logging` module here so that using `logging.debug`
    # instead of `logger.debug` outside of this function becomes an
    # error.

    logging.basicConfig(
        format="%(levelname)s %(message)s",
        level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        status = args.func(args)
    except (UserError, SemspaceError) as exc:
        print("error: {0}".format(exc), file=sys.stderr)
        return EXIT_USER
    except InternalError as exc:
        print("error: {0}".format(exc), file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        logging.getLogger("semspace.cli").debug("Internal fault", exc_info=True)
        print("internal error: {0}".format(exc), file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK if status is None else status


def main(args=None):
    parser = build_parser()
    ns = parser.parse_args(args)
    parser.exit(run(ns))
