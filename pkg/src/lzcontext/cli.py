"""Command-line surface: compress, decompress, extract, match, stats, bench,
selftest.

Bytes map to symbol codes 1..256 (code = byte + 1); --sigma restricts the
alphabet for data known to use few distinct byte values.  Exit codes: 0 on
success, 1 on input errors, 2 on internal invariant violations.
"""

import argparse
import sys
import time

from . import corpora
from .counters import Counters
from .errors import ContractError, InputError, LzError, UsageError
from .extract import Strategy, decompress_full, extract_streaming
from .factorize import greedy_parse
from .matching import find_approx, find_exact
from .parse import Lz77Parse, deserialize, serialize, validate


def main():
    sys.exit(run(sys.argv[1:]))


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if not e.code else 1
    if getattr(args, "func", None) is None:
        parser.print_usage()
        return 1
    try:
        return args.func(args)
    except (InputError, UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (ContractError, LzError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2


def _build_parser():
    top = argparse.ArgumentParser(prog="lzcontext", description=__doc__)
    sub = top.add_subparsers()

    def common_io(p):
        p.add_argument("--input", "-i", help="input path (default: stdin)")
        p.add_argument("--output", "-o", help="output path (default: stdout)")

    def common_strategy(p):
        p.add_argument("--strategy", default="slp",
                       choices=["naive", "grammar", "packed", "slp"])
        p.add_argument("--delta", type=float, default=None,
                       help="packed trade-off in [0,1]")
        p.add_argument("--tau", type=int, default=None,
                       help="context radius override")
        p.add_argument("--bucketed", action="store_true",
                       help="bucket relocation dictionaries by n/z ranges")
        p.add_argument("--report", help="write a key=value counters block here")

    p = sub.add_parser("compress", help="greedy-parse raw bytes into a parse file")
    common_io(p)
    p.add_argument("--sigma", type=int, default=256)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="stream the whole text back out")
    common_io(p)
    common_strategy(p)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("extract", help="stream selected substrings")
    common_io(p)
    common_strategy(p)
    p.add_argument("--intervals", required=True,
                   help="file with one 'i j' pair per line (1-based, inclusive)")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("match", help="report pattern occurrences")
    common_io(p)
    p.add_argument("--pattern", required=True, help="file with the raw pattern bytes")
    p.add_argument("--k", type=int, default=0, help="edit-distance budget")
    p.add_argument("--kind", action="store_true",
                   help="append p/s (primary/secondary) to each position")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("stats", help="inspect a parse file")
    common_io(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("bench", help="peak-space/time table over text families")
    p.add_argument("--family", required=True, choices=["fib", "tm", "rand", "file"])
    p.add_argument("--sizes", default="2^12,2^16",
                   help="comma list of sizes; N, 2^K, or 2^A..2^B[:estep]")
    p.add_argument("--sigma", type=int, default=2, help="alphabet for rand")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--file", help="input path when --family file")
    p.add_argument("--strategies", default="naive,grammar,packed:0,slp",
                   help="comma list: naive|grammar|packed[:delta]|slp[:tau]")
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("selftest", help="run the built-in micro checks")
    p.set_defaults(func=_cmd_selftest)
    return top


# -- helpers ----------------------------------------------------------------


def _read_bytes(path):
    if path is None:
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write_bytes(path, data):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as f:
            f.write(data)


def _codes_from_bytes(data, sigma):
    codes = [b + 1 for b in data]
    for c in codes:
        if c > sigma:
            raise InputError(f"byte {c - 1} needs sigma >= {c}, got {sigma}")
    return codes


def _load_parse(path):
    return deserialize(_read_bytes(path))


def _strategy_from_args(args):
    kind = {"slp": "slp_context"}.get(args.strategy, args.strategy)
    if args.delta is not None and kind != "packed":
        raise InputError(f"--delta only applies to packed, not {args.strategy}")
    return Strategy(kind, delta=args.delta, tau=args.tau,
                    bucketed=args.bucketed)


class _ByteSink:
    """Buffers symbol codes and writes them out as bytes (code - 1)."""

    def __init__(self, path):
        self.path = path
        self.buf = bytearray()
        self.out = sys.stdout.buffer if path is None else open(path, "wb")

    def __call__(self, chunk):
        self.buf.extend(c - 1 for c in chunk)
        if len(self.buf) >= 1 << 16:
            self.out.write(self.buf)
            self.buf.clear()

    def close(self):
        self.out.write(self.buf)
        self.buf.clear()
        if self.path is None:
            self.out.flush()
        else:
            self.out.close()


def _maybe_report(args, counters):
    if args.report:
        with open(args.report, "w") as f:
            f.write(counters.format())


# -- subcommands ------------------------------------------------------------


def _cmd_compress(args):
    data = _read_bytes(args.input)
    codes = _codes_from_bytes(data, args.sigma)
    parse = greedy_parse(codes, args.sigma)
    _write_bytes(args.output, serialize(parse))
    return 0


def _cmd_decompress(args):
    parse = _load_parse(args.input)
    strategy = _strategy_from_args(args)
    sink = _ByteSink(args.output)
    ctr = decompress_full(parse, strategy, sink)
    sink.close()
    _maybe_report(args, ctr)
    return 0


def _cmd_extract(args):
    parse = _load_parse(args.input)
    strategy = _strategy_from_args(args)
    intervals = []
    with open(args.intervals) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"intervals line {lineno}: expected 'i j', "
                                 f"got {line!r}")
            try:
                intervals.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise InputError(f"intervals line {lineno}: non-integer "
                                 f"in {line!r}") from None
    sink = _ByteSink(args.output)
    ctr = extract_streaming(parse, intervals, strategy, sink)
    sink.close()
    _maybe_report(args, ctr)
    return 0


def _cmd_match(args):
    parse = _load_parse(args.input)
    pattern = _codes_from_bytes(_read_bytes(args.pattern), parse.sigma)
    if args.k:
        occurrences = find_approx(parse, pattern, args.k)
    else:
        occurrences = find_exact(parse, pattern)
    lines = []
    for occ in occurrences:
        if args.kind:
            lines.append(f"{occ.start} {occ.kind[0]}")
        else:
            lines.append(str(occ.start))
    _write_bytes(args.output, ("".join(l + "\n" for l in lines)).encode())
    return 0


def _cmd_stats(args):
    parse = _load_parse(args.input)
    problems = validate(parse)
    text = (f"sigma={parse.sigma}\nn={parse.n}\nz={parse.z}\n"
            f"max_length={max((l for _, l in parse.members), default=0)}\n"
            f"valid={'yes' if not problems else 'no'}\n")
    for problem in problems:
        text += f"invalid: {problem}\n"
    _write_bytes(args.output, text.encode())
    return 0 if not problems else 1


def _parse_sizes(text):
    sizes = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lohi, _, step = token.partition(":")
            lo, hi = lohi.split("..")
            estep = int(step) if step else 2
            if not (lo.startswith("2^") and hi.startswith("2^")):
                raise InputError(f"range sizes must use 2^K form: {token!r}")
            for e in range(int(lo[2:]), int(hi[2:]) + 1, estep):
                sizes.append(1 << e)
        elif token.startswith("2^"):
            sizes.append(1 << int(token[2:]))
        else:
            sizes.append(int(token))
    for n in sizes:
        if n < 1:
            raise InputError(f"size {n} must be >= 1")
    return sizes


def _parse_strategies(text):
    out = []
    for token in text.split(","):
        name, _, arg = token.strip().partition(":")
        if name == "naive":
            out.append(("naive", Strategy.naive()))
        elif name == "grammar":
            out.append(("grammar", Strategy.grammar()))
        elif name == "packed":
            delta = float(arg) if arg else None
            label = f"packed:{arg}" if arg else "packed"
            out.append((label, Strategy.packed(delta=delta)))
        elif name == "slp":
            tau = int(arg) if arg else None
            label = f"slp:{arg}" if arg else "slp"
            out.append((label, Strategy.slp_context(tau=tau)))
        else:
            raise InputError(f"unknown strategy token {token!r}")
    return out


def _cmd_bench(args):
    rows = ["n\tz\tstrategy\tpeak_words\tseconds"]
    strategies = _parse_strategies(args.strategies)
    if args.family == "file":
        if not args.file:
            raise InputError("--family file requires --file PATH")
        data = _read_bytes(args.file)
        texts = [(_codes_from_bytes(data, 256), 256)]
    else:
        gen = corpora.FAMILIES[args.family]
        texts = [gen(n, args.sigma, args.seed) for n in _parse_sizes(args.sizes)]
    for codes, sigma in texts:
        parse = greedy_parse(codes, sigma)
        for label, strategy in strategies:
            ctr = Counters()
            sink = _CountingSink()
            t0 = time.perf_counter()
            decompress_full(parse, strategy, sink, ctr)
            dt = time.perf_counter() - t0
            if sink.count != parse.n:
                raise ContractError(f"{label}: emitted {sink.count} of {parse.n}")
            rows.append(f"{parse.n}\t{parse.z}\t{label}\t{ctr.peak_words}"
                        f"\t{dt:.4f}")
    text = "".join(r + "\n" for r in rows)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


class _CountingSink:
    def __init__(self):
        self.count = 0

    def __call__(self, chunk):
        self.count += len(chunk)


def _cmd_selftest(args):
    failures = 0

    def check(name, got, want):
        nonlocal failures
        ok = got == want
        print(f"{'ok' if ok else 'FAIL'} {name}" + ("" if ok else f": {got!r} != {want!r}"))
        if not ok:
            failures += 1

    from .context import (ContextMap, build_context_parse,
                          build_packed_context, relocate_to_context)
    from .parse import decompress_naive

    e1 = Lz77Parse(2, 8, [(-1, 1), (-2, 2), (1, 3), (2, 2)])
    text = decompress_naive(e1)
    check("decompress", text, [1, 2, 1, 1, 2, 1, 2, 1])
    check("greedy", list(greedy_parse(text, 2).members),
          [(-1, 1), (-2, 2), (1, 3), (-2, 2)])
    check("validate", validate(e1), [])
    cm = ContextMap(e1, 1)
    check("map", cm.map_positions([1, 2, 4, 7]), [1, 2, 3, 4])
    check("inverse", cm.inverse_map([3]), [4])
    check("relocate", relocate_to_context(e1, 1, [(5, 5)]), [(-2, -2)])
    check("relocate2", relocate_to_context(e1, 2, [(5, 6)]), [(2, 3)])
    cp = build_context_parse(e1, 1)
    check("context-parse", list(cp.parse.members),
          [(-1, 1), (-2, 1), (1, 1), (-2, 1)])
    check("context-string", decompress_naive(cp.parse), [1, 2, 1, 2])
    ps = build_packed_context(e1, 1, dollar_separators=True)
    check("dollar-string", ps.slice(1, ps.length), [1, 2, 0, 1, 0, 2, 0])
    out = []
    extract_streaming(e1, [(3, 6)], Strategy.slp_context(tau=1), out.extend)
    check("extract", out, [1, 1, 2, 1])
    occs = find_exact(e1, [1, 2, 1])
    check("match", [(o.start, o.kind[0]) for o in occs],
          [(1, "p"), (4, "s"), (6, "p")])
    print(f"{'all ok' if not failures else f'{failures} failures'}")
    return 0 if not failures else 2


if __name__ == "__main__":
    main()
