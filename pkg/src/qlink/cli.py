"""``qlk``: command-line access to the invariants and checks.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from .braid import BraidWord, IndexOutOfRange, ParseError, parse_braid, read_braid_file
from .engine import DEFAULT_BUDGET_BITS, BudgetExceeded, InvariantResult, alexander, invariant, verify_theorem
from .hopfcheck import report_json, run_all
from .laurent import LaurentPoly, normalize_or_zero, parse_poly
from .ribbon import build_lg_qm1_ribbon, build_sl2_ribbon

log = logging.getLogger("qlink")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def bundled_corpus() -> Path:
    return Path(str(resources.files("qlink") / "data" / "corpus.txt"))


def render(p: LaurentPoly, var: str) -> str:
    """Show ``p`` (in a half-power variable) in the requested display variable."""
    if var in ("t", "t0"):
        return p.format(name=var, half=True)
    return p.format(name=var)


def _braids(args) -> list[BraidWord]:
    try:
        if args.file:
            return [b for _, b, _ in read_braid_file(args.file)]
        if args.braid is None:
            raise InputError("give a braid such as \"2; 1 1 1\" or --file")
        return [parse_braid(args.braid)]
    except (ParseError, IndexOutOfRange, OSError) as exc:
        raise InputError(str(exc)) from None


class Cache:
    """JSON results keyed by model, n and a hash of the braid word."""

    def __init__(self, root: str | None):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, model: str, n: int, b: BraidWord) -> Path:
        digest = hashlib.sha256(b.render().encode()).hexdigest()[:32]
        return self.root / f"{model}-n{n}-{digest}.json"

    def get(self, model: str, n: int, b: BraidWord, var: str) -> LaurentPoly | None:
        if not self.root:
            return None
        path = self._path(model, n, b)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("braid") != b.render():
            return None
        return LaurentPoly.from_json(data["scalar"], var)

    def put(self, model: str, n: int, b: BraidWord, res: InvariantResult):
        if not self.root:
            return
        data = res.to_json() | {"braid": b.render(), "n": n}
        self._path(model, n, b).write_text(json.dumps(data))


def _compute(args, model: str, n: int) -> int:
    braids = _braids(args)
    rib = build_sl2_ribbon() if model == "sl2" else build_lg_qm1_ribbon(n)
    cache = Cache(args.cache)
    records = []
    for b in braids:
        poly = cache.get(model, n, b, rib.var)
        if poly is None:
            res = invariant(b, rib, workers=args.workers, budget_bits=args.budget)
            cache.put(model, n, b, res)
            poly = res.scalar
        records.append((b, poly))
    var = args.var or rib.var
    if args.json:
        out = [
            {"braid": b.render(), "model": rib.name, "variable": var, "polynomial": render(p, var), "terms": p.to_json()}
            for b, p in records
        ]
        print(json.dumps(out if args.file else out[0], indent=2))
    elif args.file:
        for b, p in records:
            print(f"{b.render()}\t{render(p, var)}")
    else:
        print(render(records[0][1], var))
    return EXIT_OK


def cmd_alexander(args) -> int:
    if args.var not in (None, "s", "t"):
        raise InputError("alex supports --var s or t")
    return _compute(args, "sl2", 1)


def cmd_lg(args) -> int:
    if args.n < 1:
        raise InputError("-n must be a positive integer")
    if args.var not in (None, "tau", "t0"):
        raise InputError("lg supports --var tau or t0")
    return _compute(args, "lg", args.n)


def parse_n_range(text: str) -> list[int]:
    out: list[int] = []
    try:
        for part in text.split(","):
            lo, sep, hi = part.partition("-")
            out += list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise InputError(f"bad n range {text!r}; use e.g. 1-3 or 1,2,3") from None
    if not out or min(out) < 1:
        raise InputError("n values must be positive")
    return out


def cmd_verify(args) -> int:
    ns = parse_n_range(args.n)
    path = args.corpus or bundled_corpus()
    try:
        entries = list(read_braid_file(path))
        expected = {ln: parse_poly(note) for ln, _, note in entries if note}
    except (ParseError, IndexOutOfRange, OSError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if not entries:
        log.warning("corpus %s contains no braids", path)
    rows = []
    failures = 0
    for lineno, b, _ in entries:
        row = {"line": lineno, "braid": b.render(), "theorem": {}, "expected": None}
        ok = True
        for n in ns:
            if n * b.strands >= args.budget:
                row["theorem"][n] = "skipped"
                continue
            rep = verify_theorem(b, n, workers=args.workers, budget_bits=args.budget)
            row["theorem"][n] = "exact" if rep.equal_exact else "normalized" if rep.passed else "FAIL"
            ok &= rep.passed
        if lineno in expected:
            got = normalize_or_zero(alexander(b, workers=args.workers, budget_bits=args.budget))
            match = got == normalize_or_zero(expected[lineno])
            row["expected"] = "ok" if match else f"MISMATCH (got {got}, expected {expected[lineno]})"
            ok &= match
        row["passed"] = ok
        failures += not ok
        rows.append(row)
    if args.json:
        print(json.dumps({"corpus": str(path), "n": ns, "passed": failures == 0, "results": rows}, indent=2))
    else:
        for row in rows:
            status = "PASS" if row["passed"] else "FAIL"
            cells = " ".join(f"n={n}:{v}" for n, v in row["theorem"].items())
            extra = f" expected:{row['expected']}" if row["expected"] else ""
            print(f"{status}  {row['braid']:<32} {cells}{extra}")
        print(f"{len(rows) - failures}/{len(rows)} braids passed for n in {ns}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_hopf_checks(args) -> int:
    if args.samples < 0:
        raise InputError("--samples must be nonnegative")
    if args.samples == 0:
        log.warning("--samples 0: residual checks run on no parameter draws")
    results = run_all(seed=args.seed, samples=args.samples)
    print(report_json(results, args.seed))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET_BITS, metavar="BITS",
                        help="refuse state spaces of 2^BITS basis vectors or more (default %(default)s)")
    common.add_argument("--workers", type=int, default=1, help="processes for the partial trace")
    common.add_argument("-v", "--verbose", action="store_true")

    compute = argparse.ArgumentParser(add_help=False, parents=[common])
    compute.add_argument("braid", nargs="?", help='braid text, e.g. "2; 1 1 1"')
    compute.add_argument("--file", help="braid list file, one braid per line")
    compute.add_argument("--var", choices=["s", "t", "tau", "t0"], help="display variable")
    compute.add_argument("--cache", metavar="DIR", help="cache results as JSON in DIR")

    parser = argparse.ArgumentParser(prog="qlk", description="Quantum link invariants from braid words.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alex", parents=[compute], help="Alexander-Conway polynomial via the sl(2) model")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("lg", parents=[compute], help="Links-Gould LG^{n,1} at q=-1")
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_lg)

    p = sub.add_parser("verify", parents=[common], help="check LG^{n,1}(tau,-1) = Delta(tau^2)^n on a corpus")
    p.add_argument("corpus", nargs="?", help="braid list file (default: bundled corpus)")
    p.add_argument("-n", default="1-3", help="n values, e.g. 1-3 or 2,3 (default %(default)s)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hopf", parents=[common], help="numeric checks of the Hopf-algebra identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_hopf_checks)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"qlk: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"qlk: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
