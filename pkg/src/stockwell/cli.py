"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 I/O failure.
"""
from __future__ import annotations

import argparse
import statistics
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import adapted, dost, formats, localization, stransform
from .adapted import AdaptedCoefficients, FrameViolation
from .dyadic import BandIndex, check_length, partition
from .spectrum import norm2
from .windows import WindowError, parse_window

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2
REDUNDANT_CAP = 4096
DIRECT_CAP = 16384


class CheckFailed(Exception):
    pass


def _rng(seed: int) -> np.random.Generator:
    # PCG64 via default_rng: reproducible across platforms for a given seed
    return np.random.default_rng(seed)


def _random_signal(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _load_signal(args) -> np.ndarray:
    x = formats.read_signal(args.input)
    check_length(x.size)
    if args.n is not None and args.n != x.size:
        raise ValueError(f"--n {args.n} does not match signal length {x.size}")
    return x


def cmd_analyze(args) -> int:
    x = _load_signal(args)
    w = parse_window(args.window)
    if w is None:
        if args.normalized:
            raise ValueError("--normalized needs a --window")
        coeffs = dost.forward(x)
    else:
        coeffs = adapted.forward_adapted(w, x, normalized=args.normalized)
    formats.write_coefficients(args.out, coeffs)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    coeffs = formats.read_coefficients(args.input)
    if isinstance(coeffs, AdaptedCoefficients):
        if args.window is not None and parse_window(args.window).window_id != coeffs.window_id:
            raise ValueError(
                f"--window {args.window!r} does not match the file's window {coeffs.window_id!r}"
            )
        if args.normalized and not coeffs.normalized:
            raise ValueError("--normalized given but the coefficients are not normalized")
        x = adapted.inverse_adapted(parse_window(coeffs.window_id), coeffs)
    else:
        if args.window not in (None, "none"):
            raise ValueError(f"file holds plain DOST coefficients but --window {args.window!r} was given")
        if args.normalized:
            raise ValueError("--normalized given but the coefficients are plain DOST")
        x = dost.inverse(coeffs)
    formats.write_signal(args.out, x, "bin" if args.format == "bin" else "csv")
    return EXIT_OK


def cmd_stransform(args) -> int:
    x = _load_signal(args)
    w = parse_window(args.window)
    tf = stransform.redundant_gaussian(x) if w is None else stransform.redundant_windowed(w, x)
    formats.write_timefreq(args.out, tf)
    return EXIT_OK


# -- verify ----------------------------------------------------------------

@dataclass
class Check:
    name: str
    deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return bool(self.deviation <= self.tolerance)

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag}  {self.name:<34} max_dev={self.deviation:.3e}  tol={self.tolerance:.0e}"


def run_checks(n: int, window_spec: str, seed: int, trials: int = 100) -> list[Check]:
    """Compare the fast paths with brute-force references."""
    check_length(n)
    w = parse_window(window_spec)
    if w is None:
        raise ValueError("verify needs a window (use 'boxcar' for plain DOST)")
    rng = _rng(seed)
    signals = [_random_signal(rng, n) for _ in range(5)]
    layout = partition(n)
    checks = []

    dev = max(np.abs(dost.forward(x).values - dost.forward_direct(x).values).max() for x in signals)
    checks.append(Check("dost fast vs direct", dev, 1e-10))

    dev = max(np.abs(dost.inverse(dost.forward(x)) - x).max() / np.abs(x).max() for x in signals)
    checks.append(Check("dost roundtrip", dev, 1e-10))

    if n <= 1024:
        B = dost.basis_matrix(n)
        checks.append(Check("orthonormality (gram)", np.abs(B.conj().T @ B / n - np.eye(n)).max(), 1e-10))

    box = parse_window("boxcar")
    dev = 0.0
    for x in signals[:2]:
        c = dost.forward(x)
        for band in layout:
            if abs(band.p) < 2 or band.nyquist:
                continue
            row = stransform.voice(box, x, band.nu % n)
            taus = np.arange(band.beta)
            got = row[taus * (n // band.beta)]
            want = (-1.0) ** taus * np.sqrt(band.beta) * c.band(band.p)
            dev = max(dev, np.abs(got - want).max())
    checks.append(Check("grid identity (boxcar)", dev, 1e-8))

    dev = 0.0
    for x in signals:
        for norm in (False, True):
            c = adapted.forward_adapted(w, x, normalized=norm)
            dev = max(dev, np.abs(adapted.inverse_adapted(w, c) - x).max() / np.abs(x).max())
    checks.append(Check(f"adapted roundtrip ({w.window_id})", dev, 1e-9))

    if n <= 256:
        x = signals[0]
        E = np.column_stack([adapted.synthesize_adapted_basis(w, b, n) for b in layout.indices()])
        direct = E.conj().T @ x / n
        dev = np.abs(adapted.forward_adapted(w, x).values - direct).max()
        checks.append(Check("adapted fast vs direct", dev, 1e-10))

    try:
        rep = adapted.frame_analysis(w, n, trials=trials, seed=seed)
        dev = max(0.0, rep.lower - rep.q_min, rep.q_max - rep.upper)
    except FrameViolation:
        dev = float("inf")
    checks.append(Check("frame bounds", dev, 1e-9))

    dev = 0.0
    for x in signals:
        cd = adapted.dual_analysis(w, x)
        dev = max(dev, np.abs(adapted.synthesize_adapted(w, cd) - x).max() / np.abs(x).max())
    checks.append(Check("dual-frame reconstruction", dev, 1e-9))
    return checks


def cmd_verify(args) -> int:
    n = args.n or 64
    checks = run_checks(n, args.window or "boxcar", args.seed, args.trials)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_INVALID


# -- bench -----------------------------------------------------------------

def _median_ns(fn, reps: int) -> int:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - t0)
    return int(statistics.median(times))


def bench(sizes, reps: int = 5, seed: int = 0):
    """Yield ``(n, t_fast_ns, t_direct_ns, t_redundant_ns)``; capped columns are None."""
    reps = max(reps, 5)
    rng = _rng(seed)
    for n in sizes:
        check_length(n)
        x = _random_signal(rng, n)
        dost.forward(x)  # warm caches
        fast = _median_ns(lambda: dost.forward(x), reps)
        direct = _median_ns(lambda: dost.forward_direct(x), reps) if n <= DIRECT_CAP else None
        red = _median_ns(lambda: stransform.redundant_gaussian(x), reps) if n <= REDUNDANT_CAP else None
        yield n, fast, direct, red


def _parse_sizes(text: str) -> list[int]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if ":" in item:  # log2 range a:b inclusive
            a, b = (int(v) for v in item.split(":"))
            out.extend(1 << k for k in range(a, b + 1))
        elif item:
            out.append(int(item))
    return out


def cmd_bench(args) -> int:
    sizes = _parse_sizes(args.sizes) if args.sizes else ([args.n] if args.n else [8, 64, 512, 4096])
    rows = ((n, f, "" if d is None else d, "" if r is None else r)
            for n, f, d, r in bench(sizes, args.reps, args.seed))
    formats.write_rows(args.out, "n,t_fast_ns,t_direct_ns,t_redundant_ns", rows)
    return EXIT_OK


# -- reports ---------------------------------------------------------------

def cmd_frame_bounds(args) -> int:
    w = parse_window(args.window or "boxcar")
    n = args.n or 256
    rep = adapted.frame_analysis(w, n, trials=args.trials, seed=args.seed)
    print(f"window      {rep.window_id}")
    print(f"n           {rep.n}")
    print(f"trials      {rep.trials}")
    print(f"lower       {rep.lower:.12g}")
    print(f"upper       {rep.upper:.12g}")
    print(f"q_min       {rep.q_min:.12g}")
    print(f"q_max       {rep.q_max:.12g}")
    print(f"exact_min   {rep.exact_min:.12g}")
    print(f"exact_max   {rep.exact_max:.12g}")
    return EXIT_OK


def _parse_bands(items, layout) -> list[BandIndex]:
    if not items:
        items = [str(p) for p in range(0, 6) if abs(p) < layout.nyquist_p]
    out = []
    for item in items:
        p, _, tau = item.partition(":")
        band = layout.band(int(p))
        taus = [int(tau)] if tau else range(band.beta)
        for t in taus:
            b = BandIndex(band.p, t)
            layout.check_index(b)
            out.append(b)
    return out


def cmd_basis_dump(args) -> int:
    n = args.n or 256
    layout = partition(n)
    w = parse_window(args.window)
    bands = _parse_bands(args.band, layout)

    def rows():
        for b in bands:
            if w is None:
                vals = dost.synthesize_basis(b, n)
            else:
                vals = adapted.synthesize_adapted_basis(w, b, n, normalized=args.normalized)
            for m, v in enumerate(vals):
                yield b.p, b.tau, m, float(v.real), float(v.imag)

    formats.write_rows(args.out, "p,tau,m,re,im", rows())
    return EXIT_OK


def cmd_concentration(args) -> int:
    n = args.n or 4096
    reports = localization.concentration_sweep(args.p_max, n)
    rows = ((r.band.p, r.band.tau, r.energy_fraction, r.norm_fraction) for r in reports)
    formats.write_rows(args.out, "p,tau,energy_fraction,norm_fraction", rows)
    return EXIT_OK


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", help="boxcar | gaussian:mu=..,sigma=.. | file:<csv> | none")
    common.add_argument("--n", type=int, help="signal length (power of two >= 8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json", "bin"), default=None)
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    parser = argparse.ArgumentParser(prog="stockwell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="signal -> coefficient JSON")
    p.add_argument("input")
    p.add_argument("--normalized", action="store_true", help="unit-norm (F) basis coefficients")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", parents=[common], help="coefficient JSON -> signal")
    p.add_argument("input")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("stransform", parents=[common], help="redundant S-transform export")
    p.add_argument("input")
    p.set_defaults(func=cmd_stransform)

    p = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="timing table")
    p.add_argument("--sizes", help="comma list of n, or log2 ranges like 3:12")
    p.add_argument("--reps", type=int, default=5)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("frame-bounds", parents=[common], help="frame bound report")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_frame_bounds)

    p = sub.add_parser("basis-dump", parents=[common], help="sampled basis functions as CSV")
    p.add_argument("--band", action="append", help="p or p:tau (repeatable)")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_basis_dump)

    p = sub.add_parser("concentration", parents=[common], help="time-concentration sweep")
    p.add_argument("--p-max", type=int, default=8)
    p.set_defaults(func=cmd_concentration)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, formats.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (WindowError, FrameViolation, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
