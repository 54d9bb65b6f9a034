"""Command-line entry point: `ftnsim run | errorfree | selftest`.

Exit codes: 0 success, 1 selftest failure, 2 config error, 3 non-bracketed
error-free-SNR metric.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import harness
from .harness import ConfigError, NotBracketedError


def _cmd_run(args) -> int:
    try:
        records = harness.run_sweep(
            args.config,
            args.out,
            seed=args.seed,
            workers=args.workers,
            paper_scale=args.paper_scale,
        )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    for rec in records:
        print(
            f"{rec.scheme} snr={rec.snr_db:g} dB: ber={rec.ber:.3e} "
            f"({rec.bit_errors}/{rec.bits} bits, {rec.frames} frames, {rec.wall_seconds:.1f} s)"
        )
    if not records:
        print("nothing to do (all grid points already in the CSV)")
    return 0


def _cmd_errorfree(args) -> int:
    try:
        records = harness.read_records(args.csv)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    schemes = sorted({r.scheme for r in records})
    failed = False
    for scheme in schemes:
        subset = [r for r in records if r.scheme == scheme]
        try:
            snr = harness.error_free_snr(subset, threshold=args.threshold, max_step=args.max_step)
            print(f"{scheme},{snr:.4f}")
        except NotBracketedError as exc:
            print(f"{scheme}: {exc}", file=sys.stderr)
            failed = True
    return 3 if failed else 0


def _selftest_checks():
    from . import codec
    from .channel import build_circulant, freq_response, noise_spectrum
    from .pulse import PulseSpec, isi_taps
    from .transceiver import SystemConfig, encode_chain, decode_iterative, _static_channel
    from .channel import FreqChannel

    def phi_oracle():
        spec = PulseSpec(beta=0.5, alpha=0.5, nu=3)
        taps = isi_taps(spec)
        N = 8
        phi = noise_spectrum(taps, N)
        naive = np.zeros(N, dtype=complex)
        for n in range(N):
            for l in range(N):
                for m in range(N):
                    naive[n] += taps.at(l - m) * np.exp(2j * np.pi * (l - m) * n / N)
        naive = naive.real / N
        return np.abs(phi - np.maximum(naive, 0)).max() < 1e-10

    def circulant_reconstruction():
        spec = PulseSpec(beta=0.5, alpha=0.73, nu=3)
        ch = build_circulant(isi_taps(spec), 8)
        lam = freq_response(ch)
        k = np.arange(8)
        Q = np.exp(-2j * np.pi * np.outer(k, k) / 8) / np.sqrt(8)
        dense = Q.T @ np.diag(lam) @ Q.conj()
        return np.abs(dense - ch.dense()).max() < 1e-10

    def logmap_exhaustive():
        rng = np.random.default_rng(7)
        K = 6
        lc = rng.normal(size=(K, 1))
        la = rng.normal(size=K)
        tr = codec.urc_trellis()
        out = codec.siso_decode(tr, lc, la)
        # brute force over all input sequences
        num = np.zeros(K)
        den = np.zeros(K)
        post = {}
        for word in range(2**K):
            u = np.array([(word >> i) & 1 for i in range(K)])
            c = codec.urc_encode(u)
            metric = 0.5 * np.sum((1 - 2 * c) * lc[:, 0]) + 0.5 * np.sum((1 - 2 * u) * la)
            post[word] = metric
        llr = np.empty(K)
        for k_ in range(K):
            p0 = [m for w, m in post.items() if not (w >> k_) & 1]
            p1 = [m for w, m in post.items() if (w >> k_) & 1]
            llr[k_] = np.logaddexp.reduce(p0) - np.logaddexp.reduce(p1)
        return np.abs(out.app_info - llr).max() < 1e-9

    def noiseless_loopback():
        spec = PulseSpec(beta=0.5, alpha=0.73, nu=10)
        cfg = SystemConfig(
            scheme="two-stage", pulse=spec, N=256, i_out=2, llr_scale_mode="literal"
        )
        rng = np.random.default_rng(3)
        bits = rng.integers(0, 2, cfg.info_length)
        symbols = encode_chain(bits, cfg)
        _, ch, lam, phi = _static_channel(spec, cfg.N)
        freq = FreqChannel(lam=lam, phi_eta=phi, N0=1e-6)
        y = np.stack([ch.apply(s) for s in symbols])
        est = decode_iterative(y, [ch], [freq], cfg)
        return int(np.count_nonzero(est != bits)) == 0

    return [
        ("phi-eta fast path vs double-sum oracle", phi_oracle),
        ("circulant DFT diagonalization", circulant_reconstruction),
        ("log-MAP vs exhaustive MAP", logmap_exhaustive),
        ("noiseless iterative loopback", noiseless_loopback),
    ]


def _cmd_selftest(_args) -> int:
    ok = True
    for name, check in _selftest_checks():
        try:
            passed = check()
        except Exception as exc:  # noqa: BLE001 - report, keep testing
            passed = False
            print(f"[ERROR] {name}: {exc}")
        print(f"[{'PASS' if passed else 'FAIL'}] {name}")
        ok = ok and passed
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ftnsim", description="FTN signaling BER simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a Monte Carlo sweep config")
    p_run.add_argument("config")
    p_run.add_argument("--out", required=True, help="output CSV path (appended)")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument(
        "--paper-scale",
        action="store_true",
        help="run with the full 2^17-symbol frames instead of the desk-scale preset",
    )
    p_run.set_defaults(func=_cmd_run)

    p_ef = sub.add_parser("errorfree", help="error-free SNR metric from a CSV")
    p_ef.add_argument("csv")
    p_ef.add_argument("--threshold", type=float, default=0.01)
    p_ef.add_argument("--max-step", type=float, default=None)
    p_ef.set_defaults(func=_cmd_errorfree)

    p_st = sub.add_parser("selftest", help="run the built-in oracle checks")
    p_st.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
