"""Monte Carlo BER sweep driver: config parsing, seeded frame scheduling,
CSV emission and the error-free-SNR metric.

Config files are flat key=value text with one [section] per sweep; the
section name is the scheme id in the output CSV. Unknown keys are hard
errors. Frame seeds derive from (master seed, scheme id, SNR, frame index),
so results are independent of worker count and section order.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .codec import CodecConfig
from .pulse import PulseSpec
from .transceiver import SystemConfig, simulate_frame

CSV_COLUMNS = (
    "scheme", "alpha", "beta", "nu", "N", "channel", "snr_db",
    "frames", "bits", "bit_errors", "ber", "wall_seconds", "seed",
)


class ConfigError(ValueError):
    """Invalid sweep configuration; the message names the offending key."""


class NotBracketedError(ValueError):
    """The BER threshold is not bracketed by the measured records."""


@dataclass(frozen=True)
class StoppingRule:
    min_bit_errors: int = 100
    max_bits: int = 10**8
    max_wall_seconds: float | None = None

    def __post_init__(self):
        if self.min_bit_errors < 1:
            raise ConfigError("min_bit_errors must be >= 1")


@dataclass(frozen=True)
class BerRecord:
    scheme: str
    alpha: float
    beta: float
    nu: int
    N: int
    channel: str
    snr_db: float
    frames: int
    bits: int
    bit_errors: int
    ber: float
    wall_seconds: float
    seed: int

    def csv_row(self) -> str:
        return ",".join(
            [
                self.scheme,
                repr(self.alpha),
                repr(self.beta),
                str(self.nu),
                str(self.N),
                self.channel,
                repr(self.snr_db),
                str(self.frames),
                str(self.bits),
                str(self.bit_errors),
                repr(self.ber),
                f"{self.wall_seconds:.3f}",
                str(self.seed),
            ]
        )


@dataclass(frozen=True)
class SweepSpec:
    name: str
    config: SystemConfig
    snrs: tuple[float, ...]
    stopping: StoppingRule


_KEY_TYPES = {
    "scheme": str,
    "demodulator": str,
    "alpha": float,
    "beta": float,
    "nu": int,
    "N": int,
    "num_blocks": int,
    "channel": str,
    "l_d": int,
    "i_in": int,
    "i_out": int,
    "llr_scale": str,
    "snr_db": str,
    "min_bit_errors": int,
    "max_bits": int,
    "max_wall_seconds": float,
    "interleaver_seed_1": int,
    "interleaver_seed_2": int,
}

_REQUIRED = ("scheme", "alpha", "N", "snr_db")


def _parse_snr_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"snr_db range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError("snr_db step must be positive")
        n = int(round((stop - start) / step)) + 1
        return tuple(round(start + i * step, 6) for i in range(n) if start + i * step <= stop + 1e-9)
    return tuple(float(p) for p in text.split(","))


def parse_config(path: str | Path) -> list[SweepSpec]:
    """Parse a sweep config file into per-section SweepSpecs."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    sections: list[tuple[str, dict[str, str]]] = []
    current: dict[str, str] | None = None
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: empty section name")
            if any(n == name for n, _ in sections):
                raise ConfigError(f"line {lineno}: duplicate section [{name}]")
            current = {}
            sections.append((name, current))
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _KEY_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in current:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        current[key] = value
    if not sections:
        raise ConfigError("config defines no [section]")

    specs = []
    for name, kv in sections:
        for req in _REQUIRED:
            if req not in kv:
                raise ConfigError(f"section [{name}]: missing required key {req!r}")
        typed = {}
        for key, value in kv.items():
            try:
                typed[key] = _KEY_TYPES[key](value)
            except ValueError as exc:
                raise ConfigError(f"section [{name}]: bad value for {key!r}: {value!r}") from exc
        try:
            pulse = PulseSpec(
                beta=typed.get("beta", 0.5),
                alpha=typed["alpha"],
                nu=typed.get("nu", 10),
            )
            cfg = SystemConfig(
                scheme=typed["scheme"],
                pulse=pulse,
                N=typed["N"],
                num_blocks=typed.get("num_blocks", 1),
                demodulator=typed.get("demodulator", "proposed-colored"),
                channel=typed.get("channel", "awgn"),
                l_d=typed.get("l_d", 20),
                i_in=typed.get("i_in", 2),
                i_out=typed.get("i_out", 21),
                llr_scale_mode=typed.get("llr_scale", "gaussian-calibrated"),
                codec=CodecConfig(
                    interleaver_seeds=(
                        typed.get("interleaver_seed_1", 0x5EED1),
                        typed.get("interleaver_seed_2", 0x5EED2),
                    )
                ),
            )
        except ValueError as exc:
            raise ConfigError(f"section [{name}]: {exc}") from exc
        stopping = StoppingRule(
            min_bit_errors=typed.get("min_bit_errors", 100),
            max_bits=typed.get("max_bits", 10**8),
            max_wall_seconds=typed.get("max_wall_seconds"),
        )
        specs.append(SweepSpec(name=name, config=cfg, snrs=_parse_snr_grid(typed["snr_db"]), stopping=stopping))
    return specs


PAPER_SCALE_SYMBOLS = 2**17


def paper_scale_spec(spec: SweepSpec) -> SweepSpec:
    """Scale a desk-size sweep up to the full 2^17-symbol frame.

    AWGN sweeps grow the FDE block itself; fading sweeps keep their block
    length (the fading coherence unit) and grow the number of blocks under
    the frame-wide interleaver.
    """
    cfg = spec.config
    if cfg.channel == "rayleigh":
        cfg = replace(cfg, num_blocks=PAPER_SCALE_SYMBOLS // cfg.N)
    else:
        cfg = replace(cfg, N=PAPER_SCALE_SYMBOLS, num_blocks=1)
    return replace(spec, config=cfg)


def frame_seed(master_seed: int, scheme: str, snr_db: float, frame_idx: int) -> np.random.SeedSequence:
    """Stable per-frame substream, independent of worker count and order."""
    return np.random.SeedSequence(
        [
            int(master_seed) & 0xFFFFFFFF,
            zlib.crc32(scheme.encode()),
            int(round(snr_db * 1000.0)) & 0xFFFFFFFF,
            int(frame_idx),
        ]
    )


def _run_frame(args) -> tuple[int, int]:
    cfg, snr_db, seed_seq = args
    rng = np.random.default_rng(seed_seq)
    res = simulate_frame(cfg, snr_db, rng)
    return res.bit_errors, res.bits


def run_point(
    spec: SweepSpec, snr_db: float, seed: int, workers: int = 1
) -> BerRecord:
    """Simulate frames at one grid point until the stopping rule fires."""
    stop = spec.stopping
    t0 = time.monotonic()
    errors = 0
    bits = 0
    frames = 0
    batch = max(workers, 1)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        idx = 0
        done = False
        while not done:
            tasks = [
                (spec.config, snr_db, frame_seed(seed, spec.name, snr_db, idx + i))
                for i in range(batch)
            ]
            if pool is None:
                results = [_run_frame(t) for t in tasks]
            else:
                results = list(pool.map(_run_frame, tasks))
            for e, n in results:  # accumulate in frame-index order
                errors += e
                bits += n
                frames += 1
                if errors >= stop.min_bit_errors or bits >= stop.max_bits:
                    done = True
                    break
            idx += batch
            if stop.max_wall_seconds is not None and time.monotonic() - t0 > stop.max_wall_seconds:
                done = True
    finally:
        if pool is not None:
            pool.shutdown()
    cfg = spec.config
    return BerRecord(
        scheme=spec.name,
        alpha=cfg.pulse.alpha,
        beta=cfg.pulse.beta,
        nu=cfg.pulse.nu,
        N=cfg.N,
        channel=cfg.channel,
        snr_db=snr_db,
        frames=frames,
        bits=bits,
        bit_errors=errors,
        ber=errors / bits,
        wall_seconds=time.monotonic() - t0,
        seed=seed,
    )


def read_records(csv_path: str | Path) -> list[BerRecord]:
    """Parse a harness CSV back into BerRecords."""
    path = Path(csv_path)
    lines = path.read_text().splitlines()
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ConfigError(f"{path}: missing or malformed CSV header")
    records = []
    for line in lines[1:]:
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ConfigError(f"{path}: malformed row {line!r}")
        records.append(
            BerRecord(
                scheme=parts[0],
                alpha=float(parts[1]),
                beta=float(parts[2]),
                nu=int(parts[3]),
                N=int(parts[4]),
                channel=parts[5],
                snr_db=float(parts[6]),
                frames=int(parts[7]),
                bits=int(parts[8]),
                bit_errors=int(parts[9]),
                ber=float(parts[10]),
                wall_seconds=float(parts[11]),
                seed=int(parts[12]),
            )
        )
    return records


def run_sweep(
    config_path: str | Path,
    out_csv: str | Path,
    seed: int = 0,
    workers: int = 1,
    paper_scale: bool = False,
) -> list[BerRecord]:
    """Run every (section, SNR) grid point and append results to the CSV.

    Points whose (scheme, snr_db, seed) key is already present in the CSV are
    skipped, so re-running a finished sweep is a no-op and an interrupted run
    keeps its partial results. paper_scale swaps the desk-scale frame size for
    the full 2^17-symbol one.
    """
    specs = parse_config(config_path)
    if paper_scale:
        specs = [paper_scale_spec(s) for s in specs]
    out = Path(out_csv)
    existing: set[tuple[str, float, int]] = set()
    if out.is_file() and out.stat().st_size > 0:
        existing = {(r.scheme, r.snr_db, r.seed) for r in read_records(out)}
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(",".join(CSV_COLUMNS) + "\n")

    new_records = []
    for spec in specs:
        for snr in spec.snrs:
            if (spec.name, snr, seed) in existing:
                continue
            rec = run_point(spec, snr, seed, workers=workers)
            with out.open("a") as fh:
                fh.write(rec.csv_row() + "\n")
                fh.flush()
            new_records.append(rec)
    return new_records


def error_free_snr(
    records: list[BerRecord] | list[tuple[float, float]],
    threshold: float = 0.01,
    max_step: float | None = None,
) -> float:
    """SNR (dB) at which BER crosses the threshold, by log-linear interpolation.

    Records must bracket the threshold; max_step, when given, bounds the SNR
    gap of the bracketing pair (e.g. 0.25 dB for cliff metrics).
    """
    if records and isinstance(records[0], BerRecord):
        points = sorted((r.snr_db, r.ber) for r in records)
    else:
        points = sorted(records)
    if len(points) < 1:
        raise NotBracketedError("no records")
    for snr, ber in points:
        if ber == threshold:
            return snr
    for (s1, b1), (s2, b2) in zip(points, points[1:]):
        if b1 > threshold > b2 and b2 > 0:
            if max_step is not None and s2 - s1 > max_step + 1e-9:
                raise NotBracketedError(
                    f"bracketing grid step {s2 - s1:.3f} dB exceeds {max_step} dB"
                )
            frac = (np.log10(threshold) - np.log10(b1)) / (np.log10(b2) - np.log10(b1))
            return float(s1 + frac * (s2 - s1))
    raise NotBracketedError(f"threshold {threshold} not bracketed by the records")
