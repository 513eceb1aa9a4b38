"""Deterministic search over candidate matrices.

Candidates come either from exhaustive enumeration (row-major entries,
alphabet index order: candidate index read as a base-K numeral whose most
significant digit is entry (1,1)) or from seeded sampling.  Sampling uses
SplitMix64: the digit for entry e of candidate c is

    splitmix64(seed, c * n^2 + e) mod K

so any subrange of candidates can be regenerated without walking the
stream.  Work splits into one contiguous index chunk per worker and the
per-chunk results merge in chunk order, which makes reports byte-stable
for every worker count.

Checks per candidate: "rank_bound" evaluates the rank-bound certificate
and counts violations as anomalies; "invert" runs the exact inversion
decision on Keller candidates; "corollary" runs the full small-dimension
pipeline.  Filters "trace_zero_only" and "keller_only" restrict which
candidates are checked.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .druzkowski import RankBoundCertificate
from .druzkowski import rank_bound_certificate as _reference_certificate
from .invert import decide_automorphism, is_keller
from .kernel import certificate_ints
from .linalg import ScalarMatrix
from .matrixio import matrix_entries_text
from .pairing import corollary_pipeline
from .scalars import GaussianRational, format_gaussian, parse_gaussian

DEFAULT_CEILING = 10_000_000
CEILING_ENV_VAR = "CUBELIN_CEILING"

FILTER_NAMES = ("keller_only", "trace_zero_only")
CHECK_NAMES = ("rank_bound", "invert", "corollary")

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(seed: int, index: int) -> int:
    """Output ``index`` of the SplitMix64 stream for ``seed``, O(1)."""
    z = (seed + (index + 1) * _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def enumeration_ceiling() -> int:
    """Candidate cap for enumerate mode; CUBELIN_CEILING overrides."""
    raw = os.environ.get(CEILING_ENV_VAR)
    if raw is None:
        return DEFAULT_CEILING
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{CEILING_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{CEILING_ENV_VAR} must be positive, got {value}")
    return value


class CeilingExceededError(ValueError):
    """Enumerate-mode candidate count above the configured ceiling."""

    def __init__(self, total: int, ceiling: int):
        super().__init__(
            f"enumeration needs {total} candidates, above the ceiling {ceiling}; "
            f"raise {CEILING_ENV_VAR} or shrink the alphabet"
        )
        self.total = total
        self.ceiling = ceiling


@dataclass(frozen=True)
class SearchConfig:
    """Declarative description of one search run.

    ``workers`` is an execution hint and deliberately stays out of the
    report echo: results are identical for every worker count.
    """

    n: int
    alphabet: tuple[GaussianRational, ...]
    mode: str
    count: int | None = None
    seed: int | None = None
    filters: tuple[str, ...] = ()
    checks: tuple[str, ...] = ()
    workers: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> "SearchConfig":
        allowed = {"n", "alphabet", "mode", "count", "seed", "filters", "checks", "workers"}
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown search config keys: {sorted(unknown)}")
        missing = {"n", "alphabet", "mode"} - set(data)
        if missing:
            raise ValueError(f"search config missing keys: {sorted(missing)}")
        alphabet = tuple(
            entry if isinstance(entry, GaussianRational) else parse_gaussian(entry)
            for entry in data["alphabet"]
        )
        config = cls(
            n=data["n"],
            alphabet=alphabet,
            mode=data["mode"],
            count=data.get("count"),
            seed=data.get("seed"),
            filters=tuple(sorted(set(data.get("filters", ())))),
            checks=tuple(sorted(set(data.get("checks", ())))),
            workers=data.get("workers", 1),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not self.alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet entries must be distinct")
        if self.mode not in ("enumerate", "sample"):
            raise ValueError(f"mode must be 'enumerate' or 'sample', got {self.mode!r}")
        if self.mode == "sample":
            if not isinstance(self.count, int) or self.count < 1:
                raise ValueError("sample mode needs a positive integer count")
            if not isinstance(self.seed, int) or self.seed < 0:
                raise ValueError("sample mode needs a non-negative integer seed")
        else:
            if self.count is not None or self.seed is not None:
                raise ValueError("count and seed apply to sample mode only")
        for name in self.filters:
            if name not in FILTER_NAMES:
                raise ValueError(f"unknown filter {name!r}; known: {list(FILTER_NAMES)}")
        for name in self.checks:
            if name not in CHECK_NAMES:
                raise ValueError(f"unknown check {name!r}; known: {list(CHECK_NAMES)}")
        if "corollary" in self.checks and self.n > 9:
            raise ValueError("the corollary check applies in dimension <= 9 only")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers!r}")

    def total_candidates(self) -> int:
        if self.mode == "sample":
            return self.count
        return len(self.alphabet) ** (self.n * self.n)

    def check_ceiling(self) -> None:
        if self.mode == "enumerate":
            total = self.total_candidates()
            ceiling = enumeration_ceiling()
            if total > ceiling:
                raise CeilingExceededError(total, ceiling)

    def to_dict(self) -> dict:
        echo = {
            "n": self.n,
            "alphabet": [format_gaussian(c) for c in self.alphabet],
            "mode": self.mode,
        }
        if self.mode == "sample":
            echo["count"] = self.count
            echo["seed"] = self.seed
        echo["filters"] = list(self.filters)
        echo["checks"] = list(self.checks)
        return echo


@dataclass(frozen=True)
class CandidateRecord:
    """Everything the harness knows about one visited candidate."""

    index: int
    matrix: ScalarMatrix
    certificate: RankBoundCertificate
    keller: bool
    inverse_degree: int | None
    anomaly: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "matrix": matrix_entries_text(self.matrix),
            "certificate": self.certificate.to_dict(),
            "keller": self.keller,
            "inverse_degree": self.inverse_degree,
            "anomaly": self.anomaly,
        }


@dataclass
class SearchReport:
    """Summary of a search run plus optional per-candidate records."""

    config: SearchConfig
    totals: dict
    anomalies: list[dict]
    duration_seconds: float
    records: list[dict] | None = None

    @property
    def clean(self) -> bool:
        return not self.anomalies

    def to_dict(self) -> dict:
        # duration stays last so byte comparisons can split it off
        return {
            "config": self.config.to_dict(),
            "totals": self.totals,
            "anomalies": self.anomalies,
            "duration_seconds": self.duration_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _digits_of(index: int, base: int, width: int) -> list[int]:
    digits = [0] * width
    for e in range(width - 1, -1, -1):
        index, digits[e] = divmod(index, base)
    return digits


def _increment(digits: list[int], base: int) -> None:
    for e in range(len(digits) - 1, -1, -1):
        digits[e] += 1
        if digits[e] < base:
            return
        digits[e] = 0


def _iter_digit_vectors(
    config: SearchConfig, start: int, stop: int
) -> Iterator[list[int]]:
    width = config.n * config.n
    base = len(config.alphabet)
    if config.mode == "enumerate":
        digits = _digits_of(start, base, width)
        for _ in range(start, stop):
            yield digits
            _increment(digits, base)
    else:
        seed = config.seed
        for c in range(start, stop):
            offset = c * width
            yield [splitmix64(seed, offset + e) % base for e in range(width)]


def iter_candidate_matrices(config: SearchConfig) -> Iterator[tuple[int, ScalarMatrix]]:
    """All (index, matrix) pairs of a run, in canonical order."""
    config.validate()
    config.check_ceiling()
    n = config.n
    rows = range(n)
    alphabet = config.alphabet
    for index, digits in enumerate(_iter_digit_vectors(config, 0, config.total_candidates())):
        entries = tuple(
            tuple(alphabet[digits[i * n + j]] for j in rows) for i in rows
        )
        yield index, ScalarMatrix._raw(entries, n)


def _empty_totals(config: SearchConfig) -> dict:
    totals: dict = {"visited": 0, "passed_filters": 0}
    if "rank_bound" in config.checks:
        totals["rank_bound"] = {"checked": 0, "anomalies": 0}
    if "invert" in config.checks:
        totals["invert"] = {"checked": 0, "keller": 0, "invertible": 0, "failures": 0}
    if "corollary" in config.checks:
        totals["corollary"] = {
            "checked": 0,
            "applicable": 0,
            "verified": 0,
            "anomalies": 0,
        }
    return totals


def _merge_totals(into: dict, part: dict) -> None:
    for key, value in part.items():
        if isinstance(value, dict):
            _merge_totals(into[key], value)
        else:
            into[key] += value


def _scan_range(
    config: SearchConfig, start: int, stop: int, collect_records: bool
) -> tuple[dict, list[dict], list[dict]]:
    n = config.n
    alphabet = config.alphabet
    base = len(alphabet)
    checks = set(config.checks)
    filters = set(config.filters)
    totals = _empty_totals(config)
    anomalies: list[dict] = []
    records: list[dict] = []

    # per-alphabet integer pairs enable the fast certificate path
    alpha_pairs: list[tuple[int, int]] | None = []
    for c in alphabet:
        if c.re.denominator != 1 or c.im.denominator != 1:
            alpha_pairs = None
            break
        alpha_pairs.append((c.re.numerator, c.im.numerator))

    want_cert = (
        "rank_bound" in checks or "trace_zero_only" in filters or collect_records
    )
    want_invert = "invert" in checks
    want_corollary = "corollary" in checks

    for index, digits in zip(
        range(start, stop), _iter_digit_vectors(config, start, stop)
    ):
        totals["visited"] += 1

        matrix: ScalarMatrix | None = None
        keller: bool | None = None
        cert: tuple[bool, int, int] | None = None

        def get_matrix() -> ScalarMatrix:
            nonlocal matrix
            if matrix is None:
                entries = tuple(
                    tuple(alphabet[digits[i * n + j]] for j in range(n))
                    for i in range(n)
                )
                matrix = ScalarMatrix._raw(entries, n)
            return matrix

        def get_cert() -> tuple[bool, int, int]:
            nonlocal cert
            if cert is None:
                if alpha_pairs is not None:
                    flat: list[int] = []
                    for d in digits:
                        pair = alpha_pairs[d]
                        flat.append(pair[0])
                        flat.append(pair[1])
                    cert = certificate_ints(n, flat)
                else:
                    full = _reference_certificate(get_matrix())
                    cert = (full.trace_condition_holds, full.delta, full.rank)
            return cert

        def get_keller() -> bool:
            nonlocal keller
            if keller is None:
                keller = is_keller(get_matrix())
                if keller and not get_cert()[0]:
                    raise RuntimeError(
                        "internal check failed: Keller candidate violates the "
                        "trace condition"
                    )
            return keller

        if "trace_zero_only" in filters and not get_cert()[0]:
            continue
        if "keller_only" in filters and not get_keller():
            continue
        totals["passed_filters"] += 1

        anomaly = False
        inverse_degree: int | None = None

        if "rank_bound" in checks:
            holds, delta, rank_ = get_cert()
            totals["rank_bound"]["checked"] += 1
            if holds and 2 * rank_ > n + delta:
                totals["rank_bound"]["anomalies"] += 1
                anomaly = True

        if want_invert:
            totals["invert"]["checked"] += 1
            if get_keller():
                totals["invert"]["keller"] += 1
                result = decide_automorphism(get_matrix())
                if result.invertible:
                    totals["invert"]["invertible"] += 1
                    inverse_degree = result.inverse_degree
                else:
                    totals["invert"]["failures"] += 1
                    anomaly = True

        if want_corollary:
            totals["corollary"]["checked"] += 1
            report = corollary_pipeline(get_matrix())
            if report.hypotheses_hold:
                totals["corollary"]["applicable"] += 1
            if report.verified:
                totals["corollary"]["verified"] += 1
            if report.is_anomaly:
                totals["corollary"]["anomalies"] += 1
                anomaly = True

        if anomaly or collect_records:
            holds, delta, rank_ = get_cert()
            record = CandidateRecord(
                index=index,
                matrix=get_matrix(),
                certificate=RankBoundCertificate(
                    n=n,
                    trace_condition_holds=holds,
                    delta=delta,
                    rank=rank_,
                    bound_times_two=n + delta,
                ),
                keller=get_keller(),
                inverse_degree=inverse_degree,
                anomaly=anomaly,
            ).to_dict()
            if anomaly:
                anomalies.append(record)
            if collect_records:
                records.append(record)

    return totals, anomalies, records


def _run_chunk(
    config_data: dict, start: int, stop: int, collect_records: bool
) -> tuple[dict, list[dict], list[dict]]:
    config = SearchConfig.from_dict(config_data)
    return _scan_range(config, start, stop, collect_records)


def _chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    size, extra = divmod(total, chunks)
    bounds = []
    start = 0
    for i in range(chunks):
        stop = start + size + (1 if i < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def run_search(
    config: SearchConfig,
    workers: int | None = None,
    collect_records: bool = False,
) -> SearchReport:
    """Visit every candidate, aggregate deterministically, report.

    The report (and the optional record stream) is identical for every
    worker count; only ``duration_seconds`` varies.
    """
    config.validate()
    config.check_ceiling()
    effective_workers = config.workers if workers is None else workers
    if effective_workers < 1:
        raise ValueError("workers must be positive")
    total = config.total_candidates()
    started = time.perf_counter()

    totals = _empty_totals(config)
    anomalies: list[dict] = []
    records: list[dict] = []
    if effective_workers == 1 or total <= 1:
        part_totals, part_anomalies, part_records = _scan_range(
            config, 0, total, collect_records
        )
        _merge_totals(totals, part_totals)
        anomalies.extend(part_anomalies)
        records.extend(part_records)
    else:
        chunks = _chunk_bounds(total, min(effective_workers, total))
        config_data = _config_transport(config)
        with ProcessPoolExecutor(max_workers=effective_workers) as pool:
            results = pool.map(
                _run_chunk,
                *zip(
                    *[
                        (config_data, start, stop, collect_records)
                        for start, stop in chunks
                    ]
                ),
            )
            for part_totals, part_anomalies, part_records in results:
                _merge_totals(totals, part_totals)
                anomalies.extend(part_anomalies)
                records.extend(part_records)

    duration = time.perf_counter() - started
    return SearchReport(
        config=config,
        totals=totals,
        anomalies=anomalies,
        duration_seconds=duration,
        records=records if collect_records else None,
    )


def _config_transport(config: SearchConfig) -> dict:
    data = config.to_dict()
    data["alphabet"] = [format_gaussian(c) for c in config.alphabet]
    data["workers"] = 1
    return data
