"""Random matrix-polynomial study: bound / largest-eigenvalue-modulus ratios.

Each sample is a matrix polynomial whose coefficient entries have real and
imaginary parts uniform on ``[-10, 10]``.  Coefficients are nulled to force
a target gap pattern ``(k, ell)``, then the polynomial is premultiplied by
the inverse of its leading coefficient.  For every sample the oracle runs
once and each refinement strategy is traced against that same instance.
"""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConvergenceError
from .matrix import MatrixPoly, NormKind, Side, monicize, refine_matrix
from .oracle import spectral_max_modulus
from .structure import Strategy

RNG_NAME = "numpy PCG64, per-sample streams from SeedSequence(seed).spawn(samples)"
COEFF_RANGE = 10.0
CSV_COLUMNS = ("level", "strategy", "mean_ratio", "min_ratio", "max_ratio", "samples_used",
               "mean_seconds")
LARGE_CASE = {"n": 4, "m": 250, "k": 1, "ell": 1}


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 20
    m: int = 25
    k: int = 1
    ell: Optional[int] = 1
    samples: int = 200
    levels: int = 5
    seed: int = 7
    norm: NormKind = NormKind.INDUCED_1
    side: Side = Side.LEFT
    strategies: tuple[Strategy, ...] = (Strategy.SELECTED, Strategy.RS)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.ell is not None:
            if self.ell < 1:
                raise ValueError(f"ell must be >= 1, got {self.ell}")
            if self.k + self.ell > self.n:
                raise ValueError(f"need k + ell <= n, got k={self.k}, ell={self.ell}, n={self.n}")
        elif self.k > self.n:
            raise ValueError(f"need k <= n, got k={self.k}, n={self.n}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.levels < 0:
            raise ValueError("levels must be >= 0")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def describe(self) -> str:
        ell = "none" if self.ell is None else str(self.ell)
        strategies = ",".join(s.value for s in self.strategies)
        return (f"n={self.n} m={self.m} k={self.k} l={ell} samples={self.samples} "
                f"levels={self.levels} seed={self.seed} norm={self.norm.value} "
                f"side={self.side.value} strategies={strategies}")


def sample_generators(cfg: ExperimentConfig) -> list[np.random.Generator]:
    """Independent per-sample generators; sample ``i`` never depends on others."""
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.samples)
    return [np.random.Generator(np.random.PCG64(s)) for s in seqs]


def random_instance(cfg: ExperimentConfig, rng: np.random.Generator) -> MatrixPoly:
    n, m, k, ell = cfg.n, cfg.m, cfg.k, cfg.ell
    shape = (n + 1, m, m)
    re = rng.uniform(-COEFF_RANGE, COEFF_RANGE, size=shape)
    im = rng.uniform(-COEFF_RANGE, COEFF_RANGE, size=shape)
    a = re + 1j * im
    a[n - k + 1: n] = 0.0
    if ell is None:
        a[: n - k] = 0.0
    else:
        a[n - k - ell + 1: n - k] = 0.0
    return monicize(MatrixPoly(a))


@dataclass
class RatioRow:
    level: int
    strategy: str
    mean_ratio: float
    min_ratio: float
    max_ratio: float
    samples_used: int
    mean_seconds: float


@dataclass
class RatioReport:
    """Per-level ratio statistics, with the raw per-sample ratios kept."""

    config: ExperimentConfig
    rows: list[RatioRow]
    ratios: dict[str, np.ndarray]  # strategy -> (samples_used, levels + 1)
    max_moduli: np.ndarray
    skipped: list[int] = field(default_factory=list)

    @property
    def samples_used(self) -> int:
        return int(self.max_moduli.size)

    def mean(self, level: int, strategy: str | Strategy = "cauchy") -> float:
        name = strategy.value if isinstance(strategy, Strategy) else strategy
        for row in self.rows:
            if row.level == level and row.strategy == name:
                return row.mean_ratio
        raise KeyError((level, name))

    def to_csv(self, timing: bool = False) -> str:
        """CSV text; timings are left empty unless ``timing`` so output is reproducible."""
        buf = io.StringIO()
        buf.write("# cauchy-radius ratio report\n")
        buf.write(f"# rng: {RNG_NAME}\n")
        buf.write(f"# config: {self.config.describe()}\n")
        buf.write(f"# skipped_samples: {len(self.skipped)}"
                  + (f" ({','.join(map(str, self.skipped))})" if self.skipped else "") + "\n")
        buf.write(",".join(CSV_COLUMNS) + "\n")
        for r in self.rows:
            secs = repr(r.mean_seconds) if timing else ""
            buf.write(f"{r.level},{r.strategy},{r.mean_ratio!r},{r.min_ratio!r},"
                      f"{r.max_ratio!r},{r.samples_used},{secs}\n")
        return buf.getvalue()


@dataclass
class _SampleResult:
    index: int
    max_modulus: Optional[float]
    radii: dict[str, list[float]]
    seconds: dict[str, list[float]]


def _run_sample(args: tuple[ExperimentConfig, int, np.random.Generator, Optional[str]]) -> _SampleResult:
    cfg, index, rng, backend = args
    p = random_instance(cfg, rng)
    try:
        lam = spectral_max_modulus(p, backend=backend)
    except ConvergenceError:
        return _SampleResult(index, None, {}, {})
    radii, seconds = {}, {}
    for strategy in cfg.strategies:
        trace = refine_matrix(p, cfg.levels, cfg.norm, cfg.side, strategy)
        radii[strategy.value] = trace.radii
        seconds[strategy.value] = [lv.seconds for lv in trace.levels]
    return _SampleResult(index, lam, radii, seconds)


def run_experiment(
    cfg: ExperimentConfig,
    *,
    jobs: int = 1,
    backend: Optional[str] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> RatioReport:
    """Run the study; samples may be evaluated in parallel but aggregate in index order."""
    work = [(cfg, i, g, backend) for i, g in enumerate(sample_generators(cfg))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_sample, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = []
        for item in work:
            results.append(_run_sample(item))
            if progress is not None:
                progress(len(results), len(work))
    return _aggregate(cfg, results)


def _aggregate(cfg: ExperimentConfig, results: Sequence[_SampleResult]) -> RatioReport:
    used = [r for r in results if r.max_modulus is not None]
    skipped = [r.index for r in results if r.max_modulus is None]
    lam = np.array([r.max_modulus for r in used], dtype=float)
    ratios: dict[str, np.ndarray] = {}
    seconds: dict[str, np.ndarray] = {}
    for s in cfg.strategies:
        radii = np.array([r.radii[s.value] for r in used], dtype=float).reshape(len(used), cfg.levels + 1)
        ratios[s.value] = radii / lam[:, None]
        seconds[s.value] = np.array([r.seconds[s.value] for r in used], dtype=float).reshape(
            len(used), cfg.levels + 1)

    def row(level: int, name: str, values: np.ndarray, secs: np.ndarray) -> RatioRow:
        if values.size == 0:
            nan = float("nan")
            return RatioRow(level, name, nan, nan, nan, 0, nan)
        return RatioRow(level, name, float(values.mean()), float(values.min()),
                        float(values.max()), int(values.size), float(secs.mean()))

    first = cfg.strategies[0].value
    rows = [row(0, "cauchy", ratios[first][:, 0], seconds[first][:, 0])]
    for level in range(1, cfg.levels + 1):
        for s in cfg.strategies:
            rows.append(row(level, s.value, ratios[s.value][:, level], seconds[s.value][:, level]))
    return RatioReport(cfg, rows, ratios, lam, skipped)

