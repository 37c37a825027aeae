"""Singh-plot generation and coverage classification.

A Singh plot is the empirical CDF of the minimum confidence a structure
requires before its one-sided interval covers the truth, replicated over
fresh datasets. For an exactly calibrated structure that CDF is the U(0, 1)
diagonal; dips below signal overconfidence, slack above signals
conservatism. Monte Carlo curves come with a distribution-free tolerance
band (the DKW bound), and for Bernoulli-family targets an exact enumeration
over the success count replaces simulation entirely, serving as the oracle
the Monte Carlo path is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .special_math import DomainError, SeededStream, sample_bernoulli, sample_mixture, sample_normal, sample_scaled_bernoulli
from .structures import NEVER, Dataset, StructureSpec, evaluate_structure

__all__ = [
    "UnsupportedTargetError",
    "TargetSpec",
    "SinghCurve",
    "SinghBand",
    "CoverageReport",
    "dkw_epsilon",
    "singh_curve",
    "exact_singh_curve",
    "eval_curve",
    "classify",
    "max_coverage_deficit",
]

TARGET_FAMILIES = ("normal", "bernoulli", "scaled_bernoulli", "gaussian_mixture")

DEFAULT_GRID_POINTS = 1001
# Conservatism must show across the central α range; at the extreme tails
# every coverage curve converges to the diagonal and the test has no power.
CONSERVATIVE_RANGE = (0.1, 0.9)


class UnsupportedTargetError(ValueError):
    """The operation cannot handle this target family."""


@dataclass(frozen=True)
class TargetSpec:
    """Sampling distribution plus the true value under audit.

    ``theta0`` is derived from the family parameters (the normal mean, the
    Bernoulli rate, the scaled-Bernoulli mean, the mixture mean); with
    ``predictive`` set the truth is instead the (n+1)-th draw of each
    replicate.
    """

    family: str
    mu: float | None = None
    sigma: float | None = None
    p: float | None = None
    mean: float | None = None
    weights: tuple[float, ...] | None = None
    mus: tuple[float, ...] | None = None
    sigmas: tuple[float, ...] | None = None
    predictive: bool = False

    def __post_init__(self) -> None:
        if self.family not in TARGET_FAMILIES:
            raise DomainError(f"unknown target family {self.family!r}")
        if self.family == "normal":
            self._need(mu=self.mu, sigma=self.sigma)
            if not self.sigma > 0.0:
                raise DomainError("sigma must be positive")
        elif self.family == "bernoulli":
            self._need(p=self.p)
            if not 0.0 <= self.p <= 1.0:
                raise DomainError("rate must lie in [0, 1]")
        elif self.family == "scaled_bernoulli":
            self._need(p=self.p, mean=self.mean)
            if not 0.0 < self.p <= 1.0:
                raise DomainError("p must lie in (0, 1]")
            if not self.mean > 0.0:
                raise DomainError("mean must be positive")
        else:
            self._need(weights=self.weights, mus=self.mus, sigmas=self.sigmas)
            w = tuple(float(v) for v in self.weights)
            if abs(sum(w) - 1.0) > 1e-9:
                raise DomainError("mixture weights must sum to 1")
            object.__setattr__(self, "weights", w)
            object.__setattr__(self, "mus", tuple(float(v) for v in self.mus))
            object.__setattr__(self, "sigmas", tuple(float(v) for v in self.sigmas))

    def _need(self, **fields) -> None:
        for name, value in fields.items():
            if value is None:
                raise DomainError(f"{self.family} target requires {name}")

    @classmethod
    def normal(cls, mu: float, sigma: float, predictive: bool = False) -> "TargetSpec":
        return cls(family="normal", mu=mu, sigma=sigma, predictive=predictive)

    @classmethod
    def bernoulli(cls, theta0: float, predictive: bool = False) -> "TargetSpec":
        return cls(family="bernoulli", p=theta0, predictive=predictive)

    @classmethod
    def scaled_bernoulli(cls, p: float, mean: float, predictive: bool = False) -> "TargetSpec":
        return cls(family="scaled_bernoulli", p=p, mean=mean, predictive=predictive)

    @classmethod
    def mixture(cls, weights, mus, sigmas, predictive: bool = False) -> "TargetSpec":
        return cls(
            family="gaussian_mixture",
            weights=tuple(weights),
            mus=tuple(mus),
            sigmas=tuple(sigmas),
            predictive=predictive,
        )

    @property
    def theta0(self) -> float:
        if self.family == "normal":
            return float(self.mu)
        if self.family == "bernoulli":
            return float(self.p)
        if self.family == "scaled_bernoulli":
            return float(self.mean)
        return float(sum(w * m for w, m in zip(self.weights, self.mus)))

    def with_truth(self, theta: float) -> "TargetSpec":
        """Same family with the inferred-truth parameter replaced."""
        if self.family == "normal":
            return replace(self, mu=float(theta))
        if self.family == "bernoulli":
            return replace(self, p=float(theta))
        if self.family == "scaled_bernoulli":
            return replace(self, mean=float(theta))
        raise UnsupportedTargetError("a mixture has no single truth parameter to sweep")

    def draw(self, stream: SeededStream, count: int) -> np.ndarray:
        if self.family == "normal":
            return sample_normal(stream, self.mu, self.sigma, count)
        if self.family == "bernoulli":
            return sample_bernoulli(stream, self.p, count)
        if self.family == "scaled_bernoulli":
            return sample_scaled_bernoulli(stream, self.p, self.mean, count)
        return sample_mixture(stream, self.weights, self.mus, self.sigmas, count)


@dataclass(frozen=True)
class SinghCurve:
    """Sorted required-confidence values with NEVER outcomes held aside.

    Monte Carlo curves weight every value 1/m. Exact enumeration curves carry
    explicit per-value probability weights instead, with the NEVER mass equal
    to whatever the weights leave uncovered; either way
    ``len(required) + never_count == m``.
    """

    required: np.ndarray
    m: int
    never_count: int = 0
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.required, dtype=np.float64).copy()
        if arr.ndim != 1:
            raise DomainError("required values must be a 1-D list")
        if arr.size and (np.diff(arr) < 0.0).any():
            raise DomainError("required values must be sorted ascending")
        if arr.size and (arr[0] < 0.0 or arr[-1] > 1.0):
            raise DomainError("required values must lie in [0, 1]")
        arr.flags.writeable = False
        object.__setattr__(self, "required", arr)
        if self.m < 1 or self.never_count < 0:
            raise DomainError("m must be >= 1 and never_count >= 0")
        if arr.size + self.never_count != self.m:
            raise DomainError("value count plus never_count must equal m")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64).copy()
            if w.shape != arr.shape or (w < 0.0).any() or w.sum() > 1.0 + 1e-9:
                raise DomainError("weights must match values and total at most 1")
            w.flags.writeable = False
            object.__setattr__(self, "weights", w)

    @property
    def never_fraction(self) -> float:
        if self.weights is not None:
            return float(max(0.0, 1.0 - self.weights.sum()))
        return self.never_count / self.m


@dataclass(frozen=True)
class SinghBand:
    """Pair of Singh curves from the two bounds of an imprecise structure.

    ``lower_curve`` collects the lower confidence components, so it is the
    higher-coverage side; ``upper_curve`` is the lower-coverage side.
    """

    lower_curve: SinghCurve
    upper_curve: SinghCurve

    def __post_init__(self) -> None:
        if self.lower_curve.m != self.upper_curve.m:
            raise DomainError("band curves must share the replicate count")

    @property
    def m(self) -> int:
        return self.lower_curve.m


@dataclass(frozen=True)
class CoverageReport:
    """Classification and summary statistics for one Singh result."""

    classification: str
    max_deficit: float
    conservatism_area: float
    dkw_epsilon: float
    m: int
    never_count: int = 0


def dkw_epsilon(m: int, delta: float = 0.01) -> float:
    """Sup-distance tolerance between an m-sample empirical CDF and its source.

    With probability at least 1 - delta the empirical CDF stays within this
    band of the generating CDF, simultaneously at every point.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)")
    return math.sqrt(math.log(2.0 / delta) / (2.0 * m))


def _coverage_curve(result) -> SinghCurve:
    """The curve coverage statements are judged on (a band's lower curve)."""
    return result.lower_curve if isinstance(result, SinghBand) else result


def eval_curve(curve: SinghCurve, alpha):
    """Fraction of replicates whose required confidence is at most ``alpha``.

    NEVER replicates are uncovered at every level, including alpha = 1.
    Accepts a scalar or an array of levels.
    """
    a = np.asarray(alpha, dtype=np.float64)
    if (a < 0.0).any() or (a > 1.0).any():
        raise DomainError("alpha must lie in [0, 1]")
    idx = np.searchsorted(curve.required, a, side="right")
    if curve.weights is None:
        cov = idx / curve.m
    else:
        cum = np.concatenate(([0.0], np.cumsum(curve.weights)))
        cov = cum[idx]
    return float(cov) if np.isscalar(alpha) else cov


def _check_run_args(structure: StructureSpec, target: TargetSpec, n: int, m: int) -> None:
    if m < 1:
        raise DomainError("m must be at least 1")
    if n < structure.min_n:
        raise DomainError(f"{structure.kind} needs n >= {structure.min_n}")
    if structure.kind in ("jeffreys", "clopper_pearson", "scaled_cbox") and target.family != "bernoulli":
        raise DomainError(f"{structure.kind} requires a bernoulli target")
    if (structure.kind == "empirical_predictive") != target.predictive:
        raise DomainError("predictive targets pair with empirical_predictive only")


def singh_curve(structure: StructureSpec, target: TargetSpec, n: int, m: int, stream: SeededStream):
    """Monte Carlo Singh result: m replicates of size n, one substream each.

    Every replicate i draws its dataset from ``stream.substream(i)`` and
    records the structure's required confidence at the truth (for predictive
    targets, at the (n+1)-th draw). Precise structures return a SinghCurve;
    imprecise ones return a SinghBand built from the same replicates, so the
    result is a pure function of (structure, target, n, m, stream).
    """
    _check_run_args(structure, target, n, m)
    draw_count = n + 1 if target.predictive else n
    discrete = target.family in ("bernoulli", "scaled_bernoulli")
    memo: dict = {}
    values: list[float] = []
    lowers: list[float] = []
    uppers: list[float] = []
    never = 0
    precise = structure.is_precise
    truth = None if target.predictive else target.theta0
    for i in range(m):
        x = target.draw(stream.substream(i), draw_count)
        if target.predictive:
            point = float(x[n])
            body = x[:n]
        else:
            point = truth
            body = x
        if discrete:
            # Value depends on the data only through the success count, so
            # identical counts reuse one evaluation.
            key = (float(body.sum()), point)
            cv = memo.get(key)
            if cv is None:
                cv = evaluate_structure(structure, point, Dataset(body))
                memo[key] = cv
        else:
            cv = evaluate_structure(structure, point, Dataset(body))
        if cv is NEVER:
            never += 1
        elif precise:
            values.append(cv.lower)
        else:
            lowers.append(cv.lower)
            uppers.append(cv.upper)
    if precise:
        return SinghCurve(np.sort(np.asarray(values)), m=m, never_count=never)
    return SinghBand(
        SinghCurve(np.sort(np.asarray(lowers)), m=m),
        SinghCurve(np.sort(np.asarray(uppers)), m=m),
    )


def _binomial_weights(n: int, p: float) -> np.ndarray:
    return np.array(
        [math.comb(n, k) * p**k * (1.0 - p) ** (n - k) for k in range(n + 1)],
        dtype=np.float64,
    )


def _weighted_curve(entries: list[tuple[float, float]], never_atoms: int) -> SinghCurve:
    values = np.asarray([v for v, _ in entries], dtype=np.float64)
    weights = np.asarray([w for _, w in entries], dtype=np.float64)
    order = np.argsort(values, kind="stable")
    return SinghCurve(
        values[order],
        m=len(entries) + never_atoms,
        never_count=never_atoms,
        weights=weights[order],
    )


def exact_singh_curve(structure: StructureSpec, target: TargetSpec, n: int):
    """Exact Singh result by enumerating the success count of a two-point target.

    For Bernoulli-family targets the dataset enters every structure only
    through its success count k, so the full distribution of required
    confidence is the n+1 values at k = 0..n carrying binomial weights. This
    is the zero-noise reference the Monte Carlo path is validated against.
    """
    if target.family not in ("bernoulli", "scaled_bernoulli"):
        raise UnsupportedTargetError("exact enumeration needs a bernoulli or scaled_bernoulli target")
    if target.predictive:
        raise UnsupportedTargetError("exact enumeration does not cover predictive targets")
    _check_run_args(structure, target, n, m=1)
    rate = target.p
    value = 1.0 if target.family == "bernoulli" else target.mean / target.p
    truth = target.theta0
    weights = _binomial_weights(n, rate)
    precise = structure.is_precise
    atoms: list[tuple[float, float]] = []
    lower_atoms: list[tuple[float, float]] = []
    upper_atoms: list[tuple[float, float]] = []
    never_atoms = 0
    for k in range(n + 1):
        data = Dataset(np.concatenate((np.full(k, value), np.zeros(n - k))))
        cv = evaluate_structure(structure, truth, data)
        w = float(weights[k])
        if cv is NEVER:
            never_atoms += 1
        elif precise:
            atoms.append((cv.lower, w))
        else:
            lower_atoms.append((cv.lower, w))
            upper_atoms.append((cv.upper, w))
    if precise:
        return _weighted_curve(atoms, never_atoms)
    return SinghBand(
        _weighted_curve(lower_atoms, never_atoms),
        _weighted_curve(upper_atoms, never_atoms),
    )


def max_coverage_deficit(result, grid: int = DEFAULT_GRID_POINTS) -> float:
    """Worst shortfall of coverage below the nominal level over an alpha grid.

    Uses the coverage-relevant curve (a band's lower curve); negative when
    the curve is conservative everywhere on the grid.
    """
    if grid < 2:
        raise DomainError("grid must have at least 2 points")
    alphas = np.linspace(0.0, 1.0, grid)
    cov = eval_curve(_coverage_curve(result), alphas)
    return float((alphas - cov).max())


def classify(result, delta: float = 0.01) -> CoverageReport:
    """Label a Singh result against its DKW tolerance tube.

    overconfident: the coverage-relevant curve dips below alpha - epsilon
    somewhere. favourable: it stays inside the tube everywhere. conservative:
    it clears the tube upward across the whole central range
    ``CONSERVATIVE_RANGE`` (curves meet the diagonal at the extreme tails, so
    only the central range discriminates). valid: everything else.
    """
    curve = _coverage_curve(result)
    eps = dkw_epsilon(curve.m, delta)
    alphas = np.linspace(0.0, 1.0, DEFAULT_GRID_POINTS)
    gap = eval_curve(curve, alphas) - alphas
    lo, hi = CONSERVATIVE_RANGE
    central = (alphas >= lo - 1e-12) & (alphas <= hi + 1e-12)
    if (gap < -eps).any():
        label = "overconfident"
    elif (np.abs(gap) <= eps).all():
        label = "favourable"
    elif (gap[central] > eps).all():
        label = "conservative"
    else:
        label = "valid"
    if isinstance(result, SinghBand):
        spread = eval_curve(result.lower_curve, alphas) - eval_curve(result.upper_curve, alphas)
        area = float(np.trapezoid(spread, alphas))
    else:
        area = 0.0
    return CoverageReport(
        classification=label,
        max_deficit=float((-gap).max()),
        conservatism_area=area,
        dkw_epsilon=eps,
        m=curve.m,
        never_count=curve.never_count,
    )
