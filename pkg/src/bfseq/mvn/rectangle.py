from collections.abc import Sequence
from dataclasses import dataclass
from typing import Self

import numpy as np
import numpy.typing as npt

from bfseq.errors import CholeskyError, ConfigError, DesignError

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class HyperRectangle:
    """Axis-aligned box with possibly infinite bounds.

    Attributes:
        lower: Lower bounds, one per coordinate.
        upper: Upper bounds, one per coordinate.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            msg = f"bound lengths differ: {len(self.lower)} != {len(self.upper)}"
            raise ConfigError(msg)
        for i, (lo, hi) in enumerate(zip(self.lower, self.upper, strict=True)):
            if not lo < hi:
                msg = f"coordinate {i}: lower bound {lo} must be below upper bound {hi}"
                raise ConfigError(msg)

    @classmethod
    def from_bounds(cls, lower: Sequence[float], upper: Sequence[float]) -> Self:
        return cls(tuple(float(v) for v in lower), tuple(float(v) for v in upper))

    @property
    def dim(self) -> int:
        return len(self.lower)

    def extend(self, lo: float, hi: float) -> "HyperRectangle":
        """Return a rectangle with one more coordinate appended."""
        return HyperRectangle((*self.lower, float(lo)), (*self.upper, float(hi)))

    def contains(self, points: npt.ArrayLike) -> npt.NDArray[np.bool_]:
        """Membership of each row of ``points`` (closed on both sides)."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return np.all((pts >= lo) & (pts <= hi), axis=1)


@dataclass(frozen=True, eq=False)
class MvnMoments:
    """Mean vector and positive definite covariance of a multivariate normal.

    Attributes:
        mean: Mean vector of length d.
        cov: Symmetric positive definite d x d covariance matrix.
    """

    mean: FloatArray
    cov: FloatArray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=np.float64).reshape(-1)
        cov = np.atleast_2d(np.asarray(self.cov, dtype=np.float64))
        d = mean.shape[0]
        if cov.shape != (d, d):
            msg = f"covariance shape {cov.shape} does not match mean length {d}"
            raise DesignError(msg)
        scale = max(float(np.max(np.abs(cov))), 1.0)
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-12 * scale):
            msg = "covariance matrix is not symmetric"
            raise ConfigError(msg)
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            msg = "covariance matrix is not positive definite"
            raise CholeskyError(msg) from exc
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def dim(self) -> int:
        return int(self.mean.shape[0])

    def marginal(self, k: int) -> "MvnMoments":
        """Moments of the first ``k`` coordinates."""
        if not 1 <= k <= self.dim:
            msg = f"marginal dimension must be within 1..{self.dim}, got {k}"
            raise DesignError(msg)
        return MvnMoments(self.mean[:k].copy(), self.cov[:k, :k].copy())
