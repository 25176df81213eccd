"""Singular value gaps along word length."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.stats import linregress

from convex_cocompact.errors import PreconditionError
from convex_cocompact.group import MatrixGroup
from convex_cocompact.projlin import ProjectiveMap

log = logging.getLogger(__name__)


def singular_gaps(matrices: np.ndarray, k: int) -> np.ndarray:
    """log(mu_k / mu_{k+1}) for a stack of (n, d, d) matrices, 1-based k."""
    mu = np.linalg.svd(matrices, compute_uv=False)
    return np.maximum(np.log(mu[:, k - 1]) - np.log(mu[:, k]), 0.0)


def power_gaps(g: ProjectiveMap, k: int, n_max: int) -> np.ndarray:
    """Gaps of g, g^2, ..., g^n_max, renormalizing the powers as they grow."""
    powers, cur = [], np.eye(g.dim)
    for _ in range(n_max):
        cur = g.lift @ cur
        cur = cur / np.linalg.norm(cur, 2)
        powers.append(cur)
    return singular_gaps(np.array(powers), k)


@dataclass
class GapProfile:
    """Per-element k-th singular value gaps of a word ball and the linear fit of their lower envelope."""

    k: int
    word_lengths: np.ndarray
    gaps: np.ndarray
    slope: float
    intercept: float
    r_squared: float

    def envelope(self) -> tuple[np.ndarray, np.ndarray]:
        """Word lengths present in the profile and the smallest gap at each of them."""
        lengths = np.unique(self.word_lengths)
        return lengths, np.array([self.gaps[self.word_lengths == n].min() for n in lengths])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"word_length": self.word_lengths, "gap": self.gaps})


def gap_profile(group: MatrixGroup, k: int, L: int) -> GapProfile:
    """Gaps log(mu_k / mu_{k+1}) over ball(L) without the identity, fitted along the lower envelope.

    The fit is an ordinary least squares line through (n, min gap at word length n); slope, intercept
    and R^2 are NaN when fewer than two word lengths are present.
    """
    if not 1 <= k < group.dim:
        raise PreconditionError(f"Need 1 <= k < {group.dim}, got k = {k}.")
    elements = group.enumerate_ball(L)[1:]
    if not elements:
        raise PreconditionError(f"ball({L}) contains only the identity.")
    lengths = np.array([e.length for e in elements])
    gaps = singular_gaps(np.array([e.matrix for e in elements]), k)
    profile = GapProfile(k, lengths, gaps, float("nan"), float("nan"), float("nan"))
    xs, ys = profile.envelope()
    if len(xs) >= 2:
        fit = linregress(xs, ys)
        profile.slope, profile.intercept = float(fit.slope), float(fit.intercept)
        profile.r_squared = float(fit.rvalue**2)
    log.info(f"Gap profile k={k} over {len(elements)} elements: slope {profile.slope:.4g}, R^2 {profile.r_squared:.4g}")
    return profile
