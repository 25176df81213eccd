"""Finitely generated matrix groups and their word balls."""
from __future__ import annotations

from typing import Sequence

import logging
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from convex_cocompact.errors import BudgetError, PreconditionError
from convex_cocompact.projlin import ProjectiveMap, canonical_lift

log = logging.getLogger(__name__)

DEDUP_TOL = 1e-9
BUCKET = 1e-6
MAX_ELEMENTS = 200_000


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A group element together with a shortest word found by the ball enumeration."""

    matrix: np.ndarray
    word: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def map(self) -> ProjectiveMap:
        return ProjectiveMap(self.matrix)

    @property
    def label(self) -> str:
        return "*".join(self.word) if self.word else "id"

    def __repr__(self) -> str:
        return f"GroupElement({self.label})"


def _inverse_label(label: str) -> str:
    return label[:-3] if label.endswith("^-1") else f"{label}^-1"


class MatrixGroup:
    """Subgroup of PGL_d(R) generated by finitely many maps.

    Formal inverses are added to the alphabet unless a generator is projectively an involution. Balls
    are enumerated breadth first, one word-length layer at a time, and cached: ``ball(L)`` is always a
    prefix of ``ball(L + 1)``.

    Parameters
    ----------
    generators : Sequence[ProjectiveMap]
        Generating maps, all of the same dimension.
    labels : Sequence[str] | None, optional
        Generator names, by default ``g0, g1, ...``.
    max_elements : int, optional
        Enumeration budget, by default 200000.
    progress : bool, optional
        Show a tqdm bar over word-length layers, by default False.
    """

    def __init__(
        self,
        generators: Sequence[ProjectiveMap],
        labels: Sequence[str] | None = None,
        max_elements: int = MAX_ELEMENTS,
        progress: bool = False,
    ) -> None:
        if len(generators) == 0:
            raise PreconditionError("A matrix group needs at least one generator.")
        dims = {g.dim for g in generators}
        if len(dims) != 1:
            raise PreconditionError(f"Generators have mixed dimensions {sorted(dims)}.")
        self.generators = list(generators)
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(len(generators))]
        if len(self.labels) != len(self.generators):
            raise PreconditionError("Need exactly one label per generator.")
        self.max_elements = max_elements
        self.progress = progress

        letters, names = [], []
        for g, label in zip(self.generators, self.labels):
            letters.append(g.lift)
            names.append(label)
            inv = g.inverse()
            if not inv == g:
                letters.append(inv.lift)
                names.append(_inverse_label(label))
        self._letters = np.array(letters)
        self.letter_labels = names

        identity = np.eye(self.dim)
        self._matrices: list[np.ndarray] = [identity]
        self._words: list[tuple[str, ...]] = [()]
        self._layers: list[int] = [0, 1]
        self._buckets: dict[tuple[int, ...], list[int]] = {}
        self._register(identity, 0)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @property
    def depth(self) -> int:
        """Largest word length enumerated so far."""
        return len(self._layers) - 2

    def _key(self, canonical: np.ndarray) -> tuple[int, ...]:
        return tuple(np.round(canonical.reshape(-1) / BUCKET).astype(np.int64))

    def _lookup(self, canonical: np.ndarray) -> bool:
        for idx in self._buckets.get(self._key(canonical), []):
            other = canonical_lift(self._matrices[idx])
            if min(np.linalg.norm(other - canonical), np.linalg.norm(other + canonical)) <= DEDUP_TOL:
                return True
        return False

    def _register(self, matrix: np.ndarray, idx: int) -> None:
        self._buckets.setdefault(self._key(canonical_lift(matrix)), []).append(idx)

    def _grow(self) -> None:
        start, stop = self._layers[-2], self._layers[-1]
        layer = np.array(self._matrices[start:stop]).reshape(-1, self.dim, self.dim)
        products = np.einsum("aij,njk->naik", self._letters, layer)
        for n in range(products.shape[0]):
            for a in range(products.shape[1]):
                mat = products[n, a]
                if self._lookup(canonical_lift(mat)):
                    continue
                if len(self._matrices) >= self.max_elements:
                    raise BudgetError(
                        f"Ball enumeration exceeded {self.max_elements} elements at length {self.depth + 1}.",
                        partial=self.elements(),
                    )
                self._register(mat, len(self._matrices))
                self._matrices.append(mat)
                self._words.append((self.letter_labels[a],) + self._words[start + n])
        self._layers.append(len(self._matrices))
        log.debug(f"Layer {self.depth}: {self._layers[-1] - self._layers[-2]} new elements")

    def _ensure(self, radius: int) -> None:
        if radius < 0:
            raise PreconditionError("Word length must be nonnegative.")
        missing = range(self.depth, radius)
        for _ in tqdm(missing, desc="ball layers", disable=not self.progress or len(missing) == 0):
            self._grow()

    def elements(self, stop: int | None = None) -> list[GroupElement]:
        stop = len(self._matrices) if stop is None else stop
        return [GroupElement(m, w) for m, w in zip(self._matrices[:stop], self._words[:stop])]

    def enumerate_ball(self, radius: int) -> list[GroupElement]:
        """All distinct products of at most `radius` letters, in breadth-first order.

        Raises
        ------
        BudgetError
            If more than `max_elements` elements would be cached; `partial` holds the elements found.
        """
        self._ensure(radius)
        ball = self.elements(self._layers[radius + 1])
        log.info(f"Ball of radius {radius}: {len(ball)} elements")
        return ball

    def ball_matrices(self, radius: int) -> np.ndarray:
        """Stacked (n, d, d) lifts of the ball of the given radius."""
        self._ensure(radius)
        return np.array(self._matrices[: self._layers[radius + 1]])

    def sphere_sizes(self, radius: int) -> list[int]:
        self._ensure(radius)
        return [self._layers[k + 1] - self._layers[k] for k in range(radius + 1)]

    def evaluate(self, word: Sequence[str]) -> ProjectiveMap:
        """Product of the letters of a word, read left to right."""
        index = {name: i for i, name in enumerate(self.letter_labels)}
        for name, g in zip(self.labels, self.generators):
            if g.inverse() == g:
                index[_inverse_label(name)] = index[name]
        mat = np.eye(self.dim)
        for name in word:
            if name not in index:
                raise PreconditionError(f"Unknown letter {name!r}.")
            mat = mat @ self._letters[index[name]]
        return ProjectiveMap(mat)

    def inverse_word(self, word: Sequence[str]) -> tuple[str, ...]:
        """Word of the inverse element in the letters of this group."""
        letters = set(self.letter_labels)
        out = []
        for name in reversed(word):
            inv = _inverse_label(name)
            out.append(inv if inv in letters else name)
        return tuple(out)

    def subgroup(self, words: Sequence[Sequence[str]], labels: Sequence[str] | None = None) -> MatrixGroup:
        """Subgroup generated by the given words in the letters of this group."""
        generators = [self.evaluate(w) for w in words]
        if labels is None:
            labels = ["*".join(w) for w in words]
        return MatrixGroup(generators, labels, max_elements=self.max_elements, progress=self.progress)

    def __repr__(self) -> str:
        return f"MatrixGroup(dim={self.dim}, generators={self.labels})"
