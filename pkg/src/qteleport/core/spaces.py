"""Composite Hilbert spaces with labelled basis states."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
import math
from typing import TYPE_CHECKING

import numpy as np

from qteleport.exceptions import DuplicateFactorError, SpaceError, UnknownFactorError


if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from qteleport.type_utils import ComplexArray


@dataclass(frozen=True)
class Factor:
    """A named subsystem with labelled basis states."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.labels:
            msg = f"Factor {self.name!r} needs at least one basis state"
            raise SpaceError(msg)
        if len(set(self.labels)) != len(self.labels):
            msg = f"Factor {self.name!r} has repeated labels: {self.labels}"
            raise SpaceError(msg)

    @classmethod
    def of_dim(cls, name: str, dim: int) -> Factor:
        """Create a factor labelled "0" .. "dim-1"."""
        return cls(name, tuple(str(i) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str | int) -> int:
        """Position of a basis label within this factor."""
        key = str(label)
        try:
            return self.labels.index(key)
        except ValueError as e:
            msg = f"Factor {self.name!r} has no level {key!r} (levels: {self.labels})"
            raise UnknownFactorError(msg) from e


@dataclass(frozen=True)
class HilbertSpace:
    """Ordered tensor product of named factors.

    Basis states are enumerated in row-major order, the first factor being the
    slowest index.
    """

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        if not self.factors:
            msg = "A Hilbert space needs at least one factor"
            raise SpaceError(msg)
        names = [f.name for f in self.factors]
        if dupes := sorted({n for n in names if names.count(n) > 1}):
            msg = f"Duplicate factor names: {dupes}"
            raise DuplicateFactorError(msg)

    @classmethod
    def single(cls, name: str, labels: Sequence[str] | int) -> HilbertSpace:
        """Space made of one factor, given by labels or a dimension."""
        if isinstance(labels, int):
            return cls((Factor.of_dim(name, labels),))
        return cls((Factor(name, tuple(labels)),))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def position(self, name: str) -> int:
        """Index of a factor in the product order."""
        try:
            return self.names.index(name)
        except ValueError as e:
            msg = f"Unknown factor {name!r} (factors: {self.names})"
            raise UnknownFactorError(msg) from e

    def factor(self, name: str) -> Factor:
        return self.factors[self.position(name)]

    def index(self, labels: Mapping[str, str | int]) -> int:
        """Flat index of the basis state with the given label per factor."""
        if unknown := set(labels) - set(self.names):
            msg = f"Unknown factors {sorted(unknown)} (factors: {self.names})"
            raise UnknownFactorError(msg)
        if missing := [n for n in self.names if n not in labels]:
            msg = f"Basis state needs a label for every factor, missing {missing}"
            raise UnknownFactorError(msg)
        positions = [f.index(labels[f.name]) for f in self.factors]
        return int(np.ravel_multi_index(positions, self.dims))

    def basis_vector(self, **labels: str | int) -> ComplexArray:
        vector = np.zeros(self.dim, dtype=np.complex128)
        vector[self.index(labels)] = 1.0
        return vector

    def basis_labels(self) -> list[tuple[str, ...]]:
        """Labels of every basis state in flat-index order."""
        grids = np.unravel_index(np.arange(self.dim), self.dims)
        return [
            tuple(f.labels[int(g[i])] for f, g in zip(self.factors, grids))
            for i in range(self.dim)
        ]

    def lift(self, local: ComplexArray, name: str) -> ComplexArray:
        """Embed a factor-local matrix into the full space (identity elsewhere)."""
        pos = self.position(name)
        dim = self.factors[pos].dim
        if local.shape != (dim, dim):
            msg = f"Local operator for {name!r} must be {dim}x{dim}, got {local.shape}"
            raise SpaceError(msg)
        parts = [
            local if i == pos else np.eye(f.dim, dtype=np.complex128)
            for i, f in enumerate(self.factors)
        ]
        return reduce(np.kron, parts)

    def __str__(self) -> str:
        return " ⊗ ".join(f"{f.name}({f.dim})" for f in self.factors)


def compose(spaces: Iterable[HilbertSpace]) -> HilbertSpace:
    """Tensor product of spaces, factors kept in the given order.

    Raises:
        SpaceError: If no space is given
        DuplicateFactorError: If two factors share a name
    """
    factors = tuple(f for space in spaces for f in space.factors)
    return HilbertSpace(factors)
