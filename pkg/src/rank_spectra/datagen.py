"""Seeded generation of data matrices with independent rows and i.i.d. entries per row.

Each row is drawn from its own counter-based RNG stream keyed by
(master seed, row index), so a row's content never depends on how many
other rows exist and regeneration is bit-for-bit reproducible. All
variates are produced by inverse-CDF sampling from uniforms, which keeps
the stream layout identical across distributions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import DomainError, ParameterError

_CONTINUOUS_KINDS = frozenset({"uniform01", "standard_normal", "pareto", "student_t"})
_ALL_KINDS = _CONTINUOUS_KINDS | {"bernoulli", "constant"}

# uniforms are drawn as (k + 1/2) / 2^53 with k < 2^53, so they sit strictly inside (0,1)
_U_DENOM = float(2**53)


@dataclass(frozen=True)
class DistributionSpec:
    """One marginal distribution for a row of the data matrix."""

    kind: str
    m: float | None = None      # bernoulli success probability
    alpha: float | None = None  # pareto tail index, support [1, inf)
    nu: float | None = None     # student-t degrees of freedom
    c: float | None = None      # constant value (degenerate, for error-path tests)

    def __post_init__(self):
        if self.kind not in _ALL_KINDS:
            raise ParameterError(f"unknown distribution kind {self.kind!r}")
        if self.kind == "bernoulli":
            if self.m is None or not 0.0 < self.m < 1.0:
                raise ParameterError(f"bernoulli needs m in (0,1), got {self.m!r}")
        elif self.kind == "pareto":
            if self.alpha is None or not self.alpha > 0.0:
                raise ParameterError(f"pareto needs alpha > 0, got {self.alpha!r}")
        elif self.kind == "student_t":
            if self.nu is None or not self.nu > 0.0:
                raise ParameterError(f"student_t needs nu > 0, got {self.nu!r}")
        elif self.kind == "constant":
            if self.c is None or not np.isfinite(self.c):
                raise ParameterError(f"constant needs a finite value, got {self.c!r}")

    @property
    def is_continuous(self) -> bool:
        return self.kind in _CONTINUOUS_KINDS

    def label(self) -> str:
        if self.kind == "bernoulli":
            return f"bernoulli(m={self.m:g})"
        if self.kind == "pareto":
            return f"pareto(alpha={self.alpha:g})"
        if self.kind == "student_t":
            return f"student_t(nu={self.nu:g})"
        if self.kind == "constant":
            return f"constant(c={self.c:g})"
        return self.kind


def bernoulli(m: float) -> DistributionSpec:
    return DistributionSpec("bernoulli", m=m)


def uniform01() -> DistributionSpec:
    return DistributionSpec("uniform01")


def standard_normal() -> DistributionSpec:
    return DistributionSpec("standard_normal")


def pareto(alpha: float) -> DistributionSpec:
    return DistributionSpec("pareto", alpha=alpha)


def student_t(nu: float) -> DistributionSpec:
    return DistributionSpec("student_t", nu=nu)


def constant(c: float) -> DistributionSpec:
    return DistributionSpec("constant", c=c)


def quantile(spec: DistributionSpec, u):
    """Inverse CDF of ``spec`` at ``u``; accepts scalars or arrays, u must lie in (0,1)."""
    u = np.asarray(u, dtype=np.float64)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise DomainError("quantile argument must lie strictly inside (0,1)")
    if spec.kind == "uniform01":
        out = u.copy()
    elif spec.kind == "bernoulli":
        out = np.where(u <= 1.0 - spec.m, 0.0, 1.0)
    elif spec.kind == "standard_normal":
        out = _sp.ndtri(u)
    elif spec.kind == "pareto":
        out = (1.0 - u) ** (-1.0 / spec.alpha)
    elif spec.kind == "student_t":
        out = _sp.stdtrit(spec.nu, u)
    else:  # constant
        out = np.full_like(u, spec.c)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RowPattern:
    """Distribution specs assigned cyclically to rows 0, 1, 2, ..."""

    specs: tuple[DistributionSpec, ...]

    def __post_init__(self):
        if len(self.specs) == 0:
            raise ParameterError("row pattern must contain at least one spec")
        object.__setattr__(self, "specs", tuple(self.specs))

    def spec_for_row(self, i: int) -> DistributionSpec:
        return self.specs[i % len(self.specs)]

    @property
    def is_homogeneous(self) -> bool:
        return all(s == self.specs[0] for s in self.specs)

    def expanded(self, p: int) -> "RowPattern":
        """Pattern of length exactly p, i.e. the cyclic assignment written out."""
        return RowPattern(tuple(self.spec_for_row(i) for i in range(p)))


@dataclass(frozen=True)
class DataMatrix:
    p: int
    n: int
    entries: np.ndarray
    row_specs: tuple[DistributionSpec, ...]
    seed: int

    def __post_init__(self):
        if self.entries.shape != (self.p, self.n):
            raise ParameterError(f"entries shape {self.entries.shape} != ({self.p}, {self.n})")
        if not np.all(np.isfinite(self.entries)):
            raise ParameterError("data matrix contains non-finite entries")
        self.entries.setflags(write=False)


def _row_stream(seed: int, row: int) -> np.random.Generator:
    # Philox is counter-based; keying by (seed, row) gives independent,
    # order-free per-row streams.
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(row)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _open_uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    k = rng.integers(0, 2**53, size=n, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) / _U_DENOM


def sample_row(spec: DistributionSpec, n: int, seed: int, row: int) -> np.ndarray:
    return quantile(spec, _open_uniforms(_row_stream(seed, row), n))


def sample_matrix(pattern: RowPattern, p: int, n: int, seed: int) -> DataMatrix:
    """Draw the p-by-n data matrix; row i follows pattern.spec_for_row(i)."""
    if p < 1 or n < 1:
        raise ParameterError(f"need p >= 1 and n >= 1, got p={p}, n={n}")
    out = np.empty((p, n), dtype=np.float64)
    specs = []
    for i in range(p):
        spec = pattern.spec_for_row(i)
        specs.append(spec)
        out[i] = sample_row(spec, n, seed, i)
    return DataMatrix(p=p, n=n, entries=out, row_specs=tuple(specs), seed=seed)
