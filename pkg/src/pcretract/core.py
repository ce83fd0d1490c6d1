"""Vectors, norms, the entier function, closed-set descriptors and piece families.

Every set constructible through this module is closed by construction: the
descriptor grammar only offers closed primitives (closed intervals, closed
norm bands, singletons) and closure-preserving combinators (finite unions,
translates).  There is deliberately no runtime closedness check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np


class DimensionMismatch(ValueError):
    """A point's dimension does not match the set it is tested against."""


def as_vector(coords) -> np.ndarray:
    """Validate and freeze a point of R^d (d >= 1, all coordinates finite)."""
    v = np.array(coords, dtype=float).reshape(-1)
    if v.size < 1:
        raise ValueError("a vector needs at least one coordinate")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector coordinates must be finite")
    v.flags.writeable = False
    return v


def as_points(x, dim: int | None = None) -> np.ndarray:
    """Coerce input to an (n, d) batch of points; validates finiteness."""
    a = np.asarray(x, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2 or a.shape[1] < 1:
        raise ValueError("expected a point or an (n, d) batch of points")
    if not np.all(np.isfinite(a)):
        raise ValueError("points must have finite coordinates")
    if dim is not None and a.shape[1] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {a.shape[1]}")
    return a


@dataclass(frozen=True)
class NormKind:
    """Which norm R^d carries: a p-norm with p >= 1, or the max-norm (p = inf)."""

    p: float = 2.0

    def __post_init__(self):
        if not (self.p >= 1.0):  # also rejects NaN
            raise ValueError(f"p-norm parameter must satisfy p >= 1, got {self.p}")

    @property
    def is_max(self) -> bool:
        return math.isinf(self.p)

    def label(self) -> str:
        if self.is_max:
            return "max"
        p = self.p
        return f"p:{int(p)}" if float(p).is_integer() else f"p:{p!r}"

    @classmethod
    def parse(cls, text: str) -> "NormKind":
        t = text.strip().lower()
        if t in ("max", "inf", "p:inf"):
            return cls(math.inf)
        if t.startswith("p:"):
            try:
                return cls(float(t[2:]))
            except ValueError:
                pass
        raise ValueError(f"unrecognized norm {text!r}; use 'p:<value>' or 'max'")


MAX_NORM = NormKind(math.inf)
EUCLIDEAN = NormKind(2.0)


def norm(x, kind: NormKind = EUCLIDEAN) -> Union[float, np.ndarray]:
    """p-norm or max-norm of a point or an (n, d) batch."""
    a = np.asarray(x, dtype=float)
    if np.any(np.isnan(a)):
        raise ValueError("norm of a NaN coordinate is undefined")
    ord_ = np.inf if kind.is_max else kind.p
    r = np.linalg.norm(a, ord=ord_, axis=-1)
    return float(r) if np.ndim(r) == 0 else r


def entier(t: float) -> int:
    """Greatest integer <= t (floor semantics, also for negative t)."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"entier of non-finite value {t!r}")
    return math.floor(t)


@dataclass(frozen=True)
class Tolerance:
    """Numerical slack: membership_tol for boundary comparisons, identity_tol
    for pointwise map identities."""

    membership_tol: float = 1e-9
    identity_tol: float = 1e-12

    def __post_init__(self):
        if not (self.membership_tol > 0 and self.identity_tol > 0):
            raise ValueError("tolerances must be strictly positive")


def _mtol(tol) -> float:
    if isinstance(tol, Tolerance):
        return tol.membership_tol
    return float(tol)


# ---------------------------------------------------------------------------
# Set descriptors


class SetDescriptor:
    """Closed subset of R^d described structurally.

    Subclasses implement ``dim``, ``contains``, ``sample`` and ``to_json``.
    ``contains`` applies boundary slack ``tol`` so floating-point boundary
    points do not spuriously fall outside.
    """

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def contains(self, x, tol=1e-9):
        """Membership test; accepts a single point or an (n, d) batch."""
        single = np.asarray(x, dtype=float).ndim == 1
        pts = as_points(x, self.dim)
        out = self._contains(pts, _mtol(tol))
        return bool(out[0]) if single else out

    def _contains(self, pts: np.ndarray, tol: float) -> np.ndarray:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, n: int, cap: float = 8.0) -> np.ndarray:
        """Seeded points of the set, as an (m, d) array with m <= n.

        ``cap`` bounds the radius used for unbounded bands.  Sampling aims at
        coverage for property checks, not at measure uniformity.
        """
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __str__(self) -> str:
        import json

        return json.dumps(self.to_json())


@dataclass(frozen=True)
class Interval(SetDescriptor):
    """Closed interval [lo, hi] in R (d = 1)."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def dim(self) -> int:
        return 1

    def _contains(self, pts, tol):
        t = pts[:, 0]
        return (t >= self.lo - tol) & (t <= self.hi + tol)

    def sample(self, rng, n, cap=8.0):
        return rng.uniform(self.lo, self.hi, size=(n, 1))

    def to_json(self):
        return {"variant": "interval", "lo": self.lo, "hi": self.hi}


def _json_num(v: float):
    return "inf" if math.isinf(v) else v


@dataclass(frozen=True)
class NormBand(SetDescriptor):
    """{x in R^d : lo <= ||x|| <= hi}; hi may be +inf."""

    kind: NormKind
    lo: float
    hi: float
    ndim: int

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi):
            raise ValueError(f"norm band requires 0 <= lo <= hi, got [{self.lo}, {self.hi}]")
        if self.ndim < 1:
            raise ValueError("band dimension must be >= 1")

    @property
    def dim(self) -> int:
        return self.ndim

    def _contains(self, pts, tol):
        r = norm(pts, self.kind)
        return (r >= self.lo - tol) & (r <= self.hi + tol)

    def sample(self, rng, n, cap=8.0):
        g = rng.normal(size=(n, self.ndim))
        # Degenerate gaussian draws are astronomically unlikely; nudge anyway.
        rg = norm(g, self.kind)
        rg = np.where(rg == 0.0, 1.0, rg)
        dirs = g / rg[:, None]
        hi = self.hi if math.isfinite(self.hi) else max(self.lo, 1.0) + cap
        radii = rng.uniform(self.lo, hi, size=n)
        return dirs * radii[:, None]

    def to_json(self):
        return {
            "variant": "norm_band",
            "norm": self.kind.label(),
            "lo": self.lo,
            "hi": _json_num(self.hi),
            "dim": self.ndim,
        }


@dataclass(frozen=True)
class Singleton(SetDescriptor):
    """One point of R^d."""

    point: tuple

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(float(c) for c in self.point))
        as_vector(self.point)

    @property
    def dim(self) -> int:
        return len(self.point)

    @property
    def vector(self) -> np.ndarray:
        return as_vector(self.point)

    def _contains(self, pts, tol):
        return np.max(np.abs(pts - np.asarray(self.point)), axis=1) <= tol

    def sample(self, rng, n, cap=8.0):
        return np.tile(np.asarray(self.point, dtype=float), (n, 1))

    def to_json(self):
        return {"variant": "singleton", "point": list(self.point)}


@dataclass(frozen=True)
class FiniteUnion(SetDescriptor):
    """Finite union of closed descriptors of equal dimension."""

    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("a finite union needs at least one member")
        dims = {m.dim for m in self.members}
        if len(dims) != 1:
            raise DimensionMismatch(f"union members disagree on dimension: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.members[0].dim

    def _contains(self, pts, tol):
        out = np.zeros(len(pts), dtype=bool)
        for m in self.members:
            rest = ~out
            if not rest.any():
                break
            out[rest] = m._contains(pts[rest], tol)
        return out

    def sample(self, rng, n, cap=8.0):
        which = rng.integers(0, len(self.members), size=n)
        chunks = []
        for i, m in enumerate(self.members):
            k = int(np.sum(which == i))
            if k:
                chunks.append(m.sample(rng, k, cap))
        return np.concatenate(chunks, axis=0)

    def to_json(self):
        return {"variant": "finite_union", "members": [m.to_json() for m in self.members]}


@dataclass(frozen=True)
class Translate(SetDescriptor):
    """base + offset; a translate of a closed set is closed."""

    base: SetDescriptor
    offset: tuple

    def __post_init__(self):
        object.__setattr__(self, "offset", tuple(float(c) for c in self.offset))
        if len(self.offset) != self.base.dim:
            raise DimensionMismatch("offset dimension must match the base set")

    @property
    def dim(self) -> int:
        return self.base.dim

    def _contains(self, pts, tol):
        return self.base._contains(pts - np.asarray(self.offset), tol)

    def sample(self, rng, n, cap=8.0):
        return self.base.sample(rng, n, cap) + np.asarray(self.offset)

    def to_json(self):
        return {"variant": "translate", "base": self.base.to_json(), "offset": list(self.offset)}


def descriptor_from_json(obj: dict) -> SetDescriptor:
    """Inverse of ``SetDescriptor.to_json`` for the closed grammar."""
    variant = obj.get("variant")
    if variant == "interval":
        return Interval(obj["lo"], obj["hi"])
    if variant == "norm_band":
        hi = obj["hi"]
        return NormBand(
            NormKind.parse(obj["norm"]),
            obj["lo"],
            math.inf if hi == "inf" else float(hi),
            obj["dim"],
        )
    if variant == "singleton":
        return Singleton(tuple(obj["point"]))
    if variant == "finite_union":
        return FiniteUnion(tuple(descriptor_from_json(m) for m in obj["members"]))
    if variant == "translate":
        return Translate(descriptor_from_json(obj["base"]), tuple(obj["offset"]))
    raise ValueError(f"unknown descriptor variant {variant!r}")


def contains(descriptor: SetDescriptor, x, tol=Tolerance()) -> bool:
    """Membership of a point in a described set, with boundary slack."""
    return descriptor.contains(as_vector(x), _mtol(tol))


@dataclass(frozen=True)
class FullSpace:
    """All of R^d, as the domain marker of a total map."""

    ndim: int

    def __post_init__(self):
        if self.ndim < 1:
            raise ValueError("dimension must be >= 1")

    @property
    def dim(self) -> int:
        return self.ndim

    def contains(self, x, tol=1e-9):
        single = np.asarray(x, dtype=float).ndim == 1
        pts = as_points(x, self.ndim)
        return True if single else np.ones(len(pts), dtype=bool)

    def sample(self, rng, n, cap=8.0):
        return rng.normal(size=(n, self.ndim)) * (cap / 4.0)

    def to_json(self):
        return {"variant": "full_space", "dim": self.ndim}


# ---------------------------------------------------------------------------
# Piece families


@dataclass(frozen=True, eq=False)
class PieceFamily:
    """Increasing sequence n -> closed set, the certificate carried by a
    witnessed piecewise map.  ``declared_monotone`` records the constructor's
    claim that piece(n) is contained in piece(n+1); checks sample-test it."""

    piece_at: Callable[[int], SetDescriptor]
    declared_monotone: bool = True
    label: str = ""

    def to_json(self, upto: int = 3) -> dict:
        return {
            "label": self.label,
            "declared_monotone": self.declared_monotone,
            "pieces": [piece(self, n).to_json() for n in range(upto + 1)],
        }


def piece(family: PieceFamily, n: int) -> SetDescriptor:
    """The n-th witness piece (n >= 0)."""
    n = int(n)
    if n < 0:
        raise ValueError("piece index must be >= 0")
    return family.piece_at(n)


def constant_family(descriptor: SetDescriptor, label: str = "") -> PieceFamily:
    return PieceFamily(lambda n: descriptor, declared_monotone=True, label=label)
