"""Factory operations producing each retraction as a witnessed piecewise map.

A :class:`PiecewiseMap` bundles the evaluation rule with its certificate: an
increasing family of closed pieces covering the domain, on each of which the
restriction is continuous (with a declared Lipschitz bound where known).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .core import (
    DimensionMismatch,
    FiniteUnion,
    FullSpace,
    Interval,
    NormBand,
    NormKind,
    PieceFamily,
    SetDescriptor,
    Singleton,
    Tolerance,
    as_points,
    as_vector,
    constant_family,
    norm,
    piece,
)


class ConstructionError(ValueError):
    """A factory's preconditions were violated."""


# ---------------------------------------------------------------------------
# Codomain regions.  Retracts may be non-closed ([0,1), the open unit ball);
# they are carried as a membership predicate on the closure (with boundary
# slack) plus the increasing family of closed sets exhausting them.


class Codomain:
    dim: int

    def contains(self, x, tol=1e-9):
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    @property
    def closure_pieces(self) -> PieceFamily:
        raise NotImplementedError


@dataclass(frozen=True)
class ClosedRegion(Codomain):
    descriptor: SetDescriptor

    @property
    def dim(self) -> int:
        return self.descriptor.dim

    def contains(self, x, tol=1e-9):
        return self.descriptor.contains(x, tol)

    def sample(self, rng, n):
        return self.descriptor.sample(rng, n)

    @property
    def closure_pieces(self) -> PieceFamily:
        return constant_family(self.descriptor, label="constant")


@dataclass(frozen=True)
class HalfOpenUnitInterval(Codomain):
    """[0, 1) in R, exhausted by the closed intervals [0, 1 - 1/(k+1)]."""

    @property
    def dim(self) -> int:
        return 1

    def contains(self, x, tol=1e-9):
        single = np.asarray(x, dtype=float).ndim == 1
        t = as_points(x, 1)[:, 0]
        out = (t >= -tol) & (t <= 1.0 + tol)
        return bool(out[0]) if single else out

    def sample(self, rng, n):
        return rng.uniform(0.0, 1.0, size=(n, 1))

    @property
    def closure_pieces(self) -> PieceFamily:
        return PieceFamily(
            lambda k: Interval(0.0, 1.0 - 1.0 / (k + 1)),
            declared_monotone=True,
            label="unit-interval-f-sigma",
        )


@dataclass(frozen=True)
class OpenUnitBall(Codomain):
    """{||x|| < 1}, exhausted by the closed bands {||x|| <= 1 - 1/(k+1)}."""

    kind: NormKind
    ndim: int

    @property
    def dim(self) -> int:
        return self.ndim

    def contains(self, x, tol=1e-9):
        single = np.asarray(x, dtype=float).ndim == 1
        r = norm(as_points(x, self.ndim), self.kind)
        out = r <= 1.0 + tol
        return bool(out[0]) if single else out

    def sample(self, rng, n):
        g = rng.normal(size=(n, self.ndim))
        rg = norm(g, self.kind)
        rg = np.where(rg == 0.0, 1.0, rg)
        radii = rng.uniform(0.0, 1.0, size=n)
        return (g / rg[:, None]) * radii[:, None]

    @property
    def closure_pieces(self) -> PieceFamily:
        return PieceFamily(
            lambda k: NormBand(self.kind, 0.0, 1.0 - 1.0 / (k + 1), self.ndim),
            declared_monotone=True,
            label="open-ball-f-sigma",
        )


def unit_sphere(kind: NormKind, dim: int) -> ClosedRegion:
    return ClosedRegion(NormBand(kind, 1.0, 1.0, dim))


@dataclass(frozen=True)
class PuncturedSpace:
    """R^d without the origin; open, so only a membership predicate."""

    ndim: int

    @property
    def dim(self) -> int:
        return self.ndim

    def contains(self, x, tol=0.0):
        single = np.asarray(x, dtype=float).ndim == 1
        pts = as_points(x, self.ndim)
        out = np.any(pts != 0.0, axis=1)
        return bool(out[0]) if single else out

    def sample(self, rng, n):
        pts = rng.normal(size=(n, self.ndim)) * 2.0
        return pts[np.any(pts != 0.0, axis=1)]


# ---------------------------------------------------------------------------
# The catalog of maps that are continuous on their declared domain.  Gluing
# accepts only these, so continuity of the off-retract branch is structural
# rather than checked.


class ContinuousMapRule:
    lipschitz: Optional[float] = None

    def defined_at(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(ContinuousMapRule):
    value: tuple

    def __post_init__(self):
        object.__setattr__(self, "value", tuple(float(c) for c in self.value))
        as_vector(self.value)

    lipschitz = 0.0

    def defined_at(self, pts):
        return np.ones(len(pts), dtype=bool)

    def apply(self, pts):
        return np.tile(np.asarray(self.value, dtype=float), (len(pts), 1))


@dataclass(frozen=True)
class Clamp1D(ContinuousMapRule):
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ConstructionError("clamp requires lo <= hi")

    lipschitz = 1.0

    def defined_at(self, pts):
        return np.ones(len(pts), dtype=bool)

    def apply(self, pts):
        return np.clip(pts, self.lo, self.hi)


@dataclass(frozen=True)
class RadialProjection(ContinuousMapRule):
    """x -> x/||x||; continuous away from the origin, undefined at it."""

    kind: NormKind

    def defined_at(self, pts):
        return norm(pts, self.kind) > 0.0

    def apply(self, pts):
        r = norm(pts, self.kind)
        if np.any(r == 0.0):
            raise ConstructionError("radial projection evaluated at the origin")
        return pts / r[:, None]


# ---------------------------------------------------------------------------
# Witnessed piecewise maps


@dataclass(frozen=True, eq=False)
class PiecewiseMap:
    """A total map on its domain together with a witness cover certifying
    piecewise continuity.

    ``piece_lipschitz(n)`` is the declared Lipschitz bound of the restriction
    to witness piece n (None = unknown); declared bounds are meant to be
    validated against the empirical Lipschitz oracle before being trusted.
    ``predicted_index_fn(points, tol)`` returns, per point, a witness index
    whose piece is guaranteed to contain the point (-1 = no piece found,
    which a cover check must report as a failure).
    """

    construction_id: str
    dim: int
    kind: NormKind
    domain: object  # SetDescriptor | FullSpace | PuncturedSpace
    codomain: Codomain
    rule: Callable[[np.ndarray], np.ndarray]
    witness: PieceFamily
    piece_lipschitz: Callable[[int], Optional[float]]
    predicted_index_fn: Callable[[np.ndarray, float], np.ndarray]

    def apply(self, pts) -> np.ndarray:
        return self.rule(as_points(pts, self.dim))

    def __call__(self, x) -> np.ndarray:
        return self.apply(as_vector(x)[None, :])[0]

    def predicted_index(self, pts, tol: float = 1e-9) -> np.ndarray:
        return self.predicted_index_fn(as_points(pts, self.dim), tol)

    def replace(self, **changes) -> "PiecewiseMap":
        import dataclasses

        return dataclasses.replace(self, **changes)


@dataclass(frozen=True, eq=False)
class PreimageWithin(SetDescriptor):
    """piece ∩ mapping^{-1}(base): closed, because the mapping restricted to
    the (closed) piece is continuous and base is closed."""

    piece: SetDescriptor
    mapping: PiecewiseMap
    base: SetDescriptor

    @property
    def dim(self) -> int:
        return self.piece.dim

    def _contains(self, pts, tol):
        out = np.asarray(self.piece.contains(pts, tol))
        if out.any():
            imgs = self.mapping.apply(pts[out])
            out[out] = np.asarray(self.base.contains(imgs, tol))
        return out

    def sample(self, rng, n, cap=8.0):
        pts = self.piece.sample(rng, 4 * n, cap)
        keep = np.asarray(self.base.contains(self.mapping.apply(pts), 1e-9))
        return pts[keep][:n]

    def to_json(self):
        return {
            "variant": "preimage_within",
            "piece": self.piece.to_json(),
            "map": self.mapping.construction_id,
            "base": self.base.to_json(),
        }


def _scan_index(witness: PieceFamily, cap: int):
    def fn(pts: np.ndarray, tol: float) -> np.ndarray:
        idx = np.full(len(pts), -1, dtype=np.int64)
        for n in range(cap + 1):
            open_ = idx < 0
            if not open_.any():
                break
            hit = np.asarray(witness.piece_at(n).contains(pts[open_], tol))
            sel = np.flatnonzero(open_)[hit]
            idx[sel] = n
        return idx

    return fn


def _frac_split(values: np.ndarray):
    """floor/fraction split with the wrap guard for frac rounding up to 1.0."""
    base = np.floor(values)
    frac = values - base
    wrap = frac >= 1.0
    base = np.where(wrap, base + 1.0, base)
    frac = np.where(wrap, 0.0, frac)
    return base, frac


def _index_for_fraction(frac: np.ndarray) -> np.ndarray:
    """Smallest m with frac <= 1 - 1/(m+1), i.e. m+1 >= 1/(1-frac)."""
    m = np.zeros(len(frac), dtype=np.int64)
    pos = frac > 0.0
    m[pos] = np.ceil(1.0 / (1.0 - frac[pos])).astype(np.int64) - 1
    return m


# ---------------------------------------------------------------------------
# Constructions


def fractional_part_retraction() -> PiecewiseMap:
    """x -> x - entier(x), a retraction of R onto [0, 1).

    Witness piece m is the union of the intervals [n, n+1-1/(m+1)] for
    |n| <= m: the doubly-indexed closed cover re-enumerated diagonally into a
    single increasing sequence.
    """

    def rule(pts):
        base, frac = _frac_split(pts[:, 0])
        return frac[:, None]

    def piece_at(m):
        width = 1.0 - 1.0 / (m + 1)
        return FiniteUnion(
            tuple(Interval(float(n), float(n) + width) for n in range(-m, m + 1))
        )

    def predicted(pts, tol):
        base, frac = _frac_split(pts[:, 0])
        return np.maximum(np.abs(base).astype(np.int64), _index_for_fraction(frac))

    return PiecewiseMap(
        construction_id="fractional",
        dim=1,
        kind=NormKind(2.0),
        domain=FullSpace(1),
        codomain=HalfOpenUnitInterval(),
        rule=rule,
        witness=PieceFamily(piece_at, declared_monotone=True, label="fractional-diagonal"),
        piece_lipschitz=lambda m: 1.0,
        predicted_index_fn=predicted,
    )


def glue_retraction(
    a_region: Codomain,
    a_pieces: PieceFamily,
    complement_pieces: PieceFamily,
    g: ContinuousMapRule,
    *,
    construction_id: str = "glue",
    piece_lipschitz: Optional[Callable[[int], Optional[float]]] = None,
    predicted_index: Optional[Callable] = None,
    index_scan_cap: int = 64,
    check_samples: int = 128,
    check_seed: int = 0,
    tolerance: Tolerance = Tolerance(),
) -> PiecewiseMap:
    """Identity on the retract A, the continuous catalog map g off it.

    Witness piece n is a_pieces(n) ∪ complement_pieces(n).  The factory
    sample-checks that g is defined on the complement pieces and maps them
    into A.
    """
    dim = a_region.dim
    rng = np.random.default_rng(check_seed)
    for n in range(4):
        s = piece(complement_pieces, n).sample(rng, check_samples)
        if len(s) == 0:
            continue
        if not np.all(g.defined_at(s)):
            raise ConstructionError(
                f"g is undefined on sampled points of complement piece {n}"
            )
        imgs = g.apply(s)
        inside = np.asarray(a_region.contains(imgs, tolerance.membership_tol))
        if not np.all(inside):
            raise ConstructionError(
                f"g maps sampled points of complement piece {n} outside the retract"
            )

    def rule(pts):
        on_a = np.asarray(a_region.contains(pts, 0.0))
        out = pts.copy()
        if (~on_a).any():
            out[~on_a] = g.apply(pts[~on_a])
        return out

    def piece_at(n):
        return FiniteUnion((piece(a_pieces, n), piece(complement_pieces, n)))

    witness = PieceFamily(piece_at, declared_monotone=True, label=f"{construction_id}-glued")
    return PiecewiseMap(
        construction_id=construction_id,
        dim=dim,
        kind=NormKind(2.0) if dim > 1 else NormKind(2.0),
        domain=FullSpace(dim),
        codomain=a_region,
        rule=rule,
        witness=witness,
        piece_lipschitz=piece_lipschitz or (lambda n: None),
        predicted_index_fn=predicted_index or _scan_index(witness, index_scan_cap),
    )


def extend_retraction(
    inner: PiecewiseMap,
    g: ContinuousMapRule,
    u_region,
    complement_pieces: PieceFamily,
    *,
    construction_id: str = "extend",
    piece_lipschitz: Optional[Callable[[int], Optional[float]]] = None,
    predicted_index: Optional[Callable] = None,
    index_scan_cap: int = 64,
    check_samples: int = 128,
    check_seed: int = 0,
    tolerance: Tolerance = Tolerance(),
) -> PiecewiseMap:
    """Extend a retraction on U to all of X by the continuous map g off U.

    ``u_region`` decides membership in U (an open set, hence a predicate, not
    a closed descriptor); ``complement_pieces`` is the closed decomposition
    of X \\ U supplied by the caller, since the descriptor grammar cannot
    express complements.  Witness piece n is inner.witness(n) ∪
    complement_pieces(n).
    """
    dim = inner.dim
    rng = np.random.default_rng(check_seed)
    a_samples = inner.codomain.sample(rng, check_samples)
    if not np.all(np.asarray(u_region.contains(a_samples, 0.0))):
        raise ConstructionError("the retract is not contained in U on sampled points")
    for n in range(4):
        s = piece(complement_pieces, n).sample(rng, check_samples)
        if len(s) == 0:
            continue
        if not np.all(g.defined_at(s)):
            raise ConstructionError(f"g is undefined on sampled complement piece {n}")
        imgs = g.apply(s)
        if not np.all(np.asarray(inner.codomain.contains(imgs, tolerance.membership_tol))):
            raise ConstructionError(f"g maps sampled complement piece {n} outside the retract")

    def rule(pts):
        in_u = np.asarray(u_region.contains(pts, 0.0))
        out = np.empty_like(pts)
        if in_u.any():
            out[in_u] = inner.apply(pts[in_u])
        if (~in_u).any():
            out[~in_u] = g.apply(pts[~in_u])
        return out

    def piece_at(n):
        return FiniteUnion((piece(inner.witness, n), piece(complement_pieces, n)))

    witness = PieceFamily(piece_at, declared_monotone=True, label=f"{construction_id}-extended")
    return PiecewiseMap(
        construction_id=construction_id,
        dim=dim,
        kind=inner.kind,
        domain=FullSpace(dim),
        codomain=inner.codomain,
        rule=rule,
        witness=witness,
        piece_lipschitz=piece_lipschitz or (lambda n: None),
        predicted_index_fn=predicted_index or _scan_index(witness, index_scan_cap),
    )


def constant_extension(
    inner: PiecewiseMap,
    a0,
    u_region,
    complement_pieces: PieceFamily,
    *,
    tolerance: Tolerance = Tolerance(),
    **kwargs,
) -> PiecewiseMap:
    """Extend by the constant map x -> a0 off U; a0 must lie in the retract."""
    a0 = as_vector(a0)
    if not inner.codomain.contains(a0, tolerance.membership_tol):
        raise ConstructionError("a0 must belong to the retract")
    kwargs.setdefault("construction_id", "const-extend")
    return extend_retraction(
        inner, Constant(tuple(a0)), u_region, complement_pieces,
        tolerance=tolerance, **kwargs,
    )


def radial_projection_map(dim: int, kind: NormKind) -> PiecewiseMap:
    """x -> x/||x|| on R^d minus the origin, witnessed by the bands
    {||x|| >= 1/n}; the inner retraction used by the extension factories."""
    if dim < 1:
        raise ConstructionError("dimension must be >= 1")
    sphere = unit_sphere(kind, dim)

    def rule(pts):
        return RadialProjection(kind).apply(pts)

    def piece_at(n):
        return NormBand(kind, 1.0 / max(n, 1), math.inf, dim)

    def predicted(pts, tol):
        r = norm(pts, kind)
        idx = np.full(len(pts), -1, dtype=np.int64)
        pos = r > 0.0
        idx[pos] = np.maximum(np.ceil(1.0 / r[pos]).astype(np.int64), 1)
        return idx

    return PiecewiseMap(
        construction_id="radial",
        dim=dim,
        kind=kind,
        domain=PuncturedSpace(dim),
        codomain=sphere,
        rule=rule,
        witness=PieceFamily(piece_at, declared_monotone=True, label="radial-bands"),
        piece_lipschitz=lambda n: 2.0 * max(n, 1),
        predicted_index_fn=predicted,
    )


def sphere_retraction(
    dim: int,
    kind: NormKind,
    t=None,
    *,
    ambient: str = "space",
    paper_witness: bool = False,
    tolerance: Tolerance = Tolerance(),
) -> PiecewiseMap:
    """Retraction of R^d (or of the closed unit ball) onto the unit sphere:
    x -> x/||x|| away from the origin, the fixed unit vector t at it.

    Witness piece n is {0} ∪ {||x|| >= 1/n}: the band alone misses the
    origin, so each piece is augmented with the origin as an isolated point.
    ``paper_witness=True`` keeps the un-augmented bands, whose union does not
    cover the domain; a cover check against it must fail at the origin.
    """
    if dim < 1:
        raise ConstructionError("dimension must be >= 1")
    if ambient not in ("space", "ball"):
        raise ConstructionError("ambient must be 'space' or 'ball'")
    if t is None:
        t = np.zeros(dim)
        t[0] = 1.0
    t = as_vector(t)
    if len(t) != dim:
        raise DimensionMismatch("t must live in the ambient dimension")
    if abs(norm(t, kind) - 1.0) > tolerance.identity_tol:
        raise ConstructionError("t must lie on the unit sphere")
    origin = Singleton(tuple(0.0 for _ in range(dim)))
    band_hi = 1.0 if ambient == "ball" else math.inf

    def rule(pts):
        r = norm(pts, kind)
        zero = r == 0.0
        safe = np.where(zero, 1.0, r)
        out = pts / safe[:, None]
        if zero.any():
            out[zero] = np.asarray(t)
        return out

    def piece_at(n):
        band = NormBand(kind, 1.0 / max(n, 1), band_hi, dim)
        if paper_witness:
            return band
        return FiniteUnion((origin, band))

    def predicted(pts, tol):
        r = norm(pts, kind)
        idx = np.full(len(pts), -1 if paper_witness else 1, dtype=np.int64)
        pos = r > 0.0
        idx[pos] = np.maximum(np.ceil(1.0 / r[pos]).astype(np.int64), 1)
        return idx

    return PiecewiseMap(
        construction_id="sphere",
        dim=dim,
        kind=kind,
        domain=FullSpace(dim) if ambient == "space" else NormBand(kind, 0.0, 1.0, dim),
        codomain=unit_sphere(kind, dim),
        rule=rule,
        witness=PieceFamily(
            piece_at,
            declared_monotone=True,
            label="sphere-paper-bands" if paper_witness else "sphere-augmented-bands",
        ),
        piece_lipschitz=lambda n: 2.0 * max(n, 1),
        predicted_index_fn=predicted,
    )


def open_ball_retraction(
    dim: int,
    kind: NormKind,
    *,
    allow_low_dim: bool = False,
) -> PiecewiseMap:
    """Retraction of R^d onto the open unit ball:
    x -> (1 - entier(||x||)/||x||) * x, with the origin fixed.

    Witness piece m is the union over n = 0..m of the closed bands
    {n <= ||x|| <= n+1 - 1/(m+1)} (diagonal enumeration of the doubly-indexed
    band family, started at n = 0 so the open unit ball region is covered).
    """
    if dim < 2 and not allow_low_dim:
        raise ConstructionError(
            "open-ball retraction requires dimension >= 2"
            " (pass allow_low_dim=True for exploration)"
        )
    if dim < 1:
        raise ConstructionError("dimension must be >= 1")

    def rule(pts):
        r = norm(pts, kind)
        zero = r == 0.0
        safe = np.where(zero, 1.0, r)
        factor = 1.0 - np.floor(r) / safe
        out = factor[:, None] * pts
        if zero.any():
            out[zero] = 0.0
        return out

    def piece_at(m):
        hi_off = 1.0 - 1.0 / (m + 1)
        return FiniteUnion(
            tuple(NormBand(kind, float(n), float(n) + hi_off, dim) for n in range(m + 1))
        )

    def predicted(pts, tol):
        r = norm(pts, kind)
        base, frac = _frac_split(r)
        return np.maximum(base.astype(np.int64), _index_for_fraction(frac))

    return PiecewiseMap(
        construction_id="open-ball",
        dim=dim,
        kind=kind,
        domain=FullSpace(dim),
        codomain=OpenUnitBall(kind, dim),
        rule=rule,
        witness=PieceFamily(piece_at, declared_monotone=True, label="open-ball-diagonal"),
        piece_lipschitz=lambda m: 1.0 if m == 0 else max(3.0, 2.0 * m),
        predicted_index_fn=predicted,
    )


# ---------------------------------------------------------------------------
# Canonical instances and the registry used by the CLI and reports


def canonical_glue(dim: int = 1, kind: NormKind = NormKind(2.0)) -> PiecewiseMap:
    """X = R, A = [0, 1], g = clamp to [0, 1] off A."""
    a = Interval(0.0, 1.0)

    def complement_at(n):
        return FiniteUnion(
            (
                Interval(-(n + 1.0), -1.0 / (n + 2)),
                Interval(1.0 + 1.0 / (n + 2), n + 2.0),
            )
        )

    def predicted(pts, tol):
        t = pts[:, 0]
        idx = np.zeros(len(t), dtype=np.int64)
        neg = t < 0.0
        idx[neg] = np.ceil(
            np.maximum(np.maximum(-t[neg] - 1.0, 1.0 / (-t[neg]) - 2.0), 0.0)
        ).astype(np.int64)
        big = t > 1.0
        idx[big] = np.ceil(
            np.maximum(np.maximum(t[big] - 2.0, 1.0 / (t[big] - 1.0) - 2.0), 0.0)
        ).astype(np.int64)
        return idx

    return glue_retraction(
        ClosedRegion(a),
        constant_family(a, label="retract-constant"),
        PieceFamily(complement_at, declared_monotone=True, label="complement-intervals"),
        Clamp1D(0.0, 1.0),
        # the glued map coincides with the global clamp, which is 1-Lipschitz
        piece_lipschitz=lambda n: 1.0,
        predicted_index=predicted,
    )


def _punctured_extension(dim: int, kind: NormKind, factory, **kwargs) -> PiecewiseMap:
    inner = radial_projection_map(dim, kind)
    origin = Singleton(tuple(0.0 for _ in range(dim)))
    t = np.zeros(dim)
    t[0] = 1.0
    sphere_like = sphere_retraction(dim, kind, t)
    return factory(
        inner,
        u_region=PuncturedSpace(dim),
        complement_pieces=constant_family(origin, label="origin"),
        piece_lipschitz=lambda n: 2.0 * max(n, 1),
        predicted_index=sphere_like.predicted_index_fn,
        **kwargs,
    )


def canonical_extend(dim: int = 2, kind: NormKind = NormKind(2.0)) -> PiecewiseMap:
    """Extension of the radial projection over the puncture by the constant
    map to e1; behaves identically to the sphere retraction."""
    t = np.zeros(dim)
    t[0] = 1.0
    return _punctured_extension(dim, kind, extend_retraction, g=Constant(tuple(t)))


def canonical_constant_extension(dim: int = 2, kind: NormKind = NormKind(2.0)) -> PiecewiseMap:
    t = np.zeros(dim)
    t[0] = 1.0
    return _punctured_extension(dim, kind, constant_extension, a0=t)


CONSTRUCTION_IDS = ("fractional", "glue", "extend", "const-extend", "sphere", "open-ball")


def build_construction(
    construction_id: str,
    dim: int = 2,
    kind: NormKind = NormKind(2.0),
    *,
    paper_witness: bool = False,
    allow_low_dim: bool = False,
) -> PiecewiseMap:
    """Build the named construction (canonical instance for the glue and
    extension factories)."""
    if construction_id == "fractional":
        return fractional_part_retraction()
    if construction_id == "glue":
        return canonical_glue(dim, kind)
    if construction_id == "extend":
        return canonical_extend(dim, kind)
    if construction_id == "const-extend":
        return canonical_constant_extension(dim, kind)
    if construction_id == "sphere":
        return sphere_retraction(dim, kind, paper_witness=paper_witness)
    if construction_id == "open-ball":
        return open_ball_retraction(dim, kind, allow_low_dim=allow_low_dim)
    raise ConstructionError(
        f"unknown construction {construction_id!r}; expected one of {CONSTRUCTION_IDS}"
    )
