"""Scalar fields on a retract and the composition extension operator.

Fields come from a fixed catalog (constants, coordinate projections,
single-coordinate polynomials, sines/cosines of coordinates, products of two
coordinates, finite linear combinations) with declared bounds and Lipschitz
constants relative to the radius of their domain.  Arbitrary scalar functions
are deliberately not representable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import PieceFamily, Tolerance, as_points, as_vector
from .constructions import PiecewiseMap, PreimageWithin


class UnboundedFieldError(ValueError):
    """An operation requiring a bound was asked of an unbounded field."""


class FieldDomainError(ValueError):
    """Field and map domains do not fit together."""


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real-valued function on a described domain.

    ``witness`` is populated only for fields produced by the extension
    operator; catalog fields are globally continuous and carry none.
    """

    label: str
    dim: int
    rule: Callable[[np.ndarray], np.ndarray]
    domain: object  # SetDescriptor | Codomain | FullSpace
    bounded: bool
    bound: Optional[float] = None
    lipschitz: Optional[float] = None
    witness: Optional[PieceFamily] = None

    def apply(self, pts) -> np.ndarray:
        return self.rule(as_points(pts, self.dim))

    def __call__(self, x) -> float:
        return float(self.apply(as_vector(x)[None, :])[0])


def const_field(c: float, dim: int, domain) -> ScalarField:
    c = float(c)
    return ScalarField(
        label=f"const:{c:g}",
        dim=dim,
        rule=lambda pts: np.full(len(pts), c),
        domain=domain,
        bounded=True,
        bound=abs(c),
        lipschitz=0.0,
    )


def coord_field(i: int, dim: int, domain, radius: float = 1.0) -> ScalarField:
    if not (0 <= i < dim):
        raise FieldDomainError(f"coordinate {i} out of range for dimension {dim}")
    # |x_i| <= ||x||_p for every p >= 1, so `radius` bounds the field.
    return ScalarField(
        label=f"coord:{i}",
        dim=dim,
        rule=lambda pts: pts[:, i].copy(),
        domain=domain,
        bounded=math.isfinite(radius),
        bound=radius if math.isfinite(radius) else None,
        lipschitz=1.0,
    )


def sin_field(i: int, dim: int, domain, radius: float = 1.0) -> ScalarField:
    if not (0 <= i < dim):
        raise FieldDomainError(f"coordinate {i} out of range for dimension {dim}")
    return ScalarField(
        label=f"sin:{i}",
        dim=dim,
        rule=lambda pts: np.sin(pts[:, i]),
        domain=domain,
        bounded=True,
        bound=min(1.0, radius) if math.isfinite(radius) else 1.0,
        lipschitz=1.0,
    )


def cos_field(i: int, dim: int, domain, radius: float = 1.0) -> ScalarField:
    if not (0 <= i < dim):
        raise FieldDomainError(f"coordinate {i} out of range for dimension {dim}")
    return ScalarField(
        label=f"cos:{i}",
        dim=dim,
        rule=lambda pts: np.cos(pts[:, i]),
        domain=domain,
        bounded=True,
        bound=1.0,
        lipschitz=1.0,
    )


def prod_field(i: int, j: int, dim: int, domain, radius: float = 1.0) -> ScalarField:
    if not (0 <= i < dim and 0 <= j < dim):
        raise FieldDomainError(f"coordinates ({i},{j}) out of range for dimension {dim}")
    finite = math.isfinite(radius)
    return ScalarField(
        label=f"prod:{i},{j}",
        dim=dim,
        rule=lambda pts: pts[:, i] * pts[:, j],
        domain=domain,
        bounded=finite,
        bound=radius * radius if finite else None,
        lipschitz=2.0 * radius if finite else None,
    )


def poly_field(i: int, coeffs: Sequence[float], dim: int, domain, radius: float = 1.0) -> ScalarField:
    """c0 + c1*x_i + c2*x_i^2 + ... in the single coordinate x_i."""
    if not (0 <= i < dim):
        raise FieldDomainError(f"coordinate {i} out of range for dimension {dim}")
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise FieldDomainError("polynomial needs at least one coefficient")

    def rule(pts):
        t = pts[:, i]
        out = np.zeros(len(pts))
        for c in reversed(coeffs):
            out = out * t + c
        return out

    finite = math.isfinite(radius)
    bound = sum(abs(c) * radius**k for k, c in enumerate(coeffs)) if finite else None
    lip = sum(k * abs(c) * radius ** (k - 1) for k, c in enumerate(coeffs) if k) if finite else None
    label = "poly:" + str(i) + ":" + ",".join(f"{c:g}" for c in coeffs)
    return ScalarField(
        label=label, dim=dim, rule=rule, domain=domain,
        bounded=finite, bound=bound, lipschitz=lip,
    )


def linear_combination(terms: Sequence[tuple], label: Optional[str] = None) -> ScalarField:
    """sum of alpha * field over (alpha, field) pairs."""
    terms = [(float(a), f) for a, f in terms]
    if not terms:
        raise FieldDomainError("linear combination needs at least one term")
    dim = terms[0][1].dim
    domain = terms[0][1].domain
    if any(f.dim != dim for _, f in terms):
        raise FieldDomainError("linear combination terms disagree on dimension")

    def rule(pts):
        out = np.zeros(len(pts))
        for a, f in terms:
            out = out + a * f.rule(pts)
        return out

    bounded = all(f.bounded for _, f in terms)
    bound = sum(abs(a) * f.bound for a, f in terms) if bounded else None
    lips = [f.lipschitz for _, f in terms]
    lip = sum(abs(a) * l for (a, _), l in zip(terms, lips)) if all(
        l is not None for l in lips
    ) else None
    return ScalarField(
        label=label or "+".join(f"{a:g}*{f.label}" for a, f in terms),
        dim=dim, rule=rule, domain=domain,
        bounded=bounded, bound=bound, lipschitz=lip,
    )


def parse_field(expr: str, dim: int, domain, radius: float = 1.0) -> ScalarField:
    """Catalog field from a CLI expression: const:<c>, coord:<i>, sin:<i>,
    cos:<i>, prod:<i>,<j>, poly:<i>:<c0>,<c1>,..."""
    expr = expr.strip()
    head, sep, rest = expr.partition(":")
    try:
        if head == "const" and sep:
            return const_field(float(rest), dim, domain)
        if head == "coord" and sep:
            return coord_field(int(rest), dim, domain, radius)
        if head == "sin" and sep:
            return sin_field(int(rest), dim, domain, radius)
        if head == "cos" and sep:
            return cos_field(int(rest), dim, domain, radius)
        if head == "prod" and sep:
            i, j = rest.split(",")
            return prod_field(int(i), int(j), dim, domain, radius)
        if head == "poly" and sep:
            i, _, cs = rest.partition(":")
            return poly_field(int(i), [float(c) for c in cs.split(",")], dim, domain, radius)
    except (ValueError, TypeError) as exc:
        raise FieldDomainError(f"malformed field expression {expr!r}: {exc}") from exc
    raise FieldDomainError(f"unrecognized field expression {expr!r}")


def extension_operator(
    phi: PiecewiseMap,
    f: ScalarField,
    *,
    tolerance: Tolerance = Tolerance(),
    check_samples: int = 128,
    check_seed: int = 0,
) -> ScalarField:
    """Compose: x -> f(phi(x)), extending f from the retract to phi's domain.

    The composed field inherits phi's witness when f is continuous (no
    witness of its own); when f carries a finite witness, each phi-piece is
    refined by the preimages of f's pieces, which are closed within the
    phi-piece because the restriction of phi to it is continuous.
    """
    if f.dim != phi.codomain.dim:
        raise FieldDomainError(
            f"field lives in dimension {f.dim}, map retract in {phi.codomain.dim}"
        )
    rng = np.random.default_rng(check_seed)
    probe = phi.codomain.sample(rng, check_samples)
    if not np.all(np.asarray(f.domain.contains(probe, tolerance.membership_tol))):
        raise FieldDomainError("field domain does not cover the map's retract (sampled)")

    def rule(pts):
        return f.rule(phi.rule(pts))

    if f.witness is None:
        witness = phi.witness
    else:
        f_witness = f.witness

        def refined_at(n):
            from .core import FiniteUnion, piece

            base_piece = piece(phi.witness, n)
            return FiniteUnion(
                tuple(
                    PreimageWithin(base_piece, phi, piece(f_witness, k))
                    for k in range(n + 1)
                )
            )

        witness = PieceFamily(refined_at, declared_monotone=True, label="composed-refined")

    return ScalarField(
        label=f"T[{phi.construction_id}]({f.label})",
        dim=phi.dim,
        rule=rule,
        domain=phi.domain,
        bounded=f.bounded,
        bound=f.bound,
        lipschitz=None,
        witness=witness,
    )


def sup_norm_estimate(f: ScalarField, sampler, n: int) -> float:
    """max |f| over n seeded samples of f's domain: a lower bound on the sup
    norm, non-decreasing in n for nested seeded sample sets."""
    if not f.bounded:
        raise UnboundedFieldError(f"field {f.label} is not declared bounded")
    if n < 1:
        raise ValueError("sample count must be >= 1")
    pts = sampler.draw(n)
    return float(np.max(np.abs(f.apply(pts))))
