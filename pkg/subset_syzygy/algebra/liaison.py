"""
Linkage of zero-schemes of P^2 by complete intersections, degree matrices
and the base locus test on I(X)_l.
"""

import logging
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np
from sympy import Poly, symbols

from subset_syzygy.algebra.exactfield import FieldSpec, Matrix, matmul_mod, nullspace, rank, rref
from subset_syzygy.algebra.koszul import BettiTable
from subset_syzygy.algebra.pointideal import GradedBasis, PointSet, hilbert, ideal_basis
from subset_syzygy.algebra.polyspace import (
    PolyVec,
    evaluate,
    monomial_basis,
    multiplication_matrix,
    partial,
)
from subset_syzygy.config import DEFAULT_SEED, GENERIC_RETRIES
from subset_syzygy.errors import LinkageError, PreconditionError

logger = logging.getLogger(__name__)


def ci_delta(a: int, b: int) -> tuple[int, ...]:
    """Δh of a complete intersection of type (a, b), t = 0..a+b-2."""
    if a < 1 or b < 1:
        raise PreconditionError(f"complete intersection degrees ({a}, {b}) must be positive")
    return tuple(min(t + 1, a, b, a + b - 1 - t) for t in range(a + b - 1))


def link_hf(delta_X: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    """
    Δh of the residual D of X in a complete intersection of type (a, b):
    Δh_D(t) = Δh_CI(a+b-2-t) - Δh_X(a+b-2-t), for t = 0..a+b-2.
    """
    ci = ci_delta(a, b)
    socle = a + b - 2
    delta = list(delta_X)
    if any(delta[socle + 1 :]):
        raise LinkageError(
            f"Δh_X = {tuple(delta)} is nonzero past the socle degree {socle} of CI({a}, {b})"
        )
    delta = (delta + [0] * len(ci))[: len(ci)]
    residual = tuple(ci[socle - t] - delta[socle - t] for t in range(socle + 1))
    negative = [t for t, value in enumerate(residual) if value < 0]
    if negative:
        raise LinkageError(
            f"Δh_X = {tuple(delta_X)} exceeds Δh of CI({a}, {b}) in degree {socle - negative[0]}"
        )
    return residual


def _to_sympy(f: PolyVec) -> Poly:
    gens = symbols(f"x0:{f.n + 1}")
    terms = {exponents: coefficient for coefficient, exponents in f.terms()}
    return Poly.from_dict(terms, *gens, modulus=f.field.prime)


def _from_sympy(g: Poly, field: FieldSpec, n: int) -> PolyVec:
    degree = g.total_degree()
    basis = monomial_basis(n, degree)
    coeffs = np.zeros(len(basis), dtype=np.int64)
    for exponents, coefficient in g.terms():
        coeffs[basis.index(exponents)] = int(coefficient) % field.prime
    return PolyVec(field, n, degree, coeffs)


def form_gcd(A: PolyVec, B: PolyVec) -> PolyVec:
    """Greatest common divisor of two forms, normalized to leading coefficient 1."""
    if A.is_zero():
        return B.normalized()
    if B.is_zero():
        return A.normalized()
    divisor = _to_sympy(A).gcd(_to_sympy(B))
    return _from_sympy(divisor, A.field, A.n).normalized()


def base_locus_gcd(X: PointSet, l: int) -> tuple[int, Optional[PolyVec]]:  # noqa: E741
    """
    Degree k of the gcd F of I(X)_l, with F when k > 0; k > 0 exactly when
    the base locus of I(X)_l is one-dimensional.
    """
    elements = ideal_basis(X, l).elements()
    if not elements:
        raise PreconditionError(f"I(X)_{l} is zero, there is no base locus to test")
    divisor = elements[0].normalized()
    for element in elements[1:]:
        divisor = form_gcd(divisor, element)
        if divisor.degree == 0:
            break
    if divisor.degree == 0:
        return 0, None
    return divisor.degree, divisor


def split_on_curve(X: PointSet, F: PolyVec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Indices of the points on F = 0 and of the points off it."""
    on = tuple(i for i, point in enumerate(X.points) if evaluate(F, point) == 0)
    off = tuple(i for i in range(len(X)) if i not in on)
    return on, off


def delta_shift_pairs(X: PointSet, F: PolyVec, l: int) -> list[tuple[int, int, int]]:  # noqa: E741
    """
    (t, Δh_{X_2}(t-k), Δh_X(t) - k) for k <= t <= l, with X_2 the points
    off F and k = deg F; the last two agree when F is the gcd of I(X)_l.
    """
    k = F.degree
    full = hilbert(X)
    _, off = split_on_curve(X, F)
    rest = hilbert(X.subset(off)) if off else None
    return [
        (t, rest.delta(t - k) if rest else 0, full.delta(t) - k) for t in range(k, l + 1)
    ]


def is_transversal(H: PolyVec, K: PolyVec, X: PointSet) -> bool:
    """True when the Jacobian of (H, K) has rank 2 at every point of X."""
    gradients = [
        [partial(form, i) for i in range(X.n + 1)] for form in (H, K)
    ]
    for point in X.points:
        jacobian = Matrix.from_rows(
            X.field, [[evaluate(d, point) for d in row] for row in gradients]
        )
        if rank(jacobian) < 2:
            return False
    return True


def _check_link(H: PolyVec, K: PolyVec, X: PointSet):
    if H.n != 2 or K.n != 2 or X.n != 2:
        raise PreconditionError("linkage is implemented for points of P^2")
    for name, form in (("H", H), ("K", K)):
        if form.is_zero():
            raise LinkageError(f"{name} is the zero form")
        for position, point in enumerate(X.points):
            if evaluate(form, point):
                raise LinkageError(f"{name} does not vanish at the point", f"points[{position}]")
    if form_gcd(H, K).degree:
        raise LinkageError("H and K share a factor and do not form a regular sequence")


def _complete_intersection_span(
    H: PolyVec, K: PolyVec, u: int
) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced echelon basis of I(C)_u = H·S_{u-a} + K·S_{u-b}."""
    rows = [
        multiplication_matrix(form, u - form.degree).entries.T
        for form in (H, K)
        if u >= form.degree
    ]
    if not rows:
        return np.zeros((0, comb(u + 2, 2)), dtype=np.int64), ()
    reduced, pivots = rref(Matrix(H.field, np.vstack(rows)))
    return reduced.entries[: len(pivots)], pivots


def _normal_form(
    columns: np.ndarray, span: np.ndarray, pivots: tuple[int, ...], prime: int
) -> np.ndarray:
    """Reduce each column modulo the row span of ``span``."""
    if not pivots:
        return columns
    return (columns - matmul_mod(span.T, columns[list(pivots)], prime)) % prime


def colon_basis(H: PolyVec, K: PolyVec, X: PointSet, t: int) -> GradedBasis:
    """
    Basis of I(D)_t for I(D) = (H, K) : I(X), i.e. the forms g of degree t
    with g·I(X)_s ⊆ (H, K)_{t+s} for every s up to the regularity of X.
    """
    _check_link(H, K, X)
    return _colon(H, K, X, t)


def _colon(H: PolyVec, K: PolyVec, X: PointSet, t: int) -> GradedBasis:
    prime = X.field.prime
    table = hilbert(X)
    blocks = []
    for s in range(table.initial_degree, table.stabilization + 2):
        span, pivots = _complete_intersection_span(H, K, t + s)
        for f in ideal_basis(X, s).elements():
            blocks.append(_normal_form(multiplication_matrix(f, t).entries, span, pivots, prime))
    width = comb(t + 2, 2)
    stacked = np.vstack(blocks) if blocks else np.zeros((0, width), dtype=np.int64)
    vectors, free = nullspace(Matrix(X.field, stacked))
    return GradedBasis(X.n, t, vectors, free)


def residual_deltas(H: PolyVec, K: PolyVec, X: PointSet) -> tuple[int, ...]:
    """Δh_D(t) for t = 0..a+b-2, computed from the colon ideal."""
    _check_link(H, K, X)
    values = [comb(t + 2, 2) - len(_colon(H, K, X, t)) for t in range(H.degree + K.degree - 1)]
    return tuple(v - (values[t - 1] if t else 0) for t, v in enumerate(values))


def shared_support(H: PolyVec, K: PolyVec, X: PointSet) -> tuple[int, ...]:
    """Indices of the points of X that also lie on the residual D."""
    _check_link(H, K, X)
    basis = _colon(H, K, X, H.degree + K.degree - 1)
    if len(basis) == 0:
        return tuple(range(len(X)))
    values = np.array(
        [[evaluate(g, point) for g in basis.elements()] for point in X.points], dtype=np.int64
    )
    return tuple(int(i) for i in np.flatnonzero(~values.any(axis=1)))


def _candidate_forms(X: PointSet, degree: int, generator: np.random.Generator) -> list[PolyVec]:
    basis = ideal_basis(X, degree)
    forms = basis.elements()
    if not forms:
        return []
    weights = generator.integers(1, X.field.prime, size=(GENERIC_RETRIES, len(basis)))
    combined = matmul_mod(weights, basis.vectors.entries, X.field.prime)
    return forms + [PolyVec(X.field, X.n, degree, row) for row in combined]


def choose_complete_intersection(
    X: PointSet, a: int, b: int, seed: int = DEFAULT_SEED
) -> tuple[PolyVec, PolyVec]:
    """
    First pair (H, K) in I(X)_a x I(X)_b without common factor: basis
    elements first, then seeded random combinations.
    """
    if X.n != 2:
        raise PreconditionError("linkage is implemented for points of P^2")
    generator = np.random.default_rng(seed)
    first = _candidate_forms(X, a, generator)
    second = _candidate_forms(X, b, generator)
    for H in first:
        for K in second:
            if form_gcd(H, K).degree == 0:
                logger.info("complete intersection a=%s b=%s H=%s K=%s", a, b, H, K)
                return H, K
    raise LinkageError(f"I(X) contains no complete intersection of type ({a}, {b})")


@dataclass(frozen=True)
class DegreeMatrix:
    """u_{ij} = max{0, m_i - d_j} with both twist lists descending."""

    syzygy_twists: tuple[int, ...]
    generator_twists: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def to_text(self) -> str:
        width = max((len(str(v)) for row in self.entries for v in row), default=1)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in self.entries)


def degree_matrix(table: BettiTable) -> DegreeMatrix:
    if table.n != 2:
        raise PreconditionError(f"degree matrices are defined for points of P^2, not P^{table.n}")
    if any(p > 1 for p, _ in table.entries):
        raise PreconditionError("a P^2 point table has homological degrees 0 and 1 only")
    generators = table.generator_twists()
    syzygies = table.syzygy_twists()
    if len(generators) != len(syzygies) + 1:
        raise PreconditionError(
            f"{len(generators)} generators and {len(syzygies)} syzygies: "
            "a P^2 point table has one more generator than syzygies"
        )
    entries = tuple(tuple(max(0, m - d) for d in generators) for m in syzygies)
    return DegreeMatrix(tuple(syzygies), tuple(generators), entries)
