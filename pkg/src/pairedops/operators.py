"""Operator layer: Riesz projections, paired operators, sections, norms.

Two evaluation regimes coexist here on purpose.  The *exact* regime applies
an operator to a trigonometric polynomial with full band growth and no
truncation, so algebraic identities hold to rounding; it backs every kernel
and identity computation.  The *finite section* regime compresses an operator
to the exponent window [-N, N] and is used only where a limit N -> infinity
is the object of interest (operator norms, adjoint/block structure).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .symbols import LaurentPoly, NondegeneracyReport, is_nondegenerate

__all__ = [
    "BlockDecomposition",
    "CoeffVector",
    "CompositionResidual",
    "CommutatorResidual",
    "DegeneratePairError",
    "FiniteSection",
    "SectionKind",
    "SymbolPair",
    "apply_paired",
    "apply_transposed",
    "block_decompose",
    "commutator_residual",
    "composition_residual",
    "conjugation_identity_residual",
    "exact_action_matrix",
    "finite_section",
    "hankel_minus",
    "hankel_plus",
    "inner_product",
    "mul_apply",
    "op_norm",
    "riesz_minus",
    "riesz_plus",
]

# Role alias: a CoeffVector is a trigonometric polynomial regarded as an
# element of L2 rather than as a multiplier.  Same representation, same
# canonicalization rules.
CoeffVector = LaurentPoly

SectionKind = Literal[
    "paired", "transposed", "multiplication", "toeplitz", "hankel_minus", "hankel_plus"
]

_Z = LaurentPoly.monomial(1)
_Z_INV = LaurentPoly.monomial(-1)


class DegeneratePairError(ValueError):
    """A symbol pair failed the nondegeneracy requirement (a, b, a-b nonzero)."""

    def __init__(self, report: NondegeneracyReport):
        super().__init__("degenerate symbol pair: " + "; ".join(report.failures))
        self.report = report


@dataclass(frozen=True)
class SymbolPair:
    """An ordered pair of Laurent symbols (a, b) with cached nondegeneracy.

    The pair identifies both the paired operator  f -> a*P+f + b*P-f  and its
    transposed companion  f -> P+(a f) + P-(b f).
    """

    a: LaurentPoly
    b: LaurentPoly
    nondegenerate: bool = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nondegenerate", bool(is_nondegenerate(self.a, self.b)))

    def require_nondegenerate(self) -> "SymbolPair":
        if not self.nondegenerate:
            raise DegeneratePairError(is_nondegenerate(self.a, self.b))
        return self

    def conjugated(self) -> "SymbolPair":
        return SymbolPair(self.a.conj_reflect(), self.b.conj_reflect())

    def swapped(self) -> "SymbolPair":
        return SymbolPair(self.b, self.a)

    def conj_swapped(self) -> "SymbolPair":
        return SymbolPair(self.b.conj_reflect(), self.a.conj_reflect())

    def product(self, other: "SymbolPair") -> "SymbolPair":
        return SymbolPair(self.a * other.a, self.b * other.b)

    def band_radius(self) -> int:
        return max(
            abs(self.a.kmin), abs(self.a.kmax), abs(self.b.kmin), abs(self.b.kmax), 0
        )

    def to_json_dict(self) -> dict:
        return {"a": self.a.to_json_dict(), "b": self.b.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data) -> "SymbolPair":
        return cls(LaurentPoly.from_json_dict(data["a"]), LaurentPoly.from_json_dict(data["b"]))


# ---------------------------------------------------------------------------
# exact applications
# ---------------------------------------------------------------------------


def riesz_plus(v: CoeffVector) -> CoeffVector:
    """Keep the nonnegative Fourier modes (projection onto the Hardy space)."""
    return LaurentPoly({k: c for k, c in v.coeffs.items() if k >= 0})


def riesz_minus(v: CoeffVector) -> CoeffVector:
    """Keep the strictly negative Fourier modes."""
    return LaurentPoly({k: c for k, c in v.coeffs.items() if k <= -1})


def mul_apply(symbol: LaurentPoly, v: CoeffVector) -> CoeffVector:
    """Exact band-growing multiplication operator."""
    return symbol * v


def apply_paired(pair: SymbolPair, v: CoeffVector) -> CoeffVector:
    """Exact action  a * (P+ v) + b * (P- v)  with full band growth."""
    return pair.a * riesz_plus(v) + pair.b * riesz_minus(v)


def apply_transposed(pair: SymbolPair, v: CoeffVector) -> CoeffVector:
    """Exact action  P+(a v) + P-(b v)  with full band growth."""
    return riesz_plus(pair.a * v) + riesz_minus(pair.b * v)


def hankel_minus(symbol: LaurentPoly, v: CoeffVector) -> CoeffVector:
    """P- (symbol * v) for v supported on nonnegative exponents."""
    if not v.is_zero and v.kmin < 0:
        raise ValueError("hankel_minus expects an analytic argument (kmin >= 0)")
    return riesz_minus(symbol * v)


def hankel_plus(symbol: LaurentPoly, v: CoeffVector) -> CoeffVector:
    """P+ (symbol * v) for v supported on strictly negative exponents."""
    if not v.is_zero and v.kmax > -1:
        raise ValueError("hankel_plus expects a co-analytic argument (kmax <= -1)")
    return riesz_plus(symbol * v)


def inner_product(u: CoeffVector, v: CoeffVector) -> complex:
    """L2 inner product  sum_k u_k conj(v_k)."""
    if len(u.coeffs) <= len(v.coeffs):
        return sum((c * v.coeff(k).conjugate() for k, c in u.items()), 0j)
    return sum((u.coeff(k) * c.conjugate() for k, c in v.items()), 0j)


def conjugation_identity_residual(pair: SymbolPair, v: CoeffVector) -> float:
    """Residual of the conjugation identity linking (a, b) and (conj b, conj a).

    Computes || conj(T v) - z * T'( zbar * conj(v) ) ||_2 where T is the paired
    operator of ``pair``, T' the paired operator of the conjugated-swapped
    pair, and conj acts coefficientwise (realizing pointwise conjugation on
    the circle).  The value is zero to rounding for every input.
    """
    lhs = apply_paired(pair, v).conj_reflect()
    rhs = _Z * apply_paired(pair.conj_swapped(), _Z_INV * v.conj_reflect())
    return (lhs - rhs).l2_norm()


# ---------------------------------------------------------------------------
# finite sections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSection:
    """Compression of an operator to a finite window of Fourier exponents.

    ``matrix[i, j]`` is the coefficient of ``row_exponents[i]`` in the image
    of the basis vector ``col_exponents[j]``.
    """

    kind: str
    band: int
    matrix: np.ndarray
    row_exponents: tuple[int, ...]
    col_exponents: tuple[int, ...]

    def to_json_dict(self) -> dict:
        entries = []
        for i in range(self.matrix.shape[0]):
            for j in range(self.matrix.shape[1]):
                v = self.matrix[i, j]
                if v != 0:
                    entries.append([i, j, v.real, v.imag])
        return {"n": self.matrix.shape[0], "m": self.matrix.shape[1], "entries": entries}


def _section_exponents(kind: str, band: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    full = tuple(range(-band, band + 1))
    plus = tuple(range(0, band + 1))
    minus = tuple(range(-band, 0))
    if kind in ("paired", "transposed", "multiplication"):
        return full, full
    if kind == "toeplitz":
        return plus, plus
    if kind == "hankel_minus":
        return minus, plus
    if kind == "hankel_plus":
        return plus, minus
    raise ValueError(f"unknown section kind {kind!r}")


def finite_section(operand, kind: SectionKind, band: int) -> FiniteSection:
    """Matrix of the compression  Pi_N Op Pi_N  in the exponent basis.

    ``operand`` is a :class:`SymbolPair` for the paired/transposed kinds and a
    single symbol for multiplication, Toeplitz and the two Hankel kinds.
    Columns are computed by exact application followed by truncation.
    """
    if band < 1:
        raise ValueError("band must be at least 1")
    rows, cols = _section_exponents(kind, band)
    if kind == "paired":
        image = lambda e: apply_paired(operand, e)
    elif kind == "transposed":
        image = lambda e: apply_transposed(operand, e)
    elif kind == "multiplication":
        image = lambda e: operand * e
    elif kind == "toeplitz":
        image = lambda e: riesz_plus(operand * e)
    elif kind == "hankel_minus":
        image = lambda e: riesz_minus(operand * e)
    else:
        image = lambda e: riesz_plus(operand * e)
    row_index = {k: i for i, k in enumerate(rows)}
    matrix = np.zeros((len(rows), len(cols)), dtype=complex)
    for j, k in enumerate(cols):
        out = image(LaurentPoly.monomial(k))
        for exp, c in out.coeffs.items():
            i = row_index.get(exp)
            if i is not None:
                matrix[i, j] = c
    return FiniteSection(kind=kind, band=band, matrix=matrix, row_exponents=rows, col_exponents=cols)


def exact_action_matrix(pair: SymbolPair, band: int, kind: str = "paired") -> np.ndarray:
    """Matrix of the exact action on the band [-N, N], with no row truncation.

    Rows run over exponents -(N+d)..(N+d) where d is the band radius of the
    symbols, so null vectors of this matrix are genuine kernel elements of
    the operator restricted to trigonometric polynomials.
    """
    if band < 1:
        raise ValueError("band must be at least 1")
    if kind not in ("paired", "transposed"):
        raise ValueError("kind must be 'paired' or 'transposed'")
    apply = apply_paired if kind == "paired" else apply_transposed
    d = pair.band_radius()
    rows = range(-(band + d), band + d + 1)
    row_index = {k: i for i, k in enumerate(rows)}
    matrix = np.zeros((2 * (band + d) + 1, 2 * band + 1), dtype=complex)
    for j, k in enumerate(range(-band, band + 1)):
        out = apply(pair, LaurentPoly.monomial(k))
        for exp, c in out.coeffs.items():
            matrix[row_index[exp], j] = c
    return matrix


def op_norm(pair: SymbolPair, band: int) -> float:
    """Largest singular value of the paired finite section.

    Nondecreasing in the band (sections are nested principal submatrices) and
    converges to the operator norm from below.
    """
    section = finite_section(pair, "paired", band)
    return float(np.linalg.svd(section.matrix, compute_uv=False)[0])


@dataclass(frozen=True)
class BlockDecomposition:
    """The 2x2 Toeplitz/Hankel block structure of a paired finite section.

    Indices are split into the analytic window 0..N and the co-analytic
    window -N..-1 (both ascending).  ``residual`` is the maximum entrywise
    deviation from the blocks constructed directly from symbol coefficients;
    it is zero to rounding by construction.
    """

    top_left: np.ndarray
    top_right: np.ndarray
    bottom_left: np.ndarray
    bottom_right: np.ndarray
    residual: float


def block_decompose(pair: SymbolPair, band: int) -> BlockDecomposition:
    section = finite_section(pair, "paired", band)
    exps = section.row_exponents
    plus_idx = [i for i, k in enumerate(exps) if k >= 0]
    minus_idx = [i for i, k in enumerate(exps) if k < 0]
    m = section.matrix
    top_left = m[np.ix_(plus_idx, plus_idx)]
    top_right = m[np.ix_(plus_idx, minus_idx)]
    bottom_left = m[np.ix_(minus_idx, plus_idx)]
    bottom_right = m[np.ix_(minus_idx, minus_idx)]

    plus_exps = [exps[i] for i in plus_idx]
    minus_exps = [exps[i] for i in minus_idx]

    def direct(symbol: LaurentPoly, row_exps, col_exps) -> np.ndarray:
        out = np.zeros((len(row_exps), len(col_exps)), dtype=complex)
        for i, je in enumerate(row_exps):
            for j, ke in enumerate(col_exps):
                out[i, j] = symbol.coeff(je - ke)
        return out

    residual = max(
        float(np.max(np.abs(top_left - direct(pair.a, plus_exps, plus_exps)))) if top_left.size else 0.0,
        float(np.max(np.abs(bottom_left - direct(pair.a, minus_exps, plus_exps)))) if bottom_left.size else 0.0,
        float(np.max(np.abs(top_right - direct(pair.b, plus_exps, minus_exps)))) if top_right.size else 0.0,
        float(np.max(np.abs(bottom_right - direct(pair.b, minus_exps, minus_exps)))) if bottom_right.size else 0.0,
    )
    return BlockDecomposition(top_left, top_right, bottom_left, bottom_right, residual)


# ---------------------------------------------------------------------------
# composition and commutation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositionResidual:
    """How far the composition of two paired operators is from a paired operator.

    ``residual`` is the largest column norm of  T1 T2 - T12  evaluated exactly
    on basis vectors; ``formula_residual`` evaluates the same defect through an
    independent closed form, and ``discrepancy`` is the largest difference
    between the two routes (an algebraic identity, so zero to rounding).
    """

    kind: str
    band: int
    residual: float
    formula_residual: float
    discrepancy: float
    worst_exponent: int


def composition_residual(
    first: SymbolPair, second: SymbolPair, band: int, kind: str = "paired"
) -> CompositionResidual:
    """Residual of  Op(first) Op(second) = Op(first.product(second)).

    For the paired kind the defect operator factors as
    ``(a1 - b1) (P+ b2 P- - P- a2 P+)``; for the transposed kind as
    ``(P- b1 P+ - P+ a1 P-) M_(a2 - b2)``.  Both the direct difference and the
    factored form are evaluated column by column and cross-checked.
    """
    if kind not in ("paired", "transposed"):
        raise ValueError("kind must be 'paired' or 'transposed'")
    apply = apply_paired if kind == "paired" else apply_transposed
    product = first.product(second)
    diff1 = first.a - first.b
    diff2 = second.a - second.b
    residual = 0.0
    formula_residual = 0.0
    discrepancy = 0.0
    worst = -band
    for k in range(-band, band + 1):
        e = LaurentPoly.monomial(k)
        direct = apply(first, apply(second, e)) - apply(product, e)
        if kind == "paired":
            formula = diff1 * (
                riesz_plus(second.b * riesz_minus(e)) - riesz_minus(second.a * riesz_plus(e))
            )
        else:
            w = diff2 * e
            formula = riesz_minus(first.b * riesz_plus(w)) - riesz_plus(first.a * riesz_minus(w))
        norm = direct.l2_norm()
        if norm > residual:
            residual = norm
            worst = k
        formula_residual = max(formula_residual, formula.l2_norm())
        discrepancy = max(discrepancy, (direct - formula).l2_norm())
    return CompositionResidual(
        kind=kind,
        band=band,
        residual=residual,
        formula_residual=formula_residual,
        discrepancy=discrepancy,
        worst_exponent=worst,
    )


@dataclass(frozen=True)
class CommutatorResidual:
    """Commutator of two paired operators on a basis window.

    ``commutator_norm`` is the largest column norm of  T1 T2 - T2 T1 ;
    ``identity_discrepancy`` compares the directly computed commutator with
    its closed-form difference of one-sided defect operators and is zero to
    rounding for all inputs.
    """

    band: int
    commutator_norm: float
    identity_discrepancy: float
    worst_exponent: int


def commutator_residual(first: SymbolPair, second: SymbolPair, band: int) -> CommutatorResidual:
    diff1 = first.a - first.b
    diff2 = second.a - second.b
    commutator_norm = 0.0
    discrepancy = 0.0
    worst = -band
    for k in range(-band, band + 1):
        e = LaurentPoly.monomial(k)
        direct = apply_paired(first, apply_paired(second, e)) - apply_paired(
            second, apply_paired(first, e)
        )
        plus = riesz_plus(e)
        minus = riesz_minus(e)
        lhs = diff1 * (riesz_minus(second.a * plus) - riesz_plus(second.b * minus))
        rhs = diff2 * (riesz_minus(first.a * plus) - riesz_plus(first.b * minus))
        formula = rhs - lhs
        norm = direct.l2_norm()
        if norm > commutator_norm:
            commutator_norm = norm
            worst = k
        discrepancy = max(discrepancy, (direct - formula).l2_norm())
    return CommutatorResidual(
        band=band,
        commutator_norm=commutator_norm,
        identity_discrepancy=discrepancy,
        worst_exponent=worst,
    )
