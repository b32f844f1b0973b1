"""Exact symbol algebra on the unit circle.

The basic object is a Laurent polynomial: a finite two-sided Fourier
coefficient table that represents either a bounded multiplier (a symbol) or
a trigonometric polynomial regarded as an element of L2.  On top of that sit
rational symbols with circle-free denominators (Blaschke products and
reciprocals), inner-outer factorization of analytic polynomials, model-space
bases, and a small expression parser used by the command line tools.

Everything in this module is pure and deterministic.  "Exact" always means
exact up to IEEE double rounding; identity-style checks elsewhere in the
package use tolerances of 1e-12 or tighter for this layer.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = [
    "AnalyticityClass",
    "BLASCHKE_BOUNDARY_MARGIN",
    "CIRCLE_ROOT_TOL",
    "ConditioningError",
    "FactorizationError",
    "InnerOuterFactorization",
    "LaurentPoly",
    "NondegeneracyReport",
    "PolyRoots",
    "RationalSymbol",
    "RationalTruncation",
    "SymbolParseError",
    "blaschke",
    "in_conj_hardy",
    "in_conj_hardy_vanishing",
    "in_hardy",
    "inner_outer_factor",
    "is_nondegenerate",
    "model_space_basis",
    "parse_symbol",
    "poly_from_roots",
    "poly_roots",
    "rational_to_coeffs",
    "rational_to_coeffs_auto",
    "unit_grid",
]

# Distance from the unit circle below which a polynomial root counts as lying
# on the circle for factorization purposes.
CIRCLE_ROOT_TOL = 1e-7
# Blaschke zeros must stay at least this far inside the open disk.
BLASCHKE_BOUNDARY_MARGIN = 1e-3

_Scalar = (int, float, complex, np.integer, np.floating, np.complexfloating)


class SymbolParseError(ValueError):
    """Raised on malformed symbol expressions; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConditioningError(ArithmeticError):
    """Raised when a rational symbol is too close to singular on the circle."""


class FactorizationError(ArithmeticError):
    """Raised when an inner-outer factorization fails its own residual checks."""


def unit_grid(n: int) -> np.ndarray:
    """Return the n-th roots of unity as a complex vector."""
    return np.exp(2j * np.pi * np.arange(n) / n)


class LaurentPoly:
    """A finite sum  sum_k c_k z^k  over integer exponents.

    Coefficients are stored sparsely; exactly-zero coefficients are dropped,
    so the zero symbol has an empty table and the canonical band (0, 0).
    Instances are immutable by convention and safe to share across threads.
    """

    __slots__ = ("_coeffs", "_kmin", "_kmax")

    def __init__(self, coeffs: Mapping[int, complex] | Iterable[tuple[int, complex]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        table: dict[int, complex] = {}
        for k, v in items:
            c = complex(v)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient at exponent {k}")
            if c != 0:
                table[int(k)] = c
        self._coeffs = table
        if table:
            self._kmin = min(table)
            self._kmax = max(table)
        else:
            self._kmin = 0
            self._kmax = 0

    # -- construction helpers -------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coefficient: complex = 1.0) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1.0})

    @classmethod
    def from_dense(cls, values: Sequence[complex], kmin: int) -> "LaurentPoly":
        return cls({kmin + i: v for i, v in enumerate(values)})

    # -- basic queries ---------------------------------------------------------

    @property
    def coeffs(self) -> Mapping[int, complex]:
        return dict(self._coeffs)

    @property
    def band(self) -> tuple[int, int]:
        return (self._kmin, self._kmax)

    @property
    def kmin(self) -> int:
        return self._kmin

    @property
    def kmax(self) -> int:
        return self._kmax

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, k: int) -> complex:
        return self._coeffs.get(k, 0j)

    def items(self) -> list[tuple[int, complex]]:
        """Coefficients as (exponent, value) pairs in ascending exponent order."""
        return sorted(self._coeffs.items())

    def to_dense(self, kmin: int, kmax: int) -> np.ndarray:
        out = np.zeros(kmax - kmin + 1, dtype=complex)
        for k, v in self._coeffs.items():
            if kmin <= k <= kmax:
                out[k - kmin] = v
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(self.items())!r})"

    def __str__(self) -> str:
        return self.to_expression()

    def to_expression(self) -> str:
        """Render as a parseable expression string (for reports and the CLI)."""
        if self.is_zero:
            return "0"
        parts = []
        for k, c in self.items():
            if c.imag == 0:
                lit = repr(c.real)
            elif c.real == 0:
                lit = f"{c.imag!r}*i"
            else:
                lit = f"({c.real!r}+{c.imag!r}*i)"
            if k == 0:
                parts.append(lit)
            elif k == 1:
                parts.append(f"{lit}*z")
            else:
                parts.append(f"{lit}*z^{k}")
        return " + ".join(parts)

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        table = dict(self._coeffs)
        for k, v in other._coeffs.items():
            table[k] = table.get(k, 0j) + v
        return LaurentPoly(table)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, _Scalar):
            c = complex(other)
            return LaurentPoly({k: v * c for k, v in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LaurentPoly()
        a = self.to_dense(self._kmin, self._kmax)
        b = other.to_dense(other._kmin, other._kmax)
        return LaurentPoly.from_dense(np.convolve(a, b), self._kmin + other._kmin)

    def __rmul__(self, other) -> "LaurentPoly":
        if isinstance(other, _Scalar):
            return self * other
        return NotImplemented

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k (exact exponent shift)."""
        return LaurentPoly({j + k: v for j, v in self._coeffs.items()})

    def conj_reflect(self) -> "LaurentPoly":
        """The symbol with boundary values conj(self(z)) for |z| = 1.

        Coefficientwise: the exponent-k coefficient of the result is the
        complex conjugate of the exponent-(-k) coefficient of the input.
        """
        return LaurentPoly({-k: v.conjugate() for k, v in self._coeffs.items()})

    # -- analysis ----------------------------------------------------------------

    def __call__(self, z):
        zs = np.asarray(z, dtype=complex)
        out = np.zeros_like(zs)
        for k, v in self._coeffs.items():
            out = out + v * zs**k
        if np.isscalar(z) or np.ndim(z) == 0:
            return complex(out)
        return out

    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self._coeffs.values()))

    def l1_norm(self) -> float:
        """Sum of coefficient magnitudes (an upper bound for the sup norm)."""
        return sum(abs(v) for v in self._coeffs.values())

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self._coeffs.values()), default=0.0)

    def sup_norm(self, grid_points: int | None = None) -> float:
        """Max of |self| over the circle, estimated from below.

        Uses a uniform grid of at least max(256, 16 * (band width + 1))
        points followed by one golden-section refinement pass around the grid
        argmax; the result underestimates the true sup norm by O(h^2) in the
        grid spacing h.
        """
        if self.is_zero:
            return 0.0
        width = self._kmax - self._kmin
        n = max(grid_points or 0, 256, 16 * (width + 1))
        theta = 2 * np.pi * np.arange(n) / n
        vals = np.abs(self(np.exp(1j * theta)))
        j = int(np.argmax(vals))
        h = 2 * np.pi / n

        def objective(t: float) -> float:
            return abs(self(complex(math.cos(t), math.sin(t))))

        refined = _golden_max(objective, theta[j] - h, theta[j] + h)
        return max(float(vals[j]), refined)

    def classify(self) -> "AnalyticityClass":
        if self.is_zero or (self._kmin == 0 and self._kmax == 0):
            return AnalyticityClass.CONSTANT
        if self._kmin >= 0:
            return AnalyticityClass.ANALYTIC
        if self._kmax <= -1:
            return AnalyticityClass.COANALYTIC_VANISHING
        if self._kmax <= 0:
            return AnalyticityClass.COANALYTIC
        return AnalyticityClass.NEITHER

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"coeffs": [[k, v.real, v.imag] for k, v in self.items()]}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "LaurentPoly":
        return cls({int(k): complex(re_, im) for k, re_, im in data["coeffs"]})


def _lift(value) -> "LaurentPoly":
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, _Scalar):
        return LaurentPoly({0: complex(value)})
    return NotImplemented


def _golden_max(fn, lo: float, hi: float, iters: int = 60) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    return max(fc, fd)


class AnalyticityClass(Enum):
    """Band-based classification of a Laurent polynomial."""

    CONSTANT = "constant"
    ANALYTIC = "analytic"
    COANALYTIC = "coanalytic"
    COANALYTIC_VANISHING = "coanalytic_vanishing"
    NEITHER = "neither"


def in_hardy(a: LaurentPoly) -> bool:
    """True when the symbol has no negative Fourier modes (constants included)."""
    return a.is_zero or a.kmin >= 0


def in_conj_hardy(a: LaurentPoly) -> bool:
    """True when the symbol has no positive Fourier modes (constants included)."""
    return a.is_zero or a.kmax <= 0


def in_conj_hardy_vanishing(a: LaurentPoly) -> bool:
    """True when every Fourier mode is strictly negative."""
    return a.is_zero or a.kmax <= -1


@dataclass(frozen=True)
class NondegeneracyReport:
    """Which of the three nondegeneracy conditions hold for a symbol pair."""

    a_nonzero: bool
    b_nonzero: bool
    difference_nonzero: bool

    @property
    def ok(self) -> bool:
        return self.a_nonzero and self.b_nonzero and self.difference_nonzero

    @property
    def failures(self) -> tuple[str, ...]:
        out = []
        if not self.a_nonzero:
            out.append("a is zero")
        if not self.b_nonzero:
            out.append("b is zero")
        if not self.difference_nonzero:
            out.append("a - b is zero")
        return tuple(out)

    def __bool__(self) -> bool:
        return self.ok


def is_nondegenerate(a: LaurentPoly, b: LaurentPoly) -> NondegeneracyReport:
    """Check that a, b and a - b are all nonzero.

    A nonzero Laurent polynomial vanishes on at most finitely many points of
    the circle, so "nonzero almost everywhere" reduces to "not identically
    zero" for this symbol class.
    """
    return NondegeneracyReport(
        a_nonzero=not a.is_zero,
        b_nonzero=not b.is_zero,
        difference_nonzero=not (a - b).is_zero,
    )


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<num>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
      | (?P<unit>[ij])
      | (?P<z>z)
      | (?P<op>[-+*^()])
      | (?P<div>/)
    """,
    re.VERBOSE,
)


class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SymbolParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "div":
            raise SymbolParseError("division is not part of the symbol grammar", pos)
        if kind == "num":
            tok = _Token("num", m.group("num"), pos)
            tokens.append(tok)
            end = m.end("num")
            # a number directly followed by i/j is an imaginary literal
            if end < len(text) and text[end] in "ij":
                tokens.append(_Token("unit", text[end], end))
                pos = end + 1
                continue
            pos = end
            continue
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for +, -, *, parentheses, z^k and literals."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def parse(self) -> LaurentPoly:
        value = self.expression()
        tok = self.peek()
        if tok.kind != "end":
            raise SymbolParseError(f"unexpected {tok.text!r}", tok.pos)
        return value

    def expression(self) -> LaurentPoly:
        value = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> LaurentPoly:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            value = self.factor()
            return value if tok.text == "+" else -value
        return self.atom()

    def atom(self) -> LaurentPoly:
        tok = self.advance()
        if tok.kind == "num":
            imag_mark = self.peek()
            if imag_mark.kind == "unit" and imag_mark.pos == tok.pos + len(tok.text):
                self.advance()
                return LaurentPoly({0: complex(0.0, float(tok.text))})
            return LaurentPoly({0: float(tok.text)})
        if tok.kind == "unit":
            return LaurentPoly({0: 1j})
        if tok.kind == "z":
            if self.peek().kind == "op" and self.peek().text == "^":
                self.advance()
                return LaurentPoly.monomial(self.exponent())
            return LaurentPoly.monomial(1)
        if tok.kind == "op" and tok.text == "(":
            value = self.expression()
            closing = self.advance()
            if not (closing.kind == "op" and closing.text == ")"):
                raise SymbolParseError("expected ')'", closing.pos)
            return value
        raise SymbolParseError(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input", tok.pos)

    def exponent(self) -> int:
        sign = 1
        tok = self.advance()
        if tok.kind == "op" and tok.text in "+-":
            sign = -1 if tok.text == "-" else 1
            tok = self.advance()
        if tok.kind != "num" or any(ch in tok.text for ch in ".eE"):
            raise SymbolParseError("exponent must be an integer", tok.pos)
        return sign * int(tok.text)


def parse_symbol(text: str) -> LaurentPoly:
    """Parse an expression over complex literals, z, z^k, +, -, * and parens.

    Negative powers are written ``z^-2``.  Division is rejected with a
    position-carrying :class:`SymbolParseError`, as is any other malformed
    input.  Parsing is exact over the given literals.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# roots and factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRoots:
    """Roots-with-multiplicity of the polynomial part plus the z^m factor."""

    roots: tuple[complex, ...]
    monomial_order: int
    residuals: tuple[float, ...]


def poly_roots(p: LaurentPoly, residual_tol: float = 1e-10) -> PolyRoots:
    """Roots of a nonzero analytic polynomial via companion-matrix eigenvalues.

    The monomial factor z^kmin is split off first and reported as
    ``monomial_order``.  Each root receives one Newton polishing step and is
    checked against ``residual_tol`` relative to the coefficient magnitude.
    """
    if p.is_zero:
        raise ValueError("cannot take roots of the zero polynomial")
    if p.kmin < 0:
        raise ValueError("poly_roots requires an analytic band (kmin >= 0)")
    order = p.kmin
    q = p.shift(-order)
    degree = q.kmax
    if degree == 0:
        return PolyRoots((), order, ())
    dense = q.to_dense(0, degree)  # ascending powers
    scale = float(np.max(np.abs(dense)))
    raw = np.roots(dense[::-1])
    deriv = dense[1:] * np.arange(1, degree + 1)
    polished = []
    residuals = []
    for r in sorted(raw, key=lambda w: (w.real, w.imag)):
        val = np.polyval(dense[::-1], r)
        dval = np.polyval(deriv[::-1], r) if degree >= 1 else 0.0
        if abs(dval) > 1e-8 * scale:
            r = r - val / dval
            val = np.polyval(dense[::-1], r)
        res = abs(val) / (scale * max(1.0, abs(r)) ** degree)
        if res > residual_tol:
            raise FactorizationError(f"root residual {res:.3e} exceeds {residual_tol:.1e}")
        polished.append(complex(r))
        residuals.append(float(res))
    return PolyRoots(tuple(polished), order, tuple(residuals))


def poly_from_roots(roots: Sequence[complex], leading: complex = 1.0, shift: int = 0) -> LaurentPoly:
    """Build  leading * z^shift * prod (z - r)  as an exact coefficient table."""
    poly = LaurentPoly({0: leading})
    for r in roots:
        poly = poly * LaurentPoly({0: -complex(r), 1: 1.0})
    return poly.shift(shift)


class RationalSymbol:
    """Quotient of Laurent polynomials with an analytic, circle-free denominator.

    The denominator is normalized to be monic; its roots must keep a distance
    of at least 1e-8 from the unit circle (checked both by root location and
    by a minimum-modulus sweep over a grid).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero:
            raise ZeroDivisionError("rational symbol with zero denominator")
        if den.kmin < 0:
            raise ValueError("denominator must be an analytic polynomial")
        lead = den.coeff(den.kmax)
        inv = 1.0 / lead
        den = LaurentPoly({**{k: v * inv for k, v in den.coeffs.items() if k != den.kmax}, den.kmax: 1.0})
        num = num * inv
        if den.kmax > 0:
            rr = poly_roots(den)
            dist = min(abs(abs(r) - 1.0) for r in rr.roots) if rr.roots else math.inf
            if rr.monomial_order > 0:
                raise ValueError("denominator must not vanish at the origin")
            if dist <= 1e-8:
                raise ConditioningError(f"denominator root within {dist:.2e} of the unit circle")
            grid_vals = np.abs(den(unit_grid(512)))
            if grid_vals.min() <= 1e-9 * max(1.0, grid_vals.max()):
                raise ConditioningError("denominator nearly vanishes on the circle")
        self.num = num
        self.den = den

    # -- helpers ---------------------------------------------------------------

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalSymbol":
        return cls(p)

    @classmethod
    def one(cls) -> "RationalSymbol":
        return cls(LaurentPoly.one())

    @property
    def is_polynomial(self) -> bool:
        return self.den == LaurentPoly.one()

    def as_laurent(self) -> LaurentPoly:
        if not self.is_polynomial:
            raise ValueError("rational symbol has a nontrivial denominator")
        return self.num

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def value_at_zero(self) -> complex:
        if self.num.kmin < 0:
            raise ValueError("numerator has negative exponents; no value at 0")
        return complex(self.num.coeff(0) / self.den.coeff(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalSymbol):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __repr__(self) -> str:
        return f"RationalSymbol({self.num!r}, {self.den!r})"

    # -- algebra -----------------------------------------------------------------

    def _coerce(self, other) -> "RationalSymbol":
        if isinstance(other, RationalSymbol):
            return other
        if isinstance(other, LaurentPoly):
            return RationalSymbol(other)
        if isinstance(other, _Scalar):
            return RationalSymbol(LaurentPoly({0: complex(other)}))
        return None

    def __mul__(self, other) -> "RationalSymbol":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalSymbol(self.num * rhs.num, self.den * rhs.den)

    __rmul__ = __mul__

    def __add__(self, other) -> "RationalSymbol":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return RationalSymbol(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalSymbol":
        return RationalSymbol(-self.num, self.den)

    def __sub__(self, other) -> "RationalSymbol":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "RationalSymbol":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def shift(self, k: int) -> "RationalSymbol":
        return RationalSymbol(self.num.shift(k), self.den)

    def conj_reflect(self) -> "RationalSymbol":
        """Boundary conjugate: the rational with values conj(self(z)) on |z| = 1."""
        d = self.den.kmax
        return RationalSymbol(self.num.conj_reflect().shift(d), self.den.conj_reflect().shift(d))

    def is_unimodular_on_circle(self, tol: float = 1e-8, grid_points: int = 1024) -> bool:
        vals = np.abs(self(unit_grid(grid_points)))
        return bool(np.max(np.abs(vals - 1.0)) <= tol)

    def to_json_dict(self) -> dict:
        return {"num": self.num.to_json_dict(), "den": self.den.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "RationalSymbol":
        return cls(LaurentPoly.from_json_dict(data["num"]), LaurentPoly.from_json_dict(data["den"]))


@dataclass(frozen=True)
class InnerOuterFactorization:
    """Inner x outer splitting of an analytic polynomial.

    The inner factor is z^m times a finite Blaschke product times a unimodular
    constant; the outer factor is a polynomial with no zeros strictly inside
    the disk, normalized so that its value at 0 is real and positive.  Roots
    lying on the unit circle are assigned to the outer factor.
    """

    inner: RationalSymbol
    outer: RationalSymbol
    unimodular_constant: complex
    monomial_order: int
    interior_roots: tuple[complex, ...]
    circle_roots: tuple[complex, ...]
    exterior_roots: tuple[complex, ...]

    @property
    def inner_is_constant(self) -> bool:
        return self.monomial_order == 0 and not self.interior_roots


def _blaschke_factor(zero: complex) -> tuple[LaurentPoly, LaurentPoly]:
    """Numerator/denominator of one Blaschke factor for a zero inside the disk."""
    if abs(zero) < 1e-9:
        return LaurentPoly.monomial(1), LaurentPoly.one()
    u = abs(zero) / zero
    num = LaurentPoly({0: u * zero, 1: -u})
    den = LaurentPoly({0: 1.0, 1: -zero.conjugate()})
    return num, den


def inner_outer_factor(p: LaurentPoly, circle_tol: float = CIRCLE_ROOT_TOL) -> InnerOuterFactorization:
    """Factor a nonzero analytic polynomial into inner and outer parts.

    Verifies its own output: the inner factor must be unimodular on a grid and
    the product must reproduce the input, both within 1e-8 relative.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if p.kmin < 0:
        raise ValueError("inner_outer_factor requires an analytic polynomial")
    rr = poly_roots(p)
    interior = tuple(r for r in rr.roots if abs(r) < 1.0 - circle_tol)
    circle = tuple(r for r in rr.roots if abs(abs(r) - 1.0) <= circle_tol)
    exterior = tuple(r for r in rr.roots if abs(r) > 1.0 + circle_tol)
    leading = p.coeff(p.kmax)

    blaschke_num = LaurentPoly.one()
    blaschke_den = LaurentPoly.one()
    outer_poly = LaurentPoly({0: leading})
    for r in interior:
        fn, fd = _blaschke_factor(r)
        blaschke_num = blaschke_num * fn
        blaschke_den = blaschke_den * fd
        if abs(r) < 1e-9:
            continue
        outer_poly = outer_poly * LaurentPoly({0: 1.0, 1: -r.conjugate()})
        outer_poly = outer_poly * (-r / abs(r))
    for r in circle + exterior:
        outer_poly = outer_poly * LaurentPoly({0: -r, 1: 1.0})

    at_zero = outer_poly.coeff(0)
    if at_zero == 0:
        raise FactorizationError("outer candidate vanishes at the origin")
    gamma = at_zero / abs(at_zero)
    outer_poly = outer_poly * (1.0 / gamma)
    inner = RationalSymbol(blaschke_num.shift(rr.monomial_order) * gamma, blaschke_den)
    outer = RationalSymbol(outer_poly)

    grid = unit_grid(1024)
    inner_vals = inner(grid)
    if np.max(np.abs(np.abs(inner_vals) - 1.0)) > 1e-8:
        raise FactorizationError("inner factor is not unimodular on the circle")
    scale = max(1.0, float(np.max(np.abs(p(grid)))))
    if np.max(np.abs(inner_vals * outer(grid) - p(grid))) > 1e-8 * scale:
        raise FactorizationError("inner * outer does not reproduce the input")
    return InnerOuterFactorization(
        inner=inner,
        outer=outer,
        unimodular_constant=complex(gamma),
        monomial_order=rr.monomial_order,
        interior_roots=interior,
        circle_roots=circle,
        exterior_roots=exterior,
    )


def blaschke(zeros: Sequence[complex], constant: complex = 1.0) -> RationalSymbol:
    """Finite Blaschke product with the given zeros, times a unimodular constant."""
    c = complex(constant)
    if abs(abs(c) - 1.0) > 1e-12:
        raise ValueError("constant must be unimodular")
    num = LaurentPoly({0: c})
    den = LaurentPoly.one()
    for zero in zeros:
        w = complex(zero)
        if abs(w) >= 1.0 - BLASCHKE_BOUNDARY_MARGIN:
            raise ValueError(f"Blaschke zero {w!r} too close to the unit circle")
        fn, fd = _blaschke_factor(w)
        num = num * fn
        den = den * fd
    return RationalSymbol(num, den)


# ---------------------------------------------------------------------------
# Fourier truncation of rational symbols
# ---------------------------------------------------------------------------


class RationalTruncation(NamedTuple):
    coeffs: LaurentPoly
    grid_error: float


def _fft_size(band: int, extra: int) -> int:
    need = max(1024, 4 * (2 * band + 1), 4 * (extra + 1))
    n = 1
    while n < need:
        n <<= 1
    return n


def rational_to_coeffs(
    r: RationalSymbol,
    band: int,
    *,
    min_root_distance: float = 1e-6,
    prune_rel: float = 1e-14,
) -> RationalTruncation:
    """Fourier coefficients of a rational symbol on exponents [-band, band].

    Sampled on an oversampled FFT grid; coefficients below ``prune_rel`` times
    the largest one are dropped as sampling noise.  The maximum reconstruction
    error over the grid is returned alongside; it decays geometrically in the
    band at a rate set by the distance of the denominator roots from the
    circle, which is why denominators closer than ``min_root_distance`` are
    rejected up front.
    """
    if band < 0:
        raise ValueError("band must be nonnegative")
    if r.den.kmax > 0:
        rr = poly_roots(r.den)
        dist = min(abs(abs(root) - 1.0) for root in rr.roots)
        if dist < min_root_distance:
            raise ConditioningError(
                f"denominator root at distance {dist:.2e} from the circle; "
                f"need at least {min_root_distance:.1e}"
            )
    width = (r.num.kmax - r.num.kmin) + r.den.kmax
    n = _fft_size(band, width)
    grid = unit_grid(n)
    vals = r.num(grid) / r.den(grid)
    spectrum = np.fft.fft(vals) / n
    table = {}
    for k in range(-band, band + 1):
        table[k] = complex(spectrum[k % n])
    top = max(abs(v) for v in table.values()) if table else 0.0
    pruned = LaurentPoly({k: v for k, v in table.items() if abs(v) > prune_rel * top})
    recon_spec = np.zeros(n, dtype=complex)
    for k, v in pruned.coeffs.items():
        recon_spec[k % n] = v
    recon = np.fft.ifft(recon_spec) * n
    err = float(np.max(np.abs(recon - vals)))
    return RationalTruncation(pruned, err)


def rational_to_coeffs_auto(
    r: RationalSymbol,
    *,
    tol: float = 1e-12,
    start_band: int = 32,
    max_band: int = 1 << 15,
    min_root_distance: float = 1e-6,
) -> RationalTruncation:
    """Grow the band geometrically until the grid reconstruction error meets tol.

    The target is relative to the function magnitude (bounded through the l1
    norm of the coefficients), since the attainable floor of the grid error
    scales with the largest values the symbol takes on the circle.
    """
    band = start_band
    last: RationalTruncation | None = None
    while band <= max_band:
        last = rational_to_coeffs(r, band, min_root_distance=min_root_distance)
        scale = max(1.0, last.coeffs.l1_norm())
        if last.grid_error <= tol * scale:
            return last
        band *= 2
    raise ConditioningError(
        f"could not reach reconstruction tolerance {tol:.1e} within band {max_band}"
        + (f"; best error {last.grid_error:.2e}" if last else "")
    )


# ---------------------------------------------------------------------------
# model spaces
# ---------------------------------------------------------------------------


def _cluster_roots(roots: Sequence[complex], tol: float = 1e-5) -> list[tuple[complex, int]]:
    clusters: list[tuple[complex, int]] = []
    for r in sorted(roots, key=lambda w: (round(w.real, 9), round(w.imag, 9))):
        for i, (center, count) in enumerate(clusters):
            if abs(r - center) <= tol:
                clusters[i] = ((center * count + r) / (count + 1), count + 1)
                break
        else:
            clusters.append((r, 1))
    return clusters


def model_space_basis(theta: RationalSymbol, band: int) -> list[LaurentPoly]:
    """Orthonormal basis of the model space of a finite Blaschke product.

    For a monomial z^n the basis is e_0, ..., e_{n-1} exactly.  For Blaschke
    zeros the basis comes from reproducing kernels 1/(1 - conj(zero) z) (and
    their first derivative kernels for double zeros), truncated to [0, band]
    and orthonormalized.  Zeros of multiplicity three or more are rejected,
    except for the zero at the origin, whose kernels are exact monomials.
    """
    if not theta.is_unimodular_on_circle(1e-8):
        raise ValueError("model_space_basis requires an inner symbol")
    if theta.is_polynomial and len(theta.num.coeffs) == 1:
        n = theta.num.kmax
        if n < 0:
            raise ValueError("inner monomial must have a nonnegative exponent")
        return [LaurentPoly.monomial(j) for j in range(min(n, band + 1))]
    rr = poly_roots(theta.num)
    if any(abs(r) >= 1.0 - CIRCLE_ROOT_TOL for r in rr.roots):
        raise ValueError("not a finite Blaschke product: zero on or outside the circle")
    columns: list[np.ndarray] = []
    for j in range(rr.monomial_order):
        col = np.zeros(band + 1, dtype=complex)
        col[j] = 1.0
        columns.append(col)
    ks = np.arange(band + 1)
    for center, count in _cluster_roots(rr.roots):
        if count > 2:
            raise ValueError(f"zero multiplicity {count} > 2 not supported")
        w = center.conjugate()
        columns.append(w**ks)
        if count == 2:
            deriv = np.zeros(band + 1, dtype=complex)
            deriv[1:] = ks[1:] * w ** (ks[1:] - 1)
            columns.append(deriv)
    if not columns:
        return []
    matrix = np.column_stack(columns)
    q, _ = np.linalg.qr(matrix)
    return [LaurentPoly.from_dense(q[:, i], 0) for i in range(q.shape[1])]
