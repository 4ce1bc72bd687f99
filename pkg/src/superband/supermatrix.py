"""(p|q) block supermatrices over a Grassmann algebra.

A SuperMatrix is a (p+q) x (p+q) array of GrassmannElements in the block form

    [ A      Gamma ]      A: p x p,  B: q x q   (entries even or zero)
    [ Delta  B     ]      Gamma: p x q, Delta: q x p (entries odd or zero)

which is the grading of an even morphism; the constructor rejects anything
else with ParityError.  A SuperVector holds p even coordinates followed by q
odd ones, matching what these matrices act on.

The Berezinian is computed from the Schur complement,
Ber M = det(A - Gamma B^-1 Delta) / det B, which needs the body of det B to
be nonzero.  Determinants of even blocks are ordinary cofactor determinants:
even elements are central, so the classical formulas apply verbatim.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraContext, GrassmannElement
from .errors import ContextError, ParityError, ShapeError

DET_SIZE_CAP = 6

ODD_REDUCED = "odd_reduced"
EVEN_REDUCED = "even_reduced"
GENERAL = "general"

_Rational = (int, Fraction)


def _as_grid(rows):
    return tuple(tuple(r) for r in rows)


def _grid_mul(x, y):
    rows = len(x)
    inner = len(y)
    cols = len(y[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = x[i][0] * y[0][j]
            for k in range(1, inner):
                acc = acc + x[i][k] * y[k][j]
            row.append(acc)
        out.append(row)
    return out


def _grid_sub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


class SuperVector:
    """p even coordinates and q odd coordinates, validated on construction."""

    __slots__ = ("ctx", "even", "odd")

    def __init__(self, even, odd):
        even = tuple(even)
        odd = tuple(odd)
        if not even or not odd:
            raise ShapeError("a supervector needs at least one even and one odd slot")
        ctx = even[0].ctx
        for x in even + odd:
            if not isinstance(x, GrassmannElement):
                raise ShapeError("supervector entries must be GrassmannElements")
            if x.ctx != ctx:
                raise ContextError("supervector entries from different algebras")
        for x in even:
            if not x.is_even():
                raise ParityError(f"even slot holds non-even value {x}")
        for x in odd:
            if not x.is_odd():
                raise ParityError(f"odd slot holds non-odd value {x}")
        self.ctx = ctx
        self.even = even
        self.odd = odd

    @property
    def p(self):
        return len(self.even)

    @property
    def q(self):
        return len(self.odd)

    def __eq__(self, other):
        return (
            isinstance(other, SuperVector)
            and self.even == other.even
            and self.odd == other.odd
        )

    def __repr__(self):
        ev = ", ".join(str(x) for x in self.even)
        od = ", ".join(str(x) for x in self.odd)
        return f"SuperVector(even=({ev}), odd=({od}))"


class SuperMatrix:
    """An even (p|q) supermatrix; see the module docstring for the grading."""

    __slots__ = ("ctx", "p", "q", "rows")

    def __init__(self, p: int, q: int, rows):
        if p < 1 or q < 1:
            raise ShapeError(f"block sizes must be at least 1, got ({p}|{q})")
        grid = _as_grid(rows)
        d = p + q
        if len(grid) != d or any(len(r) != d for r in grid):
            raise ShapeError(f"expected a {d}x{d} grid for shape ({p}|{q})")
        ctx = grid[0][0].ctx
        for i in range(d):
            for j in range(d):
                x = grid[i][j]
                if not isinstance(x, GrassmannElement):
                    raise ShapeError("matrix entries must be GrassmannElements")
                if x.ctx != ctx:
                    raise ContextError("matrix entries from different algebras")
                diagonal_block = (i < p) == (j < p)
                if diagonal_block and not x.is_even():
                    raise ParityError(
                        f"entry ({i},{j}) of a diagonal block must be even, got {x}"
                    )
                if not diagonal_block and not x.is_odd():
                    raise ParityError(
                        f"entry ({i},{j}) of an off-diagonal block must be odd, got {x}"
                    )
        self.ctx = ctx
        self.p = p
        self.q = q
        self.rows = grid

    # -- constructors --------------------------------------------------

    @classmethod
    def from_blocks(cls, a, gamma, delta, b):
        p = len(a)
        q = len(b)
        rows = [list(a[i]) + list(gamma[i]) for i in range(p)]
        rows += [list(delta[i]) + list(b[i]) for i in range(q)]
        return cls(p, q, rows)

    @classmethod
    def zero(cls, ctx: AlgebraContext, p: int, q: int):
        z = ctx.zero()
        d = p + q
        return cls(p, q, [[z] * d for _ in range(d)])

    @classmethod
    def identity(cls, ctx: AlgebraContext, p: int, q: int):
        z, one = ctx.zero(), ctx.one()
        d = p + q
        return cls(p, q, [[one if i == j else z for j in range(d)] for i in range(d)])

    # -- blocks --------------------------------------------------------

    def block_a(self):
        return [list(r[: self.p]) for r in self.rows[: self.p]]

    def block_gamma(self):
        return [list(r[self.p :]) for r in self.rows[: self.p]]

    def block_delta(self):
        return [list(r[: self.p]) for r in self.rows[self.p :]]

    def block_b(self):
        return [list(r[self.p :]) for r in self.rows[self.p :]]

    def same_shape(self, other: "SuperMatrix") -> bool:
        return self.p == other.p and self.q == other.q

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.rows for x in row)

    # -- arithmetic ----------------------------------------------------

    def _check_peer(self, other):
        if not isinstance(other, SuperMatrix):
            raise ShapeError("expected a SuperMatrix")
        if not self.same_shape(other):
            raise ShapeError(
                f"shape ({self.p}|{self.q}) does not match ({other.p}|{other.q})"
            )
        if self.ctx != other.ctx:
            raise ContextError("matrices from different algebras")

    def __add__(self, other):
        self._check_peer(other)
        return SuperMatrix(
            self.p,
            self.q,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        self._check_peer(other)
        return SuperMatrix(
            self.p,
            self.q,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return SuperMatrix(self.p, self.q, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._check_peer(other)
        return SuperMatrix(self.p, self.q, _grid_mul(self.rows, other.rows))

    def scale(self, factor):
        """Multiply every entry by a rational or an even element."""
        if isinstance(factor, _Rational):
            factor = self.ctx.scalar(factor)
        if not factor.is_even():
            raise ParityError("matrix scaling needs an even (or zero) factor")
        return SuperMatrix(self.p, self.q, [[factor * a for a in r] for r in self.rows])

    def __rmul__(self, factor):
        if isinstance(factor, (GrassmannElement,) + _Rational):
            return self.scale(factor)
        return NotImplemented

    def apply(self, vec: SuperVector) -> SuperVector:
        """Matrix action on a supervector."""
        if not isinstance(vec, SuperVector):
            raise ShapeError("expected a SuperVector")
        if vec.p != self.p or vec.q != self.q:
            raise ShapeError("vector shape does not match matrix shape")
        if vec.ctx != self.ctx:
            raise ContextError("vector from a different algebra")
        coords = vec.even + vec.odd
        out = []
        for row in self.rows:
            acc = row[0] * coords[0]
            for x, c in zip(row[1:], coords[1:]):
                acc = acc + x * c
            out.append(acc)
        return SuperVector(out[: self.p], out[self.p :])

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and self.same_shape(other)
            and self.rows == other.rows
        )

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.rows
        )
        return f"SuperMatrix({self.p}|{self.q}: {body})"


# ---------------------------------------------------------------------------
# scalar-block linear algebra (even entries only)
# ---------------------------------------------------------------------------

def _check_even_square(rows):
    grid = _as_grid(rows)
    size = len(grid)
    if size == 0 or any(len(r) != size for r in grid):
        raise ShapeError("expected a nonempty square grid")
    if size > DET_SIZE_CAP:
        raise ShapeError(f"determinants are capped at size {DET_SIZE_CAP}")
    for row in grid:
        for x in row:
            if not x.is_even():
                raise ParityError(f"determinant entries must be even, got {x}")
    return grid


def det_even(rows) -> GrassmannElement:
    """Cofactor-expansion determinant of a square grid of even elements."""
    grid = _check_even_square(rows)
    return _det(grid)


def _det(grid):
    size = len(grid)
    if size == 1:
        return grid[0][0]
    if size == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    acc = None
    for j in range(size):
        minor = tuple(row[:j] + row[j + 1 :] for row in grid[1:])
        term = grid[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def even_inverse(rows):
    """Inverse of a square grid of even elements, via adjugate over det.

    Raises NotInvertible when the body of the determinant vanishes.
    """
    grid = _check_even_square(rows)
    size = len(grid)
    det_inv = _det(grid).inverse()
    if size == 1:
        return [[det_inv]]
    out = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = tuple(
                row[:i] + row[i + 1 :] for k, row in enumerate(grid) if k != j
            )
            cof = _det(minor)
            if (i + j) % 2:
                cof = -cof
            out[i][j] = cof * det_inv
    return out


# ---------------------------------------------------------------------------
# supertrace, Berezinian, reduction shape
# ---------------------------------------------------------------------------

def supertrace(m: SuperMatrix) -> GrassmannElement:
    """str M = tr A - tr B."""
    acc = m.ctx.zero()
    for i in range(m.p):
        acc = acc + m.rows[i][i]
    for j in range(m.p, m.p + m.q):
        acc = acc - m.rows[j][j]
    return acc


def berezinian(m: SuperMatrix) -> GrassmannElement:
    """Ber M = det(A - Gamma B^-1 Delta) / det B (Schur-complement form)."""
    b = m.block_b()
    b_inv = even_inverse(b)
    schur = _grid_sub(m.block_a(), _grid_mul(_grid_mul(m.block_gamma(), b_inv), m.block_delta()))
    return det_even(schur) * det_even(b).inverse()


def ber_parts(m: SuperMatrix):
    """For a (1|1) matrix [[a, alpha], [beta, b]]: (a/b, beta*alpha/b^2).

    The two summands are the Berezinians of the matrix's even-reduced and
    odd-reduced parts; their sum is Ber M.
    """
    if m.p != 1 or m.q != 1:
        raise ShapeError("ber_parts is defined for (1|1) matrices")
    a, alpha = m.rows[0]
    beta, b = m.rows[1]
    b_inv = b.inverse()
    return (a * b_inv, beta * alpha * b_inv * b_inv)


def classify_reduction(m: SuperMatrix) -> str:
    """"odd_reduced" when A == 0, else "even_reduced" when Delta == 0,
    else "general".  A matrix with both zero reports odd_reduced."""
    a_zero = all(x.is_zero() for row in m.block_a() for x in row)
    if a_zero:
        return ODD_REDUCED
    delta_zero = all(x.is_zero() for row in m.block_delta() for x in row)
    if delta_zero:
        return EVEN_REDUCED
    return GENERAL
