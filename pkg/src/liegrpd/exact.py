"""Exact linear algebra over the rationals and Gaussian rationals.

Scalars are `Fraction` for real values and `GaussianRational` for values with
a nonzero imaginary part; arithmetic never silently demotes to float.  Float
matrices are accepted only by the explicitly numeric operations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np


class ModeError(TypeError):
    """Exact and float data were mixed, or the wrong mode was supplied."""


class NumericError(ArithmeticError):
    """A floating-point routine failed its convergence or residual contract."""


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class GaussianRational:
    """A Gaussian rational with nonzero imaginary part.

    Real values are represented by plain `Fraction`; the `gaussian` factory
    collapses to `Fraction` whenever the imaginary part vanishes, so equality
    and hashing stay consistent across the two representations.
    """

    re: Fraction
    im: Fraction

    def __post_init__(self):
        if self.im == 0:
            raise ValueError("real values must be Fraction, use gaussian()")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return gaussian(self.re + parts[0], self.im + parts[1])

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return gaussian(self.re - parts[0], self.im - parts[1])

    def __rsub__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        return gaussian(parts[0] - self.re, parts[1] - self.im)

    def __mul__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, parts[0], parts[1]
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        c, d = parts
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return gaussian((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        parts = _parts(other)
        if parts is None:
            return NotImplemented
        a, b, c, d = parts[0], parts[1], self.re, self.im
        n = c * c + d * d
        return gaussian((a * c + b * d) / n, (b * c - a * d) / n)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


Scalar = Union[int, Fraction, GaussianRational]


def gaussian(re, im=0) -> Scalar:
    """Build a Gaussian rational, collapsing to `Fraction` when real."""
    re, im = Fraction(re), Fraction(im)
    return GaussianRational(re, im) if im else re


def _parts(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return None


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def scalar_re(x) -> Fraction:
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def scalar_im(x) -> Fraction:
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def scalar_conj(x) -> Scalar:
    return x.conjugate() if isinstance(x, GaussianRational) else Fraction(x)


def scalar_key(x):
    """Deterministic sort key for exact scalars: (real, imaginary)."""
    return (scalar_re(x), scalar_im(x))


def to_complex(x) -> complex:
    return complex(x) if isinstance(x, GaussianRational) else complex(float(x), 0.0)


def parse_scalar(text: str) -> Scalar:
    """Parse "p/q", "p/q+r/s i", "i", "-3i", "1/2-3/4i" into an exact scalar."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i") and not s.endswith("I"):
        return Fraction(s)
    body = s[:-1]
    # split off the trailing imaginary term at the last sign not inside
    # an exponent-free rational; scan from the right for +/- at depth 0
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_part, im_part = body[:pos], body[pos:]
            break
    else:
        re_part, im_part = "", body
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    re = Fraction(re_part) if re_part else Fraction(0)
    return gaussian(re, im)


def format_scalar(x: Scalar) -> str:
    """Serialize an exact scalar as "p/q" or "p/q+r/si"."""
    re, im = scalar_re(x), scalar_im(x)
    if im == 0:
        return str(re)
    sign = "+" if im >= 0 else "-"
    return f"{re}{sign}{abs(im)}i"


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix; all entries exact, or all float/complex."""

    __slots__ = ("rows", "cols", "data", "exact")

    def __init__(self, rows_data: Iterable[Iterable]):
        data = tuple(tuple(row) for row in rows_data)
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged rows")
        flat = [x for row in data for x in row]
        if all(is_exact(x) for x in flat):
            data = tuple(
                tuple(Fraction(x) if isinstance(x, int) else x for x in row)
                for row in data
            )
            exact = True
        elif all(isinstance(x, (float, complex)) for x in flat):
            exact = False
        else:
            raise ModeError("matrix mixes exact and float entries")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "Matrix":
        zero = Fraction(0)
        return Matrix([[zero] * c for _ in range(r)])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.data]})"

    def __add__(self, other):
        self._check_mode(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        self._check_mode(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.data])

    def _check_mode(self, other):
        if self.exact != other.exact:
            raise ModeError("mixed exact/float matrices")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __matmul__(self, other):
        if self.exact != other.exact:
            raise ModeError("mixed exact/float matrices")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        tdata = other.data
        start = Fraction(0) if self.exact else 0.0
        return Matrix(
            [
                [
                    sum((a * tdata[k][j] for k, a in enumerate(row) if a), start)
                    for j in range(other.cols)
                ]
                for row in self.data
            ]
        )

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in row] for row in self.data])

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.data)))

    def trace(self):
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))), Fraction(0)) \
            if self.exact else sum(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        if self.exact and not all(is_exact(x) for x in vec):
            raise ModeError("float vector applied to exact matrix")
        out = []
        for row in self.data:
            acc = Fraction(0) if self.exact else 0.0
            for a, x in zip(row, vec):
                acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def to_numpy(self) -> np.ndarray:
        if self.exact:
            if any(scalar_im(x) != 0 for row in self.data for x in row):
                return np.array([[to_complex(x) for x in row] for row in self.data])
            return np.array([[float(x) for x in row] for row in self.data], dtype=float)
        return np.array([[x for x in row] for row in self.data])


def matrix_from_numpy(a: np.ndarray) -> Matrix:
    return Matrix([[complex(x) if np.iscomplexobj(a) else float(x) for x in row] for row in a])


# ---------------------------------------------------------------------------
# exact elimination


def rref(rows: Sequence[Sequence[Scalar]]):
    """Reduced row-echelon form. Returns (rref rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank_kernel(m: Matrix):
    """Exact rank and a kernel basis (list of tuples). Exact matrices only."""
    if not m.exact:
        raise ModeError("rank_kernel requires an exact matrix")
    red, pivots = rref(m.data)
    rank = len(pivots)
    free = [j for j in range(m.cols) if j not in pivots]
    kernel = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            v[p] = -red[row_idx][j]
        kernel.append(tuple(v))
    return rank, kernel


def det_exact(m: Matrix) -> Scalar:
    """Exact determinant by fraction-based elimination."""
    if not m.exact:
        raise ModeError("det_exact requires an exact matrix")
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.data]
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def solve_exact(m: Matrix, rhs: Sequence[Scalar]):
    """Solve m x = rhs exactly; None when inconsistent, a particular solution else."""
    if not m.exact:
        raise ModeError("solve_exact requires an exact matrix")
    aug = [list(row) + [v] for row, v in zip(m.data, rhs)]
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for row_idx, p in enumerate(pivots):
        x[p] = red[row_idx][-1]
    return tuple(x)


def matrix_inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + list(ident_row) for row, ident_row in zip(m.data, Matrix.identity(m.rows).data)]
    red, pivots = rref(aug)
    if pivots != list(range(m.rows)):
        raise ValueError("matrix is singular")
    return Matrix([row[m.rows:] for row in red])


# ---------------------------------------------------------------------------
# characteristic polynomial and exact roots


def charpoly_exact(m: Matrix):
    """Monic characteristic polynomial coefficients [c0, ..., c_{n-1}, 1].

    Faddeev-LeVerrier recursion; exact over Q and Q(i).
    """
    if not m.exact:
        raise ModeError("charpoly_exact requires an exact matrix")
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk
        ck = -mk.trace() / k
        coeffs[n - k] = ck
        if k < n:
            mk = mk + Matrix.identity(n).scale(ck)
    return coeffs


def poly_eval(coeffs: Sequence[Scalar], x: Scalar) -> Scalar:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_divide_linear(coeffs: Sequence[Scalar], root: Scalar):
    """Divide p(t) by (t - root); returns (quotient coeffs, remainder)."""
    acc = Fraction(0)
    out = []
    for c in reversed(coeffs):
        acc = acc * root + c
        out.append(acc)
    rem = out.pop()
    quots = list(reversed(out))
    return quots, rem


class _Budget:
    def __init__(self, n):
        self.left = n

    def spend(self, k=1):
        self.left -= k
        return self.left >= 0


def _gaussian_divisors(a: int, b: int, budget: _Budget):
    """All Gaussian-integer divisors of a+bi (all unit multiples included)."""
    norm = a * a + b * b
    if norm == 0:
        return []
    divisors_of_norm = []
    d = 1
    while d * d <= norm:
        if not budget.spend():
            return None
        if norm % d == 0:
            divisors_of_norm.append(d)
            if d * d != norm:
                divisors_of_norm.append(norm // d)
        d += 1
    found = set()
    for nd in divisors_of_norm:
        aa = 0
        while aa * aa <= nd:
            if not budget.spend():
                return None
            rest = nd - aa * aa
            bb = math.isqrt(rest)
            if bb * bb == rest:
                for ca, cb in {(aa, bb), (bb, aa)}:
                    for sa in (1, -1):
                        for sb in (1, -1):
                            ua, ub = sa * ca, sb * cb
                            if ua == 0 and ub == 0:
                                continue
                            # exact divisibility: (a+bi)(ua-ub i)/nd integral
                            num_re = a * ua + b * ub
                            num_im = b * ua - a * ub
                            if num_re % nd == 0 and num_im % nd == 0:
                                found.add((ua, ub))
            aa += 1
    return sorted(found)


def gaussian_rational_roots(coeffs: Sequence[Scalar], budget: int = 10**6):
    """All Gaussian-rational roots of an exact polynomial, with multiplicity.

    Returns (roots, complete) where roots is a list of (root, multiplicity)
    sorted by (re, im) and complete is True when the multiplicities sum to
    the degree.  A search that exhausts the candidate budget returns the
    roots found so far with complete=False.
    """
    coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n <= 0:
        return [], True
    roots = {}
    work = list(coeffs)
    while len(work) > 1 and work[0] == 0:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        work = work[1:]
    bud = _Budget(budget)
    complete = True
    if len(work) > 1:
        # clear denominators: integer-Gaussian coefficients
        denoms = []
        for c in work:
            denoms.append(scalar_re(c).denominator)
            denoms.append(scalar_im(c).denominator)
        d = math.lcm(*denoms)
        ints = [(int(scalar_re(c) * d), int(scalar_im(c) * d)) for c in work]
        c0, cn = ints[0], ints[-1]
        nums = _gaussian_divisors(c0[0], c0[1], bud)
        dens = _gaussian_divisors(cn[0], cn[1], bud)
        if nums is None or dens is None:
            complete = False
        else:
            # one denominator per associate class: rotate into re>0, im>=0
            canon = set()
            for (da, db) in dens:
                while not (da > 0 and db >= 0):
                    da, db = -db, da
                canon.add((da, db))
            candidates = set()
            for (ua, ub) in nums:
                for (da, db) in canon:
                    if not bud.spend():
                        complete = False
                        break
                    candidates.add(gaussian(Fraction(ua), Fraction(ub)) / gaussian(Fraction(da), Fraction(db)))
                if not complete:
                    break
            for z in sorted(candidates, key=scalar_key):
                if poly_eval(work, z) == 0:
                    mult = 0
                    q = work
                    while True:
                        q2, rem = poly_divide_linear(q, z)
                        if rem != 0 or len(q2) == 0:
                            break
                        mult += 1
                        q = q2
                    roots[z] = mult
    total = sum(roots.values())
    if total < n:
        complete = False
    out = sorted(roots.items(), key=lambda kv: scalar_key(kv[0]))
    return out, complete


def charpoly_exact_roots(m: Matrix, budget: int = 10**6):
    """(monic charpoly coeffs, [(root, mult)], complete flag)."""
    poly = charpoly_exact(m)
    roots, complete = gaussian_rational_roots(poly, budget)
    return poly, roots, complete


# ---------------------------------------------------------------------------
# univariate real polynomials: Sturm chains and interpolation


def poly_trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_derivative(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:]) if len(p) > 1 else [Fraction(0)]


def poly_rem(a, b):
    """Remainder of a / b over Fractions."""
    a, b = poly_trim(a), poly_trim(b)
    if b == [Fraction(0)] or b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(a) - 1 >= db and poly_trim(a) != [Fraction(0)]:
        a = poly_trim(a)
        if len(a) - 1 < db:
            break
        f = a[-1] / lead
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    return poly_trim(a)


def sturm_root_count(p, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    p = poly_trim([Fraction(c) for c in p])
    if len(p) == 1:
        return 0
    chain = [p, poly_derivative(p)]
    while poly_trim(chain[-1]) != [Fraction(0)] and len(chain[-1]) > 1:
        rem = poly_rem(chain[-2], chain[-1])
        if rem == [Fraction(0)]:
            break
        chain.append([-c for c in rem])
    if poly_trim(chain[-1]) == [Fraction(0)]:
        chain.pop()

    def variations(x):
        signs = []
        for q in chain:
            v = poly_eval(q, x)
            if v != 0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)

    return variations(a) - variations(b)


def lagrange_interpolate(points):
    """Exact polynomial coefficients through (x, y) pairs, degree < #points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        others = [xj for j, (xj, _) in enumerate(points) if j != i]
        denom = Fraction(1)
        for xj in others:
            denom *= xi - xj
        basis = _poly_from_roots(others)
        scale = yi / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    return poly_trim(coeffs)


def _poly_from_roots(roots):
    p = [Fraction(1)]
    for r in roots:
        p = [Fraction(0)] + p
        for k in range(len(p) - 1):
            p[k] = p[k] - r * p[k + 1]
    return p


# ---------------------------------------------------------------------------
# numeric operations


def eigenvalues_numeric(m: Matrix, tol: float = 1e-9):
    """Eigenvalues as complex floats, each certified by ||Av - lv|| <= tol*||A||."""
    a = m.to_numpy().astype(complex)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigenvalues of a non-square matrix")
    try:
        vals, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"eigenvalue iteration failed: {e}") from e
    scale = max(np.linalg.norm(a, 2), 1.0)
    for i, lam in enumerate(vals):
        v = vecs[:, i]
        nv = np.linalg.norm(v)
        if nv == 0:
            raise NumericError("zero eigenvector returned")
        res = np.linalg.norm(a @ v - lam * v) / nv
        if res > tol * scale:
            raise NumericError(f"eigenpair residual {res:.3e} exceeds {tol:.1e}*||A||")
    return sorted(vals.tolist(), key=lambda z: (z.real, z.imag))


def matrix_exp_numeric(m: Matrix, tol: float = 1e-12) -> Matrix:
    """Matrix exponential by scaling and squaring of a Taylor sum.

    The input is scaled by 2^-s until its 1-norm is below 1/2, the series is
    summed until the next term's norm drops below tol, and the result is
    squared s times.
    """
    a = m.to_numpy()
    if a.shape[0] != a.shape[1]:
        raise ValueError("exponential of a non-square matrix")
    a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)
    norm1 = np.abs(a).sum(axis=0).max()
    s = 0
    while norm1 >= 0.5:
        norm1 /= 2.0
        s += 1
    b = a / (2.0**s)
    n = a.shape[0]
    result = np.eye(n, dtype=b.dtype)
    term = np.eye(n, dtype=b.dtype)
    k = 1
    while True:
        term = term @ b / k
        result = result + term
        tnorm = np.abs(term).sum(axis=0).max()
        if tnorm < tol:
            break
        k += 1
        if k > 200:
            raise NumericError("Taylor series failed to converge")
    for _ in range(s):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise NumericError("overflow in matrix exponential")
    return matrix_from_numpy(result)


def numeric_rank(a: np.ndarray, tol: float = 1e-9) -> int:
    """Rank by singular-value threshold relative to the largest value."""
    if a.size == 0:
        return 0
    svals = np.linalg.svd(a, compute_uv=False)
    top = svals[0] if len(svals) else 0.0
    if top <= tol:
        return 0
    return int((svals > tol * top).sum())
