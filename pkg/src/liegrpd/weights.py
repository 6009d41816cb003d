"""Module weights of solvable Lie algebras and the exponential-type test.

Weights are extracted by the constructive triangularization argument: find a
common eigenvector of all action matrices over the complexified space, record
the eigenvalue functional, pass to the quotient, repeat.  The search is exact
over the Gaussian rationals; when a characteristic polynomial does not split
there, a float path takes over and the results carry exact=False.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import (
    Matrix,
    charpoly_exact_roots,
    gaussian,
    matrix_inverse,
    rank_kernel,
    scalar_im,
    scalar_key,
    scalar_re,
)
from .lie import LieAlgebra, LieModule, adjoint_module, structure_series

_FLOAT_TOL = 1e-9


class SolvabilityError(ValueError):
    """Weight extraction requires a solvable algebra."""


class InexactSpectrum(ArithmeticError):
    """Internal: the exact eigenvalue search failed; float fallback engaged."""


@dataclass(frozen=True)
class RootFunctional:
    """A weight, split into real and imaginary functionals on the algebra.

    Exact functionals have Fraction coordinates and vanish on the derived
    subalgebra by construction; float ones (exact=False) are heuristic.
    """

    re: tuple
    im: tuple
    exact: bool
    multiplicity: int = 1

    def is_zero(self) -> bool:
        if self.exact:
            return all(a == 0 for a in self.re) and all(a == 0 for a in self.im)
        return all(abs(a) < _FLOAT_TOL for a in self.re) and all(
            abs(a) < _FLOAT_TOL for a in self.im
        )

    def evaluate(self, x):
        re = sum(a * b for a, b in zip(self.re, x))
        im = sum(a * b for a, b in zip(self.im, x))
        return re, im


def _common_eigenvector_exact(mats: Sequence[Matrix]):
    """Depth-first search for a joint eigenvector with Gaussian-rational
    eigenvalues.  Returns (eigenvalue tuple, vector) or None."""
    n = mats[0].rows
    eye = Matrix.identity(n)

    def descend(idx, space_rows):
        if idx == len(mats):
            return (), space_rows[0]
        a = mats[idx]
        _, roots, _ = charpoly_exact_roots(a)
        for lam, _mult in sorted(roots, key=lambda rm: scalar_key(rm[0])):
            shifted = a - eye.scale(lam)
            _, ker = rank_kernel(shifted)
            if not ker:
                continue
            if space_rows is None:
                new_rows = ker
            else:
                new_rows = _intersect(space_rows, ker, n)
            if not new_rows:
                continue
            deeper = descend(idx + 1, new_rows)
            if deeper is not None:
                tail, vec = deeper
                return (lam,) + tail, vec
        return None

    return descend(0, None)


def _intersect(rows_a, rows_b, n):
    """Intersection of two row-spans inside an n-dim exact space."""
    k, l = len(rows_a), len(rows_b)
    cols = []
    for r in range(n):
        cols.append(
            [rows_a[i][r] for i in range(k)] + [-rows_b[j][r] for j in range(l)]
        )
    _, ker = rank_kernel(Matrix(cols))
    vecs = []
    for coeff in ker:
        v = [Fraction(0)] * n
        for i in range(k):
            if coeff[i] != 0:
                for r in range(n):
                    v[r] = v[r] + coeff[i] * rows_a[i][r]
        if any(x != 0 for x in v):
            vecs.append(tuple(v))
    from .lie import Subspace

    return list(Subspace.from_vectors(n, vecs).rows)


def _quotient_exact(mats, v):
    n = mats[0].rows
    pivot = next(i for i, x in enumerate(v) if x != 0)
    cols = [list(v)] + [
        [Fraction(1) if r == j else Fraction(0) for r in range(n)]
        for j in range(n)
        if j != pivot
    ]
    p = Matrix(list(zip(*cols)))
    p_inv = matrix_inverse(p)
    out = []
    for a in mats:
        conj = p_inv @ a @ p
        out.append(Matrix([row[1:] for row in conj.data[1:]]) if n > 1 else None)
    return out


def _weights_exact(mats):
    n = mats[0].rows
    if n == 0:
        return []
    found = _common_eigenvector_exact(mats)
    if found is None:
        raise InexactSpectrum("no joint eigenvector over the Gaussian rationals")
    lam, vec = found
    if n == 1:
        return [lam]
    return [lam] + _weights_exact(_quotient_exact(mats, vec))


# ---------------------------------------------------------------------------
# float fallback


def _nullspace_float(a, tol):
    u, s, vh = np.linalg.svd(a)
    scale = max(s[0], 1.0) if len(s) else 1.0
    null_mask = np.concatenate([s, np.zeros(a.shape[1] - len(s))]) <= tol * scale
    return vh[null_mask.nonzero()[0], :].conj().T  # columns orthonormal


def _intersect_float(q1, q2, tol):
    stacked = np.hstack([q1, -q2])
    ker = _nullspace_float(stacked, tol)
    if ker.shape[1] == 0:
        return np.zeros((q1.shape[0], 0))
    vecs = q1 @ ker[: q1.shape[1], :]
    q, r = np.linalg.qr(vecs)
    keep = np.abs(np.diag(r)) > tol * max(1.0, np.abs(r).max())
    return q[:, : int(keep.sum())]


def _common_eigenvector_float(mats, tol):
    n = mats[0].shape[0]

    def eig_candidates(a):
        vals = np.linalg.eigvals(a)
        out = []
        for v in sorted(vals, key=lambda z: (round(z.real, 9), round(z.imag, 9))):
            if not any(abs(v - w) < 1e-6 for w in out):
                out.append(v)
        return out

    def descend(idx, basis):
        if idx == len(mats):
            return (), basis[:, 0]
        a = mats[idx]
        for lam in eig_candidates(a):
            ker = _nullspace_float(a - lam * np.eye(n), tol)
            if ker.shape[1] == 0:
                continue
            nxt = ker if basis is None else _intersect_float(basis, ker, tol)
            if nxt.shape[1] == 0:
                continue
            deeper = descend(idx + 1, nxt)
            if deeper is not None:
                tail, vec = deeper
                lam_exact = (vec.conj() @ (a @ vec)) / (vec.conj() @ vec)
                return (lam_exact,) + tail, vec
        return None

    return descend(0, None)


def _weights_float(mats, tol):
    n = mats[0].shape[0]
    if n == 0:
        return []
    found = _common_eigenvector_float(mats, tol)
    if found is None:
        raise ArithmeticError("float weight search failed to find a joint eigenvector")
    lam, vec = found
    if n == 1:
        return [lam]
    vec = vec / np.linalg.norm(vec)
    span = np.hstack([vec.reshape(-1, 1), np.eye(n, dtype=complex)])
    q, _ = np.linalg.qr(span)
    q = q[:, :n]
    quots = [(q.conj().T @ a @ q)[1:, 1:] for a in mats]
    return [lam] + _weights_float(quots, tol)


# ---------------------------------------------------------------------------
# public API


def module_weights(L: LieAlgebra, M: LieModule, tol: float = _FLOAT_TOL):
    """All weights of a module over a solvable algebra, with multiplicity.

    Returns RootFunctionals sorted deterministically; multiplicities sum to
    the module dimension.  Exact when every characteristic polynomial along
    the flag splits over the Gaussian rationals, float-tagged otherwise.
    """
    report = structure_series(L)
    if not report.is_solvable:
        raise SolvabilityError("weights require a solvable algebra")
    if M.dim == 0:
        return []
    derived = report.derived_series[1] if len(report.derived_series) > 1 else None
    try:
        tuples = _weights_exact(list(M.actions))
        exact = True
    except InexactSpectrum:
        mats = [a.to_numpy().astype(complex) for a in M.actions]
        tuples = _weights_float(mats, tol)
        exact = False
    weights = []
    for lam in tuples:
        if exact:
            re = tuple(scalar_re(x) for x in lam)
            im = tuple(scalar_im(x) for x in lam)
            if derived is not None:
                for w in derived.rows:
                    vre = sum(a * b for a, b in zip(re, w))
                    vim = sum(a * b for a, b in zip(im, w))
                    assert vre == 0 and vim == 0, "weight does not vanish on [L, L]"
        else:
            re = tuple(float(x.real) for x in lam)
            im = tuple(float(x.imag) for x in lam)
        weights.append((re, im, exact))
    # aggregate multiplicities
    out = []
    for re, im, exact_flag in weights:
        merged = False
        for idx, existing in enumerate(out):
            ere, eim, ecount = existing
            if exact_flag:
                same = ere == re and eim == im
            else:
                same = all(abs(a - b) < 1e-6 for a, b in zip(ere, re)) and all(
                    abs(a - b) < 1e-6 for a, b in zip(eim, im)
                )
            if same:
                out[idx] = (ere, eim, ecount + 1)
                merged = True
                break
        if not merged:
            out.append((re, im, 1))
    fns = [
        RootFunctional(re, im, exact, mult)
        for re, im, mult in out
    ]
    if exact:
        fns.sort(key=lambda f: tuple(zip(f.re, f.im)))
    else:
        fns.sort(key=lambda f: tuple((round(a, 9), round(b, 9)) for a, b in zip(f.re, f.im)))
    return fns


def algebra_roots(L: LieAlgebra, tol: float = _FLOAT_TOL):
    """Weights of the adjoint module (the roots of the algebra)."""
    return module_weights(L, adjoint_module(L), tol)


@dataclass(frozen=True)
class WeightCertificate:
    weight: RootFunctional
    theta: object  # Fraction (exact) or float, None on violation
    gamma: tuple | None  # the real functional with weight = (1 + i theta) gamma
    violation: str | None


@dataclass(frozen=True)
class ExponentialTypeResult:
    verdict: bool
    certificates: tuple
    heuristic: bool


def exponential_type_test(L: LieAlgebra, M: LieModule, tol: float = _FLOAT_TOL):
    """Decide whether every weight is a complex multiple (1 + i theta) of a
    real functional, with no purely imaginary weights.

    The verdict is exact whenever the weights are.  Each weight receives a
    certificate (theta, gamma) or a named violation: "purely imaginary
    weight" or "independent real and imaginary parts".
    """
    weights = module_weights(L, M, tol)
    heuristic = any(not w.exact for w in weights)
    certs = []
    verdict = True
    for w in weights:
        if w.exact:
            re_zero = all(a == 0 for a in w.re)
            im_zero = all(a == 0 for a in w.im)
        else:
            re_zero = all(abs(a) < 1e-6 for a in w.re)
            im_zero = all(abs(a) < 1e-6 for a in w.im)
        if im_zero:
            theta = Fraction(0) if w.exact else 0.0
            certs.append(WeightCertificate(w, theta, w.re, None))
            continue
        if re_zero:
            verdict = False
            certs.append(WeightCertificate(w, None, None, "purely imaginary weight"))
            continue
        if w.exact:
            j = next(i for i, a in enumerate(w.re) if a != 0)
            theta = w.im[j] / w.re[j]
            dependent = all(b == theta * a for a, b in zip(w.re, w.im))
        else:
            j = max(range(len(w.re)), key=lambda i: abs(w.re[i]))
            theta = w.im[j] / w.re[j]
            dependent = all(
                abs(b - theta * a) < 1e-6 * max(1.0, abs(theta))
                for a, b in zip(w.re, w.im)
            )
        if dependent:
            certs.append(WeightCertificate(w, theta, w.re, None))
        else:
            verdict = False
            certs.append(
                WeightCertificate(w, None, None, "independent real and imaginary parts")
            )
    return ExponentialTypeResult(verdict, tuple(certs), heuristic)


def algebra_is_exponential(L: LieAlgebra, tol: float = _FLOAT_TOL):
    """Exponential-type verdict for the adjoint module (group exponentiality)."""
    return exponential_type_test(L, adjoint_module(L), tol)
