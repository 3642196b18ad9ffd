"""Reference computations that share no code path with the library.

Quaternion elements are pushed into 2x2 sympy matrices over C (i as
diag(sqrt a, -sqrt a), j as [[0, b], [1, 0]], sqrt(delta) as a scalar), and
signatures are read from the real trace form x -> Trd(sigma(x) d x)
diagonalised numerically with mpmath.
"""
from __future__ import annotations

import mpmath
import sympy as sp

from quatcones import FieldElement, InvolutionDesc, Ordering, QuatElement


def scalar(x: FieldElement, ordering: Ordering | None = None) -> sp.Expr:
    """x as a sympy number; sqrt(m) is taken with the sign of the embedding."""
    p = sp.Rational(int(x.p.numerator), int(x.p.denominator))
    if x.field.m is None:
        return p
    q = sp.Rational(int(x.q.numerator), int(x.q.denominator))
    root = sp.sqrt(x.field.m)
    if ordering is not None and ordering.root_sign < 0:
        root = -root
    return p + q * root


class MatrixModel:
    def __init__(self, alg, ordering: Ordering | None = None) -> None:
        self.alg = alg
        self.ordering = ordering
        a, b = scalar(alg.a, ordering), scalar(alg.b, ordering)
        ra = sp.sqrt(a)
        self.I = sp.Matrix([[ra, 0], [0, -ra]])
        self.J = sp.Matrix([[0, b], [1, 0]])
        self.K = self.I * self.J
        self.one = sp.eye(2)
        self.root_delta = None if alg.delta is None else sp.sqrt(scalar(alg.delta, ordering))

    def _part(self, c) -> sp.Matrix:
        s = [scalar(x, self.ordering) for x in c]
        return s[0] * self.one + s[1] * self.I + s[2] * self.J + s[3] * self.K

    def image(self, x: QuatElement) -> sp.Matrix:
        out = self._part(x.c[:4])
        if len(x.c) == 8:
            out = out + self.root_delta * self._part(x.c[4:])
        return out

    def involution(self, sigma: InvolutionDesc, x: QuatElement) -> sp.Matrix:
        def adj(M):
            return M.trace() * sp.eye(2) - M
        if sigma.kind == "symplectic":
            return adj(self.image(x))
        if sigma.kind == "orthogonal":
            V = self.image(sigma.v)
            return V * adj(self.image(x)) * V.inv()
        # gamma on the A0 part, sqrt(delta) -> -sqrt(delta)
        return adj(self._part(x.c[:4])) - self.root_delta * adj(self._part(x.c[4:]))


def is_zero_matrix(M: sp.Matrix) -> bool:
    return all(sp.simplify(sp.expand(e)) == 0 for e in M)


def same(M: sp.Matrix, N: sp.Matrix) -> bool:
    return is_zero_matrix(M - N)


def _gram(model, left, D, digits):
    """Real Gram matrix of y -> Re tr(left(y) D y) on the F-basis."""
    alg = model.alg
    images = [model.image(alg.basis(n)) for n in range(alg.dim)]
    lefts = [left(alg.basis(n)) for n in range(alg.dim)]
    n = alg.dim
    G = mpmath.matrix(n, n)
    for r in range(n):
        for c in range(n):
            val = (lefts[r] * D * images[c] + lefts[c] * D * images[r]).trace() / 2
            G[r, c] = mpmath.mpf(str(sp.re(sp.N(sp.expand(val), digits + 20))))
    return G


def _inertia(G, digits) -> tuple[int, int]:
    eig = mpmath.eigsy(G, eigvals_only=True)
    tol = mpmath.mpf(10) ** (-digits // 2)
    return sum(1 for v in eig if v > tol), sum(1 for v in eig if v < -tol)


class TraceFormOracle:
    """Signatures of <d>_sigma through a positive twist of sigma.

    A symmetric x is searched for such that tau = Int(x^-1) o sigma has a
    positive definite trace form.  Then <d>_sigma is a scaled copy of
    <x^-1 d>_tau, whose signature is the trace-form signature divided by
    dim/2.  The remaining global sign is fixed by ``generator``.
    """

    def __init__(self, alg, sigma, ordering, sym_basis, generator, digits: int = 50) -> None:
        self.model = MatrixModel(alg, ordering)
        self.sigma = sigma
        self.digits = digits
        self.x_inv = self._find_twist(alg, sym_basis)
        self.scale = 1
        self.scale = 1 if self.raw(generator) > 0 else -1

    def _find_twist(self, alg, sym_basis):
        model = self.model
        candidates = list(sym_basis)
        candidates += [p + q for n, p in enumerate(sym_basis) for q in sym_basis[n + 1:]]
        candidates += [p - q for n, p in enumerate(sym_basis) for q in sym_basis[n + 1:]]
        with mpmath.workdps(self.digits):
            for x in candidates:
                X = model.image(x)
                if sp.simplify(X.det()) == 0:
                    continue
                X_inv = X.inv()
                left = lambda y, X=X, X_inv=X_inv: X_inv * model.involution(self.sigma, y) * X
                pos, _ = _inertia(_gram(model, left, sp.eye(2), self.digits), self.digits)
                if pos == alg.dim:
                    return X_inv
        raise AssertionError("no positive twist among the candidates")

    def raw(self, d: QuatElement) -> int:
        model, X_inv = self.model, self.x_inv
        X = X_inv.inv()
        left = lambda y: X_inv * model.involution(self.sigma, y) * X
        with mpmath.workdps(self.digits):
            pos, neg = _inertia(_gram(model, left, X_inv * model.image(d), self.digits), self.digits)
        return (pos - neg) * 2 // self.model.alg.dim

    def signature(self, d: QuatElement) -> int:
        return self.scale * self.raw(d)
