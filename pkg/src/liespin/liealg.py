"""Metric Lie algebras with orthonormal frames.

A Lie algebra is stored through its structure constants in a basis that is
orthonormal for a diagonal metric: [e_j, e_k] = sum_h c_{jkh} e_h.  The
Levi-Civita connection of the associated left-invariant metric is encoded by
the Koszul coefficients

    gamma_{jkh} = (eps_h c_{jkh} - eps_j c_{khj} + eps_k c_{hjk}) / 2,

with nabla_{e_j} e_k = sum_h eps_h gamma_{jkh} e_h.  The connection also acts
on spinors through the bivectors theta(e_j) = sum_{k<h} 2 eps_k eps_h
gamma_{jkh} e_k ^ e_h, as nabla_{e_j} psi = (1/4) theta(e_j) . psi.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordRep, Signature, Spinor
from .multivector import Multivector, blade, zero


@dataclass
class LieAlgebra:
    """Structure constants of a Lie algebra in an orthonormal frame.

    c[j, k, h] is the coefficient of e_h in [e_j, e_k] (0-based indices).
    Antisymmetry in (j, k) is enforced at construction; the Jacobi identity
    is not, so that near-miss inputs can be diagnosed with jacobi_residual.
    """

    sig: Signature
    c: np.ndarray

    def __post_init__(self) -> None:
        n = self.sig.n
        c = np.asarray(self.c, dtype=float)
        if c.shape != (n, n, n):
            raise ValueError(f"structure constants must have shape {(n, n, n)}")
        if np.max(np.abs(c + c.transpose(1, 0, 2))) > 1e-12:
            raise ValueError("structure constants must be antisymmetric in the first two slots")
        self.c = c

    @property
    def n(self) -> int:
        return self.sig.n

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("jkh,j,k->h", self.c, x, y)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad_x = [x, .] acting on coordinate columns."""
        return np.einsum("jkh,j->hk", self.c, x)


def make_algebra(signs, brackets) -> LieAlgebra:
    """Build a LieAlgebra from a sparse list of brackets.

    brackets maps (j, k) with j < k (1-based) to {h: coeff} or to a list of
    (h, coeff) pairs describing [e_j, e_k].
    """
    sig = Signature(tuple(signs))
    n = sig.n
    c = np.zeros((n, n, n))
    for (j, k), val in brackets.items():
        if not 1 <= j < k <= n:
            raise ValueError(f"bracket indices must satisfy 1 <= j < k <= n, got ({j}, {k})")
        row = np.zeros(n)
        items = val.items() if isinstance(val, dict) else val
        for h, coeff in items:
            row[h - 1] = coeff
        c[j - 1, k - 1] = row
        c[k - 1, j - 1] = -row
    return LieAlgebra(sig, c)


def algebra_from_cocycles(signs, de: list[Multivector]) -> LieAlgebra:
    """Recover structure constants from the differentials of the dual frame.

    de[k] is the two-form d e^{k+1}; with de^h = -sum_{j<k} c_{jkh} e^j ^ e^k
    this determines every bracket.
    """
    sig = Signature(tuple(signs))
    n = sig.n
    if len(de) != n:
        raise ValueError("need one two-form per dual basis vector")
    c = np.zeros((n, n, n))
    for h, form in enumerate(de):
        if form.n != n:
            raise ValueError("cocycle dimension mismatch")
        if form.grades(tol=0.0) not in ([], [2]):
            raise ValueError("differentials of the dual frame must be two-forms")
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                coeff = form.blade_coeff((j, k))
                if abs(coeff.imag) > 1e-12:
                    raise ValueError("structure constants must be real")
                c[j - 1, k - 1, h] = -coeff.real
                c[k - 1, j - 1, h] = coeff.real
    return LieAlgebra(sig, c)


def dual_cocycles(alg: LieAlgebra) -> list[Multivector]:
    """The two-forms d e^h = -sum_{j<k} c_{jkh} e^j ^ e^k."""
    n = alg.n
    out = []
    for h in range(n):
        form = zero(n)
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                coeff = -alg.c[j - 1, k - 1, h]
                if coeff:
                    form = form + blade(n, [j, k], coeff)
        out.append(form)
    return out


def jacobi_residual(alg: LieAlgebra) -> float:
    """Max-norm of the Jacobi identity defect."""
    c = alg.c
    # sum over cyclic permutations of [[e_j, e_k], e_l]
    term = np.einsum("jkm,mlh->jklh", c, c)
    cyc = term + term.transpose(1, 2, 0, 3) + term.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(cyc)))


def unimodularity_defect(alg: LieAlgebra) -> float:
    """Max-norm of tr(ad_{e_j}) over the basis; zero for unimodular algebras."""
    tr = np.einsum("jkk->j", alg.c)
    return float(np.max(np.abs(tr)))


@dataclass
class LeviCivita:
    """Koszul data of the left-invariant connection of a metric Lie algebra."""

    alg: LieAlgebra
    gamma: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        c = self.alg.c
        eps = np.array(self.alg.sig.signs, dtype=float)
        # gamma_{jkh} = (eps_h c_{jkh} - eps_j c_{khj} + eps_k c_{hjk}) / 2,
        # with c.transpose(2,0,1)[j,k,h] = c[k,h,j] and
        #      c.transpose(1,2,0)[j,k,h] = c[h,j,k]
        self.gamma = 0.5 * (
            eps[None, None, :] * c
            - eps[:, None, None] * c.transpose(2, 0, 1)
            + eps[None, :, None] * c.transpose(1, 2, 0)
        )

    @property
    def n(self) -> int:
        return self.alg.n

    def derivative_matrix(self, j: int) -> np.ndarray:
        """Matrix of nabla_{e_j} on vector coordinates (1-based j)."""
        eps = np.array(self.alg.sig.signs, dtype=float)
        # column k: coords of nabla_{e_j} e_k = sum_h eps_h gamma_{jkh} e_h
        return (eps[:, None] * self.gamma[j - 1].T).astype(float)

    def nabla_vector(self, j: int, x: np.ndarray) -> np.ndarray:
        return self.derivative_matrix(j) @ np.asarray(x, dtype=float)

    def spin_bivector(self, j: int) -> Multivector:
        """theta(e_j): the bivector generating nabla_{e_j} on spinors."""
        n = self.n
        eps = self.alg.sig.signs
        out = zero(n)
        for k in range(1, n + 1):
            for h in range(k + 1, n + 1):
                coeff = 2 * eps[k - 1] * eps[h - 1] * self.gamma[j - 1, k - 1, h - 1]
                if coeff:
                    out = out + blade(n, [k, h], coeff)
        return out

    def nabla_spinor(self, rep: CliffordRep, j: int, s: Spinor) -> Spinor:
        if rep.sig != self.alg.sig:
            raise ValueError("representation signature does not match the algebra")
        return 0.25 * rep.apply(self.spin_bivector(j), s)

    def curvature_operator(self, j: int, k: int) -> np.ndarray:
        """R(e_j, e_k) = [nabla_j, nabla_k] - nabla_{[e_j, e_k]} on vectors."""
        dj = self.derivative_matrix(j)
        dk = self.derivative_matrix(k)
        comm = dj @ dk - dk @ dj
        br = self.alg.c[j - 1, k - 1]
        nab_br = sum(br[m] * self.derivative_matrix(m + 1) for m in range(self.n))
        return comm - nab_br

    def ricci_matrix(self) -> np.ndarray:
        """ric(e_k, e_l) = trace of v -> R(v, e_k) e_l.

        In a frame with g(e_j, e_j) = eps_j the trace picks up eps_j from the
        inverse metric and eps_j again from reading off the e_j component, so
        the factors cancel and the entry is sum_j R(e_j, e_k)[j, l].
        """
        n = self.n
        ric = np.zeros((n, n))
        for j in range(1, n + 1):
            op_jk = [self.curvature_operator(j, k) for k in range(1, n + 1)]
            for k in range(n):
                ric[k] += op_jk[k][j - 1]
        return ric

    def scalar_curvature(self) -> float:
        eps = np.array(self.alg.sig.signs, dtype=float)
        ric = self.ricci_matrix()
        return float(np.sum(eps * np.diag(ric)))

    def curvature_span(self, tol: float = 1e-10) -> tuple[int, np.ndarray]:
        """Rank and an orthonormal spanning set of the curvature operators.

        Each R(e_j, e_k), j < k, is flattened; the rank of their span is the
        dimension of the curvature's image in End(T), computed by SVD.
        """
        n = self.n
        rows = []
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                rows.append(self.curvature_operator(j, k).ravel())
        mat = np.array(rows)
        _, sv, vt = np.linalg.svd(mat, full_matrices=False)
        rank = int(np.sum(sv > tol * max(1.0, sv[0])))
        return rank, vt[:rank]


def random_unimodular_constants(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    """Draw antisymmetric structure constants with traceless adjoints.

    The raw draw is projected onto the unimodular slice by removing the mean
    of each ad-trace from the entries c_{jkk}, k != j; the antisymmetric
    partners are updated in the same step.  No attempt is made to satisfy the
    Jacobi identity, which is what the round-trip tests want: the operator
    correspondence is linear and does not see Jacobi.
    """
    c = rng.normal(scale=scale, size=(n, n, n))
    c -= c.transpose(1, 0, 2).copy()
    for j in range(n):
        tr = sum(c[j, k, k] for k in range(n))
        for k in range(n):
            if k != j:
                c[j, k, k] -= tr / (n - 1)
                c[k, j, k] = -c[j, k, k]
    return c
