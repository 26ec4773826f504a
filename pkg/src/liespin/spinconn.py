"""Frame-indexed Clifford operators encoding the spinor connection.

For each frame vector e_j the mixed-grade multivector

    L_j = -1/4 sum_{k<h, k,h != j} (eps_j eps_k c_{jkh} - eps_h eps_j c_{jhk}
            - eps_k eps_h c_{khj}) e_j ^ e_k ^ e_h
          - 1/2 sum_k eps_k c_{jkj} e_k

acts on spinors by L_j . psi = -eps_j e_j . nabla_{e_j} psi.  Its grade-3
part is divisible by e_j and its grade-1 part has no e_j component.

The family decomposes as L_j = M + mu_j + xi_j where M is the mean of the
grade-3 parts (independent of j on the structures of interest), mu_j is the
grade-1 part, and the deviations xi_j sum to zero.
"""

from __future__ import annotations

import numpy as np

from .clifford import CliffordRep
from .liealg import LeviCivita
from .multivector import Multivector, basis_vector, blade, wedge, zero


def l_operators(lc: LeviCivita) -> list[Multivector]:
    """The operators L_1, ..., L_n of a metric Lie algebra."""
    n = lc.n
    eps = lc.alg.sig.signs
    c = lc.alg.c
    out = []
    for j in range(1, n + 1):
        lj = zero(n)
        ej = basis_vector(n, j)
        for k in range(1, n + 1):
            if k == j:
                continue
            for h in range(k + 1, n + 1):
                if h == j:
                    continue
                coeff = (
                    eps[j - 1] * eps[k - 1] * c[j - 1, k - 1, h - 1]
                    - eps[h - 1] * eps[j - 1] * c[j - 1, h - 1, k - 1]
                    - eps[k - 1] * eps[h - 1] * c[k - 1, h - 1, j - 1]
                )
                if coeff:
                    lj = lj + (-0.25 * coeff) * wedge(ej, blade(n, [k, h]))
        for k in range(1, n + 1):
            coeff = -0.5 * eps[k - 1] * c[j - 1, k - 1, j - 1]
            if coeff:
                lj = lj + blade(n, [k], coeff)
        out.append(lj)
    return out


def l_identity_defect(rep: CliffordRep, lc: LeviCivita) -> float:
    """Max matrix defect of L_j . psi = -eps_j e_j . nabla_{e_j} psi."""
    if rep.sig != lc.alg.sig:
        raise ValueError("representation signature does not match the algebra")
    eps = lc.alg.sig.signs
    worst = 0.0
    for j, lj in enumerate(l_operators(lc), start=1):
        lhs = rep.matrix_of(lj)
        rhs = -eps[j - 1] * rep.gammas[j - 1] @ (0.25 * rep.matrix_of(lc.spin_bivector(j)))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def dirac_matrix(rep: CliffordRep, lc: LeviCivita) -> np.ndarray:
    """Matrix of psi -> sum_j L_j . psi (minus the frame Dirac operator)."""
    ls = l_operators(lc)
    total = np.zeros((rep.dim_spinor, rep.dim_spinor), dtype=complex)
    for lj in ls:
        total += rep.matrix_of(lj)
    return total


def decompose_l(ls: list[Multivector]) -> tuple[Multivector, list[Multivector], list[Multivector]]:
    """Split each L_j into the common 3-form M, its vector part, and deviations.

    Returns (M, mus, xis) with L_j = M + mu_j + xi_j and sum_j xi_j = 0.
    """
    if not ls:
        raise ValueError("need at least one operator")
    n = ls[0].n
    m = zero(n)
    for lj in ls:
        m = m + lj.grade(3)
    m = m / len(ls)
    mus = [lj.grade(1) for lj in ls]
    xis = [lj.grade(3) - m for lj in ls]
    return m, mus, xis


def xi_from_structure(ls: list[Multivector], a: np.ndarray, tol: float = 1e-12) -> Multivector:
    """The weighted deviation form xi = (2n / (n tr(A^2) - (tr A)^2)) sum_j a_j xi_j.

    a holds the diagonal entries of the symmetric endomorphism A.  Fails when
    A is a multiple of the identity, which makes the weights degenerate.
    """
    a = np.asarray(a, dtype=float)
    n = len(ls)
    if a.shape != (n,):
        raise ValueError("need one diagonal entry per frame vector")
    denom = n * float(np.sum(a * a)) - float(np.sum(a)) ** 2
    scale = max(1.0, float(np.max(np.abs(a))) ** 2)
    if abs(denom) <= tol * scale:
        raise ValueError("cannot isolate xi: the endomorphism is a multiple of the identity")
    _, _, xis = decompose_l(ls)
    out = zero(ls[0].n)
    for aj, xj in zip(a, xis):
        out = out + float(aj) * xj
    return (2 * n / denom) * out
