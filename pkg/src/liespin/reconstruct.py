"""Rebuilding Lie algebras from connection operators and trivector data.

The per-direction operators L_j determine the structure constants through
hook formulas, and conversely; this module implements both directions of
that correspondence, plus the four-dimensional construction that starts
from a pair of trivectors (M, xi), a traceless diagonal part x, and a
spinor, and produces a metric Lie algebra carrying a verified structure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordRep, Signature, build_clifford, chirality_split
from .harmful import KIND_REAL, HarmfulStructure
from .liealg import LieAlgebra, algebra_from_cocycles, jacobi_residual
from .multivector import (
    Multivector,
    basis_vector,
    form_hook,
    hodge_star,
    musical,
    wedge,
)

__all__ = [
    "ReconstructionData",
    "build_from_data",
    "c_from_L",
    "cocycle_from_M_xi",
    "cocycles_from_data",
    "l_constraint_defect",
    "reconstruction_defects",
]


def l_constraint_defect(ls: list[Multivector], sig: Signature) -> float:
    """How far the operators are from the image of the constants-to-L map.

    Operators coming from a Lie bracket have no e_j component in the vector
    part of L_j, and every trivector term of L_j contains e_j as a factor.
    """
    worst = 0.0
    n = sig.n
    for j, op in enumerate(ls, start=1):
        worst = max(worst, abs(op.grade(1).blade_coeff((j,))))
        worst = max(worst, wedge(basis_vector(n, j), op.grade(3)).max_abs())
    return worst


def c_from_L(ls: list[Multivector], sig: Signature, tol: float = 1e-9) -> LieAlgebra:
    """Recover the structure constants inducing the given operators.

    The off-axis constants come from hooking e^{jkh} into the trivector
    parts of L_j + L_k; the remaining ones are read off the vector parts.
    The result need not satisfy the Jacobi identity; callers who care should
    inspect jacobi_residual separately.
    """
    n = sig.n
    eps = sig.signs
    if len(ls) != n:
        raise ValueError("need one operator per basis direction")
    defect = l_constraint_defect(ls, sig)
    if defect > tol:
        raise ValueError(
            f"operators violate the structural constraints (defect {defect:.3e})"
        )
    c = np.zeros((n, n, n))
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if k == j:
                continue
            val = -2.0 * eps[k - 1] * ls[j - 1].grade(1).blade_coeff((k,)).real
            c[j - 1, k - 1, j - 1] = val
            c[k - 1, j - 1, j - 1] = -val
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            three = ls[j - 1].grade(3) + ls[k - 1].grade(3)
            for h in range(1, n + 1):
                if h == j or h == k:
                    continue
                covector = wedge(wedge(basis_vector(n, j), basis_vector(n, k)), basis_vector(n, h))
                hook = form_hook(covector, three, eps).blade_coeff(())
                val = -2.0 * eps[j - 1] * eps[k - 1] * hook.real
                c[j - 1, k - 1, h - 1] = val
                c[k - 1, j - 1, h - 1] = -val
    return LieAlgebra(sig, c)


def cocycle_from_M_xi(
    m: Multivector,
    xis: list[Multivector],
    mus: list[Multivector],
    sig: Signature,
) -> list[Multivector]:
    """Dual-frame differentials from the decomposition L_j = M + mu_j + xi_j.

    Valid when the average of the L_j equals the trivector m, which is the
    unimodular situation; then de^k = 2((n-1) e^k -| m - e^k -| xi_k)^flat
    + 2 e^k ^ mu_k^flat.
    """
    n = sig.n
    eps = sig.signs
    if m.grades(tol=0.0) not in ([], [3]):
        raise ValueError("the mean operator must have pure degree three")
    out = []
    for k in range(1, n + 1):
        xi_k, mu_k = xis[k - 1], mus[k - 1]
        if xi_k.grades(tol=0.0) not in ([], [3]) or mu_k.grades(tol=0.0) not in ([], [1]):
            raise ValueError("decomposition parts have the wrong degrees")
        ek = basis_vector(n, k)
        bivector = form_hook(ek, m, eps) * (n - 1.0) - form_hook(ek, xi_k, eps)
        form = musical(bivector, eps) * 2.0 + wedge(ek, musical(mu_k, eps)) * 2.0
        out.append(form)
    return out


@dataclass(frozen=True)
class ReconstructionData:
    """Input bundle for the four-dimensional construction.

    m and xi are trivectors, x the traceless diagonal deviation, psi a
    spinor compatible with xi, y the mean eigenvalue of the endomorphism,
    and lam the coupling constant, real or purely imaginary.
    """

    m: Multivector
    xi: Multivector
    x: tuple[float, float, float, float]
    psi: np.ndarray
    y: float
    lam: complex


def reconstruction_defects(
    data: ReconstructionData, sig: Signature, rep: CliffordRep | None = None
) -> dict[str, float]:
    """Residuals of every precondition of the construction, by name."""
    n = sig.n
    eps = sig.signs
    rep = rep if rep is not None else build_clifford(sig)
    x = np.asarray(data.x, dtype=float)
    psi = np.asarray(data.psi, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(psi))))
    defects: dict[str, float] = {}
    defects["sum_x"] = abs(float(np.sum(x)))
    defects["wedge_alignment"] = max(
        wedge(data.m + data.xi * (0.5 * x[j - 1]), basis_vector(n, j)).max_abs()
        for j in range(1, n + 1)
    )
    star_m, star_xi = hodge_star(data.m, eps), hodge_star(data.xi, eps)
    compat = 0.0
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            four = wedge(wedge(basis_vector(n, j), basis_vector(n, k)), wedge(star_m, star_xi))
            compat = max(compat, abs(x[j - 1] - x[k - 1]) * four.max_abs())
    defects["eigen_compat"] = compat
    if np.max(np.abs(x)) > 0.0:
        defects["xi_psi"] = float(np.max(np.abs(rep.matrix_of(data.xi) @ psi - psi))) / scale
    else:
        defects["xi_psi"] = 0.0
    plus, minus = chirality_split(rep, psi)
    m_mat = rep.matrix_of(data.m)
    r1 = m_mat @ plus - (0.5 * data.y - 1j * data.lam) * minus
    r2 = m_mat @ minus - (0.5 * data.y + 1j * data.lam) * plus
    defects["m_psi_chiral"] = float(max(np.max(np.abs(r1)), np.max(np.abs(r2)))) / scale
    defects["lambda_axis"] = abs(complex(data.lam).real * complex(data.lam).imag)
    return defects


def cocycles_from_data(data: ReconstructionData, sig: Signature) -> list[Multivector]:
    """The raw differentials de^k = (e^k -| (6m - x_k xi))^flat, unchecked."""
    n = sig.n
    eps = sig.signs
    out = []
    for k in range(1, n + 1):
        combo = data.m * 6.0 - data.xi * float(data.x[k - 1])
        out.append(musical(form_hook(basis_vector(n, k), combo, eps), eps))
    return out


def build_from_data(
    data: ReconstructionData, sig: Signature, tol: float = 1e-9
) -> tuple[LieAlgebra, HarmfulStructure]:
    """Construct a metric Lie algebra and its coupled spinor structure.

    Every precondition is checked before anything is built, and the input is
    never repaired; a violated invariant is reported by name.  The Jacobi
    identity follows from the preconditions, so a residual there means the
    implementation and the input disagree about conventions, which is raised
    as an internal-consistency failure rather than a data error.
    """
    if sig.n != 4 or sig.q not in (0, 1):
        raise ValueError("construction applies to signatures (4,0) and (3,1) only")
    rep = build_clifford(sig)
    defects = reconstruction_defects(data, sig, rep)
    bad = {name: value for name, value in defects.items() if value > tol}
    if bad:
        worst = ", ".join(f"{name}={value:.3e}" for name, value in sorted(bad.items()))
        raise ValueError(f"reconstruction preconditions violated: {worst}")
    alg = algebra_from_cocycles(sig.signs, cocycles_from_data(data, sig))
    residual = jacobi_residual(alg)
    if residual > max(tol, 1e-10):
        raise RuntimeError(
            f"internal consistency failure: Jacobi residual {residual:.3e} "
            "from data that passed the preconditions"
        )
    psi = np.asarray(data.psi, dtype=complex)
    plus, minus = chirality_split(rep, psi)
    phi = 1j * (plus - minus)
    a_matrix = np.diag(np.asarray(data.x, dtype=float) + data.y)
    structure = HarmfulStructure(alg, psi, phi, a_matrix, data.lam, KIND_REAL, rep=rep)
    return alg, structure
