"""Coupled first-order spinor systems on metric Lie algebras.

A structure consists of two spinors (psi, phi), a symmetric endomorphism A of
the frame, and a constant lam that is either real or purely imaginary.  Two
system kinds are supported, distinguished by how the frame derivative couples
the pair.  For every frame vector X:

    real:       nabla_X psi =  A(X).psi / 2 + lam X.phi
                nabla_X phi =  lam X.psi - A(X).phi / 2
    imaginary:  nabla_X psi = -(i/2) A(X).psi - i lam X.phi
                nabla_X phi =  i lam X.psi + (i/2) A(X).phi

Admissibility also requires psi, phi != 0, A symmetric for the metric, and a
divergence balance: tr(A ad_v) = tr(ad_{A v}) for every v.

Verification is offered through two independent routes: the Koszul spinor
derivative (verify_harmful) and the frame operators L_j (verify_via_L), which
never share intermediate results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .clifford import CliffordRep, Spinor, build_clifford, chirality_split, flip_rep
from .liealg import LeviCivita, LieAlgebra
from .multivector import (
    Multivector,
    basis_vector,
    from_vector,
    hodge_star,
    musical,
    pairing,
    wedge,
)
from .spinconn import decompose_l, l_operators, xi_from_structure

KIND_REAL = "real"
KIND_IMAGINARY = "imaginary"


@dataclass
class HarmfulStructure:
    """A candidate solution of one of the two coupled spinor systems.

    The optional rep pins the Clifford matrices the spinor components refer
    to; structures produced by flip_metric need this because the flipped
    matrices differ from the freshly built ones by a similarity.
    """

    alg: LieAlgebra
    psi: Spinor
    phi: Spinor
    A: np.ndarray
    lam: complex
    kind: str
    rep: CliffordRep | None = None

    def __post_init__(self) -> None:
        if self.kind not in (KIND_REAL, KIND_IMAGINARY):
            raise ValueError(f"kind must be '{KIND_REAL}' or '{KIND_IMAGINARY}'")
        n = self.alg.n
        self.A = np.asarray(self.A, dtype=float)
        if self.A.shape != (n, n):
            raise ValueError(f"endomorphism must be {n} x {n}")
        self.psi = np.asarray(self.psi, dtype=complex)
        self.phi = np.asarray(self.phi, dtype=complex)
        self.lam = complex(self.lam)
        if self.rep is not None and self.rep.sig != self.alg.sig:
            raise ValueError("representation signature does not match the algebra")

    @property
    def n(self) -> int:
        return self.alg.n

    def a_diagonal(self, tol: float = 1e-9) -> np.ndarray:
        off = self.A - np.diag(np.diag(self.A))
        if np.max(np.abs(off)) > tol:
            raise ValueError("endomorphism is not diagonal in this frame")
        return np.diag(self.A).copy()

    def representation(self) -> CliffordRep:
        if self.rep is not None:
            return self.rep
        return build_clifford(self.alg.sig)


@dataclass
class VerificationReport:
    """Residuals of the defining equations and admissibility conditions."""

    equation_defect: float
    symmetry_defect: float
    divergence_defect: float
    lambda_defect: float
    chirality_defect: float
    psi_norm: float
    phi_norm: float

    def ok(self, tol: float = 1e-9) -> bool:
        return (
            self.max_defect() <= tol
            and self.psi_norm > tol
            and self.phi_norm > tol
        )

    def max_defect(self) -> float:
        return max(
            self.equation_defect,
            self.symmetry_defect,
            self.divergence_defect,
            self.lambda_defect,
            self.chirality_defect,
        )


def _even_partner(rep: CliffordRep, psi: Spinor, kind: str) -> Spinor:
    """In even dimensions phi is pinned to psi: i^((2-3q-p)/2) omega . psi for
    the real kind, with one extra factor of i for the imaginary kind (the
    image of the real constraint under the metric flip)."""
    p, q = rep.sig.p, rep.sig.q
    expo = (2 - 3 * q - p) // 2
    if kind == KIND_IMAGINARY:
        expo += 1
    return (1j ** (expo % 4)) * (rep.volume_matrix @ np.asarray(psi, dtype=complex))


def _coupling_blocks(rep: CliffordRep, A: np.ndarray, lam: complex, kind: str):
    """Per-frame-vector matrices (P_j, Q_j, R_j, S_j) with the system reading

    nabla_j psi = P_j psi + Q_j phi,   nabla_j phi = R_j psi + S_j phi.
    """
    n = rep.n
    blocks = []
    for j in range(1, n + 1):
        av = rep.matrix_of(from_vector(n, A[:, j - 1]))
        gj = rep.gammas[j - 1]
        if kind == KIND_REAL:
            blocks.append((0.5 * av, lam * gj, lam * gj, -0.5 * av))
        else:
            blocks.append((-0.5j * av, -1j * lam * gj, 1j * lam * gj, 0.5j * av))
    return blocks


def verify_harmful(hs: HarmfulStructure) -> VerificationReport:
    """Residuals of the coupled system, computed from the Koszul derivative."""
    rep = hs.representation()
    lc = LeviCivita(hs.alg)
    n = hs.n
    scale = max(1.0, float(np.max(np.abs(hs.psi))), float(np.max(np.abs(hs.phi))))
    eq = 0.0
    blocks = _coupling_blocks(rep, hs.A, hs.lam, hs.kind)
    for j in range(1, n + 1):
        nab = 0.25 * rep.matrix_of(lc.spin_bivector(j))
        P, Q, R, S = blocks[j - 1]
        r1 = nab @ hs.psi - P @ hs.psi - Q @ hs.phi
        r2 = nab @ hs.phi - R @ hs.psi - S @ hs.phi
        eq = max(eq, float(np.max(np.abs(r1))), float(np.max(np.abs(r2))))
    G = np.diag(hs.alg.sig.signs).astype(float)
    sym = float(np.max(np.abs(hs.A.T @ G - G @ hs.A)))
    div = 0.0
    for j in range(n):
        v = np.eye(n)[j]
        d = np.trace(hs.A @ hs.alg.ad(v)) - np.trace(hs.alg.ad(hs.A @ v))
        div = max(div, abs(float(d)))
    lam_def = abs(hs.lam.real * hs.lam.imag)
    chir = 0.0
    if n % 2 == 0:
        chir = float(np.max(np.abs(hs.phi - _even_partner(rep, hs.psi, hs.kind)))) / scale
    return VerificationReport(
        equation_defect=eq / scale,
        symmetry_defect=sym,
        divergence_defect=div,
        lambda_defect=lam_def,
        chirality_defect=chir,
        psi_norm=float(np.linalg.norm(hs.psi)),
        phi_norm=float(np.linalg.norm(hs.phi)),
    )


def verify_via_L(hs: HarmfulStructure, tol: float = 1e-9) -> float:
    """Independent check through the frame operators: max residual of

        L_j . psi = a_j psi / 2 + lam phi,   L_j . phi = lam psi - a_j phi / 2

    (real kind; the imaginary kind carries a factor -i on the right sides).
    Requires A diagonal in the frame.
    """
    a = hs.a_diagonal(tol)
    rep = hs.representation()
    ls = l_operators(LeviCivita(hs.alg))
    factor = 1.0 if hs.kind == KIND_REAL else -1j
    worst = 0.0
    for j, lj in enumerate(ls):
        mat = rep.matrix_of(lj)
        r1 = mat @ hs.psi - factor * (0.5 * a[j] * hs.psi + hs.lam * hs.phi)
        r2 = mat @ hs.phi - factor * (hs.lam * hs.psi - 0.5 * a[j] * hs.phi)
        worst = max(worst, float(np.max(np.abs(r1))), float(np.max(np.abs(r2))))
    scale = max(1.0, float(np.max(np.abs(hs.psi))), float(np.max(np.abs(hs.phi))))
    return worst / scale


def scalar_identity_defect(hs: HarmfulStructure) -> float:
    """Defect of s = 4 n (n-1) lam^2 - tr(A^2) + (tr A)^2."""
    lc = LeviCivita(hs.alg)
    n = hs.n
    s = lc.scalar_curvature()
    val = 4 * n * (n - 1) * hs.lam**2 - np.trace(hs.A @ hs.A) + np.trace(hs.A) ** 2
    return float(abs(s - val))


# -- Killing spinors -----------------------------------------------------------


class KillingSpace(NamedTuple):
    w: complex
    basis: np.ndarray  # spinor-dim x space-dim


def solve_killing(alg: LieAlgebra, tol: float = 1e-9) -> list[KillingSpace]:
    """All Killing constants w with nabla_X psi = w X . psi and their spaces.

    Candidates are read off the spectrum of the first frame operator (every
    Killing spinor is one of its eigenvectors), snapped to the real or
    imaginary axis, deduplicated, and validated by a direct solve.
    """
    rep = build_clifford(alg.sig)
    lc = LeviCivita(alg)
    ls = l_operators(lc)
    n, d = alg.n, rep.dim_spinor
    nablas = [0.25 * rep.matrix_of(lc.spin_bivector(j)) for j in range(1, n + 1)]

    eigs = np.linalg.eigvals(rep.matrix_of(ls[0]))
    scale = max(1.0, float(np.max(np.abs(eigs))))
    candidates: list[complex] = []
    for w in eigs:
        if abs(w.imag) <= 1e-8 * scale:
            w = complex(w.real, 0.0)
        elif abs(w.real) <= 1e-8 * scale:
            w = complex(0.0, w.imag)
        else:
            continue
        if not any(abs(w - c) <= 1e-8 * scale for c in candidates):
            candidates.append(w)

    out = []
    for w in sorted(candidates, key=lambda z: (z.real, z.imag)):
        stacked = np.vstack([nablas[j] - w * rep.gammas[j] for j in range(n)])
        _, sv, vt = np.linalg.svd(stacked, full_matrices=False)
        k = int(np.sum(sv <= tol * max(1.0, sv[0])))
        if k == 0:
            continue
        null = vt[d - k:].conj().T
        defect = max(
            float(np.max(np.abs((nablas[j] - w * rep.gammas[j]) @ null)))
            for j in range(n)
        )
        if defect <= max(tol, 1e-8):
            out.append(KillingSpace(w, null))
    return out


def solve_generalized_killing(
    alg: LieAlgebra, A: np.ndarray, lam: complex, kind: str, tol: float = 1e-9
) -> list[tuple[Spinor, Spinor]]:
    """Basis of pairs (psi, phi) solving the coupled system for given (A, lam)."""
    if kind not in (KIND_REAL, KIND_IMAGINARY):
        raise ValueError("unknown system kind")
    rep = build_clifford(alg.sig)
    lc = LeviCivita(alg)
    n, d = alg.n, rep.dim_spinor
    A = np.asarray(A, dtype=float)
    rows = []
    blocks = _coupling_blocks(rep, A, lam, kind)
    for j in range(1, n + 1):
        nab = 0.25 * rep.matrix_of(lc.spin_bivector(j))
        P, Q, R, S = blocks[j - 1]
        rows.append(np.hstack([nab - P, -Q]))
        rows.append(np.hstack([-R, nab - S]))
    stacked = np.vstack(rows)
    _, sv, vt = np.linalg.svd(stacked, full_matrices=False)
    k = int(np.sum(sv <= tol * max(1.0, sv[0])))
    pairs = []
    for row in vt[2 * d - k:]:
        vec = row.conj()
        pairs.append((vec[:d].copy(), vec[d:].copy()))
    return pairs


# -- converters between Killing data and coupled structures ---------------------


def _sqrt_axis(val: complex) -> complex:
    """Square root of a real number delivered on the real or imaginary axis."""
    v = complex(val)
    if abs(v.imag) > 1e-12 * max(1.0, abs(v)):
        raise ValueError("expected a real quantity")
    if v.real >= 0:
        return complex(np.sqrt(v.real))
    return 1j * complex(np.sqrt(-v.real))


def killing_pair_to_harmful(
    alg: LieAlgebra, eta: Spinor, xi: Spinor, w: complex, a: float
) -> HarmfulStructure:
    """Combine Killing spinors of constants +w and -w into a real-kind structure.

    Sets psi = (a/2)(eta + xi) + w (eta - xi), phi = lam (eta + xi) with
    lam^2 = w^2 - a^2/4 and A = a id.  In even dimensions the sign of lam is
    chosen so that phi satisfies the volume-element constraint.
    """
    lam = _sqrt_axis(complex(w) ** 2 - a * a / 4)
    eta = np.asarray(eta, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    psi = (a / 2) * (eta + xi) + w * (eta - xi)
    phi = lam * (eta + xi)
    if alg.n % 2 == 0 and abs(lam) > 0:
        rep = build_clifford(alg.sig)
        target = _even_partner(rep, psi, KIND_REAL)
        if np.linalg.norm(phi - target) > np.linalg.norm(-phi - target):
            lam, phi = -lam, -phi
    return HarmfulStructure(alg, psi, phi, a * np.eye(alg.n), lam, KIND_REAL)


def harmful_to_killing_pair(hs: HarmfulStructure, tol: float = 1e-9):
    """Split a real-kind structure with scalar A into Killing spinors of
    constants +w and -w, with w = sqrt(a^2/4 + lam^2)."""
    a_diag = hs.a_diagonal(tol)
    if np.max(np.abs(a_diag - a_diag[0])) > tol:
        raise ValueError("splitting requires A to be a multiple of the identity")
    a = float(a_diag[0])
    w = _sqrt_axis(a * a / 4 + hs.lam**2)
    eta = hs.lam * hs.psi + (w - a / 2) * hs.phi
    xi = -hs.lam * hs.psi + (w + a / 2) * hs.phi
    return eta, xi, w


def killing_to_harmful(alg: LieAlgebra, psi: Spinor, w: complex, k: complex) -> HarmfulStructure:
    """Turn one Killing spinor into a real-kind structure with phi = k psi,
    lam = 2 w k / (1 + k^2) and A = (2 w (1 - k^2) / (1 + k^2)) id."""
    k = complex(k)
    if abs(1 + k * k) < 1e-12:
        raise ValueError("the parameter k = +-i is singular for this conversion")
    lam = 2 * w * k / (1 + k * k)
    a = 2 * w * (1 - k * k) / (1 + k * k)
    if abs(a.imag) > 1e-12:
        raise ValueError("parameters produce a non-real endomorphism")
    psi = np.asarray(psi, dtype=complex)
    return HarmfulStructure(alg, psi, k * psi, a.real * np.eye(alg.n), lam, KIND_REAL)


def lindep_ratio(hs: HarmfulStructure, tol: float = 1e-9) -> complex | None:
    """The constant k with phi = k psi, or None if the spinors are independent."""
    denom = np.vdot(hs.psi, hs.psi)
    if abs(denom) < 1e-300:
        return None
    k = np.vdot(hs.psi, hs.phi) / denom
    if np.linalg.norm(hs.phi - k * hs.psi) <= tol * max(1.0, float(np.linalg.norm(hs.phi))):
        return complex(k)
    return None


# -- metric flip and sign symmetries --------------------------------------------


def flip_metric(hs: HarmfulStructure) -> HarmfulStructure:
    """The same system on the sign-reversed metric.

    A real-kind structure maps to (psi, (-1)^q i phi, (-1)^q A, -i lam) of
    imaginary kind, with q the number of negative directions of the original
    metric; applying the map to an imaginary-kind structure inverts it.  The
    result carries the flipped Clifford matrices, under which the spinor
    derivative agrees numerically with the original one.
    """
    q = hs.alg.sig.q
    flipped_alg = LieAlgebra(hs.alg.sig.flipped(), hs.alg.c.copy())
    if hs.kind == KIND_REAL:
        sgn = (-1) ** q
        phi = sgn * 1j * hs.phi
        A = sgn * hs.A
        lam = -1j * hs.lam
        kind = KIND_IMAGINARY
    else:
        sgn = (-1) ** (hs.alg.n - q)
        phi = -sgn * 1j * hs.phi
        A = sgn * hs.A
        lam = 1j * hs.lam
        kind = KIND_REAL
    return HarmfulStructure(
        flipped_alg,
        hs.psi.copy(),
        phi,
        A,
        lam,
        kind,
        rep=flip_rep(hs.representation()),
    )


def sign_symmetry(hs: HarmfulStructure, name: str) -> HarmfulStructure:
    """Apply one of the discrete symmetries of the coupled systems.

    "even_flip" (even n):        (phi, psi, A, lam) -> (-psi, phi, -A, -lam)
    "odd_lambda" (odd n):        (phi, psi, A, lam) -> (-phi, psi, A, -lam)
    "odd_orientation" (odd n):   (phi, psi, A, lam) -> (psi, phi, -A, lam)
    """
    n = hs.n
    if name == "even_flip":
        if n % 2:
            raise ValueError("even_flip requires even dimension")
        return HarmfulStructure(
            hs.alg, hs.phi.copy(), -hs.psi.copy(), -hs.A, -hs.lam, hs.kind, rep=hs.rep
        )
    if name == "odd_lambda":
        if n % 2 == 0:
            raise ValueError("odd_lambda requires odd dimension")
        return HarmfulStructure(
            hs.alg, hs.psi.copy(), -hs.phi.copy(), hs.A, -hs.lam, hs.kind, rep=hs.rep
        )
    if name == "odd_orientation":
        if n % 2 == 0:
            raise ValueError("odd_orientation requires odd dimension")
        return HarmfulStructure(
            hs.alg, hs.phi.copy(), hs.psi.copy(), -hs.A, hs.lam, hs.kind, rep=hs.rep
        )
    raise ValueError(f"unknown symmetry {name!r}")


def phi_for_real_kind_even(rep: CliffordRep, psi: Spinor) -> Spinor:
    """The partner spinor forced in even dimensions for the real kind:
    phi = i^((2 - 3q - p)/2) omega . psi."""
    if rep.n % 2:
        raise ValueError("this relation requires even dimension")
    return _even_partner(rep, psi, KIND_REAL)


def generalized_killing_to_harmful(alg: LieAlgebra, psi: Spinor, A: np.ndarray) -> HarmfulStructure:
    """Promote an even-dimensional generalized Killing spinor (nabla_X psi =
    A(X).psi / 2) to a real-kind structure with lam = 0 and the forced phi."""
    if alg.n % 2:
        raise ValueError("this construction requires even dimension")
    rep = build_clifford(alg.sig)
    phi = _even_partner(rep, psi, KIND_REAL)
    return HarmfulStructure(alg, psi, phi, A, 0.0, KIND_REAL)


# -- dimension-4 structural identities ------------------------------------------


def _derivative_map(lc: LeviCivita, v: np.ndarray) -> np.ndarray:
    """Matrix whose column j holds the frame coordinates of nabla_{e_j} v."""
    n = lc.alg.n
    N = np.zeros((n, n))
    for j in range(1, n + 1):
        N[:, j - 1] = lc.derivative_matrix(j) @ v
    return N


def dim4_identity_report(hs: HarmfulStructure, require_xi: bool = True) -> dict[str, float]:
    """Residuals of the structural identities tying M, xi, A and lam in
    dimension 4.  Requires A diagonal; the xi-dependent identities need A
    away from multiples of the identity (pass require_xi=False to skip them).
    """
    if hs.n != 4:
        raise ValueError("these identities are specific to dimension 4")
    a = hs.a_diagonal()
    rep = hs.representation()
    eps = hs.alg.sig.signs
    q = hs.alg.sig.q
    lam = hs.lam
    tr_a = float(np.sum(a))
    y = tr_a / 4
    x = a - y
    lc = LeviCivita(hs.alg)
    ls = l_operators(lc)
    m_form, _, _ = decompose_l(ls)
    psi_p, psi_m = chirality_split(rep, hs.psi)
    G = np.diag(eps).astype(float)

    star_m = hodge_star(m_form, eps)
    out: dict[str, float] = {}
    out["star_m_norm"] = float(
        abs(pairing(star_m, star_m, eps) - (-1) ** q * (lam**2 + tr_a**2 / 64))
    )
    sm_mat = rep.matrix_of(star_m)
    c_minus = 1j**q * (1j * lam - tr_a / 8)
    c_plus = 1j**q * (1j * lam + tr_a / 8)
    out["star_m_chiral"] = float(
        max(
            np.max(np.abs(sm_mat @ psi_p - c_minus * psi_m)),
            np.max(np.abs(sm_mat @ psi_m - c_plus * psi_p)),
        )
    )
    vm = musical(star_m, eps).vector_coords().real
    N = _derivative_map(lc, vm)
    out["nabla_star_m_skew"] = float(np.max(np.abs(N.T @ G + G @ N)))

    if not require_xi:
        return out

    xi_form = xi_from_structure(ls, a)
    star_xi = hodge_star(xi_form, eps)
    xi_mat = rep.matrix_of(xi_form)
    out["xi_psi"] = float(np.max(np.abs(xi_mat @ hs.psi - hs.psi)))
    out["xi_phi"] = float(np.max(np.abs(xi_mat @ hs.phi + hs.phi)))
    sx_mat = rep.matrix_of(star_xi)
    cc = 1j ** ((2 - q) % 4)
    out["star_xi_chiral"] = float(
        max(
            np.max(np.abs(cc * sx_mat @ psi_p - psi_m)),
            np.max(np.abs(-cc * sx_mat @ psi_m - psi_p)),
        )
    )
    out["star_xi_norm"] = float(abs(pairing(star_xi, star_xi, eps) - (-1) ** q))
    out["star_xi_star_m"] = float(abs(pairing(star_xi, star_m, eps) - (-1) ** q * tr_a / 8))
    vxi = musical(star_xi, eps).vector_coords().real
    N = _derivative_map(lc, vxi)
    out["nabla_star_xi_skew"] = float(np.max(np.abs(N.T @ G + G @ N)))

    worst = 0.0
    for j in range(1, 5):
        for k in range(j + 1, 5):
            form = wedge(
                wedge(basis_vector(4, j), basis_vector(4, k)), wedge(star_m, star_xi)
            )
            worst = max(worst, float(abs(x[j - 1] - x[k - 1]) * form.max_abs()))
    out["wedge_compat"] = worst

    if abs(lam) > 1e-12 and abs((1j**q * lam).imag) < 1e-12:
        a0 = hs.A - y * np.eye(4)
        out["traceless_a_star_xi"] = float(np.max(np.abs(a0 @ vxi + 2 * vm)))
        worst = 0.0
        for j in range(1, 5):
            dvm = lc.derivative_matrix(j) @ vm
            worst = max(worst, abs(float(dvm @ G @ vxi)))
        out["nabla_star_m_perp_star_xi"] = worst

    if abs(lam) < 1e-12:
        out["lam0_star_m_prop_star_xi"] = (star_m - (tr_a / 8) * star_xi).max_abs()

    return out
