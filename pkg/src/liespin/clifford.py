"""Complex spinor representations of Clifford algebras Cl(p,q), n <= 6.

The representation is built from an explicit tensor-product recipe over the
two-dimensional blocks

    E = I,  T = diag(-1, 1),  U = [[0, i], [i, 0]],  V = [[0, -1], [1, 0]],

with gamma(e_{2k-1}) = tau_{2k-1} E^(m-k) x U x T^(k-1) and gamma(e_{2k}) the
same with V in place of U; for odd n = 2m+1 the last generator is
gamma(e_n) = i^((n^2+1)/2) tau_n (-T)^m.  Here tau_j = i exactly when
eps_j = -1, so that the generators satisfy

    G_j G_k + G_k G_j = -2 eps_j delta_jk,

i.e. vectors act with v.v = -g(v,v).  Spinor components are indexed so that
u_h corresponds to u((-1)^{a_{m-1}}, ..., (-1)^{a_0}) for h = sum a_k 2^k,
with the highest bit owning the first tensor factor.

The volume element e_1...e_n acts as the scalar i^(q + n(n+1)/2) for odd n;
for even n it acts as that scalar on the positive chirality subspace
(components of popcount = n/2 mod 2) and minus it on the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from .multivector import Multivector, Signs, _check_signs, basis_vector, blade, clifford, zero

Spinor = np.ndarray

_E = np.eye(2, dtype=complex)
_T = np.diag([-1.0 + 0j, 1.0 + 0j])
_U = np.array([[0, 1j], [1j, 0]])
_V = np.array([[0, -1.0], [1.0, 0]], dtype=complex)


@dataclass(frozen=True)
class Signature:
    """A diagonal metric, given by its tuple of signs g(e_j, e_j) = signs[j-1]."""

    signs: Signs

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", _check_signs(self.signs))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def p(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def q(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def flipped(self) -> "Signature":
        return Signature(tuple(-s for s in self.signs))


def _kron_chain(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


@dataclass
class CliffordRep:
    """An explicit complex spinor representation of Cl(p,q)."""

    sig: Signature
    gammas: list[np.ndarray]
    blade_mats: np.ndarray  # shape (2^n, d, d): matrix of each basis blade

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def dim_spinor(self) -> int:
        return self.gammas[0].shape[0]

    @property
    def volume_matrix(self) -> np.ndarray:
        return self.blade_mats[(1 << self.n) - 1]

    @property
    def volume_scalar(self) -> complex:
        """i^(q + n(n+1)/2): the volume eigenvalue (odd n) or chirality constant."""
        n, q = self.n, self.sig.q
        return 1j ** ((q + n * (n + 1) // 2) % 4)

    def matrix_of(self, x: Multivector) -> np.ndarray:
        if x.n != self.n:
            raise ValueError("multivector dimension does not match representation")
        return np.tensordot(x.coeffs, self.blade_mats, axes=(0, 0))

    def apply(self, x: Multivector, s: Spinor) -> Spinor:
        return self.matrix_of(x) @ np.asarray(s, dtype=complex)

    def chirality_projectors(self) -> tuple[np.ndarray, np.ndarray]:
        if self.n % 2:
            raise ValueError("chirality splitting requires even dimension")
        w = self.volume_matrix / self.volume_scalar
        d = self.dim_spinor
        return (np.eye(d) + w) / 2, (np.eye(d) - w) / 2


def u_spinor(rep: CliffordRep, h: int) -> Spinor:
    s = np.zeros(rep.dim_spinor, dtype=complex)
    s[h] = 1.0
    return s


@lru_cache(maxsize=None)
def _build_cached(signs: Signs) -> CliffordRep:
    sig = Signature(signs)
    n = sig.n
    m = n // 2
    taus = [1j if s < 0 else 1.0 for s in signs]
    gammas: list[np.ndarray] = []
    for k in range(1, m + 1):
        pre = [_E] * (m - k)
        post = [_T] * (k - 1)
        gammas.append(taus[2 * k - 2] * _kron_chain(pre + [_U] + post))
        gammas.append(taus[2 * k - 1] * _kron_chain(pre + [_V] + post))
    if n % 2:
        phase = 1j ** (((n * n + 1) // 2) % 4)
        gammas.append(phase * taus[n - 1] * _kron_chain([-_T] * m))
    d = 1 << m
    blade_mats = np.zeros((1 << n, d, d), dtype=complex)
    blade_mats[0] = np.eye(d)
    for a in range(1, 1 << n):
        low = (a & -a).bit_length() - 1
        blade_mats[a] = gammas[low] @ blade_mats[a & (a - 1)]
    return CliffordRep(sig, gammas, blade_mats)


def build_clifford(sig: Signature | Signs) -> CliffordRep:
    """Spinor representation for a diagonal metric (cached per signature)."""
    signs = sig.signs if isinstance(sig, Signature) else _check_signs(sig)
    return _build_cached(signs)


def flip_rep(rep: CliffordRep) -> CliffordRep:
    """Representation of Cl(q,p) on the same spinor space, G'_j = (-1)^q i G_j."""
    factor = (-1) ** rep.sig.q * 1j
    sig = rep.sig.flipped()
    gammas = [factor * g for g in rep.gammas]
    d = rep.dim_spinor
    blade_mats = np.zeros_like(rep.blade_mats)
    blade_mats[0] = np.eye(d)
    for a in range(1, 1 << rep.n):
        low = (a & -a).bit_length() - 1
        blade_mats[a] = gammas[low] @ blade_mats[a & (a - 1)]
    return CliffordRep(sig, gammas, blade_mats)


def chirality_split(rep: CliffordRep, s: Spinor) -> tuple[Spinor, Spinor]:
    """Split a spinor into its positive and negative chirality parts (even n)."""
    pp, pm = rep.chirality_projectors()
    s = np.asarray(s, dtype=complex)
    return pp @ s, pm @ s


# -- spin group elements -----------------------------------------------------


@dataclass
class SpinElement:
    """A spin group element: its action on spinors and on vectors.

    The two actions are intertwined by the defining representation:
    gamma(R v) = S gamma(v) S^{-1}.
    """

    sig: Signature
    spinor_matrix: np.ndarray
    vector_action: np.ndarray

    def compose(self, other: "SpinElement") -> "SpinElement":
        """self after other (matrix product order)."""
        return SpinElement(
            self.sig,
            self.spinor_matrix @ other.spinor_matrix,
            self.vector_action @ other.vector_action,
        )

    def act_on_spinor(self, s: Spinor) -> Spinor:
        return self.spinor_matrix @ np.asarray(s, dtype=complex)

    def act_on_vector(self, v: np.ndarray) -> np.ndarray:
        return self.vector_action @ np.asarray(v, dtype=complex)


def identity_element(rep: CliffordRep) -> SpinElement:
    return SpinElement(rep.sig, np.eye(rep.dim_spinor, dtype=complex), np.eye(rep.n))


def ad_matrix(b: Multivector, eps: Signs) -> np.ndarray:
    """Matrix of v -> b.v - v.b on vectors, for a grade-2 multivector b."""
    n = b.n
    out = np.zeros((n, n))
    for j in range(1, n + 1):
        ej = basis_vector(n, j)
        comm = clifford(b, ej, eps) - clifford(ej, b, eps)
        col = comm.grade(1).vector_coords()
        if np.max(np.abs(col.imag)) > 1e-12:
            raise ValueError("bivector adjoint action produced non-real vector coefficients")
        out[:, j - 1] = col.real
    return out


def spin_exp(rep: CliffordRep, b: Multivector, t: float = 1.0) -> SpinElement:
    """One-parameter spin subgroup exp(t b) for a grade-2 generator b."""
    if b.grades(tol=1e-14) not in ([], [2]):
        raise ValueError("spin_exp requires a grade-2 generator")
    S = expm(t * rep.matrix_of(b))
    R = expm(t * ad_matrix(b, rep.sig.signs))
    return SpinElement(rep.sig, S, R)


def spin_element_from_matrix(rep: CliffordRep, S: np.ndarray, tol: float = 1e-9) -> SpinElement:
    """Recover the vector action of a spinor-space matrix lying over the spin group.

    Solves gamma(R e_j) = S gamma(e_j) S^{-1} for R by least squares and
    validates the residual, realness, orientation and metric preservation.
    """
    S = np.asarray(S, dtype=complex)
    d = rep.dim_spinor
    Sinv = np.linalg.inv(S)
    basis = np.stack([g.ravel() for g in rep.gammas], axis=1)
    n = rep.n
    R = np.zeros((n, n))
    for j in range(n):
        target = (S @ rep.gammas[j] @ Sinv).ravel()
        col, *_ = np.linalg.lstsq(basis, target, rcond=None)
        resid = np.max(np.abs(basis @ col - target))
        if resid > tol or np.max(np.abs(col.imag)) > tol:
            raise ValueError("matrix does not normalize the gamma generators: not a spin element")
        R[:, j] = col.real
    G = np.diag(rep.sig.signs).astype(float)
    if np.max(np.abs(R.T @ G @ R - G)) > max(tol, 1e-8) or np.linalg.det(R) < 0:
        raise ValueError("vector action is not special orthogonal for the metric")
    return SpinElement(rep.sig, S, R)


def generator_pair_element(rep: CliffordRep, i: int, j: int) -> SpinElement:
    """The spin element e_i . e_j (a product of two unit generators), 1-based."""
    S = rep.gammas[i - 1] @ rep.gammas[j - 1]
    return spin_element_from_matrix(rep, S)


# -- dimension-3 spinor normal form ------------------------------------------


class SpinorNormalForm(NamedTuple):
    element: SpinElement
    tag: str
    scale: complex


@lru_cache(maxsize=None)
def _real_structure(signs: Signs) -> np.ndarray:
    """The antilinear structure J(s) = K conj(s) commuting with the spin action.

    Exists for the indefinite three-dimensional signatures; K is normalized so
    that K conj(K) = I.
    """
    rep = _build_cached(signs)
    G = rep.gammas
    bivs = [G[0] @ G[1], G[0] @ G[2], G[1] @ G[2]]
    # real-linear equations B K - K conj(B) = 0 in the 8 real unknowns of K
    rows = []
    for B in bivs:
        for r in range(2):
            for c in range(2):
                row_re = np.zeros(8)
                row_im = np.zeros(8)
                for a in range(2):
                    for b in range(2):
                        k = 2 * a + b
                        coef = (B[r, a] if b == c else 0) - (np.conj(B[b, c]) if r == a else 0)
                        row_re[k] += coef.real
                        row_re[4 + k] -= coef.imag
                        row_im[k] += coef.imag
                        row_im[4 + k] += coef.real
                rows.append(row_re)
                rows.append(row_im)
    A = np.array(rows)
    _, sv, vt = np.linalg.svd(A)
    null = vt[-1]
    if sv[-1] > 1e-10 * sv[0]:
        raise ValueError("no invariant real structure for this signature")
    K = (null[:4] + 1j * null[4:]).reshape(2, 2)
    KK = K @ np.conj(K)
    c = KK[0, 0].real
    if abs(KK[0, 1]) > 1e-10 or abs(KK[1, 0]) > 1e-10 or c <= 0:
        raise ValueError("invariant structure is not a real structure")
    return K / np.sqrt(c)


def _fix_basis(K: np.ndarray) -> np.ndarray:
    """Two complex vectors spanning Fix(J) over the reals, as columns."""
    T = np.block([[K.real, K.imag], [K.imag, -K.real]])
    _, sv, vt = np.linalg.svd(T - np.eye(4))
    cols = vt[sv < 1e-8].T
    if cols.shape[1] != 2:
        raise ValueError("fixed space of the real structure is not two-dimensional")
    return cols[:2] + 1j * cols[2:]


def _j_pair(K: np.ndarray, basis: np.ndarray, s: Spinor) -> np.ndarray:
    """Coordinates of (Re_J s, Im_J s) in the Fix(J) basis: a real 2x2 matrix."""
    js = K @ np.conj(s)
    u = (s + js) / 2
    v = (s - js) / 2j
    stacked = np.concatenate([basis.real, basis.imag])  # 4 x 2 real
    rhs = np.stack(
        [np.concatenate([u.real, u.imag]), np.concatenate([v.real, v.imag])], axis=1
    )
    coords, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    return coords


def _sl2_generators(rep: CliffordRep, K: np.ndarray, basis: np.ndarray):
    """Spin bivector basis and its real 2x2 action on the Fix(J) plane."""
    G = rep.gammas
    pairs = [(0, 1), (0, 2), (1, 2)]
    bivs, acts = [], []
    stacked = np.concatenate([basis.real, basis.imag])
    for i, j in pairs:
        B = G[i] @ G[j]
        img = B @ basis
        act, *_ = np.linalg.lstsq(stacked, np.concatenate([img.real, img.imag]), rcond=None)
        bivs.append((i + 1, j + 1))
        acts.append(act)
    return bivs, acts


def _lift_plane_matrix(rep: CliffordRep, acts, bivs, M: np.ndarray) -> SpinElement:
    """Lift a det-1 real matrix on the Fix(J) plane to a spin element.

    The matrix is factored as rotation * upper-triangular (both in the image
    of exp), each factor is matched to a bivector by solving a 3x3 linear
    system on the generator actions, and the exponentials are composed.
    """
    n = rep.n
    col = M[:, 0]
    r0 = np.hypot(col[0], col[1])
    Q = np.array([[col[0] / r0, -col[1] / r0], [col[1] / r0, col[0] / r0]])
    Rm = Q.T @ M  # upper triangular, positive diagonal, det 1
    theta = np.arctan2(col[1], col[0])
    Xq = theta * np.array([[0.0, -1.0], [1.0, 0.0]])
    a, b = Rm[0, 0], Rm[0, 1]
    t = np.log(a)
    c = b if abs(t) < 1e-14 else 2 * t * b / (a - 1 / a)
    Xr = np.array([[t, c], [0.0, -t]])
    A = np.stack([act.ravel() for act in acts], axis=1)
    out = identity_element(rep)
    for X in (Xq, Xr):
        coeff, *_ = np.linalg.lstsq(A, X.ravel(), rcond=None)
        gen = zero(n)
        for k in range(3):
            gen = gen + blade(n, list(bivs[k]), coeff[k])
        out = out.compose(spin_exp(rep, gen, 1.0))
    return out


def normalize_spinor_dim3(rep: CliffordRep, s: Spinor, tol: float = 1e-9) -> SpinorNormalForm:
    """Normal form of a nonzero spinor in dimension 3 under Spin x C^*.

    Definite metrics have a single orbit with representative u_0.  Indefinite
    metrics have two: the generic class (tag "u0") and the closed class of
    spinors lying on the complex span of the invariant real plane (tag
    "u0_plus_u1", representative u_0 + u_1).  The returned element g and
    scale c satisfy c * (g . s) = normal form.
    """
    if rep.n != 3:
        raise ValueError("spinor normal forms are implemented for dimension 3")
    s = np.asarray(s, dtype=complex)
    norm = np.linalg.norm(s)
    if norm < 1e-300:
        raise ValueError("cannot normalize the zero spinor")
    if rep.sig.q in (0, 3):
        # Spin(3) = SU(2) acts transitively on the projective line
        al, be = s
        S = np.array([[np.conj(al), np.conj(be)], [-be, al]]) / norm
        g = spin_element_from_matrix(rep, S)
        return SpinorNormalForm(g, "u0", 1.0 / norm)

    signs = rep.sig.signs
    K = _real_structure(signs)
    basis = _fix_basis(K)
    P = _j_pair(K, basis, s)
    det_rel = np.linalg.det(P) / norm**2
    bivs, acts = _sl2_generators(rep, K, basis)

    if abs(det_rel) <= tol:
        # closed orbit: rotate the spinor onto the real plane, then move the
        # real point onto the representative's ray
        u01 = np.array([1.0, 1.0], dtype=complex)
        js = K @ np.conj(s)
        u = (s + js) / 2
        v = (s - js) / 2j
        w = u if np.linalg.norm(u) >= np.linalg.norm(v) else v
        wn = w / np.linalg.norm(w)
        a = np.vdot(wn, u).real
        b = np.vdot(wn, v).real
        c1 = (a - 1j * b) / (a * a + b * b)
        nu = (K @ np.conj(u01))[0] / u01[0]
        mu = np.sqrt(nu)
        target = mu * u01
        cw = _coords_in_basis(basis, c1 * s)
        ct = _coords_in_basis(basis, target)
        M = _plane_map(cw, ct)
        g = _lift_plane_matrix(rep, acts, bivs, M)
        s2 = g.act_on_spinor(s)
        idx = int(np.argmax(np.abs(u01)))
        scale = u01[idx] / s2[idx]
        return SpinorNormalForm(g, "u0_plus_u1", scale)

    # generic orbit: map the independent J-pair onto the pair of u_0
    u0 = np.array([1.0, 0.0], dtype=complex)
    P_target = _j_pair(K, basis, u0)
    g0 = identity_element(rep)
    if np.sign(np.linalg.det(P)) != np.sign(np.linalg.det(P_target)):
        g0 = _disconnected_element(rep, acts, bivs)
        s0 = g0.act_on_spinor(s)
        P = _j_pair(K, basis, s0)
    r = np.sqrt(abs(np.linalg.det(P_target) / np.linalg.det(P)))
    M = P_target @ np.linalg.inv(P) / r
    g = _lift_plane_matrix(rep, acts, bivs, M).compose(g0)
    s2 = g.act_on_spinor(s)
    return SpinorNormalForm(g, "u0", 1.0 / s2[0])


def _coords_in_basis(basis: np.ndarray, s: Spinor) -> np.ndarray:
    stacked = np.concatenate([basis.real, basis.imag])
    rhs = np.concatenate([np.asarray(s).real, np.asarray(s).imag])
    coords, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    return coords


def _plane_map(w: np.ndarray, t: np.ndarray) -> np.ndarray:
    """A det-1 real 2x2 matrix sending the nonzero vector w to a multiple of t.

    The multiple is arranged to be exactly 1 by scaling along the image ray,
    which stays inside SL(2,R) thanks to the complementary direction.
    """
    B = np.stack([w, np.array([-w[1], w[0]])], axis=1)
    detB = np.linalg.det(B)
    C = np.stack([t, np.array([-t[1], t[0]]) * (detB / (t @ t))], axis=1)
    return C @ np.linalg.inv(B)


def _disconnected_element(rep: CliffordRep, acts, bivs) -> SpinElement:
    for (i, j), act in zip(bivs, acts):
        el = generator_pair_element(rep, i, j)
        # compute the plane action determinant of the group element itself
        K = _real_structure(rep.sig.signs)
        basis = _fix_basis(K)
        stacked = np.concatenate([basis.real, basis.imag])
        img = el.spinor_matrix @ basis
        pact, *_ = np.linalg.lstsq(stacked, np.concatenate([img.real, img.imag]), rcond=None)
        if np.linalg.det(pact) < 0:
            return el
    raise ValueError("no orientation-reversing spin element found")


# -- dimension-(3,1) vector/spinor pair normal form ---------------------------


class PairNormalForm(NamedTuple):
    element: SpinElement
    vtag: str
    m: float
    ambiguous: bool


_LORENTZ = (1, 1, 1, -1)


def _stab_exp(rep: CliffordRep, coeffs: dict[tuple[int, int], float], t: float = 1.0) -> SpinElement:
    b = zero(4)
    for pair, c in coeffs.items():
        b = b + blade(4, list(pair), c)
    return spin_exp(rep, b, t)


def _volume_element(rep: CliffordRep) -> SpinElement:
    S = rep.volume_matrix
    return spin_element_from_matrix(rep, S)


def normalize_pair_31(rep: CliffordRep, v, s_plus: Spinor, tol: float = 1e-9) -> PairNormalForm:
    """Normal form of (vector, positive chiral spinor) pairs in signature (3,1).

    The chiral spinor is moved onto the ray of u_0 and the vector is then
    normalized under the stabilizer of that ray.  Possible vector tags:
    "zero", "m_e1", "e3_minus_e4", "e3_plus_e4", "m_e3", "m_e4"; the scale m
    is positive for the m_* tags and 0 otherwise.  Inputs whose decision
    quantities fall within a decade of the tolerance are flagged ambiguous.
    """
    if rep.sig.signs != _LORENTZ:
        raise ValueError("pair normal forms require the standard (3,1) signature")
    v = np.asarray(v, dtype=float)
    s_plus = np.asarray(s_plus, dtype=complex)
    pp, _ = rep.chirality_projectors()
    if np.linalg.norm(pp @ s_plus - s_plus) > 1e-9 * max(1.0, np.linalg.norm(s_plus)):
        raise ValueError("spinor must have positive chirality")
    if np.linalg.norm(s_plus) < 1e-300:
        raise ValueError("cannot normalize the zero spinor")

    # step 1: SU(2) on the chiral plane span{u_0, u_3} moves [s_plus] to [u_0]
    a, b = s_plus[0], s_plus[3]
    nrm = np.hypot(abs(a), abs(b))
    W = np.array([[np.conj(a), np.conj(b)], [-b, a]]) / nrm
    X = _su2_log(W)
    g = _lift_chiral_action(rep, X)
    total = g
    v = total.vector_action @ v

    ambiguous = False

    def near(x: float, scale: float) -> bool:
        nonlocal ambiguous
        r = abs(x) / max(scale, 1e-300)
        if tol / 10 < r < tol * 10:
            ambiguous = True
        return r <= tol

    scale = max(float(np.max(np.abs(v))), 1.0)
    x1, x2 = v[0], v[1]
    x3, x4 = (v[2] - v[3]) / 2, v[2] + v[3]

    def push(el: SpinElement):
        nonlocal total, v, x1, x2, x3, x4
        total = el.compose(total)
        v = el.vector_action @ v
        x1, x2 = v[0], v[1]
        x3, x4 = (v[2] - v[3]) / 2, v[2] + v[3]

    if not near(x4, scale):
        push(_stab_exp(rep, {(1, 3): 1.0, (1, 4): -1.0}, x1 / (2 * x4)))
        push(_stab_exp(rep, {(2, 3): 1.0, (2, 4): -1.0}, x2 / (2 * x4)))
        if near(x3, scale):
            # lightlike ray e_3 + e_4
            if x4 < 0:
                push(_volume_element(rep))
            push(_stab_exp(rep, {(3, 4): 1.0}, 0.5 * np.log(2.0 / x4)))
            return PairNormalForm(total, "e3_plus_e4", 0.0, ambiguous)
        if x3 * x4 > 0:
            if x3 < 0:
                push(_volume_element(rep))
            m = float(np.sqrt(2 * x3 * x4))
            push(_stab_exp(rep, {(3, 4): 1.0}, 0.5 * np.log(2 * x3 / m)))
            return PairNormalForm(total, "m_e3", m, ambiguous)
        if x3 > 0:
            push(_volume_element(rep))
        m = float(np.sqrt(-2 * x3 * x4))
        push(_stab_exp(rep, {(3, 4): 1.0}, 0.5 * np.log(-2 * x3 / m)))
        return PairNormalForm(total, "m_e4", m, ambiguous)

    if not (near(x1, scale) and near(x2, scale)):
        if abs(x1) >= abs(x2):
            push(_stab_exp(rep, {(1, 3): 1.0, (1, 4): -1.0}, -x3 / (2 * x1)))
        else:
            push(_stab_exp(rep, {(2, 3): 1.0, (2, 4): -1.0}, -x3 / (2 * x2)))
        m = float(np.hypot(x1, x2))
        push(_stab_exp(rep, {(1, 2): 1.0}, -np.arctan2(x2, x1) / 2))
        return PairNormalForm(total, "m_e1", m, ambiguous)

    if not near(x3, scale):
        if x3 < 0:
            push(_volume_element(rep))
        push(_stab_exp(rep, {(3, 4): 1.0}, 0.5 * np.log(x3)))
        return PairNormalForm(total, "e3_minus_e4", 0.0, ambiguous)

    return PairNormalForm(total, "zero", 0.0, ambiguous)


def _su2_log(W: np.ndarray) -> np.ndarray:
    tr = W[0, 0] + W[1, 1]
    ct = np.clip(tr.real / 2, -1.0, 1.0)
    theta = np.arccos(ct)
    if theta < 1e-12:
        return np.zeros((2, 2), dtype=complex)
    if np.pi - theta < 1e-12:
        return np.pi * np.diag([1j, -1j])
    return (theta / np.sin(theta)) * (W - ct * np.eye(2))


def _lift_chiral_action(rep: CliffordRep, X: np.ndarray) -> SpinElement:
    """Spin element whose positive-chirality action is exp(X), X in su(2)."""
    idx = [0, 3]  # components of the positive chirality plane in (3,1)
    pairs = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
    cols = []
    for i, j in pairs:
        B = rep.blade_mats[(1 << (i - 1)) | (1 << (j - 1))]
        sub = B[np.ix_(idx, idx)]
        cols.append(np.concatenate([sub.ravel().real, sub.ravel().imag]))
    A = np.stack(cols, axis=1)
    rhs = np.concatenate([X.ravel().real, X.ravel().imag])
    coeff, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    gen = zero(4)
    for (i, j), c in zip(pairs, coeff):
        gen = gen + blade(4, [i, j], float(c))
    el = spin_exp(rep, gen, 1.0)
    return el
