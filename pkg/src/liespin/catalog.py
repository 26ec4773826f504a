"""Closed-form generators for the classified families of spinor structures.

Every family is a parametric recipe: given parameters inside the documented
domain, the builder emits the metric Lie algebra (through the differentials
of its dual frame), the spinor data living on it, and the isomorphism class
the algebra must land in.  The class is computed from the parameters alone,
by the sign rules the families obey in closed form, never by classifying the
algebra that was just built; tests compare this prediction against the
fingerprint of the output, so the two routes stay independent.

One family is a deliberate control: its cocycle data violates the Jacobi
identity for every parameter choice, carries no spinor structure, and is
expected to *fail* integrability checks by a wide margin.

sweep() draws parameters uniformly from a safe sub-domain, keeping a fixed
margin away from every excluded locus, and aggregates verification residuals
and class counts into a report that is deterministic for a given seed.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .clifford import build_clifford, u_spinor
from .harmful import (
    KIND_REAL,
    HarmfulStructure,
    generalized_killing_to_harmful,
    killing_to_harmful,
    phi_for_real_kind_even,
    verify_harmful,
    verify_via_L,
)
from .isoclass import (
    D4,
    D4_PRIME0,
    IsoClass,
    N4,
    R3,
    R4,
    RH3,
    RR3_MINUS1_R,
    RR3_PRIME0_R,
    SL2R,
    SL2R_R,
    SU2,
    SU2_R,
    fingerprint,
)
from .liealg import LieAlgebra, algebra_from_cocycles, jacobi_residual
from .multivector import Multivector, blade, hodge_star, zero
from .reconstruct import ReconstructionData

__all__ = [
    "DIM3_ABELIAN",
    "DIM3_SU2_NEG_B",
    "DIM3_SU2_POS_B",
    "DIM3_SL2_POS_B",
    "DIM3_SL2_NEG_B",
    "L31_PARALLEL_I",
    "L31_PARALLEL_II",
    "L31_SCALAR_A",
    "R40_LAMBDA0",
    "R40_LAMBDA_NONZERO",
    "L31_LAMBDA0",
    "L31_M_LIGHTLIKE",
    "L31_M_NONISO",
    "NEGATIVE_JACOBI_ME1",
    "FAMILY_IDS",
    "FAMILIES",
    "SWEEP_MARGIN",
    "FamilyInfo",
    "FamilyInstance",
    "SweepReport",
    "SweepSample",
    "build_family",
    "list_families",
    "reconstruction_data",
    "sweep",
]

DIM3_ABELIAN = "DIM3_ABELIAN"
DIM3_SU2_NEG_B = "DIM3_SU2_NEG_B"
DIM3_SU2_POS_B = "DIM3_SU2_POS_B"
DIM3_SL2_POS_B = "DIM3_SL2_POS_B"
DIM3_SL2_NEG_B = "DIM3_SL2_NEG_B"
L31_PARALLEL_I = "L31_PARALLEL_I"
L31_PARALLEL_II = "L31_PARALLEL_II"
L31_SCALAR_A = "L31_SCALAR_A"
R40_LAMBDA0 = "R40_LAMBDA0"
R40_LAMBDA_NONZERO = "R40_LAMBDA_NONZERO"
L31_LAMBDA0 = "L31_LAMBDA0"
L31_M_LIGHTLIKE = "L31_M_LIGHTLIKE"
L31_M_NONISO = "L31_M_NONISO"
NEGATIVE_JACOBI_ME1 = "NEGATIVE_JACOBI_ME1"

FAMILY_IDS = (
    DIM3_ABELIAN,
    DIM3_SU2_NEG_B,
    DIM3_SU2_POS_B,
    DIM3_SL2_POS_B,
    DIM3_SL2_NEG_B,
    L31_PARALLEL_I,
    L31_PARALLEL_II,
    L31_SCALAR_A,
    R40_LAMBDA0,
    R40_LAMBDA_NONZERO,
    L31_LAMBDA0,
    L31_M_LIGHTLIKE,
    L31_M_NONISO,
    NEGATIVE_JACOBI_ME1,
)

_RIEM4 = (1, 1, 1, 1)
_LOR4 = (1, 1, 1, -1)

# margin kept between sweep samples and every excluded parameter locus
SWEEP_MARGIN = 0.05

_EPS = 1e-12


@dataclass(frozen=True)
class FamilyInfo:
    """Static description of one family: id, metric, parameters, domain."""

    family: str
    signature: tuple[int, ...]
    params: tuple[str, ...]
    domain: str
    summary: str


@dataclass(frozen=True)
class FamilyInstance:
    """One built member: the algebra, its spinor structure (if any), and the
    isomorphism class predicted from the parameters alone."""

    family: str
    params: dict
    algebra: LieAlgebra
    structure: HarmfulStructure | None
    expected_class: IsoClass | None


def _two_forms(n: int, rows) -> list[Multivector]:
    forms = []
    for row in rows:
        form = zero(n)
        for j, k, coeff in row:
            if coeff:
                form = form + blade(n, [j, k], float(coeff))
        forms.append(form)
    return forms


def _make(signs, rows) -> LieAlgebra:
    return algebra_from_cocycles(signs, _two_forms(len(signs), rows))


# -- class prediction from parameters -----------------------------------------


def _band(*vals: float) -> float:
    return 1e-10 * max(1.0, *(abs(v) for v in vals))


def _diag3_with_line(a: float, b: float, c: float) -> IsoClass:
    """Class of the reducible algebra whose 3-dim part has diagonal bracket
    coefficients (a, b, c): product of a line with the unimodular 3-dim
    algebra they cut out."""
    band = _band(a, b, c)
    nz = [v for v in (a, b, c) if abs(v) > band]
    if len(nz) == 3:
        same = all(v > 0 for v in nz) or all(v < 0 for v in nz)
        return SU2_R if same else SL2R_R
    if len(nz) == 2:
        return RR3_PRIME0_R if nz[0] * nz[1] > 0 else RR3_MINUS1_R
    if len(nz) == 1:
        return RH3
    return R4


def _e34_class(a: float, b: float, c: float, d: float) -> IsoClass:
    """Class rule for the two-generator shape de1 = a e34, de2 = b e34,
    de3 = d e14 + c e24, de4 = -d e13 - c e23."""
    band = _band(a, b, c, d)
    tr = a * d + b * c
    if abs(tr) <= band:
        return D4_PRIME0 if abs(a * c - b * d) > band else RR3_PRIME0_R
    return SL2R_R if tr > 0 else SU2_R


def _parallel_i_class(x: float, y: float, z: float, s: float) -> IsoClass:
    band = _band(x, y, z, s)
    if abs(x) > band or abs(y) > band:
        return RR3_MINUS1_R
    if abs(z) > band or abs(s) > band:
        return RH3
    return R4


def _parallel_ii_class(x: float) -> IsoClass:
    disc = x * x - 4.0
    if abs(disc) <= _band(x * x, 4.0):
        return N4
    return D4 if disc > 0 else D4_PRIME0


# -- dimension 3 ---------------------------------------------------------------

# metric signs, Killing constant on the positively oriented frame, class
_DIM3_DATA = {
    DIM3_SU2_NEG_B: ((1, 1, 1), -0.25 + 0j, SU2),
    DIM3_SU2_POS_B: ((-1, -1, -1), 0.25j, SU2),
    DIM3_SL2_POS_B: ((1, 1, -1), -0.25j, SL2R),
    DIM3_SL2_NEG_B: ((-1, -1, 1), 0.25 + 0j, SL2R),
}


def _build_dim3_abelian(branch=1, z=0j) -> FamilyInstance:
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    z = complex(z)
    alg = _make((1, 1, 1), [[], [], []])
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) + z * u_spinor(rep, 1)
    phi = branch * 1j * psi
    hs = HarmfulStructure(alg, psi, phi, np.zeros((3, 3)), 0.0, KIND_REAL)
    return FamilyInstance(DIM3_ABELIAN, {"branch": branch, "z": z}, alg, hs, R3)


def _build_dim3(family: str, k, z) -> FamilyInstance:
    signs, w, cls = _DIM3_DATA[family]
    k = complex(k)
    z = complex(z)
    if abs(k) < _EPS:
        raise ValueError("k = 0 collapses the partner spinor to zero")
    if w.imag == 0:
        if min(abs(k.real), abs(k.imag)) > _EPS:
            raise ValueError("k must be real or purely imaginary for this family")
    elif abs(abs(k) - 1.0) > _EPS:
        raise ValueError("k must lie on the unit circle for this family")
    sgn = signs[0] * signs[2]
    alg = _make(signs, [[(2, 3, sgn)], [(1, 3, -sgn)], [(1, 2, 1)]])
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) + z * u_spinor(rep, 1)
    hs = killing_to_harmful(alg, psi, w, k)
    return FamilyInstance(family, {"k": k, "z": z}, alg, hs, cls)


def _build_su2_neg(k=0.5, z=0j):
    return _build_dim3(DIM3_SU2_NEG_B, k, z)


def _build_su2_pos(k=1.0, z=0j):
    return _build_dim3(DIM3_SU2_POS_B, k, z)


def _build_sl2_pos(k=1.0, z=0j):
    return _build_dim3(DIM3_SL2_POS_B, k, z)


def _build_sl2_neg(k=0.5, z=0j):
    return _build_dim3(DIM3_SL2_NEG_B, k, z)


# -- Lorentzian parallel families ----------------------------------------------


def _parallel_i_rows(x: float, y: float, z: float, s: float):
    return [
        [(1, 3, x), (1, 4, x), (2, 3, y), (2, 4, y)],
        [(1, 3, y), (1, 4, y), (2, 3, -x), (2, 4, -x)],
        [(1, 3, -z), (1, 4, -z), (2, 3, -s), (2, 4, -s)],
        [(1, 3, z), (1, 4, z), (2, 3, s), (2, 4, s)],
    ]


def _parallel_ii_rows(x: float, z: float, s: float):
    return [
        [(1, 3, x), (1, 4, x), (2, 3, -2), (2, 4, -2)],
        [(1, 3, 2), (1, 4, 2), (2, 3, -x), (2, 4, -x)],
        [(1, 2, -4), (1, 3, -z), (1, 4, -z), (2, 3, -s), (2, 4, -s)],
        [(1, 2, 4), (1, 3, z), (1, 4, z), (2, 3, s), (2, 4, s)],
    ]


def _parallel_structure(alg: LieAlgebra, mix: complex) -> HarmfulStructure:
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) + mix * u_spinor(rep, 1)
    phi = phi_for_real_kind_even(rep, psi)
    return HarmfulStructure(alg, psi, phi, np.zeros((4, 4)), 0.0, KIND_REAL)


def _build_parallel_i(x=0.0, y=0.0, z=0.0, s=0.0, r=0.0) -> FamilyInstance:
    x, y, z, s = (float(v) for v in (x, y, z, s))
    r = float(r)
    if r < 0:
        raise ValueError("r must be nonnegative")
    alg = _make(_LOR4, _parallel_i_rows(x, y, z, s))
    hs = _parallel_structure(alg, r)
    params = {"x": x, "y": y, "z": z, "s": s, "r": r}
    return FamilyInstance(L31_PARALLEL_I, params, alg, hs, _parallel_i_class(x, y, z, s))


def _build_parallel_ii(x=0.0, z=0.0, s=0.0, alpha=0j) -> FamilyInstance:
    x, z, s = (float(v) for v in (x, z, s))
    alpha = complex(alpha)
    alg = _make(_LOR4, _parallel_ii_rows(x, z, s))
    hs = _parallel_structure(alg, alpha)
    params = {"x": x, "z": z, "s": s, "alpha": alpha}
    return FamilyInstance(L31_PARALLEL_II, params, alg, hs, _parallel_ii_class(x))


def _build_scalar_a(base=1, a=1.0, branch=1, x=0.0, y=None, z=0.0, s=0.0) -> FamilyInstance:
    if base not in (1, 2):
        raise ValueError("base must be 1 or 2")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    a = float(a)
    x, z, s = (float(v) for v in (x, z, s))
    if base == 1:
        yv = 0.0 if y is None else float(y)
        shape = _build_parallel_i(x, yv, z, s)
        params = {"base": 1, "a": a, "branch": branch, "x": x, "y": yv, "z": z, "s": s}
    else:
        if y is not None:
            raise ValueError("the second parallel shape takes x, z, s only")
        shape = _build_parallel_ii(x, z, s)
        params = {"base": 2, "a": a, "branch": branch, "x": x, "z": z, "s": s}
    alg = shape.algebra
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) if branch == 1 else u_spinor(rep, 1)
    phi = branch * 1j * psi
    lam = branch * 0.5j * a
    hs = HarmfulStructure(alg, psi, phi, a * np.eye(4), lam, KIND_REAL)
    return FamilyInstance(L31_SCALAR_A, params, alg, hs, shape.expected_class)


# -- diagonal A with vanishing coupling constant ------------------------------


def _build_lambda0(family: str, x1, x2, y, z) -> FamilyInstance:
    x1, x2, y = (float(v) for v in (x1, x2, y))
    z = complex(z)
    if x1 == 0.0 and x2 == 0.0 and y == 0.0:
        raise ValueError("x1, x2, y must not all vanish")
    signs = _RIEM4 if family == R40_LAMBDA0 else _LOR4
    rows = [
        [(2, 3, 3 * y - x1)],
        [(1, 3, -(3 * y - x2))],
        [(1, 2, 2 * y + x1 + x2)],
        [],
    ]
    alg = _make(signs, rows)
    A = np.diag([x1 + y, x2 + y, 2 * y - x1 - x2, 0.0])
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) + u_spinor(rep, 2) + z * (u_spinor(rep, 1) + u_spinor(rep, 3))
    hs = generalized_killing_to_harmful(alg, psi, A)
    expected = _diag3_with_line(x1 - 3 * y, x2 - 3 * y, -2 * y - x1 - x2)
    params = {"x1": x1, "x2": x2, "y": y, "z": z}
    return FamilyInstance(family, params, alg, hs, expected)


def _build_r40_lambda0(x1=1.0, x2=1.0, y=1.0, z=0j):
    return _build_lambda0(R40_LAMBDA0, x1, x2, y, z)


def _build_l31_lambda0(x1=1.0, x2=1.0, y=1.0, z=0j):
    return _build_lambda0(L31_LAMBDA0, x1, x2, y, z)


# -- Riemannian family with nonvanishing coupling ------------------------------


def _build_r40_lambda_nonzero(alpha=math.pi / 4, theta=0.0) -> FamilyInstance:
    alpha = float(alpha)
    theta = float(theta)
    half = math.pi / 2
    if not (-half < alpha < half and -half < theta < half):
        raise ValueError("alpha and theta must lie in the open interval (-pi/2, pi/2)")
    ssum = alpha + theta
    if min(abs(ssum), abs(ssum - half), abs(ssum + half)) < _EPS:
        raise ValueError("alpha + theta on a multiple of pi/2 degenerates the frame")
    ct, st = math.cos(theta), math.sin(theta)
    cs, ss = math.cos(ssum), math.sin(ssum)
    tt, cot = ss / cs, cs / ss
    a1 = 6 * st - 2 * ct * cot
    b1 = -6 * ct + 2 * st * tt
    c1 = 5 * ct + st * tt
    d1 = 5 * st + ct * cot
    rows = [
        [(3, 4, a1)],
        [(3, 4, b1)],
        [(1, 4, -d1), (2, 4, c1)],
        [(1, 3, d1), (2, 3, -c1)],
    ]
    alg = _make(_RIEM4, rows)
    x3 = 2 * math.cos(alpha + 2 * theta) / math.sin(2 * ssum)
    shift = 2 * math.sin(alpha)
    A = np.diag([-2 * ct / ss + shift, 2 * st / cs + shift, x3 + shift, x3 + shift])
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) + cmath.exp(-1j * ssum) * u_spinor(rep, 1)
    phi = phi_for_real_kind_even(rep, psi)
    hs = HarmfulStructure(alg, psi, phi, A, math.cos(alpha), KIND_REAL)
    params = {"alpha": alpha, "theta": theta}
    return FamilyInstance(R40_LAMBDA_NONZERO, params, alg, hs, _e34_class(a1, b1, c1, -d1))


# -- Lorentzian families with nonvanishing coupling ----------------------------


def _build_l31_lightlike(x=2.0, branch=1) -> FamilyInstance:
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    if abs(x - 1) < _EPS:
        raise ValueError("x = 1 is excluded")
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    x2 = x * x
    p = (6 * x + 4 * x**3) / (1 + x2)
    q = (6 * x - 4 * x**3) / (1 - x2)
    r = (8 * x**3 - 4 * x) / (x2 - 1)
    s = (8 * x**3 + 4 * x) / (x2 + 1)
    rows = [
        [(2, 4, -p), (2, 3, q)],
        [(1, 4, p), (1, 3, -q)],
        [(1, 2, r)],
        [(1, 2, s)],
    ]
    alg = _make(_LOR4, rows)
    x4 = x2 * x2
    A = np.diag(
        [
            4 * x2 * x2 / (x4 - 1),
            4 * x2 * x2 / (x4 - 1),
            -4 * x2 / (x2 - 1),
            -4 * x2 / (x2 + 1),
        ]
    ) + 2 * np.eye(4)
    rep = build_clifford(alg.sig)
    if branch == 1:
        psi = u_spinor(rep, 0) + x * u_spinor(rep, 2)
    else:
        psi = u_spinor(rep, 1) + x * u_spinor(rep, 3)
    phi = phi_for_real_kind_even(rep, psi)
    hs = HarmfulStructure(alg, psi, phi, A, branch * 1j, KIND_REAL)
    params = {"x": x, "branch": branch}
    return FamilyInstance(L31_M_LIGHTLIKE, params, alg, hs, _e34_class(r, s, p, -q))


def _build_l31_noniso(x=2.0, t=1.0, eps=1) -> FamilyInstance:
    x = float(x)
    t = float(t)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if x <= 0 or t <= 0:
        raise ValueError("x and t must be positive")
    if abs(x * t - 1) < _EPS:
        raise ValueError("x t = 1 is excluded")
    if eps == -1 and abs(t - 1) < _EPS:
        raise ValueError("eps = -1 with t = 1 is excluded")
    e = float(eps)
    x2, t2 = x * x, t * t
    x2t2 = x2 * t2
    x4t2 = x2 * x2 * t2
    p = (2 * x4t2 + 3 * e * x2t2 + 3 * x2 + 2 * e) / (x * (x2t2 + 1))
    q = (2 * x4t2 - 3 * e * x2t2 - 3 * x2 + 2 * e) / (x * (x2t2 - 1))
    r = 2 * (2 * x4t2 - e * x2t2 - x2 + 2 * e) / (x * (x2t2 - 1))
    s = 2 * (2 * x4t2 + e * x2t2 + x2 + 2 * e) / (x * (x2t2 + 1))
    rows = [
        [(2, 4, -p), (2, 3, q)],
        [(1, 4, p), (1, 3, -q)],
        [(1, 2, r)],
        [(1, 2, s)],
    ]
    alg = _make(_LOR4, rows)
    x4t4 = x2t2 * x2t2
    d1 = -(x4t2 + e) / (x4t4 - 1)
    d3 = (x2 + e) / (x2t2 - 1)
    d4 = (x2 - e) / (x2t2 + 1)
    A = 2 * t * np.diag([d1, d1, d3, d4]) + (e * t - 1 / t) * np.eye(4)
    rep = build_clifford(alg.sig)
    psi = u_spinor(rep, 0) - x * t * u_spinor(rep, 2)
    phi = phi_for_real_kind_even(rep, psi)
    lam = -0.5j * (e * t + 1 / t)
    hs = HarmfulStructure(alg, psi, phi, A, lam, KIND_REAL)
    params = {"x": x, "t": t, "eps": eps}
    return FamilyInstance(L31_M_NONISO, params, alg, hs, _e34_class(r, s, p, -q))


# -- non-integrable control ----------------------------------------------------


def _build_negative_jacobi(x=0.0, y=0.0, z=0.0, s=0.0) -> FamilyInstance:
    x, y, z, s = (float(v) for v in (x, y, z, s))
    rows = [
        [(1, 2, -2), (1, 3, 2 * x), (1, 4, 2 * x), (2, 3, 2 * y), (2, 4, 2 * y)],
        [(1, 3, 2 * y), (1, 4, 2 * y), (2, 3, -2 * x), (2, 4, -2 * x), (3, 4, -6)],
        [(1, 3, -2 * z), (1, 4, -2 * z), (2, 3, -2 * s), (2, 4, -2 * (s - 3))],
        [(1, 3, 2 * z), (1, 4, 2 * z), (2, 3, 2 * (s + 2)), (2, 4, 2 * (s - 1))],
    ]
    alg = _make(_LOR4, rows)
    params = {"x": x, "y": y, "z": z, "s": s}
    return FamilyInstance(NEGATIVE_JACOBI_ME1, params, alg, None, None)


# -- registry ------------------------------------------------------------------

_BUILDERS: dict[str, Callable[..., FamilyInstance]] = {
    DIM3_ABELIAN: _build_dim3_abelian,
    DIM3_SU2_NEG_B: _build_su2_neg,
    DIM3_SU2_POS_B: _build_su2_pos,
    DIM3_SL2_POS_B: _build_sl2_pos,
    DIM3_SL2_NEG_B: _build_sl2_neg,
    L31_PARALLEL_I: _build_parallel_i,
    L31_PARALLEL_II: _build_parallel_ii,
    L31_SCALAR_A: _build_scalar_a,
    R40_LAMBDA0: _build_r40_lambda0,
    R40_LAMBDA_NONZERO: _build_r40_lambda_nonzero,
    L31_LAMBDA0: _build_l31_lambda0,
    L31_M_LIGHTLIKE: _build_l31_lightlike,
    L31_M_NONISO: _build_l31_noniso,
    NEGATIVE_JACOBI_ME1: _build_negative_jacobi,
}

FAMILIES: dict[str, FamilyInfo] = {
    DIM3_ABELIAN: FamilyInfo(
        DIM3_ABELIAN,
        (1, 1, 1),
        ("branch", "z"),
        "branch in {+1, -1}; z complex",
        "flat abelian case; phi = branch * i * psi, A = 0, coupling zero",
    ),
    DIM3_SU2_NEG_B: FamilyInfo(
        DIM3_SU2_NEG_B,
        (1, 1, 1),
        ("k", "z"),
        "k real or purely imaginary, k != 0 (k = +-i singular); z complex",
        "su(2) with its definite invariant metric, Killing constant -1/4; phi = k psi",
    ),
    DIM3_SU2_POS_B: FamilyInfo(
        DIM3_SU2_POS_B,
        (-1, -1, -1),
        ("k", "z"),
        "k on the unit circle, k != +-i; z complex",
        "su(2) with the opposite definite metric, Killing constant i/4; phi = k psi",
    ),
    DIM3_SL2_POS_B: FamilyInfo(
        DIM3_SL2_POS_B,
        (1, 1, -1),
        ("k", "z"),
        "k on the unit circle, k != +-i; z complex",
        "sl(2,R) with its (+,+,-) invariant metric, Killing constant -i/4; phi = k psi",
    ),
    DIM3_SL2_NEG_B: FamilyInfo(
        DIM3_SL2_NEG_B,
        (-1, -1, 1),
        ("k", "z"),
        "k real or purely imaginary, k != 0 (k = +-i singular); z complex",
        "sl(2,R) with its (-,-,+) invariant metric, Killing constant 1/4; phi = k psi",
    ),
    L31_PARALLEL_I: FamilyInfo(
        L31_PARALLEL_I,
        _LOR4,
        ("x", "y", "z", "s", "r"),
        "x, y, z, s real; r >= 0",
        "Lorentzian 4-dim shape with parallel spinors u0 + r u1; A = 0, coupling zero",
    ),
    L31_PARALLEL_II: FamilyInfo(
        L31_PARALLEL_II,
        _LOR4,
        ("x", "z", "s", "alpha"),
        "x, z, s real; alpha complex",
        "second Lorentzian parallel shape, spinors u0 + alpha u1; A = 0, coupling zero",
    ),
    L31_SCALAR_A: FamilyInfo(
        L31_SCALAR_A,
        _LOR4,
        ("base", "a", "branch", "x", "y", "z", "s"),
        "family in {1, 2}; a real; branch in {+1, -1}; shape params as in the "
        "chosen parallel family (family 2 takes x, z, s)",
        "parallel backgrounds promoted to A = a id with coupling branch * i a/2",
    ),
    R40_LAMBDA0: FamilyInfo(
        R40_LAMBDA0,
        _RIEM4,
        ("x1", "x2", "y", "z"),
        "x1, x2, y real, not all zero; z complex",
        "Riemannian family with zero coupling and diagonal A = diag(x) + y id",
    ),
    R40_LAMBDA_NONZERO: FamilyInfo(
        R40_LAMBDA_NONZERO,
        _RIEM4,
        ("alpha", "theta"),
        "alpha, theta in (-pi/2, pi/2), alpha + theta not a multiple of pi/2",
        "Riemannian family with coupling cos(alpha) > 0 and trigonometric A",
    ),
    L31_LAMBDA0: FamilyInfo(
        L31_LAMBDA0,
        _LOR4,
        ("x1", "x2", "y", "z"),
        "x1, x2, y real, not all zero; z complex",
        "Lorentzian twin of the zero-coupling family, same cocycles and A",
    ),
    L31_M_LIGHTLIKE: FamilyInfo(
        L31_M_LIGHTLIKE,
        _LOR4,
        ("x", "branch"),
        "x > 0, x != 1; branch in {+1, -1}",
        "Lorentzian family whose velocity form has lightlike dual; coupling +-i",
    ),
    L31_M_NONISO: FamilyInfo(
        L31_M_NONISO,
        _LOR4,
        ("x", "t", "eps"),
        "x > 0, t > 0, x t != 1, eps in {+1, -1}, (eps, t) != (-1, 1)",
        "Lorentzian family with non-isotropic dual and imaginary coupling",
    ),
    NEGATIVE_JACOBI_ME1: FamilyInfo(
        NEGATIVE_JACOBI_ME1,
        _LOR4,
        ("x", "y", "z", "s"),
        "x, y, z, s real; the cocycle data never satisfies the Jacobi identity",
        "non-integrable control: large Jacobi residual expected, no structure",
    ),
}


def list_families() -> list[FamilyInfo]:
    """Static descriptions of all catalogued families, in canonical order."""
    return [FAMILIES[f] for f in FAMILY_IDS]


def build_family(family: str, params: dict | None = None, **kw) -> FamilyInstance:
    """Build one member of a named family.

    Parameters can be passed as a dict, as keyword arguments, or both;
    omitted parameters take the family's default values.  Raises ValueError
    for unknown ids, unknown parameter names, and out-of-domain values.
    """
    if family not in _BUILDERS:
        raise ValueError(f"unknown family id: {family!r}")
    merged = dict(params or {})
    merged.update(kw)
    unknown = set(merged) - set(FAMILIES[family].params)
    if unknown:
        raise ValueError(f"unknown parameters for {family}: {sorted(unknown)}")
    return _BUILDERS[family](**merged)


# -- reduced solving data --------------------------------------------------------


def reconstruction_data(inst: FamilyInstance) -> ReconstructionData | None:
    """Reduced solving data (two 3-forms, eigenvalue vector, spinor, trace
    shift, coupling) behind an instance, for the families defined through it.

    Feeding the result to build_from_data must reproduce the instance's
    algebra and structure.  Families stated directly in Killing or parallel
    form return None, as does the non-integrable control.
    """
    fam = inst.family
    p = inst.params
    hs = inst.structure
    if fam in (R40_LAMBDA0, L31_LAMBDA0):
        x1, x2, y = p["x1"], p["x2"], p["y"]
        m = blade(4, [1, 2, 3], 0.5 * y)
        xi = blade(4, [1, 2, 3], 1.0)
        return ReconstructionData(m, xi, (x1, x2, y - x1 - x2, -y), hs.psi, y, 0.0)
    if fam == R40_LAMBDA_NONZERO:
        al, th = p["alpha"], p["theta"]
        ssum = al + th
        m = blade(4, [2, 3, 4], -math.cos(th)) + blade(4, [1, 3, 4], math.sin(th))
        xi = blade(4, [1, 3, 4], -math.cos(ssum)) + blade(4, [2, 3, 4], -math.sin(ssum))
        x3 = 2 * math.cos(al + 2 * th) / math.sin(2 * ssum)
        x = (
            -2 * math.cos(th) / math.sin(ssum),
            2 * math.sin(th) / math.cos(ssum),
            x3,
            x3,
        )
        return ReconstructionData(m, xi, x, hs.psi, 2 * math.sin(al), math.cos(al))
    if fam == L31_M_LIGHTLIKE:
        xv = p["x"]
        star_m = blade(4, [3], xv) + blade(4, [4], xv)
        star_xi = blade(4, [3], 0.5 * (xv - 1 / xv)) + blade(4, [4], 0.5 * (xv + 1 / xv))
        m = hodge_star(star_m, _LOR4)
        xi = hodge_star(star_xi, _LOR4)
        x2 = xv * xv
        x4 = x2 * x2
        x = (4 * x2 * x2 / (x4 - 1), 4 * x2 * x2 / (x4 - 1), -4 * x2 / (x2 - 1), -4 * x2 / (x2 + 1))
        return ReconstructionData(m, xi, x, hs.psi, 2.0, p["branch"] * 1j)
    if fam == L31_M_NONISO:
        xv, t, e = p["x"], p["t"], float(p["eps"])
        xt = xv * t
        star_m = blade(4, [3], 0.5 * (xv + e / xv)) + blade(4, [4], 0.5 * (xv - e / xv))
        star_xi = blade(4, [3], 0.5 * (1 / xt - xt)) + blade(4, [4], -0.5 * (xt + 1 / xt))
        m = hodge_star(star_m, _LOR4)
        xi = hodge_star(star_xi, _LOR4)
        x2, t2 = xv * xv, t * t
        x2t2 = x2 * t2
        x4t4 = x2t2 * x2t2
        x4t2 = x2 * x2 * t2
        x = (
            -2 * t * (x4t2 + e) / (x4t4 - 1),
            -2 * t * (x4t2 + e) / (x4t4 - 1),
            2 * t * (x2 + e) / (x2t2 - 1),
            2 * t * (x2 - e) / (x2t2 + 1),
        )
        return ReconstructionData(m, xi, x, hs.psi, e * t - 1 / t, -0.5j * (e * t + 1 / t))
    return None


# -- parameter sweeps ------------------------------------------------------------


@dataclass(frozen=True)
class SweepSample:
    """One drawn parameter set with its verification outcome."""

    params: dict
    residual: float | None
    jacobi: float
    isoclass: str | None
    expected: str | None


@dataclass(frozen=True)
class SweepReport:
    """Aggregate of a deterministic parameter sweep over one family."""

    family: str
    n_samples: int
    seed: int
    max_residual: float | None
    min_jacobi: float
    max_jacobi: float
    class_counts: dict
    mismatches: int
    samples: tuple[SweepSample, ...]


def _uniform_excluding(rng, lo, hi, bad=(), margin=SWEEP_MARGIN) -> float:
    while True:
        v = float(rng.uniform(lo, hi))
        if all(abs(v - b) >= margin for b in bad):
            return v


def _coin(rng) -> int:
    return 1 if int(rng.integers(0, 2)) else -1


def _complex_box(rng, half=1.0) -> complex:
    return complex(rng.uniform(-half, half), rng.uniform(-half, half))


def _sample_dim3_real_axis(rng) -> dict:
    if int(rng.integers(0, 2)):
        k = complex(_uniform_excluding(rng, -2, 2, (0.0,)))
    else:
        k = 1j * _uniform_excluding(rng, -2, 2, (0.0, 1.0, -1.0))
    return {"k": k, "z": _complex_box(rng)}


def _sample_dim3_circle(rng) -> dict:
    half = math.pi / 2
    theta = _uniform_excluding(rng, -math.pi, math.pi, (half, -half))
    return {"k": cmath.exp(1j * theta), "z": _complex_box(rng)}


def _sample_parallel_i(rng) -> dict:
    return {
        "x": float(rng.uniform(-2, 2)),
        "y": float(rng.uniform(-2, 2)),
        "z": float(rng.uniform(-2, 2)),
        "s": float(rng.uniform(-2, 2)),
        "r": float(rng.uniform(0, 2)),
    }


def _sample_parallel_ii(rng) -> dict:
    return {
        "x": _uniform_excluding(rng, -3, 3, (2.0, -2.0)),
        "z": float(rng.uniform(-2, 2)),
        "s": float(rng.uniform(-2, 2)),
        "alpha": _complex_box(rng),
    }


def _sample_scalar_a(rng) -> dict:
    base = 1 + int(rng.integers(0, 2))
    out = {"base": base, "a": float(rng.uniform(-2, 2)), "branch": _coin(rng)}
    if base == 1:
        out.update(
            x=float(rng.uniform(-2, 2)),
            y=float(rng.uniform(-2, 2)),
            z=float(rng.uniform(-2, 2)),
            s=float(rng.uniform(-2, 2)),
        )
    else:
        out.update(
            x=_uniform_excluding(rng, -3, 3, (2.0, -2.0)),
            z=float(rng.uniform(-2, 2)),
            s=float(rng.uniform(-2, 2)),
        )
    return out


def _sample_lambda0(rng) -> dict:
    while True:
        x1, x2, y = (float(rng.uniform(-2, 2)) for _ in range(3))
        if math.sqrt(x1 * x1 + x2 * x2 + y * y) >= SWEEP_MARGIN:
            return {"x1": x1, "x2": x2, "y": y, "z": _complex_box(rng)}


def _sample_lambda_nonzero(rng) -> dict:
    half = math.pi / 2
    while True:
        alpha = float(rng.uniform(-half + SWEEP_MARGIN, half - SWEEP_MARGIN))
        theta = float(rng.uniform(-half + SWEEP_MARGIN, half - SWEEP_MARGIN))
        ssum = alpha + theta
        if min(abs(ssum), abs(ssum - half), abs(ssum + half)) >= SWEEP_MARGIN:
            return {"alpha": alpha, "theta": theta}


def _sample_lightlike(rng) -> dict:
    return {"x": _uniform_excluding(rng, SWEEP_MARGIN, 2.5, (1.0,)), "branch": _coin(rng)}


def _sample_noniso(rng) -> dict:
    eps = _coin(rng)
    while True:
        x = float(rng.uniform(SWEEP_MARGIN, 2.5))
        t = float(rng.uniform(SWEEP_MARGIN, 2.5))
        if abs(x * t - 1) < SWEEP_MARGIN:
            continue
        if eps == -1 and abs(t - 1) < SWEEP_MARGIN:
            continue
        return {"x": x, "t": t, "eps": eps}


def _sample_box4(rng) -> dict:
    return {
        "x": float(rng.uniform(-2, 2)),
        "y": float(rng.uniform(-2, 2)),
        "z": float(rng.uniform(-2, 2)),
        "s": float(rng.uniform(-2, 2)),
    }


def _sample_abelian(rng) -> dict:
    return {"branch": _coin(rng), "z": _complex_box(rng, 2.0)}


_SAMPLERS: dict[str, Callable] = {
    DIM3_ABELIAN: _sample_abelian,
    DIM3_SU2_NEG_B: _sample_dim3_real_axis,
    DIM3_SU2_POS_B: _sample_dim3_circle,
    DIM3_SL2_POS_B: _sample_dim3_circle,
    DIM3_SL2_NEG_B: _sample_dim3_real_axis,
    L31_PARALLEL_I: _sample_parallel_i,
    L31_PARALLEL_II: _sample_parallel_ii,
    L31_SCALAR_A: _sample_scalar_a,
    R40_LAMBDA0: _sample_lambda0,
    R40_LAMBDA_NONZERO: _sample_lambda_nonzero,
    L31_LAMBDA0: _sample_lambda0,
    L31_M_LIGHTLIKE: _sample_lightlike,
    L31_M_NONISO: _sample_noniso,
    NEGATIVE_JACOBI_ME1: _sample_box4,
}


def _evaluate(family: str, draw: dict) -> SweepSample:
    inst = build_family(family, draw)
    jac = jacobi_residual(inst.algebra)
    if inst.structure is None:
        return SweepSample(draw, None, jac, None, None)
    residual = max(verify_harmful(inst.structure).max_defect(), verify_via_L(inst.structure))
    name = str(fingerprint(inst.algebra))
    expected = str(inst.expected_class) if inst.expected_class is not None else None
    return SweepSample(draw, float(residual), jac, name, expected)


def sweep(family: str, n_samples: int, seed: int, jobs: int = 1) -> SweepReport:
    """Draw n_samples parameter sets, build and verify each, and aggregate.

    All randomness comes from one generator seeded up front, and samples are
    evaluated in draw order (a thread pool with jobs > 1 only parallelizes
    the pure per-sample work), so a given (family, n_samples, seed) always
    produces the identical report.
    """
    if family not in _SAMPLERS:
        raise ValueError(f"unknown family id: {family!r}")
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    draws = [_SAMPLERS[family](rng) for _ in range(n_samples)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            samples = tuple(pool.map(lambda d: _evaluate(family, d), draws))
    else:
        samples = tuple(_evaluate(family, d) for d in draws)
    residuals = [s.residual for s in samples if s.residual is not None]
    counts = Counter(s.isoclass for s in samples if s.isoclass is not None)
    mismatches = sum(
        1 for s in samples if s.isoclass is not None and s.isoclass != s.expected
    )
    return SweepReport(
        family=family,
        n_samples=n_samples,
        seed=seed,
        max_residual=max(residuals) if residuals else None,
        min_jacobi=min(s.jacobi for s in samples),
        max_jacobi=max(s.jacobi for s in samples),
        class_counts=dict(sorted(counts.items())),
        mismatches=mismatches,
        samples=samples,
    )
