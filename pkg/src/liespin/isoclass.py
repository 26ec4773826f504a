"""Isomorphism classes of low-dimensional unimodular Lie algebras.

Two complementary identification routes are provided.  The first follows
the explicit case analysis for the five parametric shapes produced by the
classification theorems, returning both the class and an invertible change
of dual basis that carries the input constants onto the canonical tuple of
the class; the change is verified numerically before being returned.  The
second computes a structural fingerprint (derived and lower central series,
center, Killing form) and matches it against the canonical algebras; it
knows nothing about how the input was produced, which makes it a useful
cross-check of the first route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .liealg import LieAlgebra, algebra_from_cocycles, jacobi_residual
from .multivector import Multivector, blade, zero

__all__ = [
    "DIAG3",
    "DIAG4",
    "E34",
    "IsoClass",
    "PAR_ABELIAN",
    "PAR_NONABELIAN",
    "Classification",
    "classify_appendixC",
    "canonical_algebra",
    "fingerprint",
    "form_constants",
    "pushforward",
]


@dataclass(frozen=True)
class IsoClass:
    """A named isomorphism class; the name doubles as the JSON encoding."""

    name: str
    dim: int

    def __str__(self) -> str:
        return self.name


R3 = IsoClass("R3", 3)
H3 = IsoClass("h3", 3)
RR3_MINUS1 = IsoClass("rr_{3,-1}", 3)
RR3_PRIME0 = IsoClass("rr'_{3,0}", 3)
SU2 = IsoClass("su(2)", 3)
SL2R = IsoClass("sl(2,R)", 3)

R4 = IsoClass("R4", 4)
RH3 = IsoClass("rh3", 4)
RR3_MINUS1_R = IsoClass("rr_{3,-1}", 4)
RR3_PRIME0_R = IsoClass("rr'_{3,0}", 4)
SU2_R = IsoClass("su(2)xR", 4)
SL2R_R = IsoClass("sl(2,R)xR", 4)
N4 = IsoClass("n4", 4)
D4 = IsoClass("d4", 4)
D4_PRIME0 = IsoClass("d'_{4,0}", 4)
R4_HALF = IsoClass("r_{4,-1/2}", 4)
R4_MU = IsoClass("r_{4,mu,-1-mu}", 4)
R4_PRIME_HALF = IsoClass("r'_{4,-1/2,delta}", 4)
UNRECOGNIZED = IsoClass("UNRECOGNIZED", 0)

DIAG3 = "DIAG3"
DIAG4 = "DIAG4"
PAR_ABELIAN = "PAR_ABELIAN"
PAR_NONABELIAN = "PAR_NONABELIAN"
E34 = "E34"

_PRODUCT_OF_LINE = {
    SU2: SU2_R,
    SL2R: SL2R_R,
    RR3_MINUS1: RR3_MINUS1_R,
    RR3_PRIME0: RR3_PRIME0_R,
    H3: RH3,
    R3: R4,
}


def _cocycles(n: int, rows: list[list[tuple[tuple[int, int], float]]]) -> list[Multivector]:
    out = []
    for row in rows:
        form = zero(n)
        for indices, coeff in row:
            form = form + blade(n, indices, coeff)
        out.append(form)
    return out


_CANONICAL_ROWS: dict[IsoClass, tuple[int, list]] = {
    R3: (3, [[], [], []]),
    H3: (3, [[], [], [((1, 2), 1.0)]]),
    RR3_MINUS1: (3, [[], [((1, 2), -1.0)], [((1, 3), 1.0)]]),
    RR3_PRIME0: (3, [[], [((1, 3), -1.0)], [((1, 2), 1.0)]]),
    SU2: (3, [[((2, 3), -1.0)], [((1, 3), 1.0)], [((1, 2), -1.0)]]),
    SL2R: (3, [[((2, 3), -1.0)], [((1, 3), -1.0)], [((1, 2), 1.0)]]),
    R4: (4, [[], [], [], []]),
    RH3: (4, [[], [], [((1, 2), 1.0)], []]),
    RR3_MINUS1_R: (4, [[], [((1, 2), -1.0)], [((1, 3), 1.0)], []]),
    RR3_PRIME0_R: (4, [[], [((1, 3), -1.0)], [((1, 2), 1.0)], []]),
    SU2_R: (4, [[((2, 3), -1.0)], [((1, 3), 1.0)], [((1, 2), -1.0)], []]),
    SL2R_R: (4, [[((2, 3), -1.0)], [((1, 3), -1.0)], [((1, 2), 1.0)], []]),
    N4: (4, [[], [((1, 4), 1.0)], [((2, 4), 1.0)], []]),
    D4: (4, [[((1, 4), 1.0)], [((2, 4), -1.0)], [((1, 2), -1.0)], []]),
    D4_PRIME0: (4, [[((2, 4), 1.0)], [((1, 4), -1.0)], [((1, 2), -1.0)], []]),
}


@lru_cache(maxsize=None)
def canonical_algebra(cls: IsoClass) -> LieAlgebra:
    """The canonical structure constants of a named class (positive metric)."""
    if cls not in _CANONICAL_ROWS:
        raise ValueError(f"no canonical constants stored for {cls.name}")
    n, rows = _CANONICAL_ROWS[cls]
    return algebra_from_cocycles((1,) * n, _cocycles(n, rows))


def pushforward(c: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Structure constants in the frame whose dual basis is ê^i = P_{ij} e^j."""
    q = np.linalg.inv(p)
    return np.einsum("ja,kb,jkh,mh->abm", q, q, c, p)


def _signed_permutations(n: int):
    for perm in itertools.permutations(range(n)):
        base = np.zeros((n, n))
        for i, j in enumerate(perm):
            base[i, j] = 1.0
        for signs in itertools.product((1.0, -1.0), repeat=n):
            yield np.diag(signs) @ base


def _match_canonical(c: np.ndarray, target: np.ndarray, tol: float = 1e-10) -> np.ndarray | None:
    """A signed permutation of the dual basis carrying c onto target, if any."""
    scale = max(1.0, float(np.max(np.abs(target))))
    for p in _signed_permutations(c.shape[0]):
        if np.max(np.abs(pushforward(c, p) - target)) <= tol * scale:
            return p
    return None


# ---------------------------------------------------------------------------
# parametric shapes


def form_constants(form: str, params) -> LieAlgebra:
    """The parametric Lie algebra (not necessarily Lie) for one of the shapes."""
    params = [float(v) for v in params]
    if form == DIAG3:
        a, b, c = params
        rows = [[((2, 3), -a)], [((1, 3), b)], [((1, 2), -c)]]
        return algebra_from_cocycles((1, 1, 1), _cocycles(3, rows))
    if form == DIAG4:
        a, b, c = params
        rows = [[((2, 4), -a)], [((1, 4), -b)], [((1, 2), -c)], []]
        return algebra_from_cocycles((1, 1, 1, 1), _cocycles(4, rows))
    if form == PAR_ABELIAN:
        a, b, c, d = params
        rows = [
            [((1, 3), a), ((1, 4), a), ((2, 3), b), ((2, 4), b)],
            [((1, 3), b), ((1, 4), b), ((2, 3), -a), ((2, 4), -a)],
            [((1, 3), -c), ((1, 4), -c), ((2, 3), -d), ((2, 4), -d)],
            [((1, 3), c), ((1, 4), c), ((2, 3), d), ((2, 4), d)],
        ]
        return algebra_from_cocycles((1, 1, 1, 1), _cocycles(4, rows))
    if form == PAR_NONABELIAN:
        a, b, c = params
        rows = [
            [((1, 3), a), ((1, 4), a), ((2, 3), -2.0), ((2, 4), -2.0)],
            [((1, 3), 2.0), ((1, 4), 2.0), ((2, 3), -a), ((2, 4), -a)],
            [((1, 2), -4.0), ((1, 3), -b), ((1, 4), -b), ((2, 3), -c), ((2, 4), -c)],
            [((1, 2), 4.0), ((1, 3), b), ((1, 4), b), ((2, 3), c), ((2, 4), c)],
        ]
        return algebra_from_cocycles((1, 1, 1, 1), _cocycles(4, rows))
    if form == E34:
        a, b, c, d = params
        rows = [
            [((3, 4), a)],
            [((3, 4), b)],
            [((1, 4), d), ((2, 4), c)],
            [((1, 3), -d), ((2, 3), -c)],
        ]
        return algebra_from_cocycles((1, 1, 1, 1), _cocycles(4, rows))
    raise ValueError(f"unknown parametric form {form!r}")


@dataclass(frozen=True)
class Classification:
    """Outcome of the explicit classification of a parametric algebra.

    change maps the dual basis, ê^i = change[i, j] e^j, and carries the
    input constants onto the canonical tuple of cls with defect at most
    the recorded value.  ambiguous marks parameter values so close to a
    case boundary that the sign tests are not trustworthy.
    """

    cls: IsoClass
    change: np.ndarray
    defect: float
    ambiguous: bool


def _band(params, tol: float) -> float:
    return tol * max(1.0, max(abs(float(v)) for v in params))


def _is_zero(value: float, band: float) -> bool:
    return abs(value) <= band


def _near_boundary(value: float, band: float) -> bool:
    return 0.0 < abs(value) <= band


def _diag3_change(a: float, b: float, c: float, band: float) -> tuple[IsoClass, np.ndarray, bool]:
    """Class and dual-basis change for the shape (-a e^23, -b e^31, -c e^12)."""
    params = np.array([a, b, c])
    zeros = [_is_zero(v, band) for v in params]
    ambiguous = any(_near_boundary(v, band) for v in params)
    n_zero = sum(zeros)
    c0 = form_constants(DIAG3, (a, b, c)).c
    if n_zero == 0:
        scale = np.diag(
            [
                np.sqrt(abs(b) * abs(c)),
                np.sqrt(abs(a) * abs(c)),
                np.sqrt(abs(a) * abs(b)),
            ]
        )
        cls = SU2 if a > 0 and b > 0 and c > 0 or a < 0 and b < 0 and c < 0 else SL2R
        reduced = pushforward(c0, scale)
        fix = _match_canonical(reduced, canonical_algebra(cls).c)
        if fix is None:
            raise RuntimeError("no signed permutation reaches the canonical tuple")
        return cls, fix @ scale, ambiguous
    if n_zero == 1:
        same_sign = np.prod(params[~np.array(zeros)]) > 0
        cls = RR3_PRIME0 if same_sign else RR3_MINUS1
        # move the vanishing parameter into the first slot with b', c' > 0
        # (same sign) or b' > 0 > c' (mixed), then apply the explicit change
        for p0 in _signed_permutations(3):
            moved = pushforward(c0, p0)
            a1 = moved[1, 2, 0]
            b1 = -moved[0, 2, 1]
            c1 = moved[0, 1, 2]
            if abs(a1) > band:
                continue
            if same_sign and not (b1 > band and c1 > band):
                continue
            if not same_sign and not (b1 > band and c1 < -band):
                continue
            if same_sign:
                step = np.array(
                    [
                        [-np.sqrt(b1 * c1), 0.0, 0.0],
                        [0.0, -1 / (2 * b1 * np.sqrt(c1)), -1 / (2 * c1 * np.sqrt(b1))],
                        [0.0, 1 / (2 * b1 * np.sqrt(c1)), -1 / (2 * c1 * np.sqrt(b1))],
                    ]
                )
            else:
                step = np.array(
                    [
                        [-np.sqrt(-b1 * c1), 0.0, 0.0],
                        [0.0, -1 / (2 * b1 * np.sqrt(-c1)), 1 / (2 * c1 * np.sqrt(b1))],
                        [0.0, 1 / (2 * b1 * np.sqrt(-c1)), 1 / (2 * c1 * np.sqrt(b1))],
                    ]
                )
            return cls, step @ p0, ambiguous
        raise RuntimeError("could not normalize the vanishing slot")
    if n_zero == 2:
        for p0 in _signed_permutations(3):
            moved = pushforward(c0, p0)
            c1 = moved[0, 1, 2]
            if abs(c1) <= band or abs(moved[1, 2, 0]) > band or abs(moved[0, 2, 1]) > band:
                continue
            step = np.diag([1.0, 1.0, -1.0 / c1])
            return H3, step @ p0, ambiguous
        raise RuntimeError("could not isolate the nonzero slot")
    return R3, np.eye(3), ambiguous


def _extend(p3: np.ndarray) -> np.ndarray:
    out = np.eye(4)
    out[:3, :3] = p3
    return out


def _diag4_change(a: float, b: float, c: float, band: float) -> tuple[IsoClass, np.ndarray, bool]:
    """Class and change for the shape (-a e^24, -b e^14, -c e^12, 0).

    The two c = 0 sub-cases land in the three-dimensional analysis with
    parameters (a, -b, 0), whose sign product reverses the naive reading:
    ab > 0 gives the split solvable algebra, ab < 0 the rotational one.
    """
    ambiguous = any(_near_boundary(v, band) for v in (a, b, c, a * b))
    az, bz, cz = (_is_zero(v, band) for v in (a, b, c))
    c0 = form_constants(DIAG4, (a, b, c)).c
    if not cz and not az and not bz:
        flip = np.diag([1.0, 1.0, 1.0 if c > 0 else -1.0, 1.0 if a > 0 else -1.0])
        moved = pushforward(c0, flip)
        a1, b1, c1 = moved[1, 3, 0], moved[0, 3, 1], moved[0, 1, 2]
        if a * b > 0:
            step = np.array(
                [
                    [-1 / (2 * a1 * np.sqrt(b1)), 1 / (2 * b1 * np.sqrt(a1)), 0, 0],
                    [1 / (2 * a1 * np.sqrt(b1)), 1 / (2 * b1 * np.sqrt(a1)), 0, 0],
                    [0, 0, -1 / (2 * c1 * a1 ** 1.5 * b1 ** 1.5), 0],
                    [0, 0, 0, np.sqrt(a1 * b1)],
                ]
            )
            return D4, step @ flip, ambiguous
        # arrange a1 < 0 < b1, c1 > 0
        if a1 > 0:
            swap = np.zeros((4, 4))
            swap[0, 1] = swap[1, 0] = swap[2, 2] = swap[3, 3] = 1.0
            flip = swap @ flip
            moved = pushforward(c0, flip)
            a1, b1, c1 = moved[1, 3, 0], moved[0, 3, 1], moved[0, 1, 2]
            if c1 < 0:
                flip = np.diag([1.0, 1.0, -1.0, 1.0]) @ flip
                moved = pushforward(c0, flip)
                a1, b1, c1 = moved[1, 3, 0], moved[0, 3, 1], moved[0, 1, 2]
        step = np.array(
            [
                [1 / (2 * a1 * np.sqrt(b1)), 1 / (2 * b1 * np.sqrt(-a1)), 0, 0],
                [-1 / (2 * a1 * np.sqrt(b1)), 1 / (2 * b1 * np.sqrt(-a1)), 0, 0],
                [0, 0, -1 / (2 * c1 * (-a1) ** 1.5 * b1 ** 1.5), 0],
                [0, 0, 0, -np.sqrt(-a1 * b1)],
            ]
        )
        reduced = pushforward(c0, step @ flip)
        fix = _match_canonical(reduced, canonical_algebra(D4_PRIME0).c)
        if fix is None:
            raise RuntimeError("no signed permutation reaches the canonical tuple")
        return D4_PRIME0, fix @ step @ flip, ambiguous
    if cz and not az and not bz:
        relabel = np.zeros((4, 4))
        relabel[0, 0] = relabel[1, 1] = relabel[2, 3] = relabel[3, 2] = 1.0
        cls3, p3, amb3 = _diag3_change(a, -b, 0.0, band)
        return _PRODUCT_OF_LINE[cls3], _extend(p3) @ relabel, ambiguous or amb3
    if (az != bz) and not cz:
        if az:
            vectors = np.array(
                [[0, 0, 0, 1], [0, b, 0, 0], [0, 0, b * c, 0], [1, 0, 0, 0]]
            ).T
        else:
            vectors = np.array(
                [[0, 0, 0, 1], [a, 0, 0, 0], [0, 0, -a * c, 0], [0, 1, 0, 0]]
            ).T
        return N4, np.linalg.inv(vectors.astype(float)), ambiguous
    nonzero = [v for v, is_z in ((a, az), (b, bz), (c, cz)) if not is_z]
    if len(nonzero) == 1:
        if not az:
            vectors = np.array([[0, 1, 0, 0], [0, 0, 0, 1], [-a, 0, 0, 0], [0, 0, 1, 0]]).T
        elif not bz:
            vectors = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, -b, 0, 0], [0, 0, 1, 0]]).T
        else:
            vectors = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -c, 0], [0, 0, 0, 1]]).T
        return RH3, np.linalg.inv(vectors.astype(float)), ambiguous
    return R4, np.eye(4), ambiguous


def _par_abelian_change(
    a: float, b: float, c: float, d: float, band: float
) -> tuple[IsoClass, np.ndarray, bool]:
    ambiguous = any(_near_boundary(v, band) for v in (a, b, c, d))
    az, bz, cz, dz = (_is_zero(v, band) for v in (a, b, c, d))
    if not (az and bz):
        if bz:
            p = np.array(
                [
                    [0, 0, -a, -a],
                    [0, 1, 0, 0],
                    [1, 0, 0, 0],
                    [c, -d, a, 0],
                ],
                dtype=float,
            )
        else:
            r = np.sqrt(a * a + b * b)
            p = np.array(
                [
                    [0, 0, -r, -r],
                    [(-a + r) / (2 * b), -0.5, 0, 0],
                    [-(a + r) / (2 * b), -0.5, 0, 0],
                    [a * c + b * d, b * c - a * d, r * r, 0],
                ],
                dtype=float,
            )
        return RR3_MINUS1_R, p, ambiguous
    if not (cz and dz):
        norm = c * c + d * d
        vectors = np.array(
            [
                [c / norm, d / norm, 0, 0],
                [0, 0, 1, 0],
                [0, 0, -1, 1],
                [d, -c, 0, 0],
            ]
        ).T
        return RH3, np.linalg.inv(vectors), ambiguous
    return R4, np.eye(4), ambiguous


def _par_nonabelian_change(
    a: float, b: float, c: float, band: float
) -> tuple[IsoClass, np.ndarray, bool]:
    disc = a * a - 4.0
    ambiguous = _near_boundary(disc, band)
    if disc > band:
        root = np.sqrt(disc)
        p = np.array(
            [
                [-a - root, 2, 0, 0],
                [-a + root, 2, 0, 0],
                [-(2 * c + a * b) / root, (a * c + 2 * b) / root, -root, 0],
                [0, 0, root, root],
            ],
            dtype=float,
        )
        return D4, p, ambiguous
    if disc < -band:
        root = np.sqrt(-disc)
        p = np.array(
            [
                [-root, 0, 0, 0],
                [-a, 2, 0, 0],
                [(2 * c + a * b) / (2 * root), -(a * c + 2 * b) / (2 * root), -root / 2, 0],
                [0, 0, root, root],
            ],
            dtype=float,
        )
        return D4_PRIME0, p, ambiguous
    p = np.array(
        [
            [0, 0, 1, 1],
            [1, 0, 0, 0],
            [c / 4, 0, -0.5, 0],
            [-a, 2, (a * c + 2 * b) / 4, (a * c + 2 * b) / 4],
        ],
        dtype=float,
    )
    return N4, p, ambiguous


def _e34_change(
    a: float, b: float, c: float, d: float, band: float
) -> tuple[IsoClass, np.ndarray, bool]:
    ambiguous = any(
        _near_boundary(v, band) for v in (a, b, c, d, a * d + b * c, a * c - b * d)
    )
    cz, dz = _is_zero(c, band), _is_zero(d, band)
    if not (cz and dz):
        trace = a * d + b * c
        if not _is_zero(trace, band):
            p1 = np.array(
                [
                    [0, 0, 0, 1],
                    [d / trace, c / trace, 0, 0],
                    [0, 0, 1, 0],
                    [b / trace, -a / trace, 0, 0],
                ]
            )
            cls3, p3, amb3 = _diag3_change(trace, -1.0, trace, band)
            return _PRODUCT_OF_LINE[cls3], _extend(p3) @ p1, ambiguous or amb3
        p1 = np.array(
            [
                [0, 0, 1, 0],
                [0, 0, 0, 1],
                [c, -d, 0, 0],
                [d, c, 0, 0],
            ]
        )
        cls4, p4, amb4 = _diag4_change(1.0, -1.0, -(a * c - b * d), band)
        return cls4, p4 @ p1, ambiguous or amb4
    if not (_is_zero(a, band) and _is_zero(b, band)):
        norm = a * a + b * b
        p = np.array(
            [
                [0, 0, 1, 0],
                [0, 0, 0, 1],
                [a / norm, b / norm, 0, 0],
                [b, -a, 0, 0],
            ]
        )
        return RH3, p, ambiguous
    return R4, np.eye(4), ambiguous


_FORM_HANDLERS = {
    DIAG3: (_diag3_change, 3),
    DIAG4: (_diag4_change, 3),
    PAR_ABELIAN: (_par_abelian_change, 4),
    PAR_NONABELIAN: (_par_nonabelian_change, 3),
    E34: (_e34_change, 4),
}


def classify_appendixC(form: str, params, tol: float = 1e-9) -> Classification:
    """Identify a parametric algebra and an explicit dual-basis change.

    Parameter values within the zero band of a case boundary produce a
    flagged (ambiguous) result instead of an error; the class is then the
    one obtained by treating the near-zero quantity as zero, and the
    basis change is not required to verify.
    """
    if form not in _FORM_HANDLERS:
        raise ValueError(f"unknown parametric form {form!r}")
    handler, arity = _FORM_HANDLERS[form]
    params = tuple(float(v) for v in params)
    if len(params) != arity:
        raise ValueError(f"{form} takes {arity} parameters, got {len(params)}")
    band = _band(params, tol)
    cls, change, ambiguous = handler(*params, band)
    c0 = form_constants(form, params).c
    target = canonical_algebra(cls).c
    defect = float(np.max(np.abs(pushforward(c0, change) - target)))
    threshold = 1e-10 * max(1.0, max(abs(v) for v in params))
    if defect > threshold:
        fix = _match_canonical(pushforward(c0, change), target)
        if fix is not None:
            change = fix @ change
            defect = float(np.max(np.abs(pushforward(c0, change) - target)))
    if not ambiguous and defect > threshold:
        raise RuntimeError(
            f"basis change for {form}{params} -> {cls.name} misses the "
            f"canonical tuple by {defect:.3e}"
        )
    return Classification(cls, change, defect, ambiguous)


# ---------------------------------------------------------------------------
# fingerprints


def _span_basis(vectors: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal column basis of the span of the given column vectors."""
    if vectors.size == 0:
        return np.zeros((vectors.shape[0], 0))
    u, sv, _ = np.linalg.svd(vectors, full_matrices=False)
    rank = int(np.sum(sv > tol * max(1.0, sv[0] if sv.size else 1.0)))
    return u[:, :rank]


def _bracket_span(c: np.ndarray, left: np.ndarray, right: np.ndarray, tol: float) -> np.ndarray:
    cols = []
    for u in left.T:
        for v in right.T:
            cols.append(np.einsum("j,k,jkh->h", u, v, c))
    if not cols:
        return np.zeros((c.shape[0], 0))
    return _span_basis(np.array(cols).T, tol)


def _series_dims(c: np.ndarray, tol: float, lower_central: bool) -> tuple[int, ...]:
    n = c.shape[0]
    full = np.eye(n)
    current = _bracket_span(c, full, full, tol)
    dims = [current.shape[1]]
    while dims[-1] > 0:
        left = full if lower_central else current
        nxt = _bracket_span(c, left, current, tol)
        if nxt.shape[1] == dims[-1]:
            break
        current = nxt
        dims.append(current.shape[1])
    return tuple(dims)


def _killing_data(c: np.ndarray, tol: float) -> tuple[int, int, int]:
    n = c.shape[0]
    ads = [c[j].T for j in range(n)]
    killing = np.array([[np.trace(ads[j] @ ads[k]) for k in range(n)] for j in range(n)])
    eig = np.linalg.eigvalsh(killing)
    scale = max(1.0, float(np.max(np.abs(eig))) if eig.size else 1.0)
    plus = int(np.sum(eig > tol * scale))
    minus = int(np.sum(eig < -tol * scale))
    return plus + minus, plus, minus


def _center_dim(c: np.ndarray, tol: float) -> int:
    n = c.shape[0]
    mat = c.reshape(n, n * n).T  # rows (k,h), columns j: [v, e_k]_h
    sv = np.linalg.svd(mat, compute_uv=False)
    scale = max(1.0, sv[0] if sv.size else 1.0)
    return n - int(np.sum(sv > tol * scale))


def _invariant_vector(alg: LieAlgebra, tol: float) -> tuple:
    c = alg.c
    scale = max(1.0, float(np.max(np.abs(c))))
    normalized = c / scale
    return (
        alg.n,
        _series_dims(normalized, tol, lower_central=False),
        _series_dims(normalized, tol, lower_central=True),
        _center_dim(normalized, tol),
        _killing_data(normalized, tol),
    )


@lru_cache(maxsize=None)
def _fingerprint_table() -> dict[tuple, IsoClass]:
    table: dict[tuple, IsoClass] = {}
    for cls in _CANONICAL_ROWS:
        key = _invariant_vector(canonical_algebra(cls), 1e-8)
        if key in table:
            raise RuntimeError(f"fingerprint collision: {table[key].name} / {cls.name}")
        table[key] = cls
    return table


def fingerprint(alg: LieAlgebra, tol: float = 1e-8) -> IsoClass:
    """Match structural invariants against the canonical algebras.

    The table covers exactly the classes the catalog can produce; anything
    else comes back UNRECOGNIZED rather than a best guess.  Input that is
    not a Lie algebra is rejected.
    """
    scale = max(1.0, float(np.max(np.abs(alg.c))))
    if jacobi_residual(alg) > 1e-8 * scale * scale:
        raise ValueError("structure constants do not satisfy the Jacobi identity")
    if alg.n not in (3, 4):
        raise ValueError("fingerprints cover dimensions 3 and 4 only")
    return _fingerprint_table().get(_invariant_vector(alg, tol), UNRECOGNIZED)
