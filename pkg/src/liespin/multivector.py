"""Dense multivector arithmetic over a basis of blades.

A multivector on an n-dimensional oriented vector space (n <= 6) is stored as a
dense complex coefficient array indexed by blade bitmasks: bit j-1 of the index
is set exactly when e_j occurs in the blade.  The basis e_1..e_n is always taken
positively oriented, and diagonal metrics are described by a tuple of signs
``eps`` with g(e_j, e_j) = eps_j.

Conventions, pinned by the tests:

* wedge: e_A ^ e_B = (-1)^inv(A,B) e_{A u B} for disjoint A, B, where inv
  counts pairs (i in A, j in B) with i > j;
* Clifford product of blades: generators of the right factor are merged one by
  one, with e_j e_j = -eps_j (so vectors satisfy v.v = -g(v,v));
* Hodge star: *(e_A) = (prod_{j in A} eps_j) * sign(A, A^c) * e_{A^c} with
  e_A ^ e_{A^c} = sign(A, A^c) * e_{1..n};
* interior product: e_B -| e_C = (prod_{j in B} eps_j) * sigma * e_{C \\ B}
  when B is a subset of C (else zero), where e_B ^ e_{C\\B} = sigma e_C.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DIM = 6

Signs = tuple[int, ...]


def _check_signs(eps: Signs) -> Signs:
    eps = tuple(int(s) for s in eps)
    if not 1 <= len(eps) <= MAX_DIM:
        raise ValueError(f"dimension must be between 1 and {MAX_DIM}, got {len(eps)}")
    if any(s not in (-1, 1) for s in eps):
        raise ValueError(f"metric signs must be +-1, got {eps}")
    return eps


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b (0 if the blades share a generator)."""
    if a & b:
        return 0
    inv = 0
    for j in range(MAX_DIM):
        if b >> j & 1:
            inv += _popcount(a >> (j + 1))
    return -1 if inv & 1 else 1


def _blade_mul(a: int, b: int, eps: Signs) -> tuple[int, int]:
    """Clifford product e_a . e_b -> (result blade, integer sign)."""
    sign = 1
    res = a
    for j in range(len(eps)):
        if not b >> j & 1:
            continue
        if _popcount(res >> (j + 1)) & 1:
            sign = -sign
        if res >> j & 1:
            res &= ~(1 << j)
            sign *= -eps[j]
        else:
            res |= 1 << j
    return res, sign


@lru_cache(maxsize=None)
def _wedge_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    dim = 1 << n
    idx = np.zeros((dim, dim), dtype=np.int64)
    sgn = np.zeros((dim, dim), dtype=np.int8)
    for a in range(dim):
        for b in range(dim):
            idx[a, b] = a ^ b
            sgn[a, b] = _wedge_sign(a, b)
    return idx, sgn


@lru_cache(maxsize=None)
def _clifford_table(eps: Signs) -> tuple[np.ndarray, np.ndarray]:
    n = len(eps)
    dim = 1 << n
    idx = np.zeros((dim, dim), dtype=np.int64)
    sgn = np.zeros((dim, dim), dtype=np.int8)
    for a in range(dim):
        for b in range(dim):
            res, s = _blade_mul(a, b, eps)
            idx[a, b] = res
            sgn[a, b] = s
    return idx, sgn


@lru_cache(maxsize=None)
def _interior_table(eps: Signs) -> tuple[np.ndarray, np.ndarray]:
    n = len(eps)
    dim = 1 << n
    idx = np.zeros((dim, dim), dtype=np.int64)
    sgn = np.zeros((dim, dim), dtype=np.int8)
    for b in range(dim):
        eps_b = 1
        for j in range(n):
            if b >> j & 1:
                eps_b *= eps[j]
        for c in range(dim):
            if b & ~c:
                continue
            rest = c ^ b
            idx[b, c] = rest
            sgn[b, c] = eps_b * _wedge_sign(b, rest)
    return idx, sgn


@lru_cache(maxsize=None)
def _hodge_table(eps: Signs) -> tuple[np.ndarray, np.ndarray]:
    n = len(eps)
    dim = 1 << n
    full = dim - 1
    idx = np.zeros(dim, dtype=np.int64)
    sgn = np.zeros(dim, dtype=np.int8)
    for a in range(dim):
        eps_a = 1
        for j in range(n):
            if a >> j & 1:
                eps_a *= eps[j]
        idx[a] = full ^ a
        sgn[a] = eps_a * _wedge_sign(a, full ^ a)
    return idx, sgn


@lru_cache(maxsize=None)
def _grade_array(n: int) -> np.ndarray:
    return np.array([_popcount(a) for a in range(1 << n)], dtype=np.int64)


@lru_cache(maxsize=None)
def _eps_blade_array(eps: Signs) -> np.ndarray:
    """prod_{j in A} eps_j for every blade A."""
    n = len(eps)
    out = np.ones(1 << n, dtype=np.int64)
    for a in range(1 << n):
        for j in range(n):
            if a >> j & 1:
                out[a] *= eps[j]
    return out


@dataclass(eq=False)
class Multivector:
    """A complex multivector with dense blade coefficients."""

    n: int
    coeffs: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.coeffs, other.coeffs))

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_DIM:
            raise ValueError(f"dimension must be between 1 and {MAX_DIM}")
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} coefficients, got shape {c.shape}")
        self.coeffs = c

    # -- ring-ish operations -------------------------------------------------

    def __add__(self, other: "Multivector") -> "Multivector":
        self._same_space(other)
        return Multivector(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._same_space(other)
        return Multivector(self.n, self.coeffs - other.coeffs)

    def __neg__(self) -> "Multivector":
        return Multivector(self.n, -self.coeffs)

    def __mul__(self, z: complex) -> "Multivector":
        return Multivector(self.n, self.coeffs * complex(z))

    __rmul__ = __mul__

    def __truediv__(self, z: complex) -> "Multivector":
        return Multivector(self.n, self.coeffs / complex(z))

    def _same_space(self, other: "Multivector") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    # -- structure -----------------------------------------------------------

    def grade(self, k: int) -> "Multivector":
        """Projection onto the grade-k part."""
        mask = _grade_array(self.n) == k
        out = np.where(mask, self.coeffs, 0.0 + 0.0j)
        return Multivector(self.n, out)

    def grades(self, tol: float = 0.0) -> list[int]:
        ga = _grade_array(self.n)
        present = sorted({int(ga[a]) for a in range(1 << self.n) if abs(self.coeffs[a]) > tol})
        return present

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def blade_coeff(self, indices: tuple[int, ...] | list[int]) -> complex:
        """Coefficient of e_{indices}; indices must be strictly increasing, 1-based."""
        return complex(self.coeffs[blade_mask(indices)])

    def vector_coords(self) -> np.ndarray:
        """Grade-1 coordinates (v_1, ..., v_n)."""
        return np.array([self.coeffs[1 << j] for j in range(self.n)])

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        terms = []
        for a in range(1 << self.n):
            z = self.coeffs[a]
            if z != 0:
                name = "1" if a == 0 else "e" + "".join(str(j + 1) for j in range(self.n) if a >> j & 1)
                terms.append(f"{z:.6g}*{name}")
        return "MV(" + (" + ".join(terms) if terms else "0") + ")"


# -- constructors ----------------------------------------------------------


def blade_mask(indices: tuple[int, ...] | list[int]) -> int:
    mask = 0
    prev = 0
    for j in indices:
        if not 1 <= j <= MAX_DIM:
            raise ValueError(f"basis index out of range: {j}")
        if j <= prev:
            raise ValueError(f"blade indices must be strictly increasing, got {tuple(indices)}")
        prev = j
        mask |= 1 << (j - 1)
    return mask


def zero(n: int) -> Multivector:
    return Multivector(n, np.zeros(1 << n, dtype=complex))


def scalar(n: int, value: complex) -> Multivector:
    out = zero(n)
    out.coeffs[0] = value
    return out


def basis_vector(n: int, j: int) -> Multivector:
    """e_j as a multivector (1-based index)."""
    if not 1 <= j <= n:
        raise ValueError(f"basis index {j} out of range for dimension {n}")
    out = zero(n)
    out.coeffs[1 << (j - 1)] = 1.0
    return out


def blade(n: int, indices: tuple[int, ...] | list[int], coeff: complex = 1.0) -> Multivector:
    """coeff * e_{i1} ^ ... ^ e_{ik} with strictly increasing indices."""
    out = zero(n)
    out.coeffs[blade_mask(indices)] = coeff
    return out


def from_vector(n: int, coords) -> Multivector:
    coords = np.asarray(coords, dtype=complex)
    if coords.shape != (n,):
        raise ValueError(f"expected {n} coordinates, got shape {coords.shape}")
    out = zero(n)
    for j in range(n):
        out.coeffs[1 << j] = coords[j]
    return out


def volume(n: int) -> Multivector:
    """The positively oriented unit volume blade e_1 ^ ... ^ e_n."""
    out = zero(n)
    out.coeffs[(1 << n) - 1] = 1.0
    return out


# -- products ----------------------------------------------------------------


def _bilinear(x: Multivector, y: Multivector, idx: np.ndarray, sgn: np.ndarray) -> Multivector:
    out = np.zeros(1 << x.n, dtype=complex)
    contrib = np.outer(x.coeffs, y.coeffs) * sgn
    np.add.at(out, idx.ravel(), contrib.ravel())
    return Multivector(x.n, out)


def wedge(x: Multivector, y: Multivector) -> Multivector:
    x._same_space(y)
    idx, sgn = _wedge_tables(x.n)
    return _bilinear(x, y, idx, sgn)


def clifford(x: Multivector, y: Multivector, eps: Signs) -> Multivector:
    """Clifford (geometric) product with v.v = -g(v,v)."""
    x._same_space(y)
    eps = _check_signs(eps)
    if len(eps) != x.n:
        raise ValueError("metric signs do not match multivector dimension")
    idx, sgn = _clifford_table(eps)
    return _bilinear(x, y, idx, sgn)


def interior(x: Multivector, y: Multivector, eps: Signs) -> Multivector:
    """Metric interior product x -| y, extended bilinearly from blades."""
    x._same_space(y)
    eps = _check_signs(eps)
    if len(eps) != x.n:
        raise ValueError("metric signs do not match multivector dimension")
    idx, sgn = _interior_table(eps)
    return _bilinear(x, y, idx, sgn)


def form_hook(x: Multivector, y: Multivector, eps: Signs) -> Multivector:
    """Interior product of the dual form of x against y: e^B -| e_C.

    Identical to :func:`interior` up to dividing the eps-factor of each blade
    of x back out, i.e. e^B -| e_C = sigma e_{C\\B}.
    """
    eps = _check_signs(eps)
    eb = _eps_blade_array(eps)
    x_form = Multivector(x.n, x.coeffs * eb)  # eps factors square away
    return interior(x_form, y, eps)


def hodge_star(x: Multivector, eps: Signs) -> Multivector:
    eps = _check_signs(eps)
    if len(eps) != x.n:
        raise ValueError("metric signs do not match multivector dimension")
    idx, sgn = _hodge_table(eps)
    out = np.zeros(1 << x.n, dtype=complex)
    out[idx] = x.coeffs * sgn
    return Multivector(x.n, out)


def musical(x: Multivector, eps: Signs) -> Multivector:
    """Index raising/lowering: multiply each blade by its eps-factor.

    For a diagonal +-1 metric the flat and sharp maps coincide blade-wise.
    """
    eps = _check_signs(eps)
    return Multivector(x.n, x.coeffs * _eps_blade_array(eps))


def pairing(x: Multivector, y: Multivector, eps: Signs) -> complex:
    """The bilinear extension of g to blades: g(e_A, e_B) = delta_AB prod eps_A."""
    x._same_space(y)
    eps = _check_signs(eps)
    return complex(np.sum(x.coeffs * y.coeffs * _eps_blade_array(eps)))
