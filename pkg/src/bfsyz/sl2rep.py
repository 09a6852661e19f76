"""Binary forms, plethysm/wedge bases, q-characters, and sl2 operators.

Conventions used throughout the package:

* A binary form of degree n is stored by its plain monomial coefficients,
  ``coeffs[i]`` multiplying x1^(n-i) x2^i.  No binomial scalings anywhere.
* ``plethysm_basis(m, n)`` indexes the monomial basis of Sym^m(Sym^n U) by
  exponent vectors (e_0, ..., e_n), sum m, in lexicographically descending
  order; the same order indexes degree-m monomials of a polynomial ring in
  n+1 variables, so plethysm spaces and coordinate rings share indexing.
* q-characters specialize x1 -> q, x2 -> 1, so char(Sym^n U) = 1 + q + ... +
  q^n.  Spaces isomorphic as sl2 representations can differ by a global power
  of q under this specialization (it remembers the ambient homogeneous
  degree); ``QChar.normalized`` strips that power and is what equality of
  sl2 characters means here.  The wedge shift convention is pinned by
  WEDGE_CHAR_SHIFT below and tested.
* Two realizations of the sl2 action appear.  On basis vectors ("plain"),
  lowering is the derivation u_i -> (n-i) u_{i+1} and raising is
  u_i -> i u_{i-1}.  On coordinate functions ("dual"), which transform
  contragrediently, lowering acts as phi_m -> (n-m+1) phi_{m-1} and raising
  as phi_m -> (m+1) phi_{m+1}.  Coefficient-extraction matrices (the power
  maps) intertwine the dual realization; printed highest-weight vectors live
  in the plain realization.  ``hw_triple`` bridges the two through the
  symplectic self-duality fixed by x1 ^ x2 -> 1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import EquivarianceError

# ---------------------------------------------------------------------------
# binary forms and the transvectant


class BinaryForm:
    """Degree-n binary form; coeffs[i] is the coefficient of x1^(n-i) x2^i."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        coeffs = tuple(coeffs)
        if degree < 0:
            raise ValueError("negative degree")
        if len(coeffs) != degree + 1:
            raise ValueError(f"degree {degree} needs {degree + 1} coefficients, got {len(coeffs)}")
        self.degree = degree
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def derivative_x1(self) -> "BinaryForm":
        n = self.degree
        if n == 0:
            return BinaryForm(0, (0,))
        return BinaryForm(n - 1, tuple(self.coeffs[i] * (n - i) for i in range(n)))

    def derivative_x2(self) -> "BinaryForm":
        n = self.degree
        if n == 0:
            return BinaryForm(0, (0,))
        return BinaryForm(n - 1, tuple(self.coeffs[i + 1] * (i + 1) for i in range(n)))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(c * s for c in self.coeffs))

    def multiply(self, other: "BinaryForm") -> "BinaryForm":
        n, m = self.degree, other.degree
        out = [0] * (n + m + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return BinaryForm(n + m, tuple(out))

    def power(self, a: int) -> "BinaryForm":
        if a < 0:
            raise ValueError("negative power")
        result = BinaryForm(0, (1,))
        for _ in range(a):
            result = result.multiply(self)
        return result

    def substitute(self, mat) -> "BinaryForm":
        """Apply x1 -> m00 x1 + m01 x2, x2 -> m10 x1 + m11 x2."""
        (a, b), (c, d) = mat
        l1 = BinaryForm(1, (a, b))
        l2 = BinaryForm(1, (c, d))
        n = self.degree
        out = BinaryForm(n, (0,) * (n + 1))
        for i, coeff in enumerate(self.coeffs):
            if coeff:
                out = out + l1.power(n - i).multiply(l2.power(i)).scale(coeff)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        raise TypeError("BinaryForm is not hashable")

    def __repr__(self) -> str:
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x1^{n - i}*x2^{i}")
        return " + ".join(terms) if terms else "0"


def transvectant(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """First transvectant (Jacobian pairing) f_x1 g_x2 - f_x2 g_x1.

    Degree deg f + deg g - 2; vanishes identically iff f and g share every
    root, e.g. transvectant(G^a, G) = 0.
    """
    if f.degree == 0 and g.degree == 0:
        return BinaryForm(0, (0,))
    out = f.derivative_x1().multiply(g.derivative_x2()) - f.derivative_x2().multiply(
        g.derivative_x1()
    )
    return out


# ---------------------------------------------------------------------------
# bases


@lru_cache(maxsize=None)
def plethysm_basis(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors (e_0..e_n) with sum m, lexicographically descending.

    Indexes both the monomials of Sym^m(Sym^n U) and the degree-m monomials
    of a polynomial ring in n+1 ordered variables.  len = binom(n+m, m).
    """
    if m < 0:
        return ()

    def gen(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in gen(total - first, parts - 1):
                yield (first,) + rest

    return tuple(gen(m, n + 1))


@lru_cache(maxsize=None)
def plethysm_index(m: int, n: int) -> dict:
    return {e: k for k, e in enumerate(plethysm_basis(m, n))}


@lru_cache(maxsize=None)
def wedge_basis(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    """m-element subsets of {0..n} in lexicographic order; len = binom(n+1, m)."""
    return tuple(combinations(range(n + 1), m))


@lru_cache(maxsize=None)
def wedge_index(m: int, n: int) -> dict:
    return {t: k for k, t in enumerate(wedge_basis(m, n))}


def x1_count(exp, n: int) -> int:
    """Total x1-degree of the plethysm monomial u^exp (inner degree n)."""
    return sum(e * (n - i) for i, e in enumerate(exp))


def plain_weight(exp, n: int) -> int:
    """Torus weight of the basis monomial u^exp: sum e_i (n - 2i)."""
    return sum(e * (n - 2 * i) for i, e in enumerate(exp))


def coord_weight(exp, n: int) -> int:
    """Torus weight of the coordinate monomial phi^exp: sum e_i (2i - n)."""
    return -plain_weight(exp, n)


# ---------------------------------------------------------------------------
# q-characters


class QChar:
    """Integer polynomial in q; coeffs[k] is the multiplicity of q^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(int(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def dimension(self) -> int:
        """Value at q = 1 (dimension of the underlying space)."""
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_genuine(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def normalized(self) -> "QChar":
        """Strip the global q-power (sl2-character normal form)."""
        if not self.coeffs:
            return self
        low = 0
        while self.coeffs[low] == 0:
            low += 1
        return QChar(self.coeffs[low:])

    def shifted(self, k: int) -> "QChar":
        """Multiply by q^k."""
        if not self.coeffs:
            return self
        return QChar((0,) * k + self.coeffs)

    def __add__(self, other: "QChar") -> "QChar":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return QChar(out)

    def __mul__(self, other: "QChar") -> "QChar":
        if not self.coeffs or not other.coeffs:
            return QChar(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return QChar(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QChar):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "QChar(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else (f"q^{i}" if c == 1 else f"{c}q^{i}"))
        return "QChar(" + " + ".join(terms) + ")"


def _qchar_divide(num: QChar, den: QChar) -> QChar:
    """Exact polynomial division; raises if the remainder is nonzero."""
    rem = list(num.coeffs)
    d = list(den.coeffs)
    if not d:
        raise ZeroDivisionError("division by zero q-polynomial")
    out = [0] * (len(rem) - len(d) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(d) - 1]
        if c % d[-1]:
            raise ArithmeticError("non-exact q-polynomial division")
        q = c // d[-1]
        out[k] = q
        if q:
            for i, dv in enumerate(d):
                rem[k + i] -= q * dv
    if any(rem):
        raise ArithmeticError("non-exact q-polynomial division")
    return QChar(out)


def q_bracket(k: int) -> QChar:
    """[k]_q = 1 + q + ... + q^(k-1)."""
    return QChar((1,) * k)


def q_factorial(n: int) -> QChar:
    out = QChar((1,))
    for k in range(1, n + 1):
        out = out * q_bracket(k)
    return out


def q_binomial(n: int, m: int) -> QChar:
    """Gaussian binomial [n choose m]_q via exact division of q-factorials."""
    if m < 0 or m > n:
        return QChar(())
    return _qchar_divide(q_factorial(n), q_factorial(m) * q_factorial(n - m))


def char_plethysm(m: int, n: int) -> QChar:
    """Character of Sym^m(Sym^n U) by direct basis enumeration.

    Equals q_binomial(m + n, m) exactly (lowest weight already at q^0).
    """
    counts = [0] * (m * n + 1)
    for e in plethysm_basis(m, n):
        counts[x1_count(e, n)] += 1
    return QChar(counts)


# char_wedge(m, n) == q_binomial(n+1, m).shifted(WEDGE_CHAR_SHIFT(m)): the raw
# x1 -> q specialization of the wedge basis sits m(m-1)/2 powers of q above
# the Gaussian binomial.  Pinned here and asserted in the test suite.
def WEDGE_CHAR_SHIFT(m: int) -> int:
    return m * (m - 1) // 2


def char_wedge(m: int, n: int) -> QChar:
    """Character of Wedge^m(Sym^n U) by direct basis enumeration."""
    if m > n + 1:
        return QChar(())
    counts = [0] * (m * n + 1 if m else 1)
    for t in wedge_basis(m, n):
        counts[sum(n - i for i in t)] += 1
    return QChar(counts)


def char_identity_check(a: int, b: int, i: int) -> bool:
    """Termwise character identity behind the two resolutions of length b-1.

    Compares Wedge^i(Sym^(d+b-2)U) (x) Sym^(b-1-i)(Sym^d U) against
    Sym^i(Sym^d U) (x) Wedge^(b-1-i)(Sym^(d+b-2)U) as sl2 characters
    (normalized q-polynomials).  Both sides are computed independently by
    basis enumeration and polynomial multiplication; no shared shortcut.
    """
    d = a * b
    lhs = char_wedge(i, d + b - 2) * char_plethysm(b - 1 - i, d)
    rhs = char_plethysm(i, d) * char_wedge(b - 1 - i, d + b - 2)
    return lhs.normalized() == rhs.normalized()


# ---------------------------------------------------------------------------
# sl2 operator actions on plethysm (or coordinate-ring) monomial spaces
#
# Polynomials are sparse dicts {exponent tuple: coefficient}.  All four
# actions are derivations; "plain" acts on basis monomials u_i, "dual" on
# coordinate functions phi_i.


def _derivation(poly: dict, n: int, rate, step: int) -> dict:
    out: dict = {}
    for exp, coeff in poly.items():
        if not coeff:
            continue
        for i, e in enumerate(exp):
            if not e:
                continue
            r = rate(i)
            if not r:
                continue
            j = i + step
            if j < 0 or j > n:
                continue
            new = list(exp)
            new[i] -= 1
            new[j] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + coeff * e * r
    return {k: v for k, v in out.items() if v}


def lowering_action(n: int, poly: dict) -> dict:
    """Plain lowering: derivation extending u_i -> (n-i) u_{i+1}."""
    return _derivation(poly, n, lambda i: n - i, +1)


def raising_action(n: int, poly: dict) -> dict:
    """Plain raising: derivation extending u_i -> i u_{i-1}."""
    return _derivation(poly, n, lambda i: i, -1)


def dual_lowering_action(n: int, poly: dict) -> dict:
    """Lowering on coordinate functions: phi_m -> (n-m+1) phi_{m-1}."""
    return _derivation(poly, n, lambda i: n - i + 1, -1)


def dual_raising_action(n: int, poly: dict) -> dict:
    """Raising on coordinate functions: phi_m -> (m+1) phi_{m+1}."""
    return _derivation(poly, n, lambda i: i + 1, +1)


_ACTIONS = {
    "lowering": lowering_action,
    "raising": raising_action,
    "dual_lowering": dual_lowering_action,
    "dual_raising": dual_raising_action,
}


def operator_matrix(action: str, m: int, n: int) -> dict:
    """Sparse matrix {(row, col): coeff} of an sl2 action on plethysm_basis(m, n)."""
    fn = _ACTIONS[action]
    basis = plethysm_basis(m, n)
    index = plethysm_index(m, n)
    entries = {}
    for col, exp in enumerate(basis):
        for key, val in fn(n, {exp: 1}).items():
            entries[(index[key], col)] = val
    return entries


def highest_weight_vectors(m: int, n: int, weight: int) -> list[dict]:
    """Plain-realization highest weight vectors of a given weight.

    Returns primitive integer vectors (as exponent dicts) spanning the kernel
    of the plain raising operator restricted to the weight space of
    Sym^m(Sym^n U).
    """
    from .exactalg import ExactMatrix, kernel_basis

    basis = plethysm_basis(m, n)
    cols = [e for e in basis if plain_weight(e, n) == weight]
    if not cols:
        return []
    # raising sends weight w to w + 2
    target = [e for e in basis if plain_weight(e, n) == weight + 2]
    tindex = {e: k for k, e in enumerate(target)}
    entries = {}
    for j, e in enumerate(cols):
        for key, val in raising_action(n, {e: 1}).items():
            entries[(tindex[key], j)] = val
    mat = ExactMatrix(len(target), len(cols), entries)
    out = []
    for vec in kernel_basis(mat):
        out.append({cols[i]: v for i, v in enumerate(vec) if v})
    return out


# ---------------------------------------------------------------------------
# self-duality and highest-weight proportionality scalars


def _duality_scalar(exp, n: int) -> Fraction:
    """Scalar s with sigma(u^exp) = s * phi^(reversed exp).

    sigma is the symplectic self-duality Sym^n U -> (Sym^n U)^dual induced by
    x1 ^ x2 -> 1, extended multiplicatively to plethysm monomials:
    sigma(u_i) = (-1)^i binom(n, i)^(-1) phi_{n-i}.
    """
    sign = -1 if sum(i * e for i, e in enumerate(exp)) % 2 else 1
    den = 1
    for i, e in enumerate(exp):
        if e:
            den *= comb(n, i) ** e
    return Fraction(sign, den)


def plain_to_coordinates(poly: dict, n: int) -> dict:
    """Apply the self-duality: plain plethysm monomials -> coordinate monomials."""
    out: dict = {}
    for exp, coeff in poly.items():
        rev = exp[::-1]
        val = coeff * _duality_scalar(exp, n)
        out[rev] = out.get(rev, 0) + val
    return {k: v for k, v in out.items() if v}


def coordinates_to_plain(poly: dict, n: int) -> dict:
    """Inverse of plain_to_coordinates."""
    out: dict = {}
    for exp, coeff in poly.items():
        rev = exp[::-1]
        val = coeff / _duality_scalar(rev, n)
        out[rev] = out.get(rev, 0) + val
    return {k: v for k, v in out.items() if v}


def hw_triple(matrix_entries: dict, src: tuple[int, int], dst: tuple[int, int], pairs) -> list:
    """Proportionality scalars of a coefficient-extraction map on hw vectors.

    ``matrix_entries`` is the sparse coordinate-realization matrix (rows over
    plethysm_basis(*dst), columns over plethysm_basis(*src)).  ``pairs`` is a
    list of (v, w) with v, w plain-realization monomial dicts in the source
    and target.  Each v is pushed through the self-duality, the matrix, and
    the inverse self-duality; the result must be an exact rational multiple
    a_i * w_i (EquivarianceError otherwise).  Returns [a_i].
    """
    m_src, n_src = src
    m_dst, n_dst = dst
    col_index = plethysm_index(m_src, n_src)
    row_basis = plethysm_basis(m_dst, n_dst)
    scalars = []
    for v, w in pairs:
        vec: dict = {}
        for exp, coeff in plain_to_coordinates(v, n_src).items():
            vec[col_index[exp]] = coeff
        out_vec: dict = {}
        for (r, c), a in matrix_entries.items():
            x = vec.get(c)
            if x:
                out_vec[r] = out_vec.get(r, 0) + a * x
        image = {row_basis[r]: val for r, val in out_vec.items() if val}
        image = coordinates_to_plain(image, n_dst)
        w_clean = {k: v2 for k, v2 in w.items() if v2}
        if not image:
            scalars.append(Fraction(0))
            continue
        if set(image) != set(w_clean):
            raise EquivarianceError(
                f"image support {sorted(image)} does not match target vector support {sorted(w_clean)}"
            )
        first = next(iter(sorted(w_clean)))
        a = Fraction(image[first]) / Fraction(w_clean[first])
        for key, val in w_clean.items():
            if image[key] != a * val:
                raise EquivarianceError("image is not proportional to the target hw vector")
        scalars.append(a)
    return scalars


# Hard-coded highest weight vectors for the shipped power-map case
# (squares of binary quartics): sources in z-symbols (inner degree 4),
# targets in y-symbols (inner degree 2), plain realization.
HW_SOURCE_VECTORS_2_2 = (
    {(2, 0, 0, 0, 0): 1},                                    # weight 8: z0^2
    {(1, 0, 1, 0, 0): 1, (0, 2, 0, 0, 0): -1},               # weight 4: z0 z2 - z1^2
    {(1, 0, 0, 0, 1): 1, (0, 1, 0, 1, 0): -4, (0, 0, 2, 0, 0): 3},  # weight 0
)
HW_TARGET_VECTORS_2_2 = (
    {(4, 0, 0): 1},                                          # weight 8: y0^4
    {(2, 2, 0): 1, (3, 0, 1): -1},                           # weight 4: y0^2 y1^2 - y0^3 y2
    {(0, 4, 0): 1, (1, 2, 1): -2, (2, 0, 2): 1},             # weight 0
)

# Reference normalization of the classical degree-(2,4) coefficient
# isomorphism, stored (never recomputed) for the inequality check against the
# power-map triple.
CLASSICAL_REFERENCE_TRIPLE = (Fraction(1), Fraction(1, 4), Fraction(1, 2))
