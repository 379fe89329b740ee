"""
Certified interval arithmetic over binary64.

Every operation returns an interval containing all real results for all
real operands in its arguments. Rounding is decided without touching the
FPU rounding mode: error-free transformations recover the exact rounding
error of the native result and the result is widened by one next-float
step in the direction of that error. Exact results stay degenerate.

Vectors and matrices of intervals are numpy object arrays, so the usual
``@`` and elementwise operators dispatch to :class:`Interval`.

Example:
    x = Interval(1.0) / 3
    assert Fraction(1, 3) in x
    y = iv_exp(Interval(-1.0, 1.0))
"""

import math
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import IntervalDomainError, IntervalError, IntervalOverflowError

Number = Union[int, float, Fraction]

_INF = math.inf
_SPLITTER = 134217729.0  # 2**27 + 1

# Range in which TwoSum/TwoProduct are exact.
_TINY_RESULT = 2.0**-900
_TINY_OPERAND = 2.0**-960
_HUGE_OPERAND = 2.0**995


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _finite(x: float) -> float:
    if not math.isfinite(x):
        raise IntervalOverflowError(f"non-finite endpoint {x!r}")
    return x


def _directed(s: float, err: float) -> Tuple[float, float]:
    """Bounds of the exact value s + err, given the exact rounding error err."""
    if err > 0.0:
        return s, _finite(_up(s))
    if err < 0.0:
        return _finite(_down(s)), s
    return s, s


def _both_ways(s: float) -> Tuple[float, float]:
    return _finite(_down(s)), _finite(_up(s))


def _in_range(*values: float) -> bool:
    return all(_TINY_OPERAND <= abs(v) <= _HUGE_OPERAND for v in values)


def _sum_bounds(a: float, b: float) -> Tuple[float, float]:
    s = _finite(a + b)
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return _directed(s, err)


def _split(a: float) -> Tuple[float, float]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_product(a: float, b: float) -> Tuple[float, float]:
    p = a * b
    a1, a2 = _split(a)
    b1, b2 = _split(b)
    err = a2 * b2 - (((p - a1 * b1) - a2 * b1) - a1 * b2)
    return p, err


def _product_bounds(a: float, b: float) -> Tuple[float, float]:
    if a == 0.0 or b == 0.0:
        return 0.0, 0.0
    p = _finite(a * b)
    if abs(p) < _TINY_RESULT or not _in_range(a, b):
        return _both_ways(p)
    p, err = _two_product(a, b)
    return _directed(p, err)


def _quotient_bounds(a: float, b: float) -> Tuple[float, float]:
    if a == 0.0:
        return 0.0, 0.0
    q = _finite(a / b)
    if abs(q) < _TINY_RESULT or not _in_range(a, b, q):
        return _both_ways(q)
    # a - p is exact (Sterbenz) and the final subtraction keeps the sign.
    p, err = _two_product(q, b)
    remainder = (a - p) - err
    if b < 0.0:
        remainder = -remainder
    return _directed(q, remainder)


class Interval:
    """
    Closed interval [lo, hi] with binary64 endpoints.

    Both endpoints are finite and lo <= hi. Degenerate intervals (lo == hi)
    represent exactly representable reals.

    Operators accept Interval, int, float and Fraction operands; non-interval
    operands are promoted to the tightest enclosing interval.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: Optional[float] = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise IntervalError("NaN endpoint")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise IntervalOverflowError(f"non-finite endpoint in [{lo}, {hi}]")
        if lo > hi:
            raise IntervalError(f"empty interval [{lo!r}, {hi!r}]")
        self.lo = lo
        self.hi = hi

    # === Construction ===

    @classmethod
    def from_fraction(cls, q: Union[Fraction, int]) -> "Interval":
        """Tightest interval (width <= 1 ulp) containing the rational q."""
        q = Fraction(q)
        f = float(q)  # correctly rounded
        exact = Fraction(f)
        if exact == q:
            return cls(f, f)
        if exact < q:
            return cls(f, _finite(_up(f)))
        return cls(_finite(_down(f)), f)

    @classmethod
    def from_hex(cls, pair: Sequence[str]) -> "Interval":
        lo, hi = pair
        return cls(float.fromhex(lo), float.fromhex(hi))

    def hex(self) -> List[str]:
        """Bit-exact endpoint encoding ``[lo_hex, hi_hex]``."""
        return [self.lo.hex(), self.hi.hex()]

    # === Accessors ===

    @property
    def mid(self) -> float:
        """Floating midpoint (not rigorous)."""
        if self.lo == self.hi:
            return self.lo
        return 0.5 * self.lo + 0.5 * self.hi

    @property
    def rad(self) -> float:
        """Upper bound on the distance from ``mid`` to either endpoint."""
        m = self.mid
        return max(_sum_bounds(m, -self.lo)[1], _sum_bounds(self.hi, -m)[1])

    @property
    def width(self) -> float:
        """Upper bound on hi - lo."""
        return _sum_bounds(self.hi, -self.lo)[1]

    @property
    def mag(self) -> float:
        """max |a| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    @property
    def mig(self) -> float:
        """min |a| over the interval."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, p: Any) -> bool:
        if isinstance(p, Interval):
            return iv_subset(p, self)
        if isinstance(p, Fraction):
            return Fraction(self.lo) <= p <= Fraction(self.hi)
        return self.lo <= p <= self.hi

    # === Dunder plumbing ===

    def __repr__(self) -> str:
        if self.lo == self.hi:
            return f"Interval({self.lo!r})"
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self) -> str:
        return f"[{self.lo:.17g}, {self.hi:.17g}]"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __getstate__(self) -> Tuple[float, float]:
        return self.lo, self.hi

    def __setstate__(self, state: Tuple[float, float]) -> None:
        self.lo, self.hi = state

    def __add__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_add(self, y)

    def __radd__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_add(y, self)

    def __sub__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_sub(self, y)

    def __rsub__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_sub(y, self)

    def __mul__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_mul(self, y)

    def __rmul__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_mul(y, self)

    def __truediv__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_div(self, y)

    def __rtruediv__(self, other: Any) -> "Interval":
        y = _coerce(other)
        return NotImplemented if y is None else iv_div(y, self)

    def __neg__(self) -> "Interval":
        return iv_neg(self)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        return iv_abs(self)


def _coerce(value: Any) -> Optional[Interval]:
    if isinstance(value, Interval):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, (float, np.floating)):
        return Interval(float(value))
    if isinstance(value, (int, np.integer, Fraction)):
        return Interval.from_fraction(Fraction(int(value)) if not isinstance(value, Fraction) else value)
    return None


def as_interval(value: Any) -> Interval:
    """Promote a number to an enclosing interval."""
    x = _coerce(value)
    if x is None:
        raise TypeError(f"cannot convert {type(value).__name__} to Interval")
    return x


# === Scalar operations ===


def iv_add(x: Interval, y: Interval) -> Interval:
    return Interval(_sum_bounds(x.lo, y.lo)[0], _sum_bounds(x.hi, y.hi)[1])


def iv_sub(x: Interval, y: Interval) -> Interval:
    return Interval(_sum_bounds(x.lo, -y.hi)[0], _sum_bounds(x.hi, -y.lo)[1])


def iv_mul(x: Interval, y: Interval) -> Interval:
    if x.lo == x.hi and y.lo == y.hi:
        return Interval(*_product_bounds(x.lo, y.lo))
    bounds = [
        _product_bounds(x.lo, y.lo),
        _product_bounds(x.lo, y.hi),
        _product_bounds(x.hi, y.lo),
        _product_bounds(x.hi, y.hi),
    ]
    return Interval(min(b[0] for b in bounds), max(b[1] for b in bounds))


def iv_div(x: Interval, y: Interval) -> Interval:
    if y.lo <= 0.0 <= y.hi:
        raise IntervalDomainError(f"division by interval containing zero: {y}")
    bounds = [
        _quotient_bounds(x.lo, y.lo),
        _quotient_bounds(x.lo, y.hi),
        _quotient_bounds(x.hi, y.lo),
        _quotient_bounds(x.hi, y.hi),
    ]
    return Interval(min(b[0] for b in bounds), max(b[1] for b in bounds))


def iv_neg(x: Interval) -> Interval:
    return Interval(-x.hi, -x.lo)


def iv_abs(x: Interval) -> Interval:
    if x.lo >= 0.0:
        return x
    if x.hi <= 0.0:
        return iv_neg(x)
    return Interval(0.0, max(-x.lo, x.hi))


def iv_hull(x: Interval, y: Interval) -> Interval:
    return Interval(min(x.lo, y.lo), max(x.hi, y.hi))


def iv_contains(x: Interval, p: float) -> bool:
    return x.lo <= p <= x.hi


def iv_subset(x: Interval, y: Interval) -> bool:
    """True when x is contained in y."""
    return y.lo <= x.lo and x.hi <= y.hi


def iv_mag(x: Interval) -> float:
    return x.mag


def iv_intersect(x: Interval, y: Interval) -> Optional[Interval]:
    lo, hi = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo > hi:
        return None
    return Interval(lo, hi)


def iv_intersects(x: Interval, y: Interval) -> bool:
    return max(x.lo, y.lo) <= min(x.hi, y.hi)


# === Exponential ===

EXP_ARGUMENT_BOUND = 60.0
EXP_TAYLOR_DEGREE = 20

# ln2 = LN2_HI + LN2_LO; LN2_HI has 32 significant bits so n * LN2_HI is
# exact for |n| < 2**20.
_LN2_HI = float.fromhex("0x1.62e42feep-1")
_LN2_LO = float.fromhex("0x1.a39ef35793c76p-33")
_LN2_LO_ENCLOSURE = Interval(
    _LN2_LO - 4 * math.ulp(_LN2_LO), _LN2_LO + 4 * math.ulp(_LN2_LO)
)
_INV_FACTORIALS = [
    Interval.from_fraction(Fraction(1, math.factorial(k)))
    for k in range(EXP_TAYLOR_DEGREE + 1)
]
# Lagrange remainder coefficient e^xi / 21! for |xi| <= 1/2.
_REMAINDER = Interval(0.6, 1.65) * Interval.from_fraction(
    Fraction(1, math.factorial(EXP_TAYLOR_DEGREE + 1))
)


def _exp_point(x: float) -> Interval:
    n = int(round(x / _LN2_HI))
    r = Interval(x)
    if n:
        r = r - Interval(n * _LN2_HI)
        r = r - Interval(float(n)) * _LN2_LO_ENCLOSURE
    if r.mag > 0.5:
        raise IntervalDomainError(f"range reduction failed for {x!r}")

    p = _REMAINDER
    for k in range(EXP_TAYLOR_DEGREE, -1, -1):
        p = p * r + _INV_FACTORIALS[k]

    return Interval(math.ldexp(p.lo, n), math.ldexp(p.hi, n))


def iv_exp(x: Union[Interval, float]) -> Interval:
    """
    Enclosure of exp over x.

    Args:
        x: Interval inside [-60, 60]

    Raises:
        IntervalDomainError: argument outside the supported range
    """
    x = as_interval(x)
    if x.lo < -EXP_ARGUMENT_BOUND or x.hi > EXP_ARGUMENT_BOUND:
        raise IntervalDomainError(
            f"exp argument {x} outside [-{EXP_ARGUMENT_BOUND}, {EXP_ARGUMENT_BOUND}]"
        )
    lower = _exp_point(x.lo)
    if x.lo == x.hi:
        return lower
    return Interval(lower.lo, _exp_point(x.hi).hi)


# === Vectors and matrices ===


def ivec(values: Sequence[Any]) -> np.ndarray:
    """Interval vector (object array) from numbers or intervals."""
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = as_interval(v)
    return out


def imat(rows: Any) -> np.ndarray:
    """Interval matrix (object array) from nested numbers or intervals."""
    arr = np.asarray(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = as_interval(v)
    return out


def imat_identity(n: int = 4) -> np.ndarray:
    return imat(np.eye(n))


def _interval_array(A: Any, ndim: int) -> np.ndarray:
    arr = np.asarray(A, dtype=object)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {arr.shape}")
    if all(isinstance(v, Interval) for v in arr.flat):
        return arr
    return imat(arr) if ndim == 2 else ivec(list(arr))


def imat_mul(A: Any, B: Any) -> np.ndarray:
    A = _interval_array(A, 2)
    B = _interval_array(B, 2)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    return A @ B


def imat_vec(A: Any, v: Any) -> np.ndarray:
    A = _interval_array(A, 2)
    v = _interval_array(v, 1)
    if A.shape[1] != v.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {v.shape}")
    return A @ v


def ivec_inf_norm(v: Any) -> float:
    """Upper bound on max_i |v_i| over all real representatives."""
    v = _interval_array(v, 1)
    return max(x.mag for x in v)


def imat_inf_norm(A: Any) -> float:
    """Upper bound on the maximum absolute row sum."""
    A = _interval_array(A, 2)
    bound = 0.0
    for row in A:
        total = Interval(0.0)
        for x in row:
            total = total + Interval(x.mag)
        bound = max(bound, total.hi)
    return bound


def imat_mid(A: Any) -> np.ndarray:
    """Float matrix of midpoints."""
    A = _interval_array(A, 2)
    return np.array([[x.mid for x in row] for row in A], dtype=float)


def imat_det(A: Any) -> Interval:
    """
    Determinant enclosure.

    Gaussian elimination without pivoting; tight for near-diagonal input.
    Falls back to Laplace expansion when a pivot contains zero.
    """
    A = _interval_array(A, 2)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"determinant of non-square shape {A.shape}")
    rows = [list(row) for row in A]
    try:
        return _det_elimination([list(r) for r in rows])
    except IntervalDomainError:
        return _det_laplace(rows)


def _det_elimination(rows: List[List[Interval]]) -> Interval:
    n = len(rows)
    det = Interval(1.0)
    for k in range(n):
        pivot = rows[k][k]
        if 0.0 in pivot:
            raise IntervalDomainError("pivot contains zero")
        det = det * pivot
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            for j in range(k + 1, n):
                rows[i][j] = rows[i][j] - factor * rows[k][j]
    return det


def _det_laplace(rows: List[List[Interval]]) -> Interval:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Interval(0.0)
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * _det_laplace(minor)
        total = total - term if j % 2 else total + term
    return total
