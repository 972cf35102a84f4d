"""Exact scalars: windowed bivariate Laurent series in t and u over Q.

t is the deformation parameter (filtration weight 2, scalar degree 0),
u the periodicity parameter (homological degree -2).  All arithmetic is
exact over Fraction; products that fall outside the window are clipped
and the clip is recorded on the result, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError

Q = Fraction


def rat(num, den=1) -> Fraction:
    return Fraction(num, den)


@dataclass(frozen=True)
class Window:
    """Exponent box [t_min, t_max] x [u_min, u_max] for TULaurent supports."""

    t_min: int
    t_max: int
    u_min: int
    u_max: int

    def __post_init__(self):
        if self.t_min > self.t_max or self.u_min > self.u_max:
            raise ConfigurationError(f"empty window {self}")

    def contains(self, i: int, j: int) -> bool:
        return self.t_min <= i <= self.t_max and self.u_min <= j <= self.u_max

    def to_json(self):
        return {"t_min": self.t_min, "t_max": self.t_max,
                "u_min": self.u_min, "u_max": self.u_max}

    @staticmethod
    def from_json(obj) -> "Window":
        return Window(obj["t_min"], obj["t_max"], obj["u_min"], obj["u_max"])


class TULaurent:
    """Sparse exact Laurent polynomial in t, u clipped to a window.

    Immutable.  `truncated` is True iff some nonzero term was discarded
    while producing this value (directly or in any ancestor operand).
    """

    __slots__ = ("window", "coeffs", "truncated", "_hash")

    def __init__(self, window: Window, coeffs=None, truncated: bool = False):
        self.window = window
        clean = {}
        clipped = truncated
        if coeffs:
            for (i, j), c in coeffs.items():
                c = Fraction(c)
                if c == 0:
                    continue
                if window.contains(i, j):
                    clean[(i, j)] = c
                else:
                    clipped = True
        self.coeffs = clean
        self.truncated = clipped
        self._hash = None

    # ---- constructors -------------------------------------------------

    @staticmethod
    def zero(window: Window) -> "TULaurent":
        return TULaurent(window)

    @staticmethod
    def const(window: Window, c) -> "TULaurent":
        return TULaurent(window, {(0, 0): Fraction(c)})

    @staticmethod
    def monomial(window: Window, c, t_exp: int = 0, u_exp: int = 0) -> "TULaurent":
        return TULaurent(window, {(t_exp, u_exp): Fraction(c)})

    def one_like(self) -> "TULaurent":
        return TULaurent.const(self.window, 1)

    # ---- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "TULaurent"):
        if self.window != other.window:
            raise ConfigurationError(
                f"window mismatch {self.window} vs {other.window}")

    # ---- ring operations ----------------------------------------------

    def __add__(self, other: "TULaurent") -> "TULaurent":
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TULaurent(self.window, out, self.truncated or other.truncated)

    def __neg__(self) -> "TULaurent":
        return TULaurent(self.window, {k: -c for k, c in self.coeffs.items()},
                         self.truncated)

    def __sub__(self, other: "TULaurent") -> "TULaurent":
        return self + (-other)

    def __mul__(self, other) -> "TULaurent":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = {}
        clipped = self.truncated or other.truncated
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                if self.window.contains(*k):
                    s = out.get(k, Fraction(0)) + c1 * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
                else:
                    clipped = True
        return TULaurent(self.window, out, clipped)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "TULaurent":
        c = Fraction(c)
        if c == 0:
            return TULaurent(self.window, {}, self.truncated)
        return TULaurent(self.window, {k: c * v for k, v in self.coeffs.items()},
                         self.truncated)

    def shift(self, dt: int = 0, du: int = 0) -> "TULaurent":
        """Multiply by t^dt u^du (clips against the window)."""
        out = {}
        clipped = self.truncated
        for (i, j), c in self.coeffs.items():
            k = (i + dt, j + du)
            if self.window.contains(*k):
                out[k] = c
            else:
                clipped = True
        return TULaurent(self.window, out, clipped)

    # ---- inspection ---------------------------------------------------

    def coeff(self, t_exp: int = 0, u_exp: int = 0) -> Fraction:
        return self.coeffs.get((t_exp, u_exp), Fraction(0))

    def rescaled(self, window: Window) -> "TULaurent":
        """Same terms in a different window (clips if needed)."""
        return TULaurent(window, dict(self.coeffs), self.truncated)

    def support(self):
        return sorted(self.coeffs)

    # ---- equality / hashing -------------------------------------------

    def key(self):
        return tuple(sorted(self.coeffs.items()))

    def __eq__(self, other):
        if not isinstance(other, TULaurent):
            return NotImplemented
        return self.window == other.window and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.window, self.key()))
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (i, j), c in sorted(self.coeffs.items()):
            s = str(c)
            if i:
                s += f"*t^{i}"
            if j:
                s += f"*u^{j}"
            bits.append(s)
        flag = " [clipped]" if self.truncated else ""
        return " + ".join(bits) + flag

    # ---- serialization -------------------------------------------------

    def to_json(self):
        return {
            "window": self.window.to_json(),
            "terms": [{"t": i, "u": j, "num": c.numerator, "den": c.denominator}
                      for (i, j), c in sorted(self.coeffs.items())],
        }

    @staticmethod
    def from_json(obj) -> "TULaurent":
        w = Window.from_json(obj["window"])
        coeffs = {(term["t"], term["u"]): Fraction(term["num"], term["den"])
                  for term in obj["terms"]}
        return TULaurent(w, coeffs)


# ---------------------------------------------------------------------------
# Univariate exact series for the named characteristic expansions.
# A series of order N is a list [c_0, ..., c_N] of Fractions.
# ---------------------------------------------------------------------------

def series_mul(a, b, order: int):
    out = [Fraction(0)] * (order + 1)
    for i, ca in enumerate(a):
        if i > order or ca == 0:
            continue
        for j, cb in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ca * cb
    return out

def series_add(a, b, order: int):
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        if i < len(a):
            out[i] += a[i]
        if i < len(b):
            out[i] += b[i]
    return out

def series_reciprocal(a, order: int):
    if not a or a[0] == 0:
        raise ConfigurationError("series reciprocal needs a unit constant term")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / a[0]
    for n in range(1, order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if k < len(a):
                s += a[k] * inv[n - k]
        inv[n] = -s / a[0]
    return inv

def series_exp(c, order: int):
    """Exact expansion of e^{c z} to the given order."""
    c = Fraction(c)
    out = [Fraction(0)] * (order + 1)
    term = Fraction(1)
    for n in range(order + 1):
        out[n] = term
        term = term * c / (n + 1)
    return out

def series_shift_down(a, order: int):
    """Divide by z; the constant term must vanish."""
    if a and a[0] != 0:
        raise ConfigurationError("series not divisible by z")
    out = [a[i] if i < len(a) else Fraction(0) for i in range(1, order + 2)]
    return out


SERIES_NAMES = ("EXP", "SINH_RATIO", "AHAT", "AHAT_INV_ETHETA_FACTOR")


def series_expand(name: str, order: int):
    """Expand one of the named characteristic series to the given order.

    EXP         e^z
    SINH_RATIO  (e^{z/2} - e^{-z/2}) / z
    AHAT        z / (e^{z/2} - e^{-z/2})  (reciprocal of SINH_RATIO)
    AHAT_INV_ETHETA_FACTOR
                SINH_RATIO(z) * e^{-theta} with theta a second formal
                symbol; returned as {(z_pow, theta_pow): Fraction}.
    """
    if order < 0:
        raise ConfigurationError("order must be >= 0")
    if name == "EXP":
        return series_exp(1, order)
    if name == "SINH_RATIO":
        plus = series_exp(Fraction(1, 2), order + 1)
        minus = series_exp(Fraction(-1, 2), order + 1)
        diff = [p - m for p, m in zip(plus, minus)]
        return series_shift_down(diff, order)[: order + 1]
    if name == "AHAT":
        return series_reciprocal(series_expand("SINH_RATIO", order), order)
    if name == "AHAT_INV_ETHETA_FACTOR":
        s = series_expand("SINH_RATIO", order)
        out = {}
        fact = Fraction(1)
        for q in range(order + 1):
            coeff_theta = fact * (-1) ** q
            for p, c in enumerate(s):
                if p + q > order or c == 0:
                    continue
                out[(p, q)] = c * coeff_theta
            fact = fact / (q + 1)
        return out
    raise ConfigurationError(f"unknown series name {name!r}")
