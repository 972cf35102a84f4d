"""Truncated Weyl algebra of a 2d-dimensional symplectic space.

Elements are sparse polynomials in the dual Darboux coordinates
x_1..x_d, xi_1..xi_d with TULaurent coefficients, total degree capped.
The product is the Moyal expansion

    f * g = sum_n (1/n!) (t/2)^n P^n(f, g)

where P is the Poisson bidifferential fixed by the convention table:
P(f,g) = MOYAL_SIGN * sum_i (d_x f d_xi g - d_xi f d_x g), so that
[x_i, xi_i] = MOYAL_SIGN * t.
"""

from __future__ import annotations

from fractions import Fraction

from .conventions import MOYAL_SIGN
from .errors import ConfigurationError, ContractViolation, ShapeMismatch
from .scalars import Q, TULaurent, Window

# exponent vectors are tuples of length 2d, coordinates x_1..x_d, xi_1..xi_d


def zero_alpha(d: int):
    return (0,) * (2 * d)


class WeylElement:
    """Capped polynomial in 2d variables with TULaurent coefficients."""

    __slots__ = ("d", "cap", "window", "terms", "truncated", "_hash")

    def __init__(self, d, cap, window, terms=None, truncated=False):
        self.d = d
        self.cap = cap
        self.window = window
        clean = {}
        clipped = truncated
        if terms:
            for alpha, c in terms.items():
                if not isinstance(c, TULaurent):
                    c = TULaurent.const(window, c)
                if c.window != window:
                    raise ConfigurationError("coefficient window mismatch")
                clipped = clipped or c.truncated
                if c.is_zero():
                    continue
                if sum(alpha) > cap:
                    clipped = True
                    continue
                clean[alpha] = c
        self.terms = clean
        self.truncated = clipped
        self._hash = None

    # ---- constructors ---------------------------------------------------

    @staticmethod
    def zero(d, cap, window):
        return WeylElement(d, cap, window)

    @staticmethod
    def const(d, cap, window, c):
        return WeylElement(d, cap, window, {zero_alpha(d): TULaurent.const(window, c)})

    @staticmethod
    def unit(d, cap, window):
        return WeylElement.const(d, cap, window, 1)

    @staticmethod
    def coordinate(d, cap, window, index):
        """x_i for index in [0, d), xi_{index-d} for index in [d, 2d)."""
        alpha = [0] * (2 * d)
        alpha[index] = 1
        return WeylElement(d, cap, window, {tuple(alpha): TULaurent.const(window, 1)})

    @staticmethod
    def x(d, cap, window, i=0):
        return WeylElement.coordinate(d, cap, window, i)

    @staticmethod
    def xi(d, cap, window, i=0):
        return WeylElement.coordinate(d, cap, window, d + i)

    @staticmethod
    def monomial(d, cap, window, alpha, coeff=1, t_exp=0, u_exp=0):
        return WeylElement(
            d, cap, window,
            {tuple(alpha): TULaurent.monomial(window, coeff, t_exp, u_exp)})

    def _shape(self):
        return (self.d, self.cap, self.window)

    def _check(self, other):
        if self._shape() != other._shape():
            raise ShapeMismatch(f"{self._shape()} vs {other._shape()}")

    # ---- linear structure -------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(a, None)
            else:
                out[a] = s
        return WeylElement(self.d, self.cap, self.window, out,
                           self.truncated or other.truncated)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, TULaurent):
            return WeylElement(self.d, self.cap, self.window,
                               {a: v * c for a, v in self.terms.items()},
                               self.truncated)
        return WeylElement(self.d, self.cap, self.window,
                           {a: v.scale(c) for a, v in self.terms.items()},
                           self.truncated)

    def shift(self, dt=0, du=0):
        return WeylElement(self.d, self.cap, self.window,
                           {a: v.shift(dt, du) for a, v in self.terms.items()},
                           self.truncated)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # ---- products ---------------------------------------------------------

    def pointwise_mul(self, other):
        self._check(other)
        out = {}
        clipped = self.truncated or other.truncated
        for a1, c1 in self.terms.items():
            for a2, c2 in other.terms.items():
                a = tuple(e1 + e2 for e1, e2 in zip(a1, a2))
                if sum(a) > self.cap:
                    clipped = True
                    continue
                c = c1 * c2
                clipped = clipped or c.truncated
                s = out.get(a)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(a, None)
                else:
                    out[a] = s
        return WeylElement(self.d, self.cap, self.window, out, clipped)

    def diff(self, index):
        """Formal partial derivative in coordinate `index`."""
        out = {}
        for a, c in self.terms.items():
            e = a[index]
            if e == 0:
                continue
            b = list(a)
            b[index] = e - 1
            out[tuple(b)] = c.scale(e)
        return WeylElement(self.d, self.cap, self.window, out, self.truncated)

    def moyal(self, other):
        """Moyal product; the n-sum terminates at min total degree."""
        self._check(other)
        d = self.d
        result = self.pointwise_mul(other)
        # iterated bidifferential: maintain list of (f-part, g-part) pairs
        max_n = min(max((sum(a) for a in self.terms), default=0),
                    max((sum(a) for a in other.terms), default=0))
        half_t = TULaurent.monomial(self.window, Fraction(MOYAL_SIGN, 2), 1, 0)
        pairs = [(self, other)]
        coeff = TULaurent.const(self.window, 1)
        for n in range(1, max_n + 1):
            new_pairs = []
            for f, g in pairs:
                for i in range(d):
                    new_pairs.append((f.diff(i), g.diff(d + i)))
                    new_pairs.append((f.diff(d + i).scale(-1), g.diff(i)))
            pairs = [(f, g) for f, g in new_pairs if f and g]
            if not pairs:
                break
            coeff = coeff * half_t
            inv_fact = Fraction(1)
            for k in range(2, n + 1):
                inv_fact /= k
            term = None
            for f, g in pairs:
                p = f.pointwise_mul(g)
                term = p if term is None else term + p
            if term is not None and not term.is_zero():
                result = result + term.scale(coeff).scale(inv_fact)
        return result

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return self.moyal(other)
        if isinstance(other, (int, Fraction, TULaurent)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def commutator(self, other):
        return self.moyal(other) - other.moyal(self)

    # ---- structure maps -----------------------------------------------------

    def constant_part(self) -> TULaurent:
        return self.terms.get(zero_alpha(self.d), TULaurent.zero(self.window))

    def strip_constant(self):
        out = dict(self.terms)
        out.pop(zero_alpha(self.d), None)
        return WeylElement(self.d, self.cap, self.window, out, self.truncated)

    def linear_part(self):
        out = {a: c for a, c in self.terms.items() if sum(a) == 1}
        return WeylElement(self.d, self.cap, self.window, out, self.truncated)

    def homogeneous_part(self, degree):
        out = {a: c for a, c in self.terms.items() if sum(a) == degree}
        return WeylElement(self.d, self.cap, self.window, out, self.truncated)

    def symbol(self):
        """Reduce mod t: drop every term with nonzero t-exponent."""
        if not self.window.contains(0, 0):
            raise ConfigurationError("window excludes t^0")
        out = {}
        for a, c in self.terms.items():
            kept = {(i, j): v for (i, j), v in c.coeffs.items() if i == 0}
            if kept:
                out[a] = TULaurent(self.window, kept, c.truncated)
        return WeylElement(self.d, self.cap, self.window, out, self.truncated)

    def filtration_order(self):
        """Largest p with the element in F_{-p}: min over terms of
        (polynomial degree + 2 * t-exponent).  None for the zero element."""
        best = None
        for a, c in self.terms.items():
            for (i, _j) in c.coeffs:
                val = sum(a) + 2 * i
                if best is None or val < best:
                    best = val
        return best

    # ---- canonical form / serialization ---------------------------------

    def key(self):
        return tuple(sorted((a, c.key()) for a, c in self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self._shape() == other._shape() and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._shape(), self.key()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"x{i+1}" for i in range(self.d)] + [f"xi{i+1}" for i in range(self.d)]
        bits = []
        for a, c in sorted(self.terms.items()):
            mono = "*".join(f"{names[k]}^{e}" if e > 1 else names[k]
                            for k, e in enumerate(a) if e)
            cs = repr(c)
            if "+" in cs:
                cs = f"({cs})"
            bits.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(bits)

    def to_json(self):
        return {"d": self.d, "cap": self.cap,
                "terms": [{"alpha": list(a), "coeff": c.to_json()}
                          for a, c in sorted(self.terms.items())]}

    @staticmethod
    def from_json(obj, window=None):
        terms = {}
        w = window
        for item in obj["terms"]:
            c = TULaurent.from_json(item["coeff"])
            w = w or c.window
            terms[tuple(item["alpha"])] = c
        if w is None:
            raise ConfigurationError("cannot infer window for zero element")
        return WeylElement(obj["d"], obj["cap"], w, terms)


# ---------------------------------------------------------------------------
# Derivations (1/t) ad(f) and the central extension cocycle
# ---------------------------------------------------------------------------

class WeylDerivation:
    """Derivation (1/t) ad(f); the stored generator is constant-free."""

    __slots__ = ("generator",)

    def __init__(self, generator: WeylElement, normalize: bool = True):
        self.generator = generator.strip_constant() if normalize else generator

    def apply(self, f: WeylElement) -> WeylElement:
        return self.generator.commutator(f).shift(dt=-1)

    def bracket(self, other: "WeylDerivation") -> "WeylDerivation":
        g = self.generator.commutator(other.generator).shift(dt=-1)
        return WeylDerivation(g)

    def __eq__(self, other):
        return self.generator == other.generator

    def __hash__(self):
        return hash(("WeylDerivation", self.generator))

    def __repr__(self):
        return f"(1/t)ad({self.generator!r})"


def moyal_mul(f: WeylElement, g: WeylElement) -> WeylElement:
    return f.moyal(g)


def commutator(f: WeylElement, g: WeylElement) -> WeylElement:
    return f.commutator(g)


def filtration_order(f: WeylElement):
    return f.filtration_order()


def symbol(f: WeylElement) -> WeylElement:
    return f.symbol()


def derivation_apply(D: WeylDerivation, f: WeylElement) -> WeylElement:
    return D.apply(f)


def sp_matrix_of_quadratic(q: WeylElement):
    """Matrix of (1/t)ad(q) on span(x_1..xi_d), columns indexed by basis.

    Requires q homogeneous quadratic and t-free.
    """
    if q.is_zero():
        return [[TULaurent.zero(q.window) for _ in range(2 * q.d)]
                for _ in range(2 * q.d)]
    if any(sum(a) != 2 for a in q.terms):
        raise ContractViolation("generator is not homogeneous quadratic")
    if any(i != 0 for c in q.terms.values() for (i, _j) in c.coeffs):
        raise ContractViolation("generator is not t-free")
    D = WeylDerivation(q)
    n = 2 * q.d
    cols = []
    for j in range(n):
        v = WeylElement.coordinate(q.d, q.cap, q.window, j)
        image = D.apply(v)
        if image.homogeneous_part(1) != image:
            raise ContractViolation("image not linear; cap too small?")
        col = []
        for i in range(n):
            alpha = [0] * n
            alpha[i] = 1
            col.append(image.terms.get(tuple(alpha), TULaurent.zero(q.window)))
        cols.append(col)
    # matrix[i][j] = coefficient of coordinate i in D(coordinate j)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def central_cocycle_theta(X: WeylDerivation, Y: WeylDerivation) -> TULaurent:
    """Central defect [X,Y]~ - [X~,Y~] of the constant-free splitting.

    Lives in (1/t)Q[[t]]: it is minus the constant term of the bracket of
    the lifted generators, divided by t^2 (the bracket of generators is
    t-divisible so the result has t-order >= -1).
    """
    f0 = X.generator
    g0 = Y.generator
    return -f0.commutator(g0).constant_part().shift(dt=-2)
