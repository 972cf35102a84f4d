"""Graded algebra instances that feed the Hochschild/cyclic machinery.

Every algebra exposes a monomial basis adapted to the unit: one basis key
is the unit and the span of the others is the canonical complement, so
reduction mod k just drops the unit key.  Elements are sparse dicts
key -> TULaurent; products and differentials of basis keys return such
dicts and everything else expands multilinearly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigurationError, ShapeMismatch
from .scalars import TULaurent, Window
from .weyl import WeylElement, zero_alpha

# ---------------------------------------------------------------------------
# element helpers (dict key -> TULaurent)
# ---------------------------------------------------------------------------

def elem_zero():
    return {}

def elem_add(e1, e2):
    out = dict(e1)
    for k, c in e2.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out

def elem_scale(e, c):
    if isinstance(c, (int, Fraction)):
        return {k: v.scale(c) for k, v in e.items() if c != 0}
    out = {}
    for k, v in e.items():
        s = v * c
        if not s.is_zero():
            out[k] = s
    return out

def elem_sub(e1, e2):
    return elem_add(e1, elem_scale(e2, -1))

def elem_is_zero(e):
    return not e


class GradedAlgebra:
    """Interface; see subclasses.  `window` is the shared coefficient window."""

    tag = "?"
    window: Window

    def unit_key(self):
        raise NotImplementedError

    def deg(self, key) -> int:
        raise NotImplementedError

    def mul(self, k1, k2):
        """Product of basis keys as element dict."""
        raise NotImplementedError

    def delta(self, key):
        """Differential of a basis key as element dict."""
        return {}

    def sort_key(self, key):
        return key

    def unit(self):
        return {self.unit_key(): TULaurent.const(self.window, 1)}

    def scalar(self, c):
        return {self.unit_key(): TULaurent.const(self.window, c)}

    def elem_mul(self, e1, e2):
        out = {}
        for k1, c1 in e1.items():
            for k2, c2 in e2.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                for k, cm in self.mul(k1, k2).items():
                    s = out.get(k)
                    v = cm * c
                    s = v if s is None else s + v
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def elem_delta(self, e):
        out = {}
        for k, c in e.items():
            for k2, cd in self.delta(k).items():
                s = out.get(k2)
                v = cd * c
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(k2, None)
                else:
                    out[k2] = s
        return out

    def elem_commutator(self, e1, e2):
        return elem_sub(self.elem_mul(e1, e2), self.elem_mul(e2, e1))

    def reduce_mod_k(self, e):
        out = dict(e)
        out.pop(self.unit_key(), None)
        return out

    def key_repr(self, key) -> str:
        return str(key)

    def key_json(self, key):
        return list(key) if isinstance(key, tuple) else key

    def homogeneous(self, e) -> bool:
        degs = {self.deg(k) for k in e}
        return len(degs) <= 1

    def elem_deg(self, e):
        degs = {self.deg(k) for k in e}
        if len(degs) > 1:
            raise ShapeMismatch("inhomogeneous element")
        return degs.pop() if degs else 0


# ---------------------------------------------------------------------------
# Weyl algebra (degree 0, delta = 0) and its commutative symbol algebra
# ---------------------------------------------------------------------------

class WeylAlg(GradedAlgebra):
    """Truncated Weyl algebra as a graded algebra concentrated in degree 0."""

    def __init__(self, d, cap, window):
        self.d = d
        self.cap = cap
        self.window = window
        self.tag = f"W{d}(cap={cap})"
        self._mul_cache = {}

    def unit_key(self):
        return zero_alpha(self.d)

    def deg(self, key):
        return 0

    def weyl(self, e) -> WeylElement:
        return WeylElement(self.d, self.cap, self.window, dict(e))

    def from_weyl(self, w: WeylElement):
        return dict(w.terms)

    def mul(self, k1, k2):
        cached = self._mul_cache.get((k1, k2))
        if cached is None:
            a = WeylElement(self.d, self.cap, self.window,
                            {k1: TULaurent.const(self.window, 1)})
            b = WeylElement(self.d, self.cap, self.window,
                            {k2: TULaurent.const(self.window, 1)})
            cached = dict(a.moyal(b).terms)
            self._mul_cache[(k1, k2)] = cached
        return cached

    def coordinate(self, index):
        alpha = [0] * (2 * self.d)
        alpha[index] = 1
        return {tuple(alpha): TULaurent.const(self.window, 1)}

    def basis_keys(self, max_degree):
        def rec(prefix, remaining, slots):
            if slots == 0:
                yield tuple(prefix)
                return
            for e in range(remaining + 1):
                yield from rec(prefix + [e], remaining - e, slots - 1)
        for total in range(max_degree + 1):
            for key in rec([], total, 2 * self.d):
                if sum(key) == total:
                    yield key


class SymbolAlg(WeylAlg):
    """Commutative quotient of the Weyl algebra (product mod t)."""

    def __init__(self, d, cap, window):
        super().__init__(d, cap, window)
        self.tag = f"O{d}(cap={cap})"

    def mul(self, k1, k2):
        alpha = tuple(a + b for a, b in zip(k1, k2))
        if sum(alpha) > self.cap:
            return {}
        return {alpha: TULaurent.const(self.window, 1)}


# ---------------------------------------------------------------------------
# k[eta] in both gradings, and W[eta]
# ---------------------------------------------------------------------------

class EtaAlg(GradedAlgebra):
    """k[eta], eta^2 = 0, differential d/d eta; deg eta is +1 or -1."""

    def __init__(self, window, eta_degree=1):
        if eta_degree not in (1, -1):
            raise ConfigurationError("eta degree must be +-1")
        self.window = window
        self.eta_degree = eta_degree
        self.tag = f"k[eta]({eta_degree:+d})"

    def unit_key(self):
        return 0

    def deg(self, key):
        return self.eta_degree if key else 0

    def mul(self, k1, k2):
        if k1 and k2:
            return {}
        return {k1 + k2: TULaurent.const(self.window, 1)}

    def delta(self, key):
        if key:
            return {0: TULaurent.const(self.window, 1)}
        return {}

    def eta(self):
        return {1: TULaurent.const(self.window, 1)}


class WeylEtaAlg(GradedAlgebra):
    """W[eta] = W (x) k[eta]; keys are (alpha, e) with e in {0,1}."""

    def __init__(self, d, cap, window, eta_degree=1):
        self.d = d
        self.cap = cap
        self.window = window
        self.eta_degree = eta_degree
        self.base = WeylAlg(d, cap, window)
        self.tag = f"W{d}[eta](cap={cap},{eta_degree:+d})"

    def unit_key(self):
        return (zero_alpha(self.d), 0)

    def deg(self, key):
        return self.eta_degree * key[1]

    def mul(self, k1, k2):
        (a1, e1), (a2, e2) = k1, k2
        if e1 and e2:
            return {}
        # eta commutes past degree-0 Weyl factors with no sign
        out = {}
        for alpha, c in self.base.mul(a1, a2).items():
            out[(alpha, e1 + e2)] = c
        return out

    def delta(self, key):
        alpha, e = key
        if e:
            return {(alpha, 0): TULaurent.const(self.window, 1)}
        return {}

    def embed_weyl(self, e, eta_power=0):
        return {(alpha, eta_power): c for alpha, c in e.items()}

    def eta(self):
        return {(zero_alpha(self.d), 1): TULaurent.const(self.window, 1)}


# ---------------------------------------------------------------------------
# 2x2 matrices over the scalars, basis adapted to the unit
# ---------------------------------------------------------------------------

_M2_TABLE = {
    # products in the basis I, H = E00-E11, E = E01, F = E10
    ("I", "I"): {"I": 1}, ("I", "H"): {"H": 1}, ("I", "E"): {"E": 1}, ("I", "F"): {"F": 1},
    ("H", "I"): {"H": 1}, ("H", "H"): {"I": 1}, ("H", "E"): {"E": 1}, ("H", "F"): {"F": -1},
    ("E", "I"): {"E": 1}, ("E", "H"): {"E": -1}, ("E", "F"): {"I": Fraction(1, 2), "H": Fraction(1, 2)},
    ("E", "E"): {},
    ("F", "I"): {"F": 1}, ("F", "H"): {"F": 1}, ("F", "E"): {"I": Fraction(1, 2), "H": Fraction(-1, 2)},
    ("F", "F"): {},
}


class Mat2Alg(GradedAlgebra):
    """2x2 matrix algebra over Q, degree 0, basis I, H, E, F."""

    def __init__(self, window):
        self.window = window
        self.tag = "M2"

    def unit_key(self):
        return "I"

    def deg(self, key):
        return 0

    def mul(self, k1, k2):
        return {k: TULaurent.const(self.window, c)
                for k, c in _M2_TABLE[(k1, k2)].items()}

    def gen(self, name):
        return {name: TULaurent.const(self.window, 1)}
