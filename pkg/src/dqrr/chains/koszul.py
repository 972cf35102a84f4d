"""Koszul complex of the Weyl algebra, formal de Rham forms, comparison
maps, the degree-0 trace density splitting, HKR, and the t/u rescalings.

Conventions pinned by the calibration suite:
  * wedges embed into tensors by Alt = sum of signed permutations, no 1/q!;
  * the contraction iota_v against the symplectic volume is normalized so
    the full wedge x_1 ^ .. ^ x_d ^ xi_1 ^ .. ^ xi_d contracts omega^d to 1;
  * the Koszul differential uses the plain Moyal commutator [f, v_i]
    (t-divisible), which intertwines with t * d_DR on the de Rham side.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from ..errors import ConfigurationError, ContractViolation, ShapeMismatch
from ..scalars import TULaurent
from ..weyl import WeylElement, zero_alpha
from .core import Chain


def _sort_sign(indices):
    """Sort a tuple of distinct indices; return (sorted, sign) or None."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return tuple(idx), sign


# ---------------------------------------------------------------------------
# Koszul chains: finite combinations  (wedge subset) -> WeylElement
# ---------------------------------------------------------------------------

class KoszulChain:
    """Element of W (x) Lambda^* V*: wedge tuples index dual Darboux basis
    covectors (0..d-1 are x's, d..2d-1 are xi's)."""

    __slots__ = ("d", "cap", "window", "terms")

    def __init__(self, d, cap, window, terms=None):
        self.d = d
        self.cap = cap
        self.window = window
        clean = {}
        if terms:
            for wedge, f in terms.items():
                if not isinstance(f, WeylElement):
                    raise ShapeMismatch("Koszul coefficients are Weyl elements")
                if f.is_zero():
                    continue
                srt = _sort_sign(wedge)
                if srt is None:
                    continue
                wedge2, sign = srt
                g = f if sign > 0 else f.scale(-1)
                if wedge2 in clean:
                    g = clean[wedge2] + g
                if g.is_zero():
                    clean.pop(wedge2, None)
                else:
                    clean[wedge2] = g
        self.terms = clean

    @staticmethod
    def single(d, cap, window, wedge, f):
        return KoszulChain(d, cap, window, {tuple(wedge): f})

    def __add__(self, other):
        out = dict(self.terms)
        for w, f in other.terms.items():
            g = out.get(w)
            g = f if g is None else g + f
            if g.is_zero():
                out.pop(w, None)
            else:
                out[w] = g
        return KoszulChain(self.d, self.cap, self.window, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return KoszulChain(self.d, self.cap, self.window,
                           {w: f.scale(c) for w, f in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, KoszulChain):
            return NotImplemented
        return (self.d, self.cap, self.window) == (other.d, other.cap, other.window) \
            and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return "  +  ".join(f"[{f!r}] e{list(w)}" for w, f in sorted(self.terms.items()))


def _coordinate(d, cap, window, index):
    return WeylElement.coordinate(d, cap, window, index)


def koszul_partial(k: KoszulChain) -> KoszulChain:
    """d(f (x) v_1^..^v_q) = sum_i (-1)^{i-1} [f, v_i] (x) drop_i.

    The Moyal commutator with a coordinate is t-divisible; this operator
    intertwines the comparison map with t * d_DR.
    """
    out = KoszulChain(k.d, k.cap, k.window)
    for wedge, f in k.terms.items():
        for pos, idx in enumerate(wedge):
            v = _coordinate(k.d, k.cap, k.window, idx)
            g = f.commutator(v)
            if g.is_zero():
                continue
            if pos % 2:
                g = g.scale(-1)
            out = out + KoszulChain.single(k.d, k.cap, k.window,
                                           wedge[:pos] + wedge[pos + 1:], g)
    return out


def koszul_to_hochschild(k: KoszulChain, algebra) -> Chain:
    """f (x) v_1^..^v_q  ->  f (x) Alt(v_1 (x) ... (x) v_q), a Hochschild chain."""
    words = {}
    for wedge, f in k.terms.items():
        q = len(wedge)
        for alpha, c in f.terms.items():
            for perm in permutations(range(q)):
                sign = _perm_sign(perm)
                word = (alpha,) + tuple(_basis_alpha(k.d, wedge[j]) for j in perm)
                s = c.scale(sign)
                prev = words.get(word)
                prev = s if prev is None else prev + s
                if prev.is_zero():
                    words.pop(word, None)
                else:
                    words[word] = prev
    return Chain(algebra, "C", words)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _basis_alpha(d, index):
    alpha = [0] * (2 * d)
    alpha[index] = 1
    return tuple(alpha)


# ---------------------------------------------------------------------------
# Formal de Rham complex
# ---------------------------------------------------------------------------

class FormalDeRham:
    """Forms on the formal 2d-disk: (monomial alpha, sorted dz subset) ->
    TULaurent.  Coordinate i is x_{i+1} for i < d, xi_{i-d+1} otherwise."""

    __slots__ = ("d", "cap", "window", "terms")

    def __init__(self, d, cap, window, terms=None):
        self.d = d
        self.cap = cap
        self.window = window
        clean = {}
        if terms:
            for (alpha, form), c in terms.items():
                if not isinstance(c, TULaurent):
                    c = TULaurent.const(window, c)
                if c.is_zero() or sum(alpha) > cap:
                    continue
                srt = _sort_sign(form)
                if srt is None:
                    continue
                form2, sign = srt
                if sign < 0:
                    c = c.scale(-1)
                key = (alpha, form2)
                if key in clean:
                    c = clean[key] + c
                if c.is_zero():
                    clean.pop(key, None)
                else:
                    clean[key] = c
        self.terms = clean

    @staticmethod
    def constant(d, cap, window, c=1):
        return FormalDeRham(d, cap, window,
                            {(zero_alpha(d), ()): TULaurent.const(window, c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return FormalDeRham(self.d, self.cap, self.window, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            return FormalDeRham(self.d, self.cap, self.window,
                                {k: v.scale(c) for k, v in self.terms.items()})
        out = {}
        for k, v in self.terms.items():
            s = v * c
            if not s.is_zero():
                out[k] = s
        return FormalDeRham(self.d, self.cap, self.window, out)

    def shift(self, dt=0, du=0):
        return FormalDeRham(self.d, self.cap, self.window,
                            {k: v.shift(dt, du) for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FormalDeRham):
            return NotImplemented
        return (self.d, self.cap, self.window) == (other.d, other.cap, other.window) \
            and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (alpha, form), c in sorted(self.terms.items()):
            mono = "".join(f"z{i}^{e}" for i, e in enumerate(alpha) if e)
            dz = "^".join(f"dz{i}" for i in form)
            bits.append(f"[{c!r}]{mono}{('|' + dz) if dz else ''}")
        return "  +  ".join(bits)

    def d_DR(self):
        out = FormalDeRham(self.d, self.cap, self.window)
        n = 2 * self.d
        for (alpha, form), c in self.terms.items():
            for i in range(n):
                e = alpha[i]
                if e == 0 or i in form:
                    continue
                beta = list(alpha)
                beta[i] = e - 1
                out = out + FormalDeRham(
                    self.d, self.cap, self.window,
                    {(tuple(beta), (i,) + form): c.scale(e)})
        return out

    def component(self, degree):
        return FormalDeRham(self.d, self.cap, self.window,
                            {k: c for k, c in self.terms.items()
                             if len(k[1]) == degree})

    def degrees(self):
        return sorted({len(form) for (_a, form) in self.terms})


def op_I(w: FormalDeRham) -> FormalDeRham:
    """Multiply the i-form component by t^{i-d}: embeds (O, d_DR) into the
    rescaled model (O, t d_DR)."""
    out = FormalDeRham(w.d, w.cap, w.window)
    for (alpha, form), c in w.terms.items():
        out = out + FormalDeRham(w.d, w.cap, w.window,
                                 {(alpha, form): c.shift(dt=len(form) - w.d)})
    return out


def op_J(w: FormalDeRham) -> FormalDeRham:
    """Multiply the i-form component by u^{i-d}."""
    out = FormalDeRham(w.d, w.cap, w.window)
    for (alpha, form), c in w.terms.items():
        out = out + FormalDeRham(w.d, w.cap, w.window,
                                 {(alpha, form): c.shift(du=len(form) - w.d)})
    return out


def op_I_inv(w: FormalDeRham) -> FormalDeRham:
    out = FormalDeRham(w.d, w.cap, w.window)
    for (alpha, form), c in w.terms.items():
        out = out + FormalDeRham(w.d, w.cap, w.window,
                                 {(alpha, form): c.shift(dt=w.d - len(form))})
    return out


def op_J_inv(w: FormalDeRham) -> FormalDeRham:
    out = FormalDeRham(w.d, w.cap, w.window)
    for (alpha, form), c in w.terms.items():
        out = out + FormalDeRham(w.d, w.cap, w.window,
                                 {(alpha, form): c.shift(du=w.d - len(form))})
    return out


# ---------------------------------------------------------------------------
# contraction of the symplectic volume: the K -> de Rham isomorphism
# ---------------------------------------------------------------------------

def _volume_contraction(d, covector_indices):
    """iota_{v_{i_1}} ... iota_{v_{i_q}} (omega^d) as a de Rham wedge.

    Each covector index contracts its omega-dual vector field.  Returns
    list of (form_tuple, Fraction) for the resulting (2d-q)-form, with the
    normalization contraction by the full ordered wedge (x_1..x_d,
    xi_1..xi_d sorted) of omega^d equal to +1.
    """
    # omega^d = d! * dx_1^dxi_1^...: represent the volume as the sorted
    # full wedge (0,1,..,2d-1) with the sign of sorting the interleaved one.
    full = tuple(range(2 * d))
    interleaved = tuple(j for i in range(d) for j in (i, d + i))
    _srt, vol_sign = _sort_sign(interleaved)
    fact = Fraction(1)
    for k in range(2, d + 1):
        fact *= k
    coeff = fact * vol_sign  # omega^d = coeff * e_{full sorted wedge}
    # contraction of the sorted full wedge by the dual of covector j:
    # the omega-dual of x_i is s_x * d/dxi_i, of xi_i is s_xi * d/dx_i;
    # signs fixed below so the full contraction normalizes to +1.
    form = list(full)
    sign = Fraction(1)
    for j in covector_indices:
        partner = j + d if j < d else j - d
        if partner not in form:
            return []
        pos = form.index(partner)
        sign *= (-1) ** pos
        if j < d:
            sign *= +1   # iota of d/dxi against dxi slot
        else:
            sign *= -1   # moving past ordering of dx^dxi pairing
        form.remove(partner)
    return [(tuple(form), sign * coeff)]


_VOLUME_NORM = {}


def _volume_norm(d):
    """1 / contraction of omega^d by the full sorted covector wedge."""
    if d not in _VOLUME_NORM:
        res = _volume_contraction(d, tuple(range(2 * d)))
        if not res or res[0][0] != ():
            raise ConfigurationError("volume contraction failed")
        _VOLUME_NORM[d] = Fraction(1) / res[0][1]
    return _VOLUME_NORM[d]


def koszul_to_derham(k: KoszulChain) -> FormalDeRham:
    """f (x) v_1^..^v_q -> f * iota_{v_1}..iota_{v_q}(omega^d), normalized so
    the full sorted wedge of the volume contracts to +1."""
    out = FormalDeRham(k.d, k.cap, k.window)
    norm = _volume_norm(k.d)
    for wedge, f in k.terms.items():
        for form, c in _volume_contraction(k.d, wedge):
            for alpha, cf in f.terms.items():
                out = out + FormalDeRham(
                    k.d, k.cap, k.window,
                    {(alpha, form): cf.scale(c * norm)})
    return out


# ---------------------------------------------------------------------------
# trace density: Hochschild chains of W -> de Rham, degree-0 component
# ---------------------------------------------------------------------------

def _project_to_koszul(c: Chain, d, cap, window) -> KoszulChain:
    """Antisymmetrize reduced slots onto their linear parts: the splitting
    of the wedge embedding (composition with it is the identity on K)."""
    out = KoszulChain(d, cap, window)
    for word, coeff in c.words.items():
        q = len(word) - 1
        fact = Fraction(1)
        for k in range(2, q + 1):
            fact *= k
        lead = WeylElement(d, cap, window, {word[0]: coeff})
        # each reduced slot must contribute its degree-1 component
        indices = []
        ok = True
        for alpha in word[1:]:
            if sum(alpha) != 1:
                ok = False
                break
            indices.append(alpha.index(1))
        if not ok:
            continue
        srt = _sort_sign(tuple(indices))
        if srt is None:
            continue
        wedge, sign = srt
        out = out + KoszulChain.single(
            d, cap, window, wedge, lead.scale(Fraction(sign, 1) / fact))
    return out


def trace_density_0(c: Chain, d, cap, window) -> FormalDeRham:
    """Degree-0 trace density: Koszul projection followed by the volume
    contraction; lands in the (O, t d_DR) model."""
    return koszul_to_derham(_project_to_koszul(c, d, cap, window))


def trace_density_periodic(c: Chain, d, cap, window) -> FormalDeRham:
    """Trace density normalized into the common (O, d_DR) model: the i-form
    component is rescaled by t^{d-i} u^{d-i}."""
    w = trace_density_0(c, d, cap, window)
    return op_I_inv(op_J_inv(w))


# ---------------------------------------------------------------------------
# Hochschild-Kostant-Rosenberg for the commutative symbol algebra
# ---------------------------------------------------------------------------

def hkr(c: Chain, d, cap, window) -> FormalDeRham:
    """f_0 (x) ... (x) f_p -> (1/p!) f_0 df_1 ^ ... ^ df_p, into (O, u d_DR)."""
    out = FormalDeRham(d, cap, window)
    for word, coeff in c.words.items():
        p = len(word) - 1
        fact = Fraction(1)
        for k in range(2, p + 1):
            fact *= k
        base = FormalDeRham(d, cap, window, {(word[0], ()): coeff.scale(1 / fact)})
        prod = base
        for alpha in word[1:]:
            df = FormalDeRham(d, cap, window,
                              {(alpha, ()): TULaurent.const(window, 1)}).d_DR()
            prod = _wedge(prod, df)
        out = out + prod
    return out


def _wedge(a: FormalDeRham, b: FormalDeRham) -> FormalDeRham:
    out = FormalDeRham(a.d, a.cap, a.window)
    for (al1, f1), c1 in a.terms.items():
        for (al2, f2), c2 in b.terms.items():
            alpha = tuple(x + y for x, y in zip(al1, al2))
            if sum(alpha) > a.cap:
                continue
            out = out + FormalDeRham(a.d, a.cap, a.window,
                                     {(alpha, f1 + f2): c1 * c2})
    return out


def koszul_delta_matrixless(k: KoszulChain) -> KoszulChain:
    """Wedge-insertion differential sending a symmetric slot to a wedge slot
    (used by tests as an independent cross-check on small inputs)."""
    out = KoszulChain(k.d, k.cap, k.window)
    n = 2 * k.d
    for wedge, f in k.terms.items():
        for i in range(n):
            df = f.diff(i)
            if df.is_zero() or i in wedge:
                continue
            out = out + KoszulChain.single(k.d, k.cap, k.window, (i,) + wedge, df)
    return out
