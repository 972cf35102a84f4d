"""Explicit connecting morphism from the reduced cyclic complex.

br evaluates a reduced cyclic word through blockwise functionals rho and
attaches the normalized point chains 1^(n); rho vanishes on blocks of
length > 2, so the block sum runs over compositions of the rotated word
into blocks of sizes 1 and 2.
"""

from __future__ import annotations

from fractions import Fraction

from .chains.core import Chain, rotations, slot_weight
from .errors import ContractViolation
from .scalars import TULaurent


class SplittingJ:
    """k-linear functional with j(1) = 1, given on basis keys."""

    def __init__(self, algebra, values):
        """values: dict basis key -> TULaurent (missing keys map to 0).
        The unit key must map to 1."""
        self.algebra = algebra
        self.values = dict(values)
        one = self.values.get(algebra.unit_key())
        if one is None or one != TULaurent.const(algebra.window, 1):
            raise ContractViolation("splitting must send the unit to 1")

    def __call__(self, elem) -> TULaurent:
        out = TULaurent.zero(self.algebra.window)
        for k, c in elem.items():
            v = self.values.get(k)
            if v is not None:
                out = out + v * c
        return out


def eval_at_origin(algebra) -> SplittingJ:
    """j(f) = constant term of the symbol: kills every non-unit key but
    keeps the t-dependence of the unit coefficient (values in k[[t,1/t]])."""
    return SplittingJ(algebra, {algebra.unit_key(): TULaurent.const(algebra.window, 1)})


def rho(j: SplittingJ, word) -> TULaurent:
    """rho(a) = j(delta a); rho(a1, a2) = u j(a1) j(a2) - j(a1 a2); else 0."""
    alg = j.algebra
    window = alg.window
    if len(word) == 1:
        e = {word[0]: TULaurent.const(window, 1)}
        return j(alg.elem_delta(e))
    if len(word) == 2:
        e1 = {word[0]: TULaurent.const(window, 1)}
        e2 = {word[1]: TULaurent.const(window, 1)}
        term = (j(e1) * j(e2)).shift(du=1)
        return term - j(alg.elem_mul(e1, e2))
    return TULaurent.zero(window)


def _block_decompositions(n):
    """Compositions of n into parts 1 and 2, as tuples of block lengths."""
    if n == 0:
        return [()]
    out = [(1,) + rest for rest in _block_decompositions(n - 1)]
    if n >= 2:
        out += [(2,) + rest for rest in _block_decompositions(n - 2)]
    return out


def word_parity_degree(alg, word):
    """Total degree sum(deg a_i + 1) - 1 of a reduced cyclic word."""
    return sum(slot_weight(alg, k) for k in word) - 1


def br_word(j: SplittingJ, word) -> TULaurent:
    """br_{2n+1} on a single reduced word (0 in even total degree).

    The rotation sum runs over the distinct cyclic rotations of the word
    (a stabilized word contributes once, which is what gives the eta
    powers the value 1); blockwise rho factors vanish except on blocks of
    length 1 and 2, so the decomposition sum is finite.
    """
    alg = j.algebra
    window = alg.window
    deg = word_parity_degree(alg, word)
    if deg % 2 == 0 or deg < 0:
        return TULaurent.zero(window)
    n = (deg - 1) // 2
    inv_fact = Fraction(1)
    for k in range(2, n + 1):
        inv_fact /= k
    total = TULaurent.zero(window)
    decomps = _block_decompositions(len(word))
    weights = [slot_weight(alg, k) for k in word]
    wsum = sum(weights)
    prefix = 0
    seen = {}
    for i in range(len(word)):
        # rotation starting at position i with the displayed sign
        sign = -1 if (prefix * (wsum - prefix)) % 2 else 1
        rotated = word[i:] + word[:i]
        prefix += weights[i]
        if rotated in seen:
            if seen[rotated] != sign:
                return TULaurent.zero(window)  # torsion orbit
            continue
        seen[rotated] = sign
        acc = TULaurent.zero(window)
        for blocks in decomps:
            pos = 0
            val = TULaurent.const(window, 1)
            for size in blocks:
                val = val * rho(j, rotated[pos:pos + size])
                if val.is_zero():
                    break
                pos += size
            if not val.is_zero():
                acc = acc + val
        if not acc.is_zero():
            total = total + acc.scale(sign)
    return total.scale(inv_fact)


def br(j: SplittingJ, c: Chain) -> TULaurent:
    """k[u]-linear extension of br over a reduced (lambda or plain) chain."""
    if c.model == "C":
        raise ContractViolation("br acts on reduced chains")
    out = TULaurent.zero(j.algebra.window)
    for word, coeff in c.words.items():
        v = br_word(j, word)
        if not v.is_zero():
            out = out + v * coeff
    return out


class PointChain:
    """Combination of the normalized generators 1^(n) of the point cyclic
    complex with TULaurent coefficients: dict n -> coefficient, where
    1^(n) = (n-1)! n! * 1^{(x) 2n-1} and 1^(0) is the empty normalization
    (the bare word 1)."""

    __slots__ = ("window", "parts")

    def __init__(self, window, parts=None):
        self.window = window
        clean = {}
        if parts:
            for n, c in parts.items():
                if not isinstance(c, TULaurent):
                    c = TULaurent.const(window, c)
                if not c.is_zero():
                    clean[n] = c
        self.parts = clean

    def __add__(self, other):
        out = dict(self.parts)
        for n, c in other.parts.items():
            s = out.get(n)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(n, None)
            else:
                out[n] = s
        return PointChain(self.window, out)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            return PointChain(self.window, {n: v.scale(c) for n, v in self.parts.items()})
        return PointChain(self.window, {n: v * c for n, v in self.parts.items()})

    def shift(self, dt=0, du=0):
        return PointChain(self.window, {n: v.shift(dt, du) for n, v in self.parts.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self):
        return not self.parts

    def __eq__(self, other):
        if not isinstance(other, PointChain):
            return NotImplemented
        return self.window == other.window and self.parts == other.parts

    def __repr__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"[{c!r}]*one^({n})" for n, c in sorted(self.parts.items()))

    def to_json(self):
        return [{"n": n, "coeff": c.to_json()} for n, c in sorted(self.parts.items())]


def Br(j: SplittingJ, c: Chain) -> PointChain:
    """Br = br * 1^(n+1) on the degree-(2n+1) part (degree-correct index:
    the image of the degree-(2n+1) generator lands on 1^(n+1))."""
    out = PointChain(j.algebra.window)
    alg = j.algebra
    buckets = {}
    for word, coeff in c.words.items():
        deg = word_parity_degree(alg, word)
        if deg % 2 == 0 or deg < 0:
            continue
        n = (deg - 1) // 2
        v = br_word(j, word) * coeff
        if v.is_zero():
            continue
        prev = buckets.get(n + 1)
        buckets[n + 1] = v if prev is None else prev + v
    for n, v in buckets.items():
        if not v.is_zero():
            out = out + PointChain(j.algebra.window, {n: v})
    return out


def eta_power(alg_eta, n: int) -> Chain:
    """eta^(n+1) = n! eta^{(x) n+1} as a lambda chain over k[eta] (indexing:
    eta_power(n) returns eta^(n) = (n-1)! eta^{(x) n}, n >= 1)."""
    if n < 1:
        raise ContractViolation("eta_power needs n >= 1")
    fact = Fraction(1)
    for k in range(2, n):
        fact *= k
    word = tuple([1] * n)
    return Chain(alg_eta, "L", {word: TULaurent.const(alg_eta.window, fact)})


def one_power_coeff(n: int) -> Fraction:
    """Normalization (n-1)! n! of 1^(n) as a bare tensor word; 1 for n = 0."""
    if n == 0:
        return Fraction(1)
    out = Fraction(1)
    for k in range(2, n):
        out *= k
    f2 = Fraction(1)
    for k in range(2, n + 1):
        f2 *= k
    return out * f2
