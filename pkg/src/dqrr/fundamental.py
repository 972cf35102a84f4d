"""The fundamental cycle, its d = 1 series cocycle in the (c1, theta)
extended complex, boundary evaluation, and the lead-term pairing checks.

Chains live over W_d or W_1[eta] in the lambda model; an ExtendedChain is
a polynomial in two central degree-2 symbols c1, theta whose coefficients
are such chains.  The extended differential is  d/d eta + u b + c1 *
insertion of x*partial  (the displayed Cartan-model differential; the
module contraction for the central directions is zero, so no theta term).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .algebras import WeylAlg, WeylEtaAlg
from .brodzki import Br, PointChain, SplittingJ, eval_at_origin
from .chains.core import (Chain, dga_delta, hochschild_b, iota_phi,
                          lambda_normalize, N_op, pairing_on_unit, shuffle_external,
                          to_reduced)
from .errors import ConfigurationError, ContractViolation
from .scalars import TULaurent, Window, series_expand


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


def _basis_key(d, idx):
    alpha = [0] * (2 * d)
    alpha[idx] = 1
    return tuple(alpha)


def double_factorial_even(d):
    out = 1
    for k in range(1, d + 1):
        out *= 2 * k
    return out


def u0(algebra: WeylAlg) -> Chain:
    """Fundamental cycle of degree 2d-1 over W_d:

        u^{-d} / ((2d)!! t^d) * Alt(v_1 (x) ... (x) v_{2d})

    in the interleaved Darboux order (x_1, xi_1, x_2, xi_2, ...); in the
    sorted order x_1..x_d, xi_1..xi_d the same chain acquires the sign
    (-1)^{d(d-1)/2}.  Pinned by Br(u0) = u^{-d} one^(d), the canonical
    generator, for d = 1, 2.
    """
    d = algebra.d
    window = algebra.window
    if not (window.contains(-d, -d)):
        raise ConfigurationError("window must admit t^-d u^-d")
    order = [j for i in range(d) for j in (i, d + i)]
    norm = Fraction(1, double_factorial_even(d))
    words = {}
    for perm in permutations(range(2 * d)):
        word = tuple(_basis_key(d, order[k]) for k in perm)
        c = TULaurent.monomial(window, norm * _perm_sign(perm), -d, -d)
        prev = words.get(word)
        words[word] = c if prev is None else prev + c
    return Chain(algebra, "L", words)


# ---------------------------------------------------------------------------
# the extended (c1, theta) complex over W_1[eta]
# ---------------------------------------------------------------------------

class ExtendedChain:
    """Polynomial in the central symbols c1, theta with lambda-chain
    coefficients over W_1[eta]."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: WeylEtaAlg, coeffs=None):
        self.algebra = algebra
        clean = {}
        if coeffs:
            for key, ch in coeffs.items():
                if ch.is_zero():
                    continue
                clean[key] = ch
        self.coeffs = clean

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, ch in other.coeffs.items():
            s = out.get(k)
            s = ch if s is None else s + ch
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return ExtendedChain(self.algebra, out)

    def __neg__(self):
        return ExtendedChain(self.algebra,
                             {k: ch.scale(-1) for k, ch in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ExtendedChain(self.algebra,
                             {k: ch.scale(c) for k, ch in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, ExtendedChain):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def max_c1(self):
        return max((k[0] for k in self.coeffs), default=-1)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (p, l), ch in sorted(self.coeffs.items()):
            sym = f"c1^{p}" * (p > 0) + f" theta^{l}" * (l > 0)
            bits.append(f"{sym or '1'} * [{ch!r}]")
        return "\n".join(bits)


def w1eta_algebra(window: Window, cap=8) -> WeylEtaAlg:
    return WeylEtaAlg(1, cap, window, eta_degree=1)


def x_partial_lift(algebra: WeylEtaAlg):
    """Moyal product x * xi = x xi - t/2, the Weyl-algebra lift of the
    derivation x*partial = (1/t) ad(x * xi); the contraction inserts this
    lift (the u^{-1}/t prefactor of the insertion supplies the 1/t)."""
    window = algebra.window
    return {((1, 1), 0): TULaurent.const(window, 1),
            ((0, 0), 0): TULaurent.monomial(window, Fraction(-1, 2), 1, 0)}


def u_d1(algebra: WeylEtaAlg, M: int) -> ExtendedChain:
    """Truncated d = 1 fundamental cocycle

        sum_{m=1}^{M} (u^{1-2m}/m) (x (x) partial)^{(x) m} c1^{m-1}

    with partial = xi/t; words are built x-first per the convention table
    (the lambda normal form of the printed partial-first word ordering).
    """
    if M < 1:
        raise ConfigurationError("M >= 1 required")
    window = algebra.window
    if not window.contains(-M, 1 - 2 * M):
        raise ConfigurationError("window too small for the truncation order")
    x_key = ((1, 0), 0)
    xi_key = ((0, 1), 0)
    out = {}
    for m in range(1, M + 1):
        word = (x_key, xi_key) * m
        coeff = TULaurent.monomial(window, Fraction(1, m), -m, 1 - 2 * m)
        out[(m - 1, 0)] = Chain(algebra, "L", {word: coeff})
    return ExtendedChain(algebra, out)


def extended_differential(e: ExtendedChain) -> ExtendedChain:
    """d/d eta + u b + c1 * iota_{x*partial} on lambda chains; squares to
    zero on the weight-invariant subcomplex."""
    alg = e.algebra
    phi = x_partial_lift(alg)
    out = ExtendedChain(alg)
    for (p, l), ch in e.coeffs.items():
        eta_part = lambda_normalize(to_reduced(dga_delta(ch)))
        b_part = lambda_normalize(to_reduced(hochschild_b(ch))).shift(du=1)
        term = ExtendedChain(alg, {(p, l): eta_part + b_part})
        iota_part = lambda_normalize(to_reduced(iota_phi(phi, 0, ch)))
        term = term + ExtendedChain(alg, {(p + 1, l): iota_part})
        out = out + term
    return out


def br_extended(e: ExtendedChain, j: SplittingJ = None):
    """Boundary evaluation coefficientwise in (c1, theta): dict key ->
    PointChain."""
    if j is None:
        j = eval_at_origin(e.algebra)
    out = {}
    for key, ch in e.coeffs.items():
        v = Br(j, ch)
        if not v.is_zero():
            out[key] = v
    return out


def eta_power_chain(algebra: WeylEtaAlg, n: int) -> Chain:
    """eta^(n) = (n-1)! eta^{(x) n} over W_1[eta]."""
    if n < 1:
        raise ContractViolation("n >= 1")
    fact = Fraction(1)
    for k in range(2, n):
        fact *= k
    eta_key = ((0, 0), 1)
    return Chain(algebra, "L",
                 {(eta_key,) * n: TULaurent.const(algebra.window, fact)})


def eta_bracket(algebra: WeylEtaAlg, m: int, p_max: int, l_max: int) -> ExtendedChain:
    """The equivariant eta-power cocycle in the (c1, theta) presentation:

      coefficient of c1^p theta^l =
        ((-1)^p t^l / (p! l!)) * ins_{(x*xi) eta}^p ins_{eta}^l ( eta^(m) )

    where ins is the insertion operator (u^{-1}/t per slot), the t^l
    factor is the theta-coordinate normalization theta(t^{-1}) = t^{-1},
    and the alternating sign makes the column family a cocycle of the
    extended differential (verified for every truncation in the tests).
    """
    window = algebra.window
    base = eta_power_chain(algebra, m)
    x_xi_eta = {((1, 1), 1): TULaurent.const(window, 1),
                ((0, 0), 1): TULaurent.monomial(window, Fraction(-1, 2), 1, 0)}
    eta_el = {((0, 0), 1): TULaurent.const(window, 1)}
    out = {}
    col = base
    fact_p = Fraction(1)
    for p in range(p_max + 1):
        if p:
            col = lambda_normalize(to_reduced(iota_phi(x_xi_eta, 1, col)))
            fact_p /= -p
        row = col
        fact_l = Fraction(1)
        for l in range(l_max + 1):
            if l:
                row = lambda_normalize(to_reduced(iota_phi(eta_el, 1, row)))
                fact_l /= l
            val = row.scale(fact_p * fact_l).shift(dt=l)
            if not val.is_zero():
                out[(p, l)] = val
    return ExtendedChain(algebra, out)


# ---------------------------------------------------------------------------
# external product assembly
# ---------------------------------------------------------------------------

def cross_assemble(u1: Chain, d: int, target: WeylAlg) -> Chain:
    """d-fold external shuffle power of a degree-1 cycle over W_1 into W_d,
    normalized by 1/d (the cyclic-orbit count of the d-fold shuffle)."""
    if d < 1:
        raise ConfigurationError("d >= 1")
    if target.d != d:
        raise ContractViolation("target half-dimension mismatch")
    window = target.window

    def embed(offset, total_d):
        def fn(key):
            alpha = key
            out = [0] * (2 * total_d)
            d1 = len(alpha) // 2
            for i in range(d1):
                out[offset + i] = alpha[i]
                out[total_d + offset + i] = alpha[d1 + i]
            return {tuple(out): TULaurent.const(window, 1)}
        return fn

    if d == 1:
        return Chain(target, "L",
                     {tuple(k for k in w): c for w, c in u1.words.items()})

    src = u1.algebra
    acc = None
    for i in range(d):
        factor = N_op(to_reduced(u1)) if u1.model == "L" else u1
        factor = Chain(src, "R", factor.words, _normalize=False)
        if acc is None:
            # first factor: embed into target coordinates 0
            emb = embed(0, d)
            words = {}
            for w, c in factor.words.items():
                new = {(): c}
                for k in w:
                    nxt = {}
                    for ww, cc in new.items():
                        for k2, c2 in emb(k).items():
                            nxt[ww + (k2,)] = cc * c2
                    new = nxt
                for ww, cc in new.items():
                    words[ww] = words.get(ww, TULaurent.zero(window)) + cc
            acc = Chain(target, "R", words)
        else:
            acc = shuffle_external(acc, factor,
                                  lambda k: {k: TULaurent.const(window, 1)},
                                  embed(i, d), target)
    return lambda_normalize(acc).scale(Fraction(1, d))


# ---------------------------------------------------------------------------
# lead pairing with the unit and the trace-density check
# ---------------------------------------------------------------------------

def pairing_unit_lead(u_chain: Chain, algebra: WeylAlg) -> Chain:
    """Apply the unit-pairing component to every word of the fundamental
    cycle: words x_1 (x) .. (x) x_p become sum_i +-(1, x_{i+1}, .., x_i)."""
    out = Chain(algebra, "C", {})
    window = algebra.window
    for word, coeff in u_chain.words.items():
        xs = [{k: TULaurent.const(window, 1)} for k in word]
        term = pairing_on_unit(xs, algebra).scale(coeff)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# series-side oracles
# ---------------------------------------------------------------------------

def sinh_ratio_coefficient(k: int) -> Fraction:
    """Coefficient of z^k in (e^{z/2} - e^{-z/2})/z, by the series oracle."""
    return series_expand("SINH_RATIO", k)[k]


def ahat_coefficient(k: int) -> Fraction:
    return series_expand("AHAT", k)[k]


def br_u_series_table(algebra: WeylEtaAlg, M: int):
    """The (c1-degree -> PointChain) table of the boundary evaluation of the
    truncated fundamental cocycle; the expected value at c1^{m-1} is
    u^{1-2m} [SINH_RATIO]_{m-1} one^(m)."""
    table = br_extended(u_d1(algebra, M))
    return {p: v for (p, l), v in table.items() if l == 0}
