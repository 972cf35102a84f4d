"""Random sparse elements, words and chains with bounded coefficients.

Samplers take the splittable Rng; coefficients stay small (|num| <= 9,
den <= 4) so exact arithmetic remains fast inside property checks.
"""

from __future__ import annotations

from .algebras import EtaAlg, Mat2Alg, SymbolAlg, WeylAlg, WeylEtaAlg
from .chains.core import Chain
from .rng import Rng
from .scalars import TULaurent


def random_coeff(rng: Rng, window, t_span=1, u_span=0) -> TULaurent:
    t_exp = rng.randint(-t_span, t_span) if t_span else 0
    u_exp = rng.randint(-u_span, u_span) if u_span else 0
    return TULaurent.monomial(window, rng.nonzero_rational(), t_exp, u_exp)


def random_key(alg, rng: Rng, max_deg=2, allow_unit=True):
    if isinstance(alg, (WeylAlg, SymbolAlg)):
        while True:
            alpha = tuple(rng.randint(0, max_deg) for _ in range(2 * alg.d))
            if sum(alpha) <= min(max_deg, alg.cap) and (allow_unit or sum(alpha)):
                return alpha
    if isinstance(alg, EtaAlg):
        choices = (0, 1) if allow_unit else (1,)
        return rng.choice(choices)
    if isinstance(alg, WeylEtaAlg):
        e = rng.randint(0, 1)
        while True:
            alpha = tuple(rng.randint(0, max_deg) for _ in range(2 * alg.d))
            if sum(alpha) <= min(max_deg, alg.cap) and (allow_unit or sum(alpha) or e):
                return (alpha, e)
    if isinstance(alg, Mat2Alg):
        keys = ("I", "H", "E", "F") if allow_unit else ("H", "E", "F")
        return rng.choice(keys)
    raise TypeError(f"no sampler for {alg!r}")


def random_word(alg, rng: Rng, length, model="C", max_deg=2):
    out = []
    for i in range(length):
        allow_unit = (i == 0 and model == "C")
        out.append(random_key(alg, rng, max_deg, allow_unit=allow_unit))
    return tuple(out)


def random_chain(alg, rng: Rng, model="C", max_len=4, n_words=3, max_deg=2,
                 u_span=0, length=None) -> Chain:
    words = {}
    for _ in range(n_words):
        ln = length if length is not None else rng.randint(1, max_len)
        w = random_word(alg, rng, ln, model=model, max_deg=max_deg)
        words[w] = random_coeff(rng, alg.window, u_span=u_span)
    return Chain(alg, model, words)
