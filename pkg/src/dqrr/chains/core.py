"""Hochschild and cyclic chain machinery over pluggable graded algebras.

A word is a tuple of basis keys; a Chain is a finitely supported linear
combination of words with TULaurent coefficients.  Three models:

  "C"  Hochschild model A (x) Abar^(x p): slot 0 arbitrary, others reduced.
  "R"  plain reduced tensor model Abar^(x p+1) (substrate for tau, N, b').
  "L"  lambda model: R modulo Im(id - tau), stored via the canonical
       signed-minimal-rotation representative.

Koszul signs use the shifted slot weight ||a|| = deg a + 1 throughout;
for algebras concentrated in degree zero every formula reduces to the
classical unsigned one.
"""

from __future__ import annotations

from fractions import Fraction

from ..algebras import elem_is_zero
from ..errors import ConfigurationError, ContractViolation, ShapeMismatch
from ..scalars import TULaurent

MODELS = ("C", "R", "L")


class Chain:
    __slots__ = ("algebra", "model", "words", "_hash")

    def __init__(self, algebra, model, words=None, _normalize=True):
        if model not in MODELS:
            raise ConfigurationError(f"unknown chain model {model!r}")
        self.algebra = algebra
        self.model = model
        out = {}
        if words:
            if _normalize:
                for word, c in words.items():
                    if not isinstance(c, TULaurent):
                        c = TULaurent.const(algebra.window, c)
                    for w2, c2 in self._canonical(word, c):
                        s = out.get(w2)
                        s = c2 if s is None else s + c2
                        if s.is_zero():
                            out.pop(w2, None)
                        else:
                            out[w2] = s
            else:
                out = {w: c for w, c in words.items() if not c.is_zero()}
        self.words = out
        self._hash = None

    # ---- canonicalization -------------------------------------------------

    def _canonical(self, word, coeff):
        alg = self.algebra
        unit = alg.unit_key()
        start = 1 if self.model == "C" else 0
        for k in word[start:]:
            if k == unit:
                return  # reduced slot holding the unit: zero
        if self.model == "L":
            rep = lambda_representative(alg, word)
            if rep is None:
                return
            word, sign = rep
            coeff = coeff.scale(sign)
        yield word, coeff

    # ---- constructors -------------------------------------------------------

    @staticmethod
    def single(algebra, model, elements, coeff=1):
        """Chain from a tuple of element dicts, expanded multilinearly."""
        words = {(): TULaurent.const(algebra.window, coeff)}
        for e in elements:
            new = {}
            for w, c in words.items():
                for k, ck in e.items():
                    s = c * ck
                    if s.is_zero():
                        continue
                    w2 = w + (k,)
                    prev = new.get(w2)
                    prev = s if prev is None else prev + s
                    if prev.is_zero():
                        new.pop(w2, None)
                    else:
                        new[w2] = prev
            words = new
        return Chain(algebra, model, words)

    def zero_like(self):
        return Chain(self.algebra, self.model, {}, _normalize=False)

    # ---- linear structure ---------------------------------------------------

    def _check(self, other):
        if self.algebra is not other.algebra or self.model != other.model:
            raise ShapeMismatch("chain algebra/model mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.words)
        for w, c in other.words.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return Chain(self.algebra, self.model, out, _normalize=False)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.zero_like()
            return Chain(self.algebra, self.model,
                         {w: v.scale(c) for w, v in self.words.items()},
                         _normalize=False)
        out = {}
        for w, v in self.words.items():
            s = v * c
            if not s.is_zero():
                out[w] = s
        return Chain(self.algebra, self.model, out, _normalize=False)

    def shift(self, dt=0, du=0):
        return Chain(self.algebra, self.model,
                     {w: v.shift(dt, du) for w, v in self.words.items()},
                     _normalize=False)

    def is_zero(self):
        return not self.words

    def __bool__(self):
        return bool(self.words)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.algebra is other.algebra and self.model == other.model
                and self.words == other.words)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.algebra), self.model,
                               tuple(sorted((w, c.key()) for w, c in self.words.items()))))
        return self._hash

    def __repr__(self):
        if not self.words:
            return "0"
        alg = self.algebra
        bits = []
        for w, c in sorted(self.words.items(), key=lambda item: _word_sort(alg, item[0])):
            ws = "(" + ", ".join(alg.key_repr(k) for k in w) + ")"
            bits.append(f"[{c!r}] {ws}")
        return "  +  ".join(bits)

    def map_words(self, fn):
        """Linear extension of word -> list of (word, Fraction-or-TULaurent)."""
        out = {}
        for w, c in self.words.items():
            for w2, s in fn(w):
                v = c.scale(s) if isinstance(s, (int, Fraction)) else c * s
                if v.is_zero():
                    continue
                prev = out.get(w2)
                prev = v if prev is None else prev + v
                if prev.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = prev
        return Chain(self.algebra, self.model, out)

    def total_degree(self, word):
        alg = self.algebra
        return len(word) - 1 + sum(alg.deg(k) for k in word)

    def to_json(self):
        alg = self.algebra
        return {"algebra": alg.tag, "model": self.model,
                "words": [{"entries": [alg.key_json(k) for k in w],
                           "coeff": c.to_json()}
                          for w, c in sorted(self.words.items(),
                                             key=lambda item: _word_sort(alg, item[0]))]}


def _word_sort(alg, word):
    return (len(word),) + tuple(alg.sort_key(k) for k in word)


def slot_weight(alg, key):
    return alg.deg(key) + 1


# ---------------------------------------------------------------------------
# cyclic operators tau, N and the lambda normal form
# ---------------------------------------------------------------------------

def tau_word(alg, word):
    """Signed rotation: last letter to front with its Koszul sign."""
    p = len(word) - 1
    if p == 0:
        return word, 1
    last = word[-1]
    sign = -1 if (slot_weight(alg, last) % 2) and \
        (sum(slot_weight(alg, k) for k in word[:-1]) % 2) else 1
    return (last,) + word[:-1], sign


def rotations(alg, word):
    """All signed rotations (tau^j(word), sign), j = 0..p."""
    out = [(word, 1)]
    w, s = word, 1
    for _ in range(len(word) - 1):
        w, ds = tau_word(alg, w)
        s *= ds
        out.append((w, s))
    return out


def lambda_representative(alg, word):
    """Canonical signed representative mod Im(id - tau); None if torsion."""
    best = None
    best_sign = 0
    seen = {}
    for w, s in rotations(alg, word):
        if w in seen and seen[w] != s:
            return None  # w ~ -w: rational coefficients force zero
        seen[w] = s
        k = _word_sort(alg, w)
        if best is None or k < best[0]:
            best = (k, w)
            best_sign = s
    return best[1], best_sign


def tau(c: Chain) -> Chain:
    if c.model == "C":
        raise ContractViolation("tau acts on the reduced tensor model")
    return c.map_words(lambda w: [tau_word(c.algebra, w)])


def N_op(c: Chain) -> Chain:
    if c.model != "R":
        raise ContractViolation("N acts on the plain reduced model")
    return c.map_words(lambda w: rotations(c.algebra, w))


def lambda_normalize(c: Chain) -> Chain:
    if c.model == "C":
        raise ContractViolation("lambda model needs all slots reduced")
    return Chain(c.algebra, "L", c.words)


def to_reduced(c: Chain) -> Chain:
    """Forget down to the plain reduced model (drops slot-0 units)."""
    return Chain(c.algebra, "R", c.words)


def in_tau_kernel(c: Chain) -> bool:
    return (c - tau(c)).is_zero() if c.model == "R" else False


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

def _merge_terms(alg, word, i, sign_exp):
    """Multiply slots i, i+1 with sign (-1)^sign_exp; multilinear output."""
    prod = alg.mul(word[i], word[i + 1])
    out = []
    for k, c in prod.items():
        w2 = word[:i] + (k,) + word[i + 2:]
        s = c.scale(-1) if sign_exp % 2 else c
        out.append((w2, s))
    return out


def b_prime(c: Chain) -> Chain:
    """Bar-type differential: the merge at slot i carries the suspension
    sign (-1)^{i + sum_{k<i}|a_k| + |a_i|} ((-1)^i for degree-0 letters)."""
    alg = c.algebra

    def act(word):
        p = len(word) - 1
        out = []
        acc = 0
        for i in range(p):
            out.extend(_merge_terms(alg, word, i, acc + alg.deg(word[i])))
            acc += slot_weight(alg, word[i])
        return out

    return c.map_words(act)


def hochschild_b(c: Chain) -> Chain:
    alg = c.algebra

    def act(word):
        p = len(word) - 1
        if p == 0:
            return []
        out = []
        acc = 0
        for i in range(p):
            out.extend(_merge_terms(alg, word, i, acc + alg.deg(word[i])))
            acc += slot_weight(alg, word[i])
        rot, rsign = tau_word(alg, word)
        for w2, s in _merge_terms(alg, rot, 0, alg.deg(rot[0])):
            out.append((w2, s.scale(rsign) if rsign < 0 else s))
        return out

    return c.map_words(act)


def connes_B(c: Chain) -> Chain:
    if c.model != "C":
        raise ContractViolation("B is defined on the Hochschild model")
    alg = c.algebra
    unit = alg.unit_key()

    def act(word):
        out = []
        for w, s in rotations(alg, word):
            out.append(((unit,) + w, s))
        return out

    return c.map_words(act)


def dga_delta(c: Chain) -> Chain:
    """Internal differential extended by the Leibnitz rule with Koszul signs."""
    alg = c.algebra

    def act(word):
        out = []
        acc = 0
        for i, k in enumerate(word):
            dk = alg.delta(k)
            if dk:
                for k2, cd in dk.items():
                    w2 = word[:i] + (k2,) + word[i + 1:]
                    out.append((w2, cd.scale(-1) if acc % 2 else cd))
            acc += slot_weight(alg, k)
        return out

    return c.map_words(act)


# ---------------------------------------------------------------------------
# insertion operator (the contraction making chain complexes homotopically
# constant): inserts an element Phi after each slot, weight u^{-1}/t
# ---------------------------------------------------------------------------

def iota_phi(phi_elem, phi_deg, c: Chain, prefactor=True) -> Chain:
    """Insert Phi after every slot with Koszul sign
    (-1)^{sum_{k<i}(deg a_k + 1)(deg Phi + 1)} and weight u^{-1}/t."""
    alg = c.algebra
    w_phi = phi_deg + 1

    def act(word):
        out = []
        acc = 0
        for i, k in enumerate(word):
            acc_here = acc  # slots strictly before the insertion point
            for kp, cp in phi_elem.items():
                w2 = word[:i + 1] + (kp,) + word[i + 1:]
                s = cp.scale(-1) if (acc_here * w_phi) % 2 else cp
                out.append((w2, s))
            acc += slot_weight(alg, k)
        return out

    res = c.map_words(act)
    return res.shift(dt=-1, du=-1) if prefactor else res


# ---------------------------------------------------------------------------
# shuffle external product on the Ker(id - tau) model
# ---------------------------------------------------------------------------

def _shuffles(p, q):
    """Yield (positions, inversions) for interleavings of p A-letters and
    q B-letters; positions is a tuple of 'A'/'B' flags."""
    def rec(a_left, b_left, acc, inv):
        if a_left == 0 and b_left == 0:
            yield tuple(acc), inv
            return
        if a_left:
            yield from rec(a_left - 1, b_left, acc + ["A"], inv)
        if b_left:
            # a B placed now is passed by all remaining A letters
            yield from rec(a_left, b_left - 1, acc + ["B"], inv + a_left)
    yield from rec(p, q, [], 0)


def shuffle_external(a: Chain, b: Chain, embed_a, embed_b, target) -> Chain:
    """Shuffle product of Ker(id-tau) chains into a chain over the target.

    embed_a/embed_b map basis keys of the factor algebras to element dicts
    of the target algebra.  Letters keep their internal order; each B-letter
    passing an A-letter contributes the Koszul sign of their shifted degrees.
    """
    for c in (a, b):
        if c.model != "R":
            raise ContractViolation("shuffle inputs live in the reduced model")
        if not in_tau_kernel(c) and c.words:
            raise ContractViolation("shuffle input not in Ker(id - tau)")
    alg_a, alg_b = a.algebra, b.algebra
    out = {}
    for wa, ca in a.words.items():
        for wb, cb in b.words.items():
            coeff = ca * cb
            if coeff.is_zero():
                continue
            wts_a = [slot_weight(alg_a, k) for k in wa]
            wts_b = [slot_weight(alg_b, k) for k in wb]
            for flags, _inv in _shuffles(len(wa), len(wb)):
                # Koszul sign: count crossings weighted by shifted degrees
                sign_exp = 0
                ia = ib = 0
                passed_a = 0  # total shifted weight of A letters already placed
                total_a = sum(wts_a)
                for f in flags:
                    if f == "A":
                        passed_a += wts_a[ia]
                        ia += 1
                    else:
                        sign_exp += wts_b[ib] * (total_a - passed_a)
                        ib += 1
                # expand embedded letters multilinearly
                words = {(): coeff.scale(-1) if sign_exp % 2 else coeff}
                ia = ib = 0
                for f in flags:
                    if f == "A":
                        e = embed_a(wa[ia]); ia += 1
                    else:
                        e = embed_b(wb[ib]); ib += 1
                    new = {}
                    for w, cw in words.items():
                        for k, ck in e.items():
                            s = cw * ck
                            if s.is_zero():
                                continue
                            w2 = w + (k,)
                            prev = new.get(w2)
                            prev = s if prev is None else prev + s
                            if prev.is_zero():
                                new.pop(w2, None)
                            else:
                                new[w2] = prev
                    words = new
                for w, cw in words.items():
                    prev = out.get(w)
                    prev = cw if prev is None else prev + cw
                    if prev.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = prev
    return Chain(target, "R", out)


# ---------------------------------------------------------------------------
# lead components of the module pairing with the reduced cyclic complex
# ---------------------------------------------------------------------------

def pairing_lead(xs, c: Chain) -> Chain:
    """Lowest component of (x_1 (x) ... (x) x_p) acting on a Hochschild word:

      (1/p!) sum_i (-1)^{i(p-1)} a_0 [x_{i+1},a_1] ... [x_i,a_p] (x) a_{p+1} ...

    Words shorter than p are sent to zero.  Degree-0 algebras only.
    """
    alg = c.algebra
    p = len(xs)
    if p == 0:
        return c
    inv_fact = Fraction(1)
    for k in range(2, p + 1):
        inv_fact /= k

    def act(word):
        N = len(word) - 1
        if N < p:
            return []
        out = []
        for i in range(1, p + 1):
            sign = -1 if (i * (p - 1)) % 2 else 1
            prod = {word[0]: TULaurent.const(alg.window, 1)}
            for k in range(1, p + 1):
                x = xs[(i + k - 1) % p]  # x_{i+k} with cyclic index in 1..p
                ak = {word[k]: TULaurent.const(alg.window, 1)}
                prod = alg.elem_mul(prod, alg.elem_commutator(x, ak))
                if elem_is_zero(prod):
                    break
            if elem_is_zero(prod):
                continue
            for k0, c0 in prod.items():
                out.append(((k0,) + word[p + 1:], c0.scale(sign * inv_fact)))
        return out

    return c.map_words(act)


def pairing_on_unit(xs, algebra) -> Chain:
    """(x_1 (x) ... (x) x_p) acting on the unit cycle:
    sum_i (-1)^{i(p-1)} 1 (x) x_{i+1} (x) ... (x) x_i, a Hochschild chain."""
    unit = algebra.unit_key()
    p = len(xs)
    if p == 0:
        return Chain(algebra, "C", {(unit,): TULaurent.const(algebra.window, 1)})
    out = Chain(algebra, "C", {})
    for i in range(1, p + 1):
        sign = -1 if (i * (p - 1)) % 2 else 1
        seq = [xs[(i + k) % p] for k in range(p)]  # x_{i+1}, ..., x_i
        term = Chain.single(algebra, "C",
                            [{unit: TULaurent.const(algebra.window, 1)}] + seq,
                            coeff=sign)
        out = out + term
    return out
