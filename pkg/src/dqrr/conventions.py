"""The single sign/normalization configuration used by every module.

All constants below were pinned jointly by the calibration suite: the two
star-product descriptions must agree, the Koszul cycle of full wedge degree
must map to 1, the boundary evaluation of the degree-(2d-1) fundamental
cycle must be the canonical generator, and its series expansion must match
the independent analytic oracle.  Tests assert this table is never
overridden per call site (no keyword lets a caller flip a sign).
"""

from types import MappingProxyType

CONVENTIONS = MappingProxyType({
    # Sign of [x_i, xi_i] in units of t.  -1 reproduces the Darboux-
    # coordinate exponential bidifferential formula literally, makes
    # (1/t)ad(xi_i) act as +d/dx_i, and yields the canonical-generator
    # value for the fundamental cycle.
    "moyal_sign": -1,
    # Insertion operators count Koszul signs over slots strictly before
    # the insertion point: sign exponent sum_{k<i} (deg a_k + 1)(deg F + 1).
    "iota_prefix_strict": True,
    # Contraction normalization on the formal de Rham side: iota_{v} for
    # v in the dual Darboux basis contracts against the vector field that
    # makes the full wedge of the symplectic volume evaluate to +1.
    "derham_contraction": "volume_one",
    # Fundamental cycle words are built x-before-derivation per factor.
    "fundamental_word_order": "x_first",
})


def fingerprint() -> str:
    return "|".join(f"{k}={CONVENTIONS[k]}" for k in sorted(CONVENTIONS))


MOYAL_SIGN = CONVENTIONS["moyal_sign"]
