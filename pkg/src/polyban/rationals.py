"""Exact rational arithmetic backend.

Every quantity in the library is an exact rational: numerator an
arbitrary-precision integer, denominator positive, always in lowest terms.
The default carrier is gmpy2.mpq when importable (identical semantics,
considerably faster) and fractions.Fraction otherwise; POLYBAN_RATIONAL
forces one backend ("fraction" or "gmpy2"). Serialized form is the string
"p/q", or just "p" when the denominator is 1. No floats, ever.
"""

from __future__ import annotations

import os
import re

from fractions import Fraction

from .errors import InputError

_BACKEND = os.environ.get("POLYBAN_RATIONAL", "").strip().lower()

if _BACKEND not in ("", "fraction", "gmpy2"):
    raise InputError(f"POLYBAN_RATIONAL must be 'fraction' or 'gmpy2', got {_BACKEND!r}")

if _BACKEND in ("", "gmpy2"):
    try:
        from gmpy2 import mpq as Rational
        BACKEND_NAME = "gmpy2"
    except ImportError:
        if _BACKEND == "gmpy2":
            raise InputError("POLYBAN_RATIONAL=gmpy2 but gmpy2 is not installed")
        Rational = Fraction
        BACKEND_NAME = "fraction"
else:
    Rational = Fraction
    BACKEND_NAME = "fraction"

ZERO = Rational(0)
ONE = Rational(1)

_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")


def rat(value, den=None) -> Rational:
    """Coerce to the active exact rational type. Floats are rejected."""
    if den is not None:
        return Rational(value) / Rational(den)
    if isinstance(value, float):
        raise InputError("floating point values are not accepted; pass a string 'p/q' or integers")
    if isinstance(value, str):
        return parse_rational(value)
    return Rational(value)


def parse_rational(text: str) -> Rational:
    """Parse "p/q" or "p". The denominator must be positive and nonzero."""
    if not isinstance(text, str):
        raise InputError(f"expected rational string, got {type(text).__name__}")
    s = text.strip()
    if not _RAT_RE.match(s):
        raise InputError(f"malformed rational {text!r}; expected 'p' or 'p/q'")
    if "/" in s:
        num_s, den_s = s.split("/")
        den = int(den_s)
        if den == 0:
            raise InputError(f"zero denominator in {text!r}")
        return Rational(int(num_s)) / Rational(den)
    return Rational(int(s))


def format_rational(value) -> str:
    """Render in the canonical lowest-terms form "p/q" or "p"."""
    n, d = int(value.numerator), int(value.denominator)
    if d == 1:
        return str(n)
    return f"{n}/{d}"


def num(value) -> int:
    return int(value.numerator)


def den(value) -> int:
    return int(value.denominator)


def bit_size(value) -> int:
    """max(bit length of |numerator|, bit length of denominator)."""
    return max(abs(num(value)).bit_length(), den(value).bit_length())


def rationals_of_bit_size(bits: int):
    """All reduced rationals r with bit_size(r) <= bits, sorted ascending.

    Used by the request enumeration; small bounds only.
    """
    if bits < 1:
        return []
    bound = (1 << bits) - 1
    seen = set()
    out = []
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            r = Rational(p) / Rational(q)
            if bit_size(r) <= bits and r not in seen:
                seen.add(r)
                out.append(r)
    out.sort()
    return out
