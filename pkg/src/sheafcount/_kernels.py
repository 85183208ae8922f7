"""Integer polynomial kernels used by the Laurent coefficient ring.

Polynomials are plain lists of Python ints, lowest degree first, with a
nonzero last entry unless the polynomial is zero (empty list).  These four
primitives (convolution, content, exact division, gcd) carry essentially all
of the arithmetic load of the package, so they are kept free of any class
machinery.  A compiled twin with the same signatures may be provided as
``sheafcount._speedups``; it is picked up at import time and can be disabled
by setting the environment variable SHEAFCOUNT_PURE=1.
"""

from __future__ import annotations

import math
import os


def conv(a: list, b: list) -> list:
    """Product of two coefficient lists (schoolbook convolution)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while out and not out[-1]:
        out.pop()
    return out


def content(a: list) -> int:
    """gcd of the coefficients (0 for the zero polynomial)."""
    g = 0
    for x in a:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return 1
    return g


def divexact(a: list, b: list) -> list:
    """Exact quotient a / b in Z[w]; raises if the division is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        raise ValueError("inexact polynomial division")
    rem = list(a)
    lead = b[-1]
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = rem[k + len(b) - 1]
        if c % lead:
            raise ValueError("inexact polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for j, y in enumerate(b):
                rem[k + j] -= q * y
    if any(rem):
        raise ValueError("inexact polynomial division")
    while out and not out[-1]:
        out.pop()
    return out


def poly_gcd(a: list, b: list) -> list:
    """Primitive gcd in Z[w], positive leading coefficient.

    Subresultant-free primitive remainder sequence: degrees stay tiny here
    (denominators are short products of theta-prefactor divisors), so
    content stripping at each step is cheap and keeps the ints small.
    """
    a = list(a)
    b = list(b)
    while a and not a[-1]:
        a.pop()
    while b and not b[-1]:
        b.pop()
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        c = content(a)
        g = [x // c for x in a]
        return [-x for x in g] if g[-1] < 0 else g
    ca = content(a)
    a = [x // ca for x in a]
    cb = content(b)
    b = [x // cb for x in b]
    while b:
        # pseudo-remainder of a by b, then strip content
        r = list(a)
        lead = b[-1]
        while len(r) >= len(b) and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            # scale r so the leading term divides exactly
            r = [x * lead for x in r]
            q = r[-1] // b[-1]
            shift = len(r) - len(b)
            for j, y in enumerate(b):
                r[shift + j] -= q * y
            while r and not r[-1]:
                r.pop()
        cr = content(r)
        if cr:
            r = [x // cr for x in r]
        a, b = b, r
    return [-x for x in a] if a[-1] < 0 else a


BACKEND = "pure"

if not os.environ.get("SHEAFCOUNT_PURE"):
    try:
        from ._speedups import conv, content, divexact, poly_gcd  # noqa: F401

        BACKEND = "compiled"
    except ImportError:
        pass
