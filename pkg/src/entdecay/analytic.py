"""Closed-form density matrices and tau formulas for the solved catalog.

Each solved (state, channel) pair is an entry pattern of symbols plus one
function of ``kt`` per symbol.  A leading ``-`` in a pattern cell negates the
symbol.  Symbols without a closed form are filled entrywise from the
integrator and reported by :meth:`ClosedFormEntry.hybrid_mask`.

All indices are 0-based, big-endian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from . import lindblad, matcore, states
from .errors import InvalidArgument, NotInCatalog

SQRT2 = math.sqrt(2.0)


def _pattern(text: str) -> tuple[tuple[str, ...], ...]:
    rows = tuple(tuple(line.split()) for line in text.strip().splitlines())
    assert len(rows) == 16 and all(len(r) == 16 for r in rows)
    return rows


def _e(rate: float, kt: float) -> float:
    return math.exp(-rate * kt)


W4_X = _pattern("""
a 0 0 d 0 d d 0 0 d d 0 d 0 0 0
0 b c 0 c 0 0 p c 0 0 p 0 p 0 0
0 c b 0 c 0 0 p c 0 0 p 0 0 p 0
d 0 0 e 0 m m 0 0 m m 0 0 0 0 q
0 c c 0 b 0 0 p c 0 0 0 0 p p 0
d 0 0 m 0 e m 0 0 m 0 0 m 0 0 q
d 0 0 m 0 m e 0 0 0 m 0 m 0 0 q
0 p p 0 p 0 0 f 0 0 0 n 0 n n 0
0 c c 0 c 0 0 0 b 0 0 p 0 p p 0
d 0 0 m 0 m 0 0 0 e m 0 m 0 0 q
d 0 0 m 0 0 m 0 0 m e 0 m 0 0 q
0 p p 0 0 0 0 n p 0 0 f 0 n n 0
d 0 0 0 0 m m 0 0 m m 0 e 0 0 q
0 p 0 0 p 0 0 n p 0 0 n 0 f n 0
0 0 p 0 p 0 0 n p 0 0 n 0 n f 0
0 0 0 q 0 q q 0 0 q q 0 q 0 0 h
""")

W4_Z = _pattern("""
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 a b 0 b 0 0 0 b 0 0 0 0 0 0 0
0 b a 0 b 0 0 0 b 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 a 0 0 0 b 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 b 0 0 0 a 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
""")

W4_ISO = _pattern("""
g 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 a b 0 b 0 0 0 b 0 0 0 0 0 0 0
0 b a 0 b 0 0 0 b 0 0 0 0 0 0 0
0 0 0 e 0 c c 0 0 c c 0 0 0 0 0
0 b b 0 a 0 0 0 b 0 0 0 0 0 0 0
0 0 0 c 0 e c 0 0 c 0 0 c 0 0 0
0 0 0 c 0 c e 0 0 0 c 0 c 0 0 0
0 0 0 0 0 0 0 h 0 0 0 d 0 d d 0
0 b b 0 b 0 0 0 a 0 0 0 0 0 0 0
0 0 0 c 0 c 0 0 0 e c 0 c 0 0 0
0 0 0 c 0 0 c 0 0 c e 0 c 0 0 0
0 0 0 0 0 0 0 d 0 0 0 h 0 d d 0
0 0 0 0 0 c c 0 0 c c 0 e 0 0 0
0 0 0 0 0 0 0 d 0 0 0 d 0 h d 0
0 0 0 0 0 0 0 d 0 0 0 d 0 d h 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 f
""")

PHI2_X = _pattern("""
a 0 0 a 0 0 0 0 0 0 0 0 0 a a 0
0 b b 0 0 0 0 0 0 0 0 0 b 0 0 b
0 b b 0 0 0 0 0 0 0 0 0 b 0 0 b
a 0 0 a 0 0 0 0 0 0 0 0 0 a a 0
0 0 0 0 c 0 0 c 0 c c 0 0 0 0 0
0 0 0 0 0 c c 0 c 0 0 c 0 0 0 0
0 0 0 0 0 c c 0 c 0 0 c 0 0 0 0
0 0 0 0 c 0 0 c 0 c c 0 0 0 0 0
0 0 0 0 0 c c 0 c 0 0 c 0 0 0 0
0 0 0 0 c 0 0 c 0 c c 0 0 0 0 0
0 0 0 0 c 0 0 c 0 c c 0 0 0 0 0
0 0 0 0 0 c c 0 c 0 0 c 0 0 0 0
0 b b 0 0 0 0 0 0 0 0 0 b 0 0 b
a 0 0 a 0 0 0 0 0 0 0 0 0 a a 0
a 0 0 a 0 0 0 0 0 0 0 0 0 a a 0
0 b b 0 0 0 0 0 0 0 0 0 b 0 0 b
""")

PHI2_Y = _pattern("""
a 0 0 e 0 0 0 0 0 0 0 0 0 n n 0
0 b g 0 0 0 0 0 0 0 0 0 m 0 0 m
0 g b 0 0 0 0 0 0 0 0 0 m 0 0 m
e 0 0 a 0 0 0 0 0 0 0 0 0 n n 0
0 0 0 0 c 0 0 f 0 d d 0 0 0 0 0
0 0 0 0 0 c f 0 d 0 0 d 0 0 0 0
0 0 0 0 0 f c 0 d 0 0 d 0 0 0 0
0 0 0 0 f 0 0 c 0 d d 0 0 0 0 0
0 0 0 0 0 d d 0 c 0 0 f 0 0 0 0
0 0 0 0 d 0 0 d 0 c f 0 0 0 0 0
0 0 0 0 d 0 0 d 0 f c 0 0 0 0 0
0 0 0 0 0 d d 0 f 0 0 c 0 0 0 0
0 m m 0 0 0 0 0 0 0 0 0 b 0 0 g
n 0 0 n 0 0 0 0 0 0 0 0 0 a e 0
n 0 0 n 0 0 0 0 0 0 0 0 0 e a 0
0 m m 0 0 0 0 0 0 0 0 0 g 0 0 b
""")

PHI2_Z = _pattern("""
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 a c 0 0 0 0 0 0 0 0 0 b 0 0 b
0 c a 0 0 0 0 0 0 0 0 0 b 0 0 b
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 0 0 0 0 0 0 0 0 a 0 0 c
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 0 0 0 0 0 0 0 0 c 0 0 a
""")

PHI2_ISO = _pattern("""
a 0 0 e 0 0 0 0 0 0 0 0 0 n n 0
0 b d 0 0 0 0 0 0 0 0 0 m 0 0 m
0 d b 0 0 0 0 0 0 0 0 0 m 0 0 m
e 0 0 a 0 0 0 0 0 0 0 0 0 n n 0
0 0 0 0 c 0 0 f 0 0 0 0 0 0 0 0
0 0 0 0 0 c f 0 0 0 0 0 0 0 0 0
0 0 0 0 0 f c 0 0 0 0 0 0 0 0 0
0 0 0 0 f 0 0 c 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 c 0 0 f 0 0 0 0
0 0 0 0 0 0 0 0 0 c f 0 0 0 0 0
0 0 0 0 0 0 0 0 0 f c 0 0 0 0 0
0 0 0 0 0 0 0 0 f 0 0 c 0 0 0 0
0 m m 0 0 0 0 0 0 0 0 0 b 0 0 d
n 0 0 n 0 0 0 0 0 0 0 0 0 a e 0
n 0 0 n 0 0 0 0 0 0 0 0 0 e a 0
0 m m 0 0 0 0 0 0 0 0 0 d 0 0 b
""")

PHI3_X = _pattern("""
a 0 0 d 0 d d q 0 d d q d q q 0
0 g b 0 b 0 n m b 0 n m n m 0 c
0 b g 0 b n 0 m b n 0 m n 0 m c
d 0 0 p n f f 0 n f f 0 0 e e u
0 b b n g 0 0 m b n n 0 0 m m c
d 0 n f 0 p f 0 n f 0 e f 0 e u
d n 0 f 0 f p 0 n 0 f e f e 0 u
q m m 0 m 0 0 l 0 e e r e r r 0
0 b b n b n n 0 g 0 0 m 0 m m c
d 0 n f n f 0 e 0 p f 0 f 0 e u
d n 0 f n 0 f e 0 f p 0 f e 0 u
q m m 0 0 e e r m 0 0 l e r r 0
d n n 0 0 f f e 0 f f e p 0 0 u
q m 0 e m 0 e r m 0 e r 0 l r 0
q 0 m e m e 0 r m e 0 r 0 r l 0
0 c c u c u u 0 c u u 0 u 0 0 h
""")

PHI3_Y = _pattern("""
 a  0  0 -d  0 -d -d q'  0 -d -d q' -d q' q'  0
 0  g  b  0  b  0  n -m  b  0  n -m  n -m  0 c'
 0  b  g  0  b  n  0 -m  b  n  0 -m  n  0 -m c'
-d  0  0  p  n  f  f  0  n  f  f  0  0 e' e' -u
 0  b  b  n  g  0  0 -m  b  n  n  0  0 -m -m c'
-d  0  n  f  0  p  f  0  n  f  0 e'  f  0 e' -u
-d  n  0  f  0  f  p  0  n  0  f e'  f e'  0 -u
q' -m -m  0 -m  0  0  l  0 e' e'  r e'  r  r  0
 0  b  b  n  b  n  n  0  g  0  0 -m  0 -m -m c'
-d  0  n  f  n  f  0 e'  0  p  f  0  f  0 e' -u
-d  n  0  f  n  0  f e'  0  f  p  0  f e'  0 -u
q' -m -m  0  0 e' e'  r -m  0  0  l e'  r  r  0
-d  n  n  0  0  f  f e'  0  f  f e'  p  0  0 -u
q' -m  0 e' -m  0 e'  r -m  0 e'  r  0  l  r  0
q'  0 -m e' -m e'  0  r -m e'  0  r  0  r  l  0
 0 c' c' -u c' -u -u  0 c' -u -u  0 -u  0  0  h
""")

PHI3_Z = _pattern("""
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 a b 0 b 0 0 0 b 0 0 0 0 0 0 c
0 b a 0 b 0 0 0 b 0 0 0 0 0 0 c
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 a 0 0 0 b 0 0 0 0 0 0 c
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b b 0 b 0 0 0 a 0 0 0 0 0 0 c
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 c c 0 c 0 0 0 c 0 0 0 0 0 0 d
""")

PHI3_ISO = _pattern("""
a 0 0 0 0 0 0 e 0 0 0 e 0 e e 0
0 d b 0 b 0 0 0 b 0 0 0 0 0 0 c
0 b d 0 b 0 0 0 b 0 0 0 0 0 0 c
0 0 0 g 0 m m 0 0 m m 0 0 0 0 0
0 b b 0 d 0 0 0 b 0 0 0 0 0 0 c
0 0 0 m 0 g m 0 0 m 0 0 m 0 0 0
0 0 0 m 0 m g 0 0 0 m 0 m 0 0 0
e 0 0 0 0 0 0 f 0 0 0 n 0 n n 0
0 b b 0 b 0 0 0 d 0 0 0 0 0 0 c
0 0 0 m 0 m 0 0 0 g m 0 m 0 0 0
0 0 0 m 0 0 m 0 0 m g 0 m 0 0 0
e 0 0 0 0 0 0 n 0 0 0 f 0 n n 0
0 0 0 0 0 m m 0 0 m m 0 g 0 0 0
e 0 0 0 0 0 0 n 0 0 0 n 0 f n 0
e 0 0 0 0 0 0 n 0 0 0 n 0 n f 0
0 c c 0 c 0 0 0 c 0 0 0 0 0 0 h
""")

def _w4_x(kt):
    e2, e4, e6, e8 = (_e(r, kt) for r in (2, 4, 6, 8))
    a = (1 + 2 * e2 - 2 * e6 - e8) / 16
    e = (1 - e8) / 16
    h = (1 - 2 * e2 + 2 * e6 - e8) / 16
    return {
        "a": a,
        "d": a / 2,
        "b": (1 + e2 + e6 + e8) / 16,
        "c": (1 + 2 * e2 + 2 * e4 + 2 * e6 + e8) / 32,
        "e": e,
        "m": e / 2,
        "f": (1 - e2 - e6 + e8) / 16,
        "h": h,
        "q": h / 2,
        "n": (1 - 2 * e2 + 2 * e4 - 2 * e6 + e8) / 32,
        "p": (1 - 2 * e4 + e8) / 32,
    }


def _w4_z(kt):
    return {"a": 0.25, "b": 0.25 * _e(4, kt)}


def _w4_iso(kt):
    e4, e8, e12, e16 = (_e(r, kt) for r in (4, 8, 12, 16))
    return {
        "a": (1 + e4 + e12 + e16) / 16,
        "b": (e8 + 2 * e12 + e16) / 16,
        "c": e8 * (1 - e8) / 16,
        "d": (e8 - 2 * e12 + e16) / 16,
        "e": (1 - e16) / 16,
        "f": (1 - 2 * e4 + 2 * e12 - e16) / 16,
        "g": (1 + 2 * e4 - 2 * e12 - e16) / 16,
        # weight-3 populations
        "h": (1 - e4 - e12 + e16) / 16,
    }


def _phi2_x(kt):
    e4, e6 = _e(4, kt), _e(6, kt)
    return {"a": (1 + e4 - 2 * e6) / 16, "b": (1 + e4 + 2 * e6) / 16, "c": (1 - e4) / 16}


def _phi2_y(kt):
    e2, e4, e6, e8 = (_e(r, kt) for r in (2, 4, 6, 8))
    out = _phi2_x(kt)
    out.update(
        d=(e6 - e2) / 16,
        e=-(2 * e2 - e4 - e8) / 16,
        f=(e4 - e8) / 16,
        g=(2 * e2 + e4 + e8) / 16,
        m=(e2 + 2 * e4 + e6) / 16,
        n=(e2 - 2 * e4 + e6) / 16,
    )
    return out


def _phi2_z(kt):
    return {"a": 0.25, "b": 0.25 * _e(6, kt), "c": 0.25 * _e(4, kt)}


def _phi2_iso(kt):
    e8, e12, e16 = _e(8, kt), _e(12, kt), _e(16, kt)
    return {
        "a": (1 + e8 - 2 * e12) / 16,
        "b": (1 + e8 + 2 * e12) / 16,
        "c": (1 - e8) / 16,
        "d": (e8 + 2 * e12 + e16) / 16,
        "e": (e8 - 2 * e12 + e16) / 16,
        "f": (e8 - e16) / 16,
        "m": (e12 + e16) / 8,
        "n": (e12 - e16) / 8,
    }


def _phi3_x(kt):
    e2, e4, e6, e8 = (_e(r, kt) for r in (2, 4, 6, 8))
    s = 24 * SQRT2
    return {
        "a": (3 + 6 * e4 - 8 * e6 - e8) / 48,
        "b": (1 + 2 * e2 + 2 * e4 + 2 * e6 + e8) / 48,
        "d": (1 + 2 * e2 - 2 * e6 - e8) / 48,
        "f": (1 - e8) / 48,
        "g": (3 + 4 * e6 + e8) / 48,
        "h": (3 + 6 * e4 + 8 * e6 - e8) / 48,
        "l": (3 - 4 * e6 + e8) / 48,
        "m": (1 - 2 * e4 + e8) / 48,
        "n": (1 - e2 - e4 + e6) / s,
        "c": (1 + e2 + 3 * e4 + 3 * e6) / s,
        "e": (1 + e2 - e4 - e6) / s,
        "q": (1 - e2 + 3 * e4 - 3 * e6) / s,
    }


def _phi3_y(kt):
    e2, e4, e6, e8 = (_e(r, kt) for r in (2, 4, 6, 8))
    s = 24 * SQRT2
    out = _phi3_x(kt)
    # n follows a different law under Y and has no closed form here
    for key in ("n", "c", "e", "q"):
        del out[key]
    out.update({
        "c'": (3 * e2 + 3 * e4 + e6 + e8) / s,
        "e'": -(e2 + e4 - e6 - e8) / s,
        "q'": (3 * e2 - 3 * e4 + e6 - e8) / s,
    })
    return out


def _phi3_z(kt):
    return {"a": 1 / 6, "b": _e(4, kt) / 6, "c": _e(6, kt) / (3 * SQRT2), "d": 1 / 3}


def _phi3_iso(kt):
    e8, e12, e16 = _e(8, kt), _e(12, kt), _e(16, kt)
    s = 6 * SQRT2
    return {
        "a": (3 + 6 * e8 - 8 * e12 - e16) / 48,
        "b": (e8 + 2 * e12 + e16) / 24,
        "c": (e12 + e16) / s,
        "d": (3 + 4 * e12 + e16) / 48,
        "e": (e12 - e16) / s,
        "f": (3 - 4 * e12 + e16) / 48,
        # weight-2 populations, fixed by unit trace
        "g": (3 - 2 * e8 - e16) / 48,
        "h": (3 + 6 * e8 + 8 * e12 - e16) / 48,
        "m": (e8 - e16) / 24,
        "n": (e8 - 2 * e12 + e16) / 24,
    }


def _weight_phases(n_qubits: int) -> np.ndarray:
    w = np.array([bin(i).count("1") for i in range(1 << n_qubits)])
    return 1j ** w


@dataclass(frozen=True)
class ClosedFormEntry:
    """Symbolic density template for one (state, channel) pair.

    ``local_phase`` conjugates the instantiated matrix by the diagonal unitary
    with entries i**weight(index); the Y channel equals the X channel under
    that conjugation, and it leaves |W_N> unchanged up to a global phase.
    """

    state_id: str
    channel_id: str
    pattern: tuple[tuple[str, ...], ...]
    coefficients: Callable[[float], Mapping[str, float]]
    local_phase: bool = False

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(c.lstrip("-") for row in self.pattern for c in row if c != "0")

    @property
    def hybrid_symbols(self) -> frozenset[str]:
        return self.symbols - set(self.coefficients(0.0))

    def hybrid_mask(self) -> np.ndarray:
        hyb = self.hybrid_symbols
        return np.array([[c.lstrip("-") in hyb for c in row] for row in self.pattern])

    @property
    def is_hybrid(self) -> bool:
        return bool(self.hybrid_symbols)

    def instantiate(self, kt: float, fill: np.ndarray | None = None) -> np.ndarray:
        """Matrix at ``kt``; hybrid cells are copied from ``fill``."""
        if kt < 0:
            raise InvalidArgument("kt must be non-negative")
        coef = self.coefficients(kt)
        dim = len(self.pattern)
        out = np.zeros((dim, dim), dtype=complex)
        for i, row in enumerate(self.pattern):
            for j, cell in enumerate(row):
                if cell == "0":
                    continue
                sign = -1.0 if cell.startswith("-") else 1.0
                sym = cell.lstrip("-")
                if sym in coef:
                    out[i, j] = sign * coef[sym]
                elif fill is not None:
                    out[i, j] = fill[i, j]
                else:
                    out[i, j] = np.nan
        if self.local_phase:
            u = _weight_phases(matcore.n_qubits_of(dim))
            out = (u[:, None] * out) * u.conj()[None, :]
        return out


_CATALOG: dict[tuple[str, str], ClosedFormEntry] = {
    (entry.state_id, entry.channel_id): entry
    for entry in (
        ClosedFormEntry("w4", "x", W4_X, _w4_x),
        ClosedFormEntry("w4", "y", W4_X, _w4_x, local_phase=True),
        ClosedFormEntry("w4", "z", W4_Z, _w4_z),
        ClosedFormEntry("w4", "iso", W4_ISO, _w4_iso),
        ClosedFormEntry("phi2", "x", PHI2_X, _phi2_x),
        ClosedFormEntry("phi2", "y", PHI2_Y, _phi2_y),
        ClosedFormEntry("phi2", "z", PHI2_Z, _phi2_z),
        ClosedFormEntry("phi2", "iso", PHI2_ISO, _phi2_iso),
        ClosedFormEntry("phi3", "x", PHI3_X, _phi3_x),
        ClosedFormEntry("phi3", "y", PHI3_Y, _phi3_y),
        ClosedFormEntry("phi3", "z", PHI3_Z, _phi3_z),
        ClosedFormEntry("phi3", "iso", PHI3_ISO, _phi3_iso),
    )
}


def _key(state_id: str, channel_id: str) -> tuple[str, str]:
    return state_id.strip().lower(), lindblad.channel_name(channel_id)


def catalog_pairs() -> list[tuple[str, str]]:
    return list(_CATALOG)


def closed_form_entry(state_id: str, channel_id: str) -> ClosedFormEntry:
    try:
        return _CATALOG[_key(state_id, channel_id)]
    except KeyError:
        raise NotInCatalog(f"no closed-form density for ({state_id}, {channel_id})") from None


def closed_form_density(state_id: str, channel_id: str, kt: float, step: float = lindblad.DEFAULT_STEP) -> np.ndarray:
    """Exact density at ``kt`` for a solved pair.

    Pairs with hybrid symbols (phi3 under X or Y) integrate the master
    equation once to fill those cells; see ``closed_form_entry(...).hybrid_mask()``.
    """
    entry = closed_form_entry(state_id, channel_id)
    fill = None
    if entry.is_hybrid:
        rho0 = states.density(states.catalog_state(entry.state_id))
        ch = lindblad.NoiseChannel.named(entry.channel_id, 4)
        fill = lindblad.propagate(rho0, ch, kt, step)
    return entry.instantiate(kt, fill)


@dataclass(frozen=True)
class TauFormula:
    state_id: str
    channel_id: str
    evaluate: Callable[[float], float]

    def __call__(self, kt: float) -> float:
        return self.evaluate(kt)


def _clamped(scale: float, inner: Callable[[float], float]) -> Callable[[float], float]:
    return lambda kt: scale * max(0.0, inner(kt))


_TAU: dict[tuple[str, str], TauFormula] = {}


def _add_tau(state_id, channels, fn):
    for ch in channels:
        _TAU[(state_id, ch)] = TauFormula(state_id, ch, fn)


_add_tau("w4", ["z"], lambda kt: _e(4, kt))
_add_tau("phi1", ["x", "y"], _clamped(SQRT2, lambda kt: (_e(8, kt) + 6 * _e(4, kt) - 3) / 4))
_add_tau("phi1", ["z"], lambda kt: SQRT2 * _e(8, kt))
_add_tau("phi1", ["iso"], _clamped(SQRT2, lambda kt: (9 * _e(16, kt) + 6 * _e(8, kt) - 7) / 8))
_add_tau("phi2", ["x", "z"], _clamped(SQRT2, lambda kt: (2 * _e(6, kt) + _e(4, kt) - 1) / 2))
_add_tau(
    "phi2",
    ["y"],
    _clamped(SQRT2, lambda kt: (_e(8, kt) + 4 * _e(6, kt) + 6 * _e(4, kt) + 4 * _e(2, kt) - 7) / 8),
)
_add_tau("phi2", ["iso"], _clamped(SQRT2, lambda kt: (7 * _e(16, kt) + 8 * _e(12, kt) - 7) / 8))
_add_tau("phi3", ["z"], lambda kt: (2 / 3) * math.sqrt(3 * _e(12, kt) + _e(8, kt)))


def tau_formula(state_id: str, channel_id: str) -> TauFormula | None:
    return _TAU.get(_key(state_id, channel_id))


def closed_form_tau(state_id: str, channel_id: str, kt: float) -> float | None:
    """Published tau(kt) for the pair, or ``None`` where only a plot exists."""
    f = tau_formula(state_id, channel_id)
    return None if f is None else f(kt)
