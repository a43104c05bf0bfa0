"""Exact characteristic polynomials and closed-form bounds for the F_{s,t}(n) family.

Coefficients are Python integers, highest degree first. Only root
extraction touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BracketError, ParameterError
from .graph import FamilyParams


@dataclass(frozen=True)
class PolySpec:
    coefficients: tuple[int, ...]
    provenance: str = ""

    def __post_init__(self):
        if self.coefficients[0] != 1:
            raise ParameterError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def derivative_coefficients(self) -> tuple[int, ...]:
        d = self.degree
        return tuple(c * (d - i) for i, c in enumerate(self.coefficients[:-1]))


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _check_st(s: int, t: int) -> None:
    if not 2 <= s <= t:
        raise ParameterError(f"need 2 <= s <= t, got s={s}, t={t}")


def g_poly(s: int, t: int, n: int) -> PolySpec:
    _check_st(s, t)
    return PolySpec(
        (1, 6 - 2 * s - 2 * t - n, (n + s - 3) * (s + 2 * t - 3) - (s - 1) * (n - s + 1)),
        f"g(s={s},t={t},n={n})",
    )


def h_poly(s: int, t: int, n: int) -> PolySpec:
    _check_st(s, t)
    return PolySpec(
        (1, 6 - 2 * s - 2 * t - n, (n + s - 3) * (s + 2 * t - 3) - (s - 1) * (n - s)),
        f"h(s={s},t={t},n={n})",
    )


def f_poly(s: int, t: int, n: int, r: int) -> PolySpec:
    """(x + 3 - s - 2r) g(x) - 2r(s-1)(r-t)."""
    if not 0 <= r < t:
        raise ParameterError(f"need 0 <= r < t, got r={r}, t={t}")
    g = g_poly(s, t, n).coefficients
    coeffs = list(_poly_mul((1, 3 - s - 2 * r), g))
    coeffs[-1] -= 2 * r * (s - 1) * (r - t)
    return PolySpec(tuple(coeffs), f"f(s={s},t={t},n={n},r={r})")


def thm11_cubic(n: int) -> PolySpec:
    if n < 4:
        raise ParameterError("need n >= 4")
    r = (n - 1) % 3
    return PolySpec(
        (1, -(n + 2 * r + 3), 8 * r + 3 * n + 2 * r * n - 8, 14 * r + 4 * n - 8 * r * n - 2 * r * r - 4),
        f"K23 cubic(n={n},r={r})",
    )


def thm13_cubic(n: int) -> PolySpec:
    if n < 5:
        raise ParameterError("need n >= 5")
    r = (n - 2) % 3
    return PolySpec(
        (1, -(n + 2 * r + 6), 12 * r + 4 * n + 2 * r * n + 4, 4 * r - 8 * r * n - 4 * r * r),
        f"K33 cubic(n={n},r={r})",
    )


@dataclass(frozen=True)
class ClosedFormBound:
    value: float
    kind: str
    params: dict = field(default_factory=dict)
    hypothesis_met: bool = True


def thm12_bound(t: int, n: int) -> ClosedFormBound:
    if t < 2 or n < 1:
        raise ParameterError("need t >= 2 and n >= 1")
    val = (n + 2 * t - 2 + math.sqrt((n - 2 * t + 2) ** 2 + 8 * t - 8)) / 2
    return ClosedFormBound(val, "thm12-upper", {"t": t, "n": n}, n >= t * t + 4 * t + 1)


def lemma23_threshold(s: int, t: int) -> int:
    return s + 2 * t * t - 5


def lemma23_upper_value(s: int, t: int, n: int) -> float:
    disc = (n + 2 * s - 2 * t - 2) ** 2 + 8 * (s - 1) * (t - s + 1)
    return (n + 2 * s + 2 * t - 6 + math.sqrt(disc)) / 2


def lemma23_bounds(s: int, t: int, n: int) -> tuple[ClosedFormBound, ClosedFormBound, bool]:
    """Lower bound n + 2s - 4, the radical upper bound and whether equality is expected.

    Below ``n = s + 2t^2 - 5`` both bounds are still computed but flagged
    with ``hypothesis_met=False``.
    """
    _check_st(s, t)
    ok = n >= lemma23_threshold(s, t)
    params = {"s": s, "t": t, "n": n, "r": FamilyParams.of(s, t, n).r}
    lower = ClosedFormBound(float(n + 2 * s - 4), "lemma23-lower", params, ok)
    upper = ClosedFormBound(lemma23_upper_value(s, t, n), "lemma23-upper", params, ok)
    return lower, upper, (n - s + 1) % t == 0


def _real_critical_points(p: PolySpec) -> list[float]:
    d = p.derivative_coefficients()
    if len(d) == 2:
        return [-d[1] / d[0]]
    if len(d) == 3:
        a, b, c = d
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        root = math.sqrt(disc)
        return sorted({(-b - root) / (2 * a), (-b + root) / (2 * a)})
    # generic degree: numpy roots of the derivative, real parts only
    rts = np.roots(d)
    return sorted(float(z.real) for z in rts if abs(z.imag) < 1e-12)


def _bisect(fn: Callable[[float], float], lo: float, hi: float, flo: float, xtol: float) -> float:
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol * max(1.0, abs(mid)) or mid in (lo, hi):
            return mid
        fm = fn(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def largest_root(p: PolySpec, bracket_lo: float, bracket_hi: float, xtol: float = 1e-12) -> float:
    """Largest real root of ``p`` inside ``[bracket_lo, bracket_hi]``.

    The bracket is split at the real critical points so that each piece is
    monotone; the rightmost piece with a sign change is bisected and the
    result polished with Newton steps.

    Raises:
        BracketError: when ``p`` has no root in the bracket.
    """
    lo, hi = float(bracket_lo), float(bracket_hi)
    if not lo < hi:
        raise BracketError(f"empty bracket [{lo}, {hi}]")
    fn = lambda x: float(p(x))  # noqa: E731
    cuts = [lo] + [c for c in _real_critical_points(p) if lo < c < hi] + [hi]
    for a, b in reversed(list(zip(cuts[:-1], cuts[1:]))):
        fa, fb = fn(a), fn(b)
        if fb == 0:
            return b
        if fa == 0:
            root = a
            break
        if (fa > 0) != (fb > 0):
            root = _bisect(fn, a, b, fa, xtol)
            break
    else:
        raise BracketError(f"no sign change of {p.provenance or p.coefficients} on [{lo}, {hi}]")
    for _ in range(3):
        dv = _deriv_value(p, root)
        if dv == 0:
            break
        step = fn(root) / dv
        new = root - step
        if not lo <= new <= hi or abs(step) > 1e-6 * max(1.0, abs(root)):
            break
        root = new
    return root


def _deriv_value(p: PolySpec, x: float) -> float:
    acc = 0.0
    for c in p.derivative_coefficients():
        acc = acc * x + c
    return acc


def quotient_matrix(s: int, t: int, n: int) -> np.ndarray:
    """Equitable-partition quotient of Q(F_{s,t}(n)).

    Classes: the dominating clique, the vertices of the full cliques, and
    (when r >= 1) the vertices of K_r.
    """
    _check_st(s, t)
    fam = FamilyParams.of(s, t, n)
    r = fam.r
    if r == 0:
        return np.array([[n + s - 3, n - s + 1], [s - 1, s + 2 * t - 3]], dtype=float)
    return np.array(
        [
            [n + s - 3, n - s - r + 1, r],
            [s - 1, s + 2 * t - 3, 0],
            [s - 1, 0, s + 2 * r - 3],
        ],
        dtype=float,
    )


def characteristic_poly(s: int, t: int, n: int) -> PolySpec:
    """g when r = 0 (the cubic's linear factor is dropped), else f."""
    r = FamilyParams.of(s, t, n).r
    return g_poly(s, t, n) if r == 0 else f_poly(s, t, n, r)


def q_F_closed(s: int, t: int, n: int) -> float:
    """q(F_{s,t}(n)) as the largest root of g (r = 0) or f (r >= 1).

    The bracket is ``[n + 2s - 4, upper + 1]`` with the radical upper bound.
    When no root lies above ``n + 2s - 4`` (possible only below the lemma's
    order threshold) the search falls back to ``[n, upper + 1]``, since
    ``q(F) > q(K_{s-1, n-s+1}) = n`` always holds.
    """
    _check_st(s, t)
    if n < s + 1:
        raise ParameterError(f"need n >= s + 1, got n={n}")
    if FamilyParams.of(s, t, n).p == 0:
        # no full K_t block: F is complete and the quotient's middle class is empty
        return float(2 * n - 2)
    poly = characteristic_poly(s, t, n)
    hi = lemma23_upper_value(s, t, n) + 1
    try:
        return largest_root(poly, n + 2 * s - 4, hi)
    except BracketError:
        if n >= lemma23_threshold(s, t):
            raise
    return largest_root(poly, float(n), hi)
