"""Biconvex subsets of the positive roots and convex orders, truncated to
an explicit height window so every object is finite and checkable.

A slice stores the single entry ``DELTA`` for the imaginary direction;
multiples are expanded only inside the truncated biconvexity test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rootsys, weyl
from .errors import MVKitError, NonGenericError, WallCrossingError
from .rootsys import CoweightVector, RootVector

DELTA = "delta"


@dataclass(frozen=True)
class BiconvexSet:
    """One of the four standing families of biconvex subsets."""

    kind: str  # finite | cofinite | theta_min | theta_max
    datum: object
    w: object = None
    theta: object = None

    @staticmethod
    def finite(w):
        return BiconvexSet("finite", w.datum, w=w)

    @staticmethod
    def cofinite(w):
        return BiconvexSet("cofinite", w.datum, w=w)

    @staticmethod
    def theta_min(datum, theta):
        return BiconvexSet("theta_min", datum, theta=theta)

    @staticmethod
    def theta_max(datum, theta):
        return BiconvexSet("theta_max", datum, theta=theta)


def membership(A, alpha):
    """Exact membership of a positive root in A."""
    d = A.datum
    if rootsys.classify_root(d, alpha) == "not_a_root" or not alpha.is_nonneg():
        raise MVKitError("%r is not a positive root" % (alpha.coords,))
    if A.kind == "finite":
        inv = {r.coords for r in weyl.inversion_set(A.w.inverse())}
        return alpha.coords in inv
    if A.kind == "cofinite":
        inv = {r.coords for r in weyl.inversion_set(A.w)}
        return alpha.coords not in inv
    val = A.theta.pair(alpha)
    if A.kind == "theta_min":
        return val > 0
    if A.kind == "theta_max":
        return val >= 0
    raise MVKitError("unknown kind %r" % A.kind)


def positive_window(d, H):
    """E'_H: positive roots of height <= H, each imaginary multiple listed."""
    out = list(rootsys.positive_real_roots(d, H))
    if d.kind == "affine":
        out.extend(rootsys.delta_multiples_upto(d, H))
    return tuple(sorted(out, key=lambda r: (r.height, r.coords)))


def validate_biconvex_truncated(d, S, H):
    """Truncated biconvexity: S and its complement in E'_H are closed under
    root addition inside the window."""
    window = positive_window(d, H)
    wset = {r.coords for r in window}
    sset = {r.coords if isinstance(r, RootVector) else tuple(r) for r in S}
    if not sset <= wset:
        raise MVKitError("S contains vectors outside the height window")
    items = sorted(wset)
    for a in items:
        for b in items:
            c = tuple(x + y for x, y in zip(a, b))
            if c not in wset:
                continue
            if a in sset and b in sset and c not in sset:
                return False
            if a not in sset and b not in sset and c in sset:
                return False
    return True


@dataclass(frozen=True)
class ConvexOrderSlice:
    """Total order on E_H = {positive real roots of height <= H} plus a
    single entry for the imaginary direction, least element first."""

    datum: object
    height: int
    roots: tuple  # RootVector entries and possibly DELTA

    def __post_init__(self):
        pass

    @property
    def delta_index(self):
        for k, r in enumerate(self.roots):
            if r == DELTA:
                return k
        return None

    def real_roots(self):
        return tuple(r for r in self.roots if r != DELTA)

    def index_of(self, r):
        key = DELTA if r == DELTA else r.coords
        for k, entry in enumerate(self.roots):
            ek = DELTA if entry == DELTA else entry.coords
            if ek == key:
                return k
        raise KeyError(key)

    def reverse(self):
        return ConvexOrderSlice(self.datum, self.height,
                                tuple(reversed(self.roots)))


def expected_entries(d, H):
    ent = list(rootsys.positive_real_roots(d, H))
    if d.kind == "affine" and rootsys.delta(d).height <= H:
        ent.append(DELTA)
    return ent


def order_from_coweight(datum_or_aff, theta, H):
    """Ascending-slope order on the height-H window for a generic coweight.

    Genericity (no two non-proportional window roots of equal slope) is
    checked, and the violating pair is reported rather than perturbed.
    """
    d = datum_or_aff.datum if isinstance(datum_or_aff, rootsys.AffineData) \
        else datum_or_aff
    entries = expected_entries(d, H)

    def slope(entry):
        if entry == DELTA:
            dl = rootsys.delta(d)
            return Fraction(theta.pair(dl), dl.height)
        return Fraction(theta.pair(entry), entry.height)

    slopes = [(slope(e), e) for e in entries]
    seen = {}
    for s, e in slopes:
        if s in seen:
            raise NonGenericError(
                "coweight is not generic at height %d" % H, pair=(seen[s], e))
        seen[s] = e
    slopes.sort(key=lambda se: se[0])
    return ConvexOrderSlice(d, H, tuple(e for _, e in slopes))


def _as_coords(entry, d):
    return rootsys.delta(d) if entry == DELTA else entry


def validate_convex_order(o):
    """Contents, betweenness, and truncated biconvexity of every terminal
    section."""
    d = o.datum
    expect = expected_entries(d, o.height)
    have = [DELTA if r == DELTA else r.coords for r in o.roots]
    want = [DELTA if r == DELTA else r.coords for r in expect]
    if sorted(have, key=str) != sorted(want, key=str) or len(set(have)) != len(have):
        return False
    vecs = [_as_coords(r, d) for r in o.roots]
    pos = {v.coords: k for k, v in enumerate(vecs)}
    n = len(vecs)
    for a in range(n):
        for b in range(a + 1, n):
            s = vecs[a] + vecs[b]
            kind = rootsys.classify_root(d, s) if not s.is_zero() else "not_a_root"
            if kind == "not_a_root":
                continue
            if kind == "imaginary":
                k = o.delta_index
            else:
                k = pos.get(s.coords)
            if k is None:
                continue
            if not (a <= k <= b):
                return False
    # terminal sections
    dl_mult = rootsys.delta_multiples_upto(d, o.height) if d.kind == "affine" else ()
    for cut in range(n + 1):
        section = []
        for r in o.roots[cut:]:
            if r == DELTA:
                section.extend(dl_mult)
            else:
                section.append(r)
        if not validate_biconvex_truncated(d, section, o.height):
            return False
    return True


def order_move(o, position):
    """Local commutation swap or rank-2 triple reversal at a position.

    Returns (new slice, label).  Patterns that would exchange roots across
    the imaginary entry raise WallCrossingError: that exchange rule is out
    of scope here.
    """
    d = o.datum
    n = len(o.roots)
    if position + 2 <= n - 1:
        x, y, z = o.roots[position:position + 3]
        if x != DELTA and z != DELTA:
            s = _as_coords(x, d) + _as_coords(z, d)
            if y == DELTA and rootsys.classify_root(d, s) == "imaginary":
                raise WallCrossingError(
                    "move across the imaginary root is not available")
            if y != DELTA and s.coords == y.coords:
                new = o.roots[:position] + (z, y, x) + o.roots[position + 3:]
                return ConvexOrderSlice(d, o.height, new), "braidA2"
    if position + 1 <= n - 1:
        x, y = o.roots[position:position + 2]
        if x != DELTA and y != DELTA:
            s = x + y
            if s.is_zero() or rootsys.classify_root(d, s) == "not_a_root":
                new = o.roots[:position] + (y, x) + o.roots[position + 2:]
                return ConvexOrderSlice(d, o.height, new), "commutation"
    raise MVKitError("no move pattern at position %d" % position)


def positive_system_above_delta(o, aff):
    """Spherical classes of the slice roots above the imaginary entry;
    validated to be a positive system of the spherical root system."""
    d = o.datum
    k = o.delta_index
    if k is None:
        raise MVKitError("slice has no imaginary entry")
    sph = aff.spherical_roots()
    for x in sph:
        if aff.iota(x).height > o.height:
            raise MVKitError("height window too small to resolve the "
                             "spherical system")
    X = sorted({aff.pi(r) for r in o.roots[k + 1:]})
    sph_set = set(sph)
    xset = set(X)
    neg = {tuple(-c for c in x) for x in xset}
    if xset & neg or (xset | neg) != sph_set:
        raise MVKitError("projection above the imaginary entry is not a "
                         "positive system")
    for a in xset:
        for b in xset:
            c = tuple(x + y for x, y in zip(a, b))
            if c in sph_set and c not in xset:
                raise MVKitError("projection above the imaginary entry is "
                                 "not closed")
    return tuple(X)
