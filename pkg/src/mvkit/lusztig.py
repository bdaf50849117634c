"""Lusztig data: convex-order descriptor, finitely supported real-root
multiplicities, and partitions attached to the chamber coweights of the
spherical chamber selected by the order.

These tuples serve as coordinates for crystal elements; there is no
separate abstract crystal-element type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import biconvex, rootsys
from .biconvex import DELTA, ConvexOrderSlice
from .errors import MVKitError, WallCrossingError
from .rootsys import CoweightVector, RootVector


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        ps = self.parts
        if any(int(p) != p or p <= 0 for p in ps):
            raise ValueError("parts must be positive integers")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def size(self):
        return sum(self.parts)

    @staticmethod
    def of(seq):
        return Partition(tuple(int(p) for p in seq))


EMPTY = Partition(())


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n, largest-first lexicographic order."""
    if n == 0:
        return (EMPTY,)
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(Partition(tuple(acc)))
            return
        for p in range(min(rem, maxpart), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def colored_partition_tuples(total, colors):
    """Tuples of `colors` partitions of total size `total`, in a fixed
    deterministic order."""
    if colors == 0:
        return ((),) if total == 0 else ()
    out = []

    def rec(idx, rem, acc):
        if idx == colors - 1:
            for lam in partitions_of(rem):
                out.append(tuple(acc) + (lam,))
            return
        for m in range(rem, -1, -1):
            for lam in partitions_of(m):
                acc.append(lam)
                rec(idx + 1, rem - m, acc)
                acc.pop()

    rec(0, total, [])
    return tuple(out)


@dataclass(frozen=True)
class LusztigDatum:
    """Coordinates of a crystal element in the direction of a convex order."""

    order: ConvexOrderSlice
    real: tuple  # ((coords, n), ...) sorted by slice position, n > 0
    imaginary: tuple  # ((coweight coords, parts), ...) sorted, nonempty parts

    def real_map(self):
        return {c: n for c, n in self.real}

    def imaginary_map(self):
        return {c: Partition(p) for c, p in self.imaginary}

    def real_count(self, r):
        key = r.coords if isinstance(r, RootVector) else tuple(r)
        return self.real_map().get(key, 0)

    def partition_at(self, gamma):
        key = gamma.coords if isinstance(gamma, CoweightVector) else tuple(gamma)
        return self.imaginary_map().get(key, EMPTY)


def make_datum(order, real_map=None, imaginary_map=None):
    """Normalized datum from dict-style coordinate data."""
    real_map = dict(real_map or {})
    imaginary_map = dict(imaginary_map or {})
    d = order.datum
    slice_pos = {}
    for k, r in enumerate(order.roots):
        if r != DELTA:
            slice_pos[r.coords] = k
    real = []
    for r, n in real_map.items():
        key = r.coords if isinstance(r, RootVector) else tuple(r)
        if n < 0:
            raise ValueError("negative multiplicity")
        if n:
            if key not in slice_pos:
                raise MVKitError("root %r outside the order slice" % (key,))
            real.append((key, int(n)))
    real.sort(key=lambda kn: slice_pos[kn[0]])
    imag = []
    if imaginary_map:
        if order.delta_index is None:
            raise MVKitError("imaginary data on a slice without the "
                             "imaginary entry")
        allowed = {g.coords for g in chamber_coweights(order)}
        for g, lam in imaginary_map.items():
            key = g.coords if isinstance(g, CoweightVector) else tuple(g)
            lam = lam if isinstance(lam, Partition) else Partition.of(lam)
            if lam.parts:
                if key not in allowed:
                    raise MVKitError("coweight %r is not in the closed "
                                     "chamber of this order" % (key,))
                imag.append((key, lam.parts))
        imag.sort()
    return LusztigDatum(order, tuple(real), tuple(imag))


def zero_datum(order):
    return LusztigDatum(order, (), ())


@lru_cache(maxsize=None)
def _aff_for(d):
    return rootsys.default_affine(d)


def chamber_coweights(order):
    """Chamber coweights lying in the closure of the spherical chamber
    selected by the part of the order above the imaginary entry."""
    d = order.datum
    if d.kind != "affine":
        return ()
    aff = _aff_for(d)
    X = biconvex.positive_system_above_delta(order, aff)
    lifts = [aff.iota(x) for x in X]
    out = [g for g in rootsys.spherical_coweights(aff)
           if all(g.pair(b) >= 0 for b in lifts)]
    if len(out) != aff.rank_r:
        raise MVKitError("chamber closure does not contain exactly r coweights")
    return tuple(sorted(out, key=lambda g: g.coords))


def weight_of(datum):
    d = datum.order.datum
    total = RootVector((0,) * d.rank)
    for coords, n in datum.real:
        total = total + n * RootVector(coords)
    imag = sum(sum(parts) for _, parts in datum.imaginary)
    if imag:
        total = total + imag * rootsys.delta(d)
    return total


def kostant_count(d, nu):
    """Number of ways to write nu as a sum of positive roots with their
    multiplicities: real roots freely, imaginary levels carrying one
    partition per spherical node.  Computed by direct dynamic programming
    over the root list; this is the oracle enumeration is measured against.
    """
    nu = nu if isinstance(nu, RootVector) else RootVector(tuple(nu))
    if not nu.is_nonneg():
        raise ValueError("weight must be a nonnegative vector")
    h = nu.height
    pieces = [r.coords for r in rootsys.positive_real_roots(d, h)
              if all(a <= b for a, b in zip(r.coords, nu.coords))]
    if d.kind == "affine":
        r = d.rank - 1
        for mult in rootsys.delta_multiples_upto(d, h):
            if all(a <= b for a, b in zip(mult.coords, nu.coords)):
                pieces.extend([mult.coords] * r)
    # unbounded-coin DP over the coordinate box below nu
    import itertools
    box = sorted(itertools.product(*[range(c + 1) for c in nu.coords]),
                 key=lambda c: (sum(c), c))
    counts = {c: 0 for c in box}
    counts[(0,) * d.rank] = 1
    for p in pieces:
        for c in box:
            prev = tuple(a - b for a, b in zip(c, p))
            if all(a >= 0 for a in prev):
                counts[c] += counts[prev]
    return counts[nu.coords]


def enumerate_by_weight(nu, order):
    """All data of weight exactly nu on the given slice, deterministically
    ordered (lexicographic in slice order, then partition tuples)."""
    nu = nu if isinstance(nu, RootVector) else RootVector(tuple(nu))
    d = order.datum
    if nu.height > order.height:
        raise MVKitError("slice too short for the requested weight")
    entries = order.roots
    gammas = chamber_coweights(order) if order.delta_index is not None else ()
    dl = rootsys.delta(d) if d.kind == "affine" else None
    out = []

    def rec(k, remaining, real_acc, imag_acc):
        if k == len(entries):
            if all(c == 0 for c in remaining):
                out.append(LusztigDatum(order, tuple(real_acc), tuple(imag_acc)))
            return
        e = entries[k]
        if e == DELTA:
            maxm = min((rem // dc for rem, dc in zip(remaining, dl.coords)
                        if dc), default=0)
            for m in range(0, maxm + 1):
                rem2 = tuple(a - m * b for a, b in zip(remaining, dl.coords))
                for lams in colored_partition_tuples(m, len(gammas)):
                    imag = tuple(sorted(
                        (g.coords, lam.parts)
                        for g, lam in zip(gammas, lams) if lam.parts))
                    rec(k + 1, rem2, real_acc, imag)
            return
        cap = min((rem // c for rem, c in zip(remaining, e.coords) if c),
                  default=0)
        for n in range(0, cap + 1):
            rem2 = tuple(a - n * b for a, b in zip(remaining, e.coords))
            if n:
                real_acc.append((e.coords, n))
            rec(k + 1, rem2, real_acc, imag_acc)
            if n:
                real_acc.pop()

    rec(0, nu.coords, [], ())
    return out


def transition_braid(p, q, r):
    """Rank-2 triple exchange: the middle coordinate becomes min(p, r) and
    the side sums are preserved."""
    q2 = min(p, r)
    return (q + r - q2, q2, p + q - q2)


def transition_commute(p, q):
    return (q, p)


def _apply_move(datum_values, roots, position, label):
    """Transform the positionally-read coordinate list along a move."""
    vals = list(datum_values)
    if label == "commutation":
        vals[position], vals[position + 1] = vals[position + 1], vals[position]
    else:
        p, q, r = vals[position:position + 3]
        vals[position:position + 3] = transition_braid(p, q, r)
    return vals


def _positional_values(d_datum):
    order = d_datum.order
    rm = d_datum.real_map()
    vals = []
    for e in order.roots:
        vals.append(None if e == DELTA else rm.get(e.coords, 0))
    return vals


def _datum_from_positional(order, vals, imaginary):
    real = tuple((e.coords, v) for e, v in zip(order.roots, vals)
                 if e != DELTA and v)
    return LusztigDatum(order, real, imaginary)


def reorder(datum, target):
    """Carry the datum to another slice by a path of local moves.

    The path is found greedily; when the two slices select different
    positive systems above the imaginary entry the required exchange rule
    is unavailable and WallCrossingError is raised.
    """
    src = datum.order
    d = src.datum
    if target.height != src.height or target.datum != d:
        raise MVKitError("target slice over a different window")
    if src.roots == target.roots:
        return datum
    if src.delta_index is not None:
        aff = _aff_for(d)
        if biconvex.positive_system_above_delta(src, aff) != \
                biconvex.positive_system_above_delta(target, aff):
            raise WallCrossingError(
                "target order selects a different positive system above "
                "the imaginary root")
    rank_of = {}
    for k, e in enumerate(target.roots):
        rank_of[DELTA if e == DELTA else e.coords] = k

    def rank(e):
        return rank_of[DELTA if e == DELTA else e.coords]

    wt_height = weight_of(datum).height
    roots = list(src.roots)
    vals = _positional_values(datum)
    guard = len(roots) * len(roots) + 1
    for _ in range(guard * guard):
        if all(rank(roots[k]) < rank(roots[k + 1]) for k in range(len(roots) - 1)):
            break
        moved = False
        for k in range(len(roots) - 2):
            x, y, z = roots[k:k + 3]
            if DELTA in (x, y, z):
                continue
            if (x + z).coords == y.coords and rank(x) > rank(z):
                p, q, r = vals[k:k + 3]
                vals[k:k + 3] = transition_braid(p, q, r)
                roots[k:k + 3] = [z, y, x]
                moved = True
                break
        if moved:
            continue
        for k in range(len(roots) - 1):
            x, y = roots[k:k + 2]
            if x == DELTA or y == DELTA:
                continue
            if rank(x) > rank(y):
                s = x + y
                visible = rootsys.classify_root(d, s) != "not_a_root" \
                    and s.height <= src.height
                if visible:
                    continue  # handled by a braid elsewhere
                if rootsys.classify_root(d, s) != "not_a_root":
                    # middle root hidden by the window; its coordinate is
                    # forced to zero by the weight bound
                    if s.height <= wt_height:
                        raise MVKitError("window too small to reorder")
                    if min(vals[k], vals[k + 1]) != 0:
                        raise AssertionError("hidden middle with both sides "
                                             "positive")
                vals[k], vals[k + 1] = vals[k + 1], vals[k]
                roots[k], roots[k + 1] = roots[k + 1], roots[k]
                moved = True
                break
        if not moved:
            raise MVKitError("no applicable move towards the target order")
    else:
        raise MVKitError("reorder did not terminate")
    if tuple(roots) != target.roots:
        raise MVKitError("reorder finished on an unexpected slice")
    return _datum_from_positional(target, vals, datum.imaginary)


def head_phi(datum):
    """Multiplicity at the least root of the order (must be simple)."""
    i = _head_node(datum)
    return datum.real_count(datum.order.datum.simple_root(i))


def head_epsilon(datum):
    d = datum.order.datum
    i = _head_node(datum)
    wt = weight_of(datum)
    return head_phi(datum) - rootsys.bilinear_form(d, d.simple_root(i), wt)


def _head_node(datum):
    head = datum.order.roots[0]
    if head == DELTA or head.height != 1:
        raise MVKitError("least root of the order is not simple")
    return head.coords.index(1)


def crystal_op_head(datum, op):
    """Raising/lowering operator acting on the head coordinate; lowering
    returns None when the coordinate is zero."""
    if op not in ("e", "f"):
        raise ValueError("op must be 'e' or 'f'")
    d = datum.order.datum
    i = _head_node(datum)
    alpha = d.simple_root(i)
    n = datum.real_count(alpha)
    if op == "f":
        if n == 0:
            return None
        n -= 1
    else:
        n += 1
    rm = datum.real_map()
    if n:
        rm[alpha.coords] = n
    else:
        rm.pop(alpha.coords, None)
    return make_datum(datum.order, rm, dict(datum.imaginary))


def star_dual(datum):
    """Datum of the dual element relative to the reversed order: the real
    multiplicities are kept as a function of the root, the partitions are
    re-indexed by negating their coweights."""
    rev = datum.order.reverse()
    imag = tuple(sorted((tuple(-c for c in g), parts)
                        for g, parts in datum.imaginary))
    return make_datum(rev, dict(datum.real),
                      {g: Partition(p) for g, p in imag})
