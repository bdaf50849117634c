"""Cartan data built from loop-free graphs, with exact root-lattice
arithmetic, root classification, and the affine-specific structure
(primitive imaginary root, spherical projection, chamber coweights).

Everything is exact: root vectors are integer tuples, coweights are
rational tuples, and all sign decisions use Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import MVKitError


@dataclass(frozen=True)
class RootVector:
    """Integer vector on the node set; houses roots, weights and
    dimension-vectors."""

    coords: tuple

    def __add__(self, other):
        return RootVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return RootVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return RootVector(tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return RootVector(tuple(c * a for a in self.coords))

    @property
    def height(self):
        return sum(self.coords)

    def is_zero(self):
        return all(a == 0 for a in self.coords)

    def is_nonneg(self):
        return all(a >= 0 for a in self.coords)

    def support(self):
        return tuple(i for i, a in enumerate(self.coords) if a != 0)


@dataclass(frozen=True)
class CoweightVector:
    """Rational linear functional on the root lattice, stored by its values
    on the simple roots."""

    coords: tuple  # Fractions

    def __add__(self, other):
        return CoweightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return CoweightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CoweightVector(tuple(-a for a in self.coords))

    def __rmul__(self, c):
        c = Fraction(c)
        return CoweightVector(tuple(c * a for a in self.coords))

    def pair(self, x):
        """<theta, x> for a RootVector (or raw coordinate tuple) x."""
        xs = x.coords if isinstance(x, RootVector) else x
        return sum(a * b for a, b in zip(self.coords, xs))


def coweight(values):
    return CoweightVector(tuple(Fraction(v) for v in values))


def root(values):
    vs = tuple(values)
    if any(int(v) != v for v in vs):
        raise ValueError("root vectors are integral")
    return RootVector(tuple(int(v) for v in vs))


def _kind_of(cartan):
    """Signature test: finite iff positive definite, affine iff positive
    semidefinite with a 1-dimensional kernel."""
    n = len(cartan)
    a = [[Fraction(x) for x in row] for row in cartan]
    active = list(range(n))
    null = 0
    while active:
        pivot = next((k for k in active if a[k][k] != 0), None)
        if pivot is None:
            # all remaining diagonal entries vanish; a nonzero off-diagonal
            # entry then gives mixed signs
            if any(a[i][j] != 0 for i in active for j in active if i != j):
                return "other"
            null += len(active)
            break
        if a[pivot][pivot] < 0:
            return "other"
        p = a[pivot][pivot]
        active.remove(pivot)
        for i in active:
            f = a[i][pivot] / p
            if f:
                for j in active:
                    a[i][j] -= f * a[pivot][j]
    if null == 0:
        return "finite"
    if null == 1:
        return "affine"
    return "other"


@dataclass(frozen=True)
class CartanDatum:
    """Symmetric Cartan datum of a loop-free multigraph.

    cartan[i][j] is 2 on the diagonal and minus the edge multiplicity
    between nodes i and j otherwise.
    """

    nodes: tuple
    edges: tuple  # pairs of node positions, sorted, repeated per multiplicity
    cartan: tuple
    kind: str

    @staticmethod
    def from_graph(nodes, edges, kind_hint=None):
        nodes = tuple(nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node ids")
        pos = {v: k for k, v in enumerate(nodes)}
        norm = []
        for e in edges:
            i, j = e
            if i == j:
                raise ValueError("loops are not allowed")
            if i not in pos or j not in pos:
                raise ValueError("edge endpoint %r not a node" % (e,))
            norm.append(tuple(sorted((pos[i], pos[j]))))
        norm.sort()
        n = len(nodes)
        cart = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in norm:
            cart[i][j] -= 1
            cart[j][i] -= 1
        cart = tuple(tuple(r) for r in cart)
        kind = _kind_of(cart)
        if kind_hint is not None and kind_hint != kind:
            raise MVKitError("declared kind %r but matrix signature gives %r"
                             % (kind_hint, kind))
        return CartanDatum(nodes, tuple(norm), cart, kind)

    @property
    def rank(self):
        return len(self.nodes)

    def node_pos(self, node):
        return self.nodes.index(node)

    def simple_root(self, i):
        """Simple root at node position i."""
        return RootVector(tuple(1 if k == i else 0 for k in range(self.rank)))

    def adjacency(self):
        adj = {i: set() for i in range(self.rank)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


def bilinear_form(d, x, y):
    """(x, y) under the normalization (alpha_i, alpha_i) = 2."""
    xs = x.coords if isinstance(x, RootVector) else tuple(x)
    ys = y.coords if isinstance(y, RootVector) else tuple(y)
    if len(xs) != d.rank or len(ys) != d.rank:
        raise ValueError("vector/datum dimension mismatch")
    total = 0
    for i, xi in enumerate(xs):
        if xi:
            row = d.cartan[i]
            total += xi * sum(a * b for a, b in zip(row, ys))
    return total


def _connected_support(d, v):
    sup = [i for i, a in enumerate(v.coords) if a != 0]
    if not sup:
        return True
    adj = d.adjacency()
    seen = {sup[0]}
    stack = [sup[0]]
    supset = set(sup)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j in supset and j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == supset


@lru_cache(maxsize=None)
def delta(d):
    """Primitive positive integer vector spanning the radical of the form."""
    if d.kind != "affine":
        raise MVKitError("delta only exists for affine data")
    ker = linalg.nullspace(linalg.from_rows(d.cartan))
    if ker.ncols != 1:
        raise MVKitError("affine datum must have a 1-dimensional radical")
    col = [ker.rows[i][0] for i in range(d.rank)]
    from math import gcd, lcm
    mult = lcm(*[f.denominator for f in col]) if col else 1
    ints = [int(f * mult) for f in col]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if ints[0] < 0:
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints):
        raise MVKitError("radical generator is not strictly positive; "
                         "datum is not connected affine")
    return RootVector(tuple(ints))


def classify_root(d, v):
    """'real', 'imaginary' or 'not_a_root' for a nonzero lattice vector."""
    if d.kind not in ("finite", "affine"):
        raise MVKitError("classification implemented for finite/affine kinds only")
    if v.is_zero():
        raise ValueError("the zero vector is not classified")
    norm = bilinear_form(d, v, v)
    if norm == 2 and _connected_support(d, v):
        return "real"
    if d.kind == "affine":
        dl = delta(d).coords
        k = None
        ok = True
        for a, b in zip(v.coords, dl):
            if a % b:
                ok = False
                break
            q = a // b
            if k is None:
                k = q
            elif q != k:
                ok = False
                break
        if ok and k:
            return "imaginary"
    return "not_a_root"


@lru_cache(maxsize=None)
def positive_real_roots(d, height_bound):
    """All positive real roots of height <= height_bound, sorted by
    (height, coordinates).  Computed by reflection-orbit closure from the
    simple roots; descent through simple reflections never raises height,
    so the bound is safe to apply during the search."""
    bound = height_bound
    seen = set()
    frontier = []
    for i in range(d.rank):
        a = d.simple_root(i)
        if a.height <= bound:
            seen.add(a.coords)
            frontier.append(a)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(d.rank):
                w = _reflect_root(d, i, v)
                if w.is_nonneg() and not w.is_zero() and w.height <= bound \
                        and w.coords not in seen:
                    seen.add(w.coords)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted((RootVector(c) for c in seen),
                        key=lambda r: (r.height, r.coords)))


@lru_cache(maxsize=None)
def all_roots_finite(d):
    """All roots of a finite-type datum."""
    if d.kind != "finite":
        raise MVKitError("finite-type datum required")
    pos = positive_real_roots(d, _finite_height_cap(d))
    return pos + tuple(-r for r in pos)


@lru_cache(maxsize=None)
def _finite_height_cap(d):
    # grow the bound until the orbit stabilizes
    h = 2 * d.rank + 2
    while True:
        a = positive_real_roots(d, h)
        b = positive_real_roots(d, 2 * h)
        if len(a) == len(b):
            return h
        h *= 2


def _reflect_root(d, i, v):
    c = sum(a * b for a, b in zip(d.cartan[i], v.coords))
    coords = list(v.coords)
    coords[i] -= c
    return RootVector(tuple(coords))


def _reflect_coweight(d, i, t):
    ti = t.coords[i]
    return CoweightVector(tuple(t.coords[j] - d.cartan[j][i] * ti
                                for j in range(d.rank)))


@dataclass(frozen=True)
class AffineData:
    """Affine datum with a chosen extending node: the primitive imaginary
    root, the spherical node set, and the dual-basis chamber coweights."""

    datum: CartanDatum
    extending: int  # node position
    delta: RootVector
    spherical_nodes: tuple  # node positions, increasing
    fundamental_coweights: tuple  # aligned with spherical_nodes
    rank_r: int

    def coweight_at(self, i):
        return self.fundamental_coweights[self.spherical_nodes.index(i)]

    def pi(self, v):
        """Spherical class of v: coordinates on the spherical nodes after
        eliminating the extending coordinate with delta."""
        c0 = v.coords[self.extending]
        return tuple(v.coords[i] - c0 * self.delta.coords[i]
                     for i in self.spherical_nodes)

    def iota(self, sph):
        """Minimal positive-real-root lift of a spherical root."""
        coords = [0] * self.datum.rank
        for i, c in zip(self.spherical_nodes, sph):
            coords[i] = c
        beta = RootVector(tuple(coords))
        if not beta.is_nonneg():
            beta = beta + self.delta
        if classify_root(self.datum, beta) != "real" or not beta.is_nonneg():
            raise MVKitError("not a spherical root: %r" % (sph,))
        return beta

    @property
    def spherical_datum(self):
        return _spherical_datum(self)

    def spherical_roots(self):
        """All spherical roots, as coordinate tuples on the spherical nodes."""
        sub = self.spherical_datum
        out = []
        for r in all_roots_finite(sub):
            out.append(r.coords)
        return tuple(sorted(out))

    def spherical_positive_roots(self):
        return tuple(s for s in self.spherical_roots() if sum(s) > 0 or
                     next(x for x in s if x) > 0)


@lru_cache(maxsize=None)
def _spherical_datum(aff):
    d = aff.datum
    keep = aff.spherical_nodes
    nodes = tuple(d.nodes[i] for i in keep)
    edges = [(d.nodes[i], d.nodes[j]) for i, j in d.edges
             if i in keep and j in keep]
    return CartanDatum.from_graph(nodes, edges)


def affine_data(d, extending_node):
    """Structure attached to an affine datum and a valid extending node."""
    if d.kind != "affine":
        raise MVKitError("affine datum required")
    dl = delta(d)
    pos = d.node_pos(extending_node)
    if dl.coords[pos] != 1:
        raise MVKitError("node %r is not extending (delta coordinate %d)"
                         % (extending_node, dl.coords[pos]))
    spherical = tuple(i for i in range(d.rank) if i != pos)
    sub_nodes = tuple(d.nodes[i] for i in spherical)
    sub_edges = [(d.nodes[i], d.nodes[j]) for i, j in d.edges
                 if i != pos and j != pos]
    sub = CartanDatum.from_graph(sub_nodes, sub_edges)
    if sub.kind != "finite":
        raise MVKitError("removing the node does not leave a finite datum")
    cows = []
    for i in spherical:
        coords = [Fraction(0)] * d.rank
        coords[i] = Fraction(1)
        coords[pos] = Fraction(-dl.coords[i])
        cows.append(CoweightVector(tuple(coords)))
    return AffineData(d, pos, dl, spherical, tuple(cows), len(spherical))


def spherical_coweights(aff):
    """The set of spherical chamber coweights: the orbit closure of the
    fundamental coweights under the spherical simple reflections."""
    d = aff.datum
    seen = set(c.coords for c in aff.fundamental_coweights)
    frontier = list(aff.fundamental_coweights)
    while frontier:
        nxt = []
        for t in frontier:
            for i in aff.spherical_nodes:
                u = _reflect_coweight(d, i, t)
                if u.coords not in seen:
                    seen.add(u.coords)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted((CoweightVector(c) for c in seen),
                        key=lambda t: t.coords))


def orientation_coweight(aff, orientation):
    """Functional induced by pairing the imaginary root through the Euler
    form of the oriented graph; lands in the chamber-coweight set."""
    d = aff.datum
    pos = {v: k for k, v in enumerate(d.nodes)}
    arrows = []
    for (s, t) in orientation:
        if s not in pos or t not in pos:
            raise MVKitError("orientation endpoint %r not a node" % ((s, t),))
        arrows.append((pos[s], pos[t]))
    need = sorted(tuple(sorted(p)) for p in arrows)
    if need != sorted(d.edges):
        raise MVKitError("orientation does not cover each edge exactly once")
    # directed cycle check on the multigraph
    color = {}
    out = {i: [] for i in range(d.rank)}
    for s, t in arrows:
        out[s].append(t)

    def dfs(v):
        color[v] = 1
        for w in out[v]:
            c = color.get(w, 0)
            if c == 1:
                return True
            if c == 0 and dfs(w):
                return True
        color[v] = 2
        return False

    if any(dfs(v) for v in range(d.rank) if color.get(v, 0) == 0):
        raise MVKitError("orientation has a directed cycle")
    dl = aff.delta.coords
    coords = []
    for j in range(d.rank):
        c = Fraction(dl[j])
        for s, t in arrows:
            if t == j:
                c -= dl[s]
        coords.append(c)
    gamma = CoweightVector(tuple(coords))
    if gamma not in spherical_coweights(aff):
        raise MVKitError("orientation functional is not a chamber coweight")
    return gamma


_NAMED = {}


def named(name):
    """Cartan datum for a short type name: 'A2', 'D4', affine 'At1', 'At2',
    'At3', 'Dt4', and the reducible 'A1xA1'."""
    if name in _NAMED:
        return _NAMED[name]
    if name == "A1xA1":
        d = CartanDatum.from_graph((1, 2), ())
    elif name.startswith("At"):
        n = int(name[2:])
        nodes = tuple(range(n + 1))
        if n == 1:
            edges = ((0, 1), (0, 1))
        else:
            edges = tuple((i, (i + 1) % (n + 1)) for i in range(n + 1))
        d = CartanDatum.from_graph(nodes, edges)
    elif name.startswith("Dt"):
        n = int(name[2:])
        if n != 4:
            raise MVKitError("only Dt4 is wired up")
        d = CartanDatum.from_graph((0, 1, 2, 3, 4),
                                   ((0, 2), (1, 2), (3, 2), (4, 2)))
    elif name.startswith("A"):
        n = int(name[1:])
        d = CartanDatum.from_graph(tuple(range(1, n + 1)),
                                   tuple((i, i + 1) for i in range(1, n)))
    elif name.startswith("D"):
        n = int(name[1:])
        nodes = tuple(range(1, n + 1))
        edges = tuple((i, i + 1) for i in range(1, n - 1)) + ((n - 2, n),)
        d = CartanDatum.from_graph(nodes, edges)
    else:
        raise MVKitError("unknown type name %r" % name)
    _NAMED[name] = d
    return d


def default_affine(d):
    """Affine structure for the first extending node (delta coordinate 1)."""
    dl = delta(d)
    for i, c in enumerate(dl.coords):
        if c == 1:
            return affine_data(d, d.nodes[i])
    raise MVKitError("no extending node found")


def delta_multiples_upto(d, height_bound):
    dl = delta(d)
    h = dl.height
    return tuple(k * dl for k in range(1, height_bound // h + 1))
