"""Weyl group elements as canonical reduced words.

Equality of group elements is equality of canonical forms, where the
canonical form is the lexicographically least reduced word under the node
ordering of the Cartan datum.  Reducedness and lengths are decided through
the root action (a word is reduced iff its running inversion roots stay
positive), which works uniformly in affine type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import MVKitError
from .rootsys import CoweightVector, RootVector, _reflect_coweight, _reflect_root


@dataclass(frozen=True)
class WeylElt:
    datum: object
    word: tuple  # canonical reduced word of node positions

    @property
    def length(self):
        return len(self.word)

    def inverse(self):
        return from_word(self.datum, tuple(reversed(self.word)))

    def __mul__(self, other):
        return multiply(self, other)


def identity(d):
    return WeylElt(d, ())


def simple(d, i):
    if not 0 <= i < d.rank:
        raise ValueError("node position out of range")
    return WeylElt(d, (i,))


def _act_word_root(d, word, v):
    # word = (i1,...,il) acts as s_{i1} ... s_{il}: rightmost first
    for i in reversed(word):
        v = _reflect_root(d, i, v)
    return v


def _act_word_inv_root(d, word, v):
    for i in word:
        v = _reflect_root(d, i, v)
    return v


def _reduce(d, letters):
    """Reduced word equal to the product of the given letters."""
    red = []
    for i in letters:
        v = _act_word_root(d, red, d.simple_root(i))
        if v.is_nonneg():
            red.append(i)
        else:
            gamma = d.simple_root(i)
            for k in range(len(red) - 1, -1, -1):
                if gamma.coords == d.simple_root(red[k]).coords:
                    del red[k]
                    break
                gamma = _reflect_root(d, red[k], gamma)
            else:
                raise AssertionError("exchange condition failed")
    return red


def _canonical(d, letters):
    """Lexicographically least reduced word for the product of letters."""
    cur = _reduce(d, letters)
    out = []
    while cur:
        for i in range(d.rank):
            # left descent: l(s_i w) < l(w)  <=>  w^{-1}(alpha_i) < 0
            v = _act_word_inv_root(d, cur, d.simple_root(i))
            if not v.is_nonneg():
                out.append(i)
                cur = _reduce(d, [i] + cur)
                break
        else:
            raise AssertionError("nonempty word with no left descent")
    return tuple(out)


def from_word(d, letters):
    letters = tuple(letters)
    if any(not 0 <= i < d.rank for i in letters):
        raise ValueError("letters must be node positions")
    return WeylElt(d, _canonical(d, letters))


def from_node_word(d, nodes):
    """Build an element from a word of node *ids* rather than positions."""
    return from_word(d, tuple(d.node_pos(n) for n in nodes))


def multiply(u, v):
    if u.datum is not v.datum and u.datum != v.datum:
        raise MVKitError("elements over different data")
    return from_word(u.datum, u.word + v.word)


def act(w, x):
    """Apply w to a RootVector, or contragrediently to a CoweightVector."""
    d = w.datum
    if isinstance(x, RootVector):
        return _act_word_root(d, w.word, x)
    if isinstance(x, CoweightVector):
        t = x
        for i in reversed(w.word):
            t = _reflect_coweight(d, i, t)
        return t
    raise TypeError("act expects a RootVector or CoweightVector")


def is_reduced(d, letters):
    letters = tuple(letters)
    return len(_reduce(d, letters)) == len(letters)


def inversion_set(w):
    """The l(w) inversion roots, in word order of the canonical word."""
    d = w.datum
    out = []
    prefix = []
    for i in w.word:
        out.append(_act_word_root(d, prefix, d.simple_root(i)))
        prefix.append(i)
    return out


def inversion_roots_of_word(d, word):
    out = []
    prefix = []
    for i in word:
        out.append(_act_word_root(d, prefix, d.simple_root(i)))
        prefix.append(i)
    return out


def reduced_words(w, cap=10 ** 6):
    """All reduced words of w, closed under braid and commutation moves."""
    return set(move_graph(w, cap)[0])


def move_graph(w, cap=10 ** 6):
    """(words, edges) where edges are (word, word', label, position)."""
    d = w.datum
    start = w.word
    seen = {start}
    frontier = [start]
    edges = []
    while frontier:
        nxt = []
        for u in frontier:
            for p, (u2, label) in _word_moves(d, u):
                edges.append((u, u2, label, p))
                if u2 not in seen:
                    if len(seen) >= cap:
                        raise MVKitError("reduced-word set exceeds cap %d" % cap)
                    seen.add(u2)
                    nxt.append(u2)
        frontier = nxt
    return seen, edges


def _word_moves(d, u):
    out = []
    for p in range(len(u) - 1):
        i, j = u[p], u[p + 1]
        if i != j and d.cartan[i][j] == 0:
            out.append((p, (u[:p] + (j, i) + u[p + 2:], "commutation")))
    for p in range(len(u) - 2):
        i, j, k = u[p], u[p + 1], u[p + 2]
        if i == k and i != j and d.cartan[i][j] == -1:
            out.append((p, (u[:p] + (j, i, j) + u[p + 3:], "braidA2")))
    return out


def is_J_reduced(w, J):
    """True iff l(w s_j) > l(w) for every node position j in J."""
    d = w.datum
    for j in J:
        if not act(w, d.simple_root(j)).is_nonneg():
            return False
    return True


def longest_element(d, J=None):
    """Longest element of the (finite) parabolic subgroup on J."""
    J = tuple(range(d.rank)) if J is None else tuple(J)
    w = identity(d)
    guard = 0
    while True:
        for j in J:
            if not act(w.inverse(), d.simple_root(j)).is_nonneg():
                continue
            # l(s_j w) > l(w): lengthen on the left
            w = from_word(d, (j,) + w.word)
            break
        else:
            return w
        guard += 1
        if guard > 10 ** 5:
            raise MVKitError("parabolic subgroup looks infinite")


@lru_cache(maxsize=None)
def ball(d, L):
    """All elements of length <= L with BFS parents.

    Returns (elements, right_parent, left_parent) where elements are sorted
    by (length, word), right_parent[w] = (w', i) with w = w' s_i, and
    left_parent[w] = (i, w') with w = s_i w'.
    """
    elems = {(): identity(d)}
    frontier = [identity(d)]
    while frontier:
        nxt = []
        for w in frontier:
            if w.length >= L:
                continue
            for i in range(d.rank):
                if act(w, d.simple_root(i)).is_nonneg():
                    u = from_word(d, w.word + (i,))
                    if u.word not in elems:
                        elems[u.word] = u
                        nxt.append(u)
        frontier = nxt
    # canonical words are reduced, so splitting off a letter gives parents
    right_parent = {}
    left_parent = {}
    for word in elems:
        if word:
            right_parent[word] = (from_word(d, word[:-1]), word[-1])
            left_parent[word] = (word[0], from_word(d, word[1:]))
    out = sorted(elems.values(), key=lambda w: (w.length, w.word))
    return tuple(out), right_parent, left_parent
