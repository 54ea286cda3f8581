"""Commutator constants read off a concrete group, and the nested-commutator expansion."""

from __future__ import annotations

import itertools
from functools import cmp_to_key

from ..chevalley import ConstantFamily, Quantity, shape
from ..errors import (FactorizationFailed, NonCommutingInputs, NotInProduct, UnsupportedFamily)
from .core import GroupElement, WindowedGroup, ZeroSpace, lift


def _functional(system, roots):
    """Small integer weights on the simple roots, positive on every listed root."""
    rank = system.rank
    for bound in range(1, 4):
        for w in itertools.product(range(-bound, bound + 1), repeat=rank):
            if all(sum(a * b for a, b in zip(w, r)) > 0 for r in roots):
                return w
    raise NotInProduct("the listed roots do not lie in an open half-space")


def decompose_unipotent(g: GroupElement, roots) -> list:
    """Parameters y_r with g = prod_r u_r(y_r), factors in the given order.

    Parameters are fixed level by level along a positive functional: at the
    lowest unsolved level the entry of every root there is linear in its own
    parameter, the other contributions coming from lower levels only.
    """
    G = g.group
    roots = [tuple(r) for r in roots]
    if not roots:
        if not g.is_identity():
            raise NotInProduct("nonidentity element, empty root list")
        return []
    w = _functional(G.system, roots)
    level = {r: sum(a * b for a, b in zip(w, r)) for r in roots}
    params = {r: G.root_space(r).zero for r in roots}
    for lev in sorted(set(level.values())):
        cur = G.product(G.u_param(r, params[r]) for r in roots)
        for r in roots:
            if level[r] != lev:
                continue
            i, j, s = G.positions[r][0]
            if isinstance(G.spaces[i][j], ZeroSpace):
                continue
            diff = g.param(i, j) - cur.param(i, j)
            params[r] = params[r] + (diff if s > 0 else -diff)
    if G.product(G.u_param(r, params[r]) for r in roots) != g:
        raise NotInProduct("element is not in the ordered product of the root subgroups")
    return [(r, params[r]) for r in roots]


def extract_constants(G: WindowedGroup, order) -> ConstantFamily:
    """Constants c_{a,b,i,j} with precision tags, from [u_a(pi^f(a)), u_b(pi^f(b))].

    ``order`` is a sort key on (i, j) fixing the order of the factors
    u_{ia+jb}; the stored higher constants refer to that order.
    """
    if G.family not in ("GL", "SL", "Sp4"):
        raise UnsupportedFamily("constants are read from single-ring groups")
    s, R, h = G.system, G.ring, G.ring.h
    c, higher = {}, {}
    for a, b in s.additive_pairs():
        terms = sorted(shape(s, a, b), key=lambda ij: order(*ij))
        targets = [tuple(i * x + j * y for x, y in zip(a, b)) for i, j in terms]
        comm = G.commutator(G.u_param(a, 1), G.u_param(b, 1))
        try:
            params = dict(decompose_unipotent(comm, targets))
        except NotInProduct as exc:
            raise FactorizationFailed(f"[u_{a}, u_{b}]: {exc}") from exc
        for (i, j), gam in zip(terms, targets):
            k = i * G.f(a) + j * G.f(b) - G.f(gam)
            d = h - G.f(s.neg(gam)) - i * G.f(a) - j * G.f(b)
            p = lift(R, params[gam]) if not isinstance(G.root_space(gam), ZeroSpace) else R.zero
            if d <= 0:
                q = Quantity(R.zero, d, R)
            else:
                if k > 0:
                    if R.valuation(p) < k:
                        raise FactorizationFailed(f"parameter of {gam} not divisible by pi^{k}")
                    p = R.div_uniformizer(p, k)
                elif k < 0:
                    p = p * R.uniformizer() ** (-k) if -k < h else R.zero
                q = Quantity(p, d, R)
            if (i, j) == (1, 1):
                c[(a, b)] = q
            else:
                higher[(a, b, i, j)] = q
    return ConstantFamily(s, c, higher, R)


def subset_order(n: int) -> list[frozenset]:
    """Subsets of {1..n}: I before J when min(I ^ J) lies in I."""
    def cmp(I, J):
        if I == J:
            return 0
        return -1 if min(I ^ J) in I else 1
    subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(1, n + 1), k)]
    return sorted(subsets, key=cmp_to_key(cmp))


def _free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def _invert(word):
    return [(S, -e) for S, e in reversed(word)]


def _recursive_word(blocks):
    if len(blocks) == 1:
        return [(blocks[0], 1)]
    x, y, rest = blocks[0], blocks[1], blocks[2:]
    word = (_recursive_word([x | y] + rest) + _invert(_recursive_word([x] + rest))
            + _invert(_recursive_word([y] + rest)))
    return _free_reduce(word)


def expansion_word(n: int, order: str = "lemma") -> list:
    """The right-hand side as a list of (subset, exponent) letters.

    ``lemma`` sorts the subsets by the symmetric-difference order with exponent
    (-1)^(n-|I|). ``recursive`` unfolds [x,[y,c]] = [xy,c][x,c]^-1[y,c]^-1 and
    freely reduces the word, which gives an identity valid in every group.
    """
    if n < 1:
        raise ValueError("need at least one a_i")
    if order == "lemma":
        return [(I, -1 if (n - len(I)) % 2 else 1) for I in subset_order(n) if I]
    if order == "recursive":
        return _recursive_word([frozenset([i]) for i in range(1, n + 1)])
    raise ValueError(f"unknown order {order!r}")


def nested_commutator_check(a_list, b: GroupElement, order: str = "lemma") -> bool:
    """[a_1,[a_2,...,[a_n,b]]] == prod_I [prod_{i in I} a_i, b]^{+-1} in the given word order."""
    G = b.group
    for x, y in itertools.combinations(a_list, 2):
        if G.mul(x, y) != G.mul(y, x):
            raise NonCommutingInputs("the a_i must commute pairwise")
    lhs = b
    for a in reversed(a_list):
        lhs = G.commutator(a, lhs)
    rhs = G.identity
    for I, e in expansion_word(len(a_list), order):
        term = G.commutator(G.product(a_list[i - 1] for i in sorted(I)), b)
        rhs = G.mul(rhs, term if e > 0 else G.inv(term))
    return lhs == rhs
