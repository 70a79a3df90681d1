"""Shared helpers and independent oracles used across the test suite.

The oracles here are deliberately written from scratch against textbook
formulas (classical Yang-Baxter expansion, adjoint actions, slotwise
lambda-actions) so that the engine under test is checked by a second,
structurally different computation.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ccybe.exactpoly import MPoly, SymbolRegistry


def random_poly(reg, rng, names, max_degree=4, max_terms=5):
    """Random sparse polynomial in the given symbols."""
    p = reg.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = reg.const(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        budget = max_degree
        for name in names:
            e = rng.randint(0, budget)
            budget -= e
            if e:
                term = term * reg.var(name, e)
        p = p + term
    return p


def random_univariate(reg, rng, name, max_degree=3, lo=-3, hi=3):
    p = reg.zero()
    for k in range(max_degree + 1):
        c = rng.randint(lo, hi)
        if c:
            p = p + reg.var(name, k) * c if k else p + reg.const(c)
    return p


# Classical (non-conformal) oracles over a structure-constant Lie algebra.
# Tensors are plain dicts mapping basis tuples to scalars (Fraction or MPoly).


def _tadd(acc, key, val):
    cur = acc.get(key)
    new = val if cur is None else cur + val
    if isinstance(new, (int, Fraction)):
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    else:
        if new.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = new
    return acc


def classical_cybe_oracle(alg, r):
    """Textbook expansion [r12,r13] + [r12,r23] + [r13,r23].

    `r` maps (q, l) pairs of basis names to scalars.  Returns a dict over
    basis triples.  Signs follow the standard expansion:
      [r12,r13] = sum [a_i,a_j] x b_i x b_j
      [r12,r23] = sum a_i x [b_i,a_j] x b_j
      [r13,r23] = sum a_i x a_j x [b_i,b_j]
    """
    out = {}
    items = list(r.items())
    for (q, l), c1 in items:
        for (q2, l2), c2 in items:
            coeff = c1 * c2
            for k, s in alg.bracket_basis(q, q2).items():
                _tadd(out, (k, l, l2), coeff * s)
            for k, s in alg.bracket_basis(l, q2).items():
                _tadd(out, (q, k, l2), coeff * s)
            for k, s in alg.bracket_basis(l, l2).items():
                _tadd(out, (q, q2, k), coeff * s)
    return out


def adjoint_action_oracle(alg, a, tensor):
    """ad_a applied slotwise to a constant tensor (dict over basis tuples)."""
    out = {}
    for tup, coeff in tensor.items():
        for slot, b in enumerate(tup):
            for k, s in alg.bracket_basis(a, b).items():
                new = list(tup)
                new[slot] = k
                _tadd(out, tuple(new), coeff * s)
    return out


def random_unimodular(rng, size=3, steps=4):
    """Random integer (a, b, c, d) with a*d - b*c == 1, via shear products."""
    a, b, c, d = 1, 0, 0, 1
    for _ in range(steps):
        k = rng.randint(-size, size)
        if rng.random() < 0.5:
            # multiply by [[1, k], [0, 1]]
            a, b = a + k * c, b + k * d
        else:
            # multiply by [[1, 0], [k, 1]]
            c, d = c + k * a, d + k * b
    return a, b, c, d
