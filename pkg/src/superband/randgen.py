"""Seeded random generation of algebra values for the verification suites.

Everything takes an explicit ``random.Random`` so a fixed seed reproduces the
exact same sample stream; nothing here touches the global RNG state.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import AlgebraContext
from .supermatrix import SuperMatrix, SuperVector, det_even


def random_coeff(rng, spread=4):
    return Fraction(rng.randint(-spread, spread), rng.randint(1, 3))


def random_element(rng, ctx: AlgebraContext, parity=None, max_terms=3, body=None):
    """Random sparse element; ``parity`` in {None, "even", "odd"}.

    ``body`` forces the scalar coefficient (use a nonzero value to make the
    result invertible).
    """
    if parity == "odd":
        pool = ctx.odd_monomials()
    elif parity == "even":
        pool = ctx.even_monomials()
    else:
        pool = ctx.basis()
    count = rng.randint(0, max_terms)
    terms = {}
    for m in rng.sample(pool, min(count, len(pool))):
        c = random_coeff(rng)
        if c:
            terms[m] = c
    if body is not None:
        if parity == "odd":
            raise ValueError("cannot force a body onto an odd element")
        if body:
            terms[()] = Fraction(body)
        else:
            terms.pop((), None)
    return ctx.element(terms)


def random_odd(rng, ctx, max_terms=3):
    return random_element(rng, ctx, parity="odd", max_terms=max_terms)


def random_nonzero_odd(rng, ctx, max_terms=3):
    while True:
        x = random_odd(rng, ctx, max_terms=max_terms)
        if x:
            return x


def random_even_invertible(rng, ctx, max_terms=2):
    body = 0
    while body == 0:
        body = rng.randint(-4, 4)
    return random_element(rng, ctx, parity="even", max_terms=max_terms, body=body)


def random_supermatrix(rng, ctx, p=1, q=1, invertible_b=True):
    """Random even (p|q) supermatrix; with invertible_b the body of det B is
    kept nonzero (by rejection, which converges fast at these sizes)."""
    while True:
        rows = []
        for i in range(p + q):
            row = []
            for j in range(p + q):
                if (i < p) == (j < p):
                    row.append(random_element(rng, ctx, parity="even", max_terms=2))
                else:
                    row.append(random_element(rng, ctx, parity="odd", max_terms=2))
            rows.append(row)
        m = SuperMatrix(p, q, rows)
        if not invertible_b:
            return m
        if det_even(m.block_b()).body() != 0:
            return m


def random_supervector(rng, ctx, p=1, q=1):
    even = [random_element(rng, ctx, parity="even", max_terms=2) for _ in range(p)]
    odd = [random_element(rng, ctx, parity="odd", max_terms=2) for _ in range(q)]
    return SuperVector(even, odd)
