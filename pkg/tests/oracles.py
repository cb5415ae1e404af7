"""Brute-force reference computations that avoid the engine's code paths."""

from __future__ import annotations

from itertools import product

from cptgroups.linear import GaussInt, Matrix


def naive_closure(gens, mul):
    """Fixed point of 'multiply everything by everything'."""
    elems = set(gens)
    while True:
        new = {mul(a, b) for a, b in product(elems, repeat=2)} - elems
        if not new:
            return elems
        elems |= new


def quaternion_coords(a: Matrix):
    """(w, x, y, z) with a = w I - i (x s1 + y s2 + z s3)."""
    (p, q), (r, s) = a.rows
    p, q, r, s = (GaussInt.coerce(v) for v in (p, q, r, s))
    w = (p.re + s.re) // 2
    z = (s.im - p.im) // 2
    y = (r.re - q.re) // 2
    x = -(q.im + r.im) // 2
    return w, x, y, z


def rotation_from_quaternion(w, x, y, z):
    """Textbook unit-quaternion to rotation-matrix formula (integer inputs)."""
    return Matrix((
        (1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)),
        (2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)),
        (2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)),
    ))


def brute_center(elems, mul):
    return {z for z in elems if all(mul(z, x) == mul(x, z) for x in elems)}


def brute_cosets(elems, sub, mul):
    return {frozenset(mul(x, h) for h in sub) for x in elems}


def brute_order(x, mul, one):
    k, y = 1, x
    while y != one:
        y = mul(y, x)
        k += 1
    return k


def all_functions(domain, codomain):
    for values in product(codomain, repeat=len(domain)):
        yield dict(zip(domain, values))
