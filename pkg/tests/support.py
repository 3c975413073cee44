"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the production code paths they check:
cocycle spaces are assembled straight from the defining equations, series
are summed with Euler-Maclaurin tails, and primes come from a local sieve.
"""

from __future__ import annotations

import math
import random

import numpy as np

from toruskit import linalg
from toruskit.groups import (FiniteGroup, coset_gset, cyclic_group,
                             index_two_subgroups, product_group,
                             trivial_subgroup)
from toruskit.lattices import (GLattice, conjugate, direct_sum, induce,
                               permutation_lattice, sign_lattice,
                               trivial_lattice)


def group_family_up_to_8() -> list[FiniteGroup]:
    c2 = cyclic_group(2)
    return [cyclic_group(n) for n in range(1, 9)] + [
        product_group(c2, c2),
        product_group(c2, cyclic_group(4)),
        product_group(product_group(c2, c2), c2),
    ]


def random_unimodular(rank: int, rng: random.Random, steps: int = 8) -> np.ndarray:
    u = linalg.eye(rank)
    for _ in range(steps):
        i, j = rng.randrange(rank), rng.randrange(rank)
        if i == j:
            u[:, i] *= rng.choice((1, -1))
            continue
        u[:, j] += rng.choice((-2, -1, 1, 2)) * u[:, i]
    return u


def rank_one_pool(group: FiniteGroup) -> list[GLattice]:
    pool = [trivial_lattice(group, 1)]
    pool.extend(sign_lattice(group, k) for k in index_two_subgroups(group))
    return pool


def rank_two_pool(group: FiniteGroup) -> list[GLattice]:
    ones = rank_one_pool(group)
    pool = [direct_sum(a, b) for a in ones for b in ones]
    for k in index_two_subgroups(group):
        pool.append(permutation_lattice(coset_gset(group, k)))
        for inner in index_two_subgroups(k.as_group()):
            pool.append(induce(k, sign_lattice(k.as_group(), inner)))
    return pool


def random_glattice(group: FiniteGroup, max_rank: int, rng: random.Random) -> GLattice:
    """A randomized lattice of rank <= max_rank with a scrambled basis."""
    if max_rank >= 2 and rng.random() < 0.7:
        base = rng.choice(rank_two_pool(group))
    else:
        base = rng.choice(rank_one_pool(group))
    return conjugate(base, random_unimodular(base.rank, rng))


def brute_force_cocycles(lattice: GLattice) -> tuple[np.ndarray, np.ndarray]:
    """Z^1 and the coboundary generators, straight from the defining equations.

    Unknowns are the stacked values f(g) in Z^(|G| rank); for every pair the
    equation f(ab) - f(a) - a.f(b) = 0 contributes rows.  Independent of the
    bar-complex machinery in the package.
    """
    group = lattice.group
    r = lattice.rank
    n = group.order * r
    rows = []
    for a in group.elements():
        for b in group.elements():
            block = linalg.zeros(r, n)
            ab = group.mul(a, b)
            block[:, ab * r:(ab + 1) * r] += linalg.eye(r)
            block[:, a * r:(a + 1) * r] -= linalg.eye(r)
            block[:, b * r:(b + 1) * r] -= lattice.matrix(a)
            rows.append(block)
    cocycles = linalg.kernel_basis(linalg.vstack(rows))
    cob = linalg.zeros(n, r)
    for a in group.elements():
        cob[a * r:(a + 1) * r, :] = lattice.matrix(a) - linalg.eye(r)
    return cocycles, cob


def brute_force_h1_order(lattice: GLattice) -> int:
    z1, b1 = brute_force_cocycles(lattice)
    free_rank, torsion = linalg.quotient_invariants(z1, b1)
    assert free_rank == 0
    order = 1
    for d in torsion:
        order *= d
    return order


def sieve_primes(n: int) -> list[int]:
    flags = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if flags[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                flags[q] = False
    return out


def l_chi4_series_oracle() -> float:
    """sum (-1)^k / (2k+1) with paired terms and an Euler-Maclaurin tail."""
    terms = 100_000
    total = sum(2.0 / ((4 * k + 1) * (4 * k + 3)) for k in range(terms))
    k = float(terms)
    tail = 0.25 * math.log((4 * k + 3) / (4 * k + 1))
    tail += 1.0 / ((4 * k + 1) * (4 * k + 3))
    tail += (-4 / (4 * k + 1) ** 2 + 4 / (4 * k + 3) ** 2) / -12.0
    return total + tail


def l_chi3_series_oracle() -> float:
    """sum over n of chi_-3(n)/n with paired terms and an Euler-Maclaurin tail."""
    terms = 100_000
    total = sum(1.0 / ((3 * k + 1) * (3 * k + 2)) for k in range(terms))
    k = float(terms)
    tail = (1.0 / 3.0) * math.log((3 * k + 2) / (3 * k + 1))
    tail += 0.5 / ((3 * k + 1) * (3 * k + 2))
    tail += (-3 / (3 * k + 1) ** 2 + 3 / (3 * k + 2) ** 2) / -12.0
    return total + tail


def catalan_series_oracle() -> float:
    """sum (-1)^k / (2k+1)^2 with paired terms and an integral tail.

    Paired term f(k) = 8(4k+2)/((4k+1)^2 (4k+3)^2) integrates in closed form
    to 1/((4x+2)^2 - 1), so the tail beyond the summed range is exact to
    well below double precision.
    """
    terms = 200_000
    total = 0.0
    for k in range(terms):
        a, b = 4 * k + 1, 4 * k + 3
        total += (b * b - a * a) / (a * a * b * b)
    u = 4.0 * terms + 2.0
    total += 1.0 / (u * u - 1.0)  # integral tail
    a, b = 4.0 * terms + 1.0, 4.0 * terms + 3.0
    total += 0.5 * (b * b - a * a) / (a * a * b * b)  # Euler-Maclaurin half term
    return total
