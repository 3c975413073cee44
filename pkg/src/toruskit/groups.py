"""Finite groups as multiplication tables, with subgroups and finite G-sets.

Elements are indices 0..order-1 in a canonical enumeration fixed by the
constructor (cyclic: residues; products: lexicographic pairs; cyclotomic
quotients: increasing smallest unit representatives), so every downstream
matrix is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    label: str = field(compare=False, default="")

    def __post_init__(self):
        _check_group_axioms(self.order, self.table, self.identity, self.inverse)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def __repr__(self):
        return f"FiniteGroup({self.label or self.order})"


def _check_group_axioms(order, table, identity, inverse):
    if order <= 0:
        raise ValueError("group order must be positive")
    if len(table) != order or any(len(row) != order for row in table):
        raise ValueError("multiplication table has wrong shape")
    for row in table:
        if any(not (0 <= x < order) for x in row):
            raise ValueError("table entry out of range")
    for a in range(order):
        if table[identity][a] != a or table[a][identity] != a:
            raise ValueError("identity row/column is not fixed")
    if len(inverse) != order:
        raise ValueError("inverse list has wrong length")
    for a in range(order):
        b = inverse[a]
        if table[a][b] != identity or table[b][a] != identity:
            raise ValueError("two-sided inverse missing")
    for a in range(order):
        for b in range(order):
            tab = table[a][b]
            for c in range(order):
                if table[tab][c] != table[a][table[b][c]]:
                    raise ValueError("associativity fails")


def _group_from_table(table, label):
    order = len(table)
    table = tuple(tuple(row) for row in table)
    identity = None
    for e in range(order):
        if all(table[e][a] == a and table[a][e] == a for a in range(order)):
            identity = e
            break
    if identity is None:
        raise ValueError("no identity element")
    inverse = []
    for a in range(order):
        inv = next((b for b in range(order) if table[a][b] == identity), None)
        if inv is None:
            raise ValueError("missing inverse")
        inverse.append(inv)
    return FiniteGroup(order, table, identity, tuple(inverse), label)


def cyclic_group(n: int) -> FiniteGroup:
    if n <= 0:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return _group_from_table(table, f"C{n}")


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product; element (a, b) has index a*|G2| + b (lexicographic)."""
    n1, n2 = g1.order, g2.order
    table = [[0] * (n1 * n2) for _ in range(n1 * n2)]
    for a1, b1 in itertools.product(range(n1), range(n2)):
        for a2, b2 in itertools.product(range(n1), range(n2)):
            table[a1 * n2 + b1][a2 * n2 + b2] = g1.mul(a1, a2) * n2 + g2.mul(b1, b2)
    return _group_from_table(table, f"{g1.label or 'G'}x{g2.label or 'G'}")


def units_mod(n: int) -> tuple[int, ...]:
    if n <= 0:
        raise ValueError("modulus must be positive")
    return tuple(a for a in range(n) if gcd(a, n) == 1)


def cyclotomic_quotient_group(modulus: int, subgroup: Iterable[int] | None = None
                              ) -> FiniteGroup:
    """(Z/n)^x / H with elements ordered by increasing least coset representative."""
    n = modulus
    units = units_mod(n)
    if subgroup is None:
        h = frozenset({1 % n})
    else:
        h = frozenset(x % n for x in subgroup)
    if not h or not h <= set(units):
        raise ValueError(f"subgroup {sorted(h)} is not a set of units mod {n}")
    for a, b in itertools.product(h, repeat=2):
        if (a * b) % n not in h:
            raise ValueError(f"subgroup {sorted(h)} not closed under multiplication mod {n}")
    coset_of = {}
    reps = []
    for u in units:
        if u in coset_of:
            continue
        coset = frozenset(u * x % n for x in h)
        rep = min(coset)
        reps.append(rep)
        for x in coset:
            coset_of[x] = rep
    reps.sort()
    index = {rep: i for i, rep in enumerate(reps)}
    table = [[index[coset_of[a * b % n]] for b in reps] for a in reps]
    label = f"(Z/{n})^x" if len(h) == 1 else f"(Z/{n})^x/H{len(h)}"
    return _group_from_table(table, label)


def make_group(spec: Mapping) -> FiniteGroup:
    """Build a group from a JSON-style descriptor.

    Supported descriptors::

        {"type": "cyclic", "n": 4}
        {"type": "product", "factors": [descriptor, ...]}
        {"type": "cyclotomic", "modulus": 8, "subgroup": [1, 3]}
    """
    kind = spec.get("type")
    if kind == "cyclic":
        return cyclic_group(int(spec["n"]))
    if kind == "product":
        factors = [make_group(s) for s in spec["factors"]]
        if not factors:
            raise ValueError("product needs at least one factor")
        g = factors[0]
        for f in factors[1:]:
            g = product_group(g, f)
        return g
    if kind == "cyclotomic":
        return cyclotomic_quotient_group(int(spec["modulus"]), spec.get("subgroup"))
    raise ValueError(f"unknown group descriptor type {kind!r}")


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = set(self.elements)
        if tuple(sorted(els)) != self.elements:
            raise ValueError("subgroup elements must be sorted and distinct")
        if self.parent.identity not in els:
            raise ValueError("subgroup misses the identity")
        for a in els:
            if self.parent.inv(a) not in els:
                raise ValueError("subgroup not closed under inverse")
            for b in els:
                if self.parent.mul(a, b) not in els:
                    raise ValueError("subgroup not closed under product")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def as_group(self) -> FiniteGroup:
        return _subgroup_as_group(self)

    def position(self, parent_element: int) -> int:
        return self.elements.index(parent_element)


@lru_cache(maxsize=None)
def _subgroup_as_group(sub: Subgroup) -> FiniteGroup:
    pos = {g: i for i, g in enumerate(sub.elements)}
    table = [[pos[sub.parent.mul(a, b)] for b in sub.elements] for a in sub.elements]
    return _group_from_table(table, f"{sub.parent.label}|H{sub.order}")


def subgroup_closure(parent: FiniteGroup, generators: Iterable[int]) -> Subgroup:
    els = {parent.identity}
    frontier = list(generators)
    while frontier:
        g = frontier.pop()
        if g in els:
            continue
        els.add(g)
        frontier.extend(parent.mul(g, h) for h in list(els))
        frontier.append(parent.inv(g))
    # close under products until stable (cheap at these orders)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(els), repeat=2):
            c = parent.mul(a, b)
            if c not in els:
                els.add(c)
                changed = True
    return Subgroup(parent, tuple(sorted(els)))


def trivial_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, (parent.identity,))


def full_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, tuple(range(parent.order)))


def cyclic_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All distinct subgroups <x>, sorted by (order, elements)."""
    seen = {}
    for x in g.elements():
        sub = subgroup_closure(g, [x])
        seen[sub.elements] = sub
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, by closing cyclic subgroups under joins."""
    subs = {s.elements: s for s in cyclic_subgroups(g)}
    frontier = list(subs.values())
    while frontier:
        s = frontier.pop()
        for x in g.elements():
            if x in s.elements:
                continue
            bigger = subgroup_closure(g, s.elements + (x,))
            if bigger.elements not in subs:
                subs[bigger.elements] = bigger
                frontier.append(bigger)
    return sorted(subs.values(), key=lambda s: (s.order, s.elements))


def index_two_subgroups(g: FiniteGroup) -> list[Subgroup]:
    return [s for s in all_subgroups(g) if s.index == 2]


@dataclass(frozen=True)
class FiniteGSet:
    group: FiniteGroup
    size: int
    action: tuple[tuple[int, ...], ...]  # action[g][x] = g . x

    def __post_init__(self):
        g = self.group
        if len(self.action) != g.order or any(len(row) != self.size for row in self.action):
            raise ValueError("action table has wrong shape")
        ident = self.action[g.identity]
        if tuple(ident) != tuple(range(self.size)):
            raise ValueError("identity must act as the identity permutation")
        for a in g.elements():
            if sorted(self.action[a]) != list(range(self.size)):
                raise ValueError("group elements must act by permutations")
            for b in g.elements():
                ab = g.mul(a, b)
                for x in range(self.size):
                    if self.action[a][self.action[b][x]] != self.action[ab][x]:
                        raise ValueError("action is not compatible with the group law")


def coset_gset(g: FiniteGroup, h: Subgroup) -> FiniteGSet:
    """Left translation on G/H; cosets ordered by least representative."""
    coset_of = {}
    reps = []
    for x in g.elements():
        if x in coset_of:
            continue
        coset = {g.mul(x, k) for k in h.elements}
        rep = min(coset)
        reps.append(rep)
        for y in coset:
            coset_of[y] = rep
    reps.sort()
    index = {rep: i for i, rep in enumerate(reps)}
    action = tuple(tuple(index[coset_of[g.mul(a, r)]] for r in reps) for a in g.elements())
    return FiniteGSet(g, len(reps), action)


def coset_representatives(g: FiniteGroup, h: Subgroup) -> list[int]:
    seen = set()
    reps = []
    for x in g.elements():
        if x in seen:
            continue
        coset = {g.mul(x, k) for k in h.elements}
        reps.append(min(coset))
        seen |= coset
    return sorted(reps)


def orbits(x: FiniteGSet) -> list[tuple[tuple[int, ...], Subgroup]]:
    """Orbit partition with the stabilizer of each orbit's least point."""
    g = x.group
    remaining = set(range(x.size))
    out = []
    while remaining:
        p = min(remaining)
        orbit = sorted({x.action[a][p] for a in g.elements()})
        stab = tuple(sorted(a for a in g.elements() if x.action[a][p] == p))
        out.append((tuple(orbit), Subgroup(g, stab)))
        remaining -= set(orbit)
    return out
