"""G-lattices: free Z-modules with a finite group acting by unimodular matrices.

Constructors cover the lattices the rest of the package needs (trivial, sign,
regular, permutation, induced, duals, sums, quotients), and ``FGAbelian``
carries finitely generated abelian groups as invariant factors plus a free
rank.  All normal-form work is delegated to :mod:`toruskit.linalg`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .groups import (FiniteGroup, FiniteGSet, Subgroup, coset_representatives,
                     full_subgroup)

Matrix = tuple[tuple[int, ...], ...]


def _freeze(a: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a.tolist())


def _thaw(m: Matrix, rank: int) -> np.ndarray:
    return linalg.intmat(m, shape=(rank, rank))


@dataclass(frozen=True)
class GLattice:
    """A rank-n free Z-module with ``group`` acting through integer matrices.

    ``action[g]`` is the matrix of g on column vectors; the constructor checks
    that the assignment is a homomorphism sending the identity to the identity
    matrix (which forces every matrix to be unimodular).
    """

    group: FiniteGroup
    rank: int
    action: tuple[Matrix, ...]

    def __post_init__(self):
        g = self.group
        if len(self.action) != g.order:
            raise ValueError("one action matrix per group element required")
        mats = [_thaw(m, self.rank) for m in self.action]
        if not linalg.is_zero(mats[g.identity] - linalg.eye(self.rank)):
            raise ValueError("identity must act as the identity matrix")
        for a in g.elements():
            for b in g.elements():
                prod = linalg.mul(mats[a], mats[b])
                if not linalg.is_zero(prod - mats[g.mul(a, b)]):
                    raise ValueError("action matrices do not respect the group law")

    def matrix(self, g: int) -> np.ndarray:
        return _np_action(self)[g].copy()

    def __repr__(self):
        return f"GLattice({self.group.label or self.group.order}, rank={self.rank})"


@lru_cache(maxsize=None)
def _np_action(m: GLattice) -> tuple[np.ndarray, ...]:
    # Cached object-dtype copies; internal callers must not mutate them.
    return tuple(_thaw(a, m.rank) for a in m.action)


def glattice(group: FiniteGroup, matrices: Sequence[Sequence[Sequence[int]]]) -> GLattice:
    mats = [linalg.intmat(m) if not isinstance(m, np.ndarray) else m for m in matrices]
    rank = mats[0].shape[0] if mats else 0
    return GLattice(group, rank, tuple(_freeze(m) for m in mats))


def trivial_lattice(group: FiniteGroup, rank: int = 1) -> GLattice:
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    ident = _freeze(linalg.eye(rank))
    return GLattice(group, rank, tuple(ident for _ in group.elements()))


def sign_lattice(group: FiniteGroup, kernel: Subgroup) -> GLattice:
    """Rank-1 lattice where elements of ``kernel`` fix and the rest negate."""
    if kernel.parent != group:
        raise ValueError("kernel must be a subgroup of the acting group")
    if kernel.index != 2:
        raise ValueError("sign lattice needs an index-2 subgroup as kernel")
    mats = tuple(((1,),) if g in kernel.elements else ((-1,),) for g in group.elements())
    return GLattice(group, 1, mats)


def permutation_lattice(gset: FiniteGSet) -> GLattice:
    g = gset.group
    mats = []
    for a in g.elements():
        m = linalg.zeros(gset.size, gset.size)
        for x in range(gset.size):
            m[gset.action[a][x], x] = 1
        mats.append(_freeze(m))
    return GLattice(g, gset.size, tuple(mats))


def regular_lattice(group: FiniteGroup) -> GLattice:
    """Z[G] on the basis of group elements in canonical order."""
    mats = []
    for a in group.elements():
        m = linalg.zeros(group.order, group.order)
        for b in group.elements():
            m[group.mul(a, b), b] = 1
        mats.append(_freeze(m))
    return GLattice(group, group.order, tuple(mats))


def build_lattice(kind: str, group: FiniteGroup, *, rank: int = 1,
                  kernel: Subgroup | None = None,
                  gset: FiniteGSet | None = None) -> GLattice:
    """Dispatch over the named constructors (trivial/sign/regular/permutation)."""
    if kind == "trivial":
        return trivial_lattice(group, rank)
    if kind == "sign":
        if kernel is None:
            raise ValueError("sign lattice requires the index-2 kernel subgroup")
        return sign_lattice(group, kernel)
    if kind == "regular":
        return regular_lattice(group)
    if kind == "permutation":
        if gset is None:
            raise ValueError("permutation lattice requires a finite G-set")
        return permutation_lattice(gset)
    raise ValueError(f"unknown lattice kind {kind!r}")


def induce(h: Subgroup, a: GLattice) -> GLattice:
    """Induction from a subgroup: block-permute cosets, twist by the H-action.

    ``a`` must be a lattice over ``h.as_group()``; the result has rank
    [G:H] * rank(a) on the basis (coset representative, basis vector of a).
    """
    g = h.parent
    if a.group != h.as_group():
        raise ValueError("lattice is not over the given subgroup")
    reps = coset_representatives(g, h)
    rep_index = {}
    for i, r in enumerate(reps):
        for k in h.elements:
            rep_index[g.mul(r, k)] = i
    r_a = a.rank
    amats = _np_action(a)
    mats = []
    for x in g.elements():
        m = linalg.zeros(len(reps) * r_a, len(reps) * r_a)
        for i, r in enumerate(reps):
            xr = g.mul(x, r)
            j = rep_index[xr]
            k = g.mul(g.inv(reps[j]), xr)  # x . r_i = r_j . k with k in H
            block = amats[h.position(k)]
            m[j * r_a:(j + 1) * r_a, i * r_a:(i + 1) * r_a] = block
        mats.append(_freeze(m))
    return GLattice(g, len(reps) * r_a, tuple(mats))


def restrict(m: GLattice, h: Subgroup) -> GLattice:
    if h.parent != m.group:
        raise ValueError("subgroup does not belong to the lattice's group")
    return GLattice(h.as_group(), m.rank, tuple(m.action[x] for x in h.elements))


def dual(m: GLattice) -> GLattice:
    """Contragredient lattice: g acts by the transpose of the g^-1 matrix."""
    g = m.group
    mats = tuple(_freeze(_np_action(m)[g.inv(a)].T) for a in g.elements())
    return GLattice(g, m.rank, mats)


def direct_sum(m1: GLattice, m2: GLattice) -> GLattice:
    if m1.group != m2.group:
        raise ValueError("direct sum requires lattices over the same group")
    r1, r2 = m1.rank, m2.rank
    mats = []
    for a in m1.group.elements():
        m = linalg.zeros(r1 + r2, r1 + r2)
        m[:r1, :r1] = _np_action(m1)[a]
        m[r1:, r1:] = _np_action(m2)[a]
        mats.append(_freeze(m))
    return GLattice(m1.group, r1 + r2, tuple(mats))


def direct_sum_all(lattices: Sequence[GLattice]) -> GLattice:
    if not lattices:
        raise ValueError("empty direct sum")
    out = lattices[0]
    for m in lattices[1:]:
        out = direct_sum(out, m)
    return out


def norm_operator(m: GLattice) -> np.ndarray:
    """The averaging operator N = sum over g of action(g)."""
    out = linalg.zeros(m.rank, m.rank)
    for a in m.group.elements():
        out += _np_action(m)[a]
    return out


def norm_vector(m: GLattice) -> np.ndarray:
    """Image of the first basis vector under the norm operator, as a column."""
    return norm_operator(m)[:, :1]


def invariants(m: GLattice) -> tuple[np.ndarray, int]:
    """Basis of the fixed sublattice M^G (saturated) and its rank."""
    g = m.group
    rows = [_np_action(m)[a] - linalg.eye(m.rank) for a in g.elements()
            if a != g.identity]
    if not rows:
        basis = linalg.eye(m.rank)
        return basis, m.rank
    stacked = linalg.vstack(rows)
    basis = linalg.kernel_basis(stacked)
    return basis, basis.shape[1]


def trace_character(m: GLattice) -> tuple[int, ...]:
    """chi(g) = trace of the matrix of g, indexed by group element."""
    return tuple(int(sum(_np_action(m)[a][i, i] for i in range(m.rank)))
                 for a in m.group.elements())


def quotient_lattice(m: GLattice, sub_basis) -> tuple[GLattice, Matrix]:
    """Quotient by a G-stable saturated sublattice, with the projection matrix.

    ``sub_basis`` is a rank x s integer matrix whose columns form a basis of
    the sublattice.  Torsion quotients are refused (the sublattice must be
    saturated), as is any basis the group action does not preserve.
    """
    s = sub_basis if isinstance(sub_basis, np.ndarray) else linalg.intmat(
        sub_basis, shape=(m.rank, len(sub_basis[0]) if len(sub_basis) else 0))
    if s.shape[0] != m.rank:
        raise ValueError("sublattice basis lives in the wrong ambient rank")
    ncols = s.shape[1]
    if ncols:
        snf = linalg.smith_normal_form(s)
        if snf.rank != ncols:
            raise ValueError("sublattice basis columns are dependent")
        if any(d != 1 for d in snf.diagonal[:snf.rank]):
            raise ValueError("sublattice is not saturated; quotient would have torsion")
        s = linalg.hermite_column(s)  # canonical basis of the same sublattice
        for a in m.group.elements():
            if linalg.solve(s, linalg.mul(_np_action(m)[a], s)) is None:
                raise ValueError("sublattice is not stable under the group action")
    full = linalg.smith_normal_form(s, want_u=True, want_uinv=True)
    proj = full.u[ncols:, :]
    section = full.uinv[:, ncols:]
    mats = tuple(_freeze(linalg.mul(proj, linalg.mul(_np_action(m)[a], section)))
                 for a in m.group.elements())
    quot = GLattice(m.group, m.rank - ncols, mats)
    return quot, _freeze(proj)


def hom_lattice(m: GLattice, n: GLattice) -> GLattice:
    """Hom_Z(M, N) with (g . f)(x) = g f(g^-1 x); basis E_ij, column-major in j."""
    if m.group != n.group:
        raise ValueError("hom lattice requires a common group")
    g = m.group
    rm, rn = m.rank, n.rank
    mats = []
    for a in g.elements():
        big = linalg.zeros(rm * rn, rm * rn)
        left = _np_action(n)[a]
        right = _np_action(m)[g.inv(a)]
        # f -> left @ f @ right, flattened with index (j, i) -> j*rn + i
        for j, i in itertools.product(range(rm), range(rn)):
            img = linalg.mul(linalg.mul(left, _unit_matrix(rn, rm, i, j)), right)
            for jj, ii in itertools.product(range(rm), range(rn)):
                big[jj * rn + ii, j * rn + i] = img[ii, jj]
        mats.append(_freeze(big))
    return GLattice(g, rm * rn, tuple(mats))


def _unit_matrix(rows, cols, i, j):
    u = linalg.zeros(rows, cols)
    u[i, j] = 1
    return u


def tensor_lattice(m: GLattice, n: GLattice) -> GLattice:
    if m.group != n.group:
        raise ValueError("tensor lattice requires a common group")
    mats = []
    for a in m.group.elements():
        am, an = _np_action(m)[a], _np_action(n)[a]
        big = linalg.zeros(m.rank * n.rank, m.rank * n.rank)
        for i, j in itertools.product(range(m.rank), repeat=2):
            if am[i, j] != 0:
                big[i * n.rank:(i + 1) * n.rank, j * n.rank:(j + 1) * n.rank] = \
                    am[i, j] * an
        mats.append(_freeze(big))
    return GLattice(m.group, m.rank * n.rank, tuple(mats))


def conjugate(m: GLattice, u) -> GLattice:
    """Change of basis: the same lattice written on the columns of u."""
    u = u if isinstance(u, np.ndarray) else linalg.intmat(u)
    if abs(linalg.det(u)) != 1:
        raise ValueError("basis change must be unimodular")
    uinv = linalg.solve(u, linalg.eye(m.rank))
    mats = tuple(_freeze(linalg.mul(uinv, linalg.mul(_np_action(m)[a], u)))
                 for a in m.group.elements())
    return GLattice(m.group, m.rank, mats)


@dataclass(frozen=True)
class GModulePresentation:
    """Finitely generated G-module: Z^n modulo the column span of ``relations``.

    The action matrices act on the generators and must preserve the relation
    lattice, so they descend to the quotient.
    """

    group: FiniteGroup
    generators: int
    relations: Matrix  # generators x k, columns span the relation lattice
    action: tuple[Matrix, ...]

    def __post_init__(self):
        g = self.group
        rel = self.relations_matrix()
        mats = [_thaw(m, self.generators) for m in self.action]
        if len(mats) != g.order:
            raise ValueError("one action matrix per group element required")

        def vanishes_mod_relations(diff):
            if rel.shape[1] == 0:
                return linalg.is_zero(diff)
            return linalg.solve(rel, diff) is not None

        if not vanishes_mod_relations(mats[g.identity] - linalg.eye(self.generators)):
            raise ValueError("identity must act as the identity on the quotient")
        for a in g.elements():
            for b in g.elements():
                diff = linalg.mul(mats[a], mats[b]) - mats[g.mul(a, b)]
                if not vanishes_mod_relations(diff):
                    raise ValueError("action does not respect the group law on the quotient")
            if rel.shape[1] and linalg.solve(rel, linalg.mul(mats[a], rel)) is None:
                raise ValueError("action does not preserve the relation lattice")

    def relations_matrix(self) -> np.ndarray:
        k = len(self.relations[0]) if self.relations else 0
        return linalg.intmat(self.relations, shape=(self.generators, k))

    def action_matrix(self, g: int) -> np.ndarray:
        return _thaw(self.action[g], self.generators)


def presentation_mod(m: GLattice, modulus: int) -> GModulePresentation:
    """The finite module M / modulus*M with the inherited action."""
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    rel = _freeze(modulus * linalg.eye(m.rank))
    return GModulePresentation(m.group, m.rank, rel, m.action)


def presentation_of_lattice(m: GLattice) -> GModulePresentation:
    """The lattice viewed as a presented module with no relations."""
    return GModulePresentation(m.group, m.rank,
                               tuple(() for _ in range(m.rank)), m.action)


@dataclass(frozen=True)
class FGAbelian:
    """Finitely generated abelian group: free rank plus invariant factors.

    >>> str(FGAbelian.from_divisors([0, 4, 6]))
    'Z x C2 x C12'
    """

    free_rank: int
    torsion: tuple[int, ...]  # d1 | d2 | ..., each >= 2

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError("invariant factors must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FGAbelian":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FGAbelian":
        return cls(rank, ())

    @classmethod
    def from_divisors(cls, divisors: Iterable[int]) -> "FGAbelian":
        """Normalize arbitrary cyclic orders (0 meaning Z) to invariant factors."""
        rank = 0
        primary: dict[int, list[int]] = {}
        for d in divisors:
            d = abs(int(d))
            if d == 0:
                rank += 1
            elif d > 1:
                for p, e in _factorint(d).items():
                    primary.setdefault(p, []).append(e)
        chains = {p: sorted(v, reverse=True) for p, v in primary.items()}
        width = max((len(c) for c in chains.values()), default=0)
        factors = []
        for i in range(width):
            f = 1
            for p, chain in chains.items():
                if i < len(chain):
                    f *= p ** chain[i]
            factors.append(f)
        return cls(rank, tuple(sorted(factors)))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int:
        """Order of the group; raises for infinite groups."""
        if self.free_rank:
            raise ValueError("group is infinite")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def exponent(self) -> int:
        if self.free_rank:
            raise ValueError("group is infinite")
        return self.torsion[-1] if self.torsion else 1

    def direct_sum(self, other: "FGAbelian") -> "FGAbelian":
        merged = FGAbelian.from_divisors(list(self.torsion) + list(other.torsion))
        return FGAbelian(self.free_rank + other.free_rank, merged.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "0"


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_from_quotient(free_rank: int, torsion: Iterable[int]) -> FGAbelian:
    return FGAbelian(free_rank, tuple(t for t in torsion if t >= 2))
