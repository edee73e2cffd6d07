"""Finite bounded distributive lattices, Heyting algebras, and prime-filter
machinery (spectra, the gamma embedding, the Gödel equation)."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._bits import bits, mask_of, points_of
from .errors import NoMaximum, NotALattice, NotDistributive
from .posets import FinitePoset, from_relation, upset_masks

TABLE_CAP = 128

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteLattice:
    """Bounded distributive lattice as meet/join tables over 0..n-1.

    The order is derived from meet: a <= b iff meet[a][b] == a.
    """

    n: int
    meet: Table
    join: Table
    bottom: int
    top: int

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(
            mask_of(b for b in range(self.n) if self.meet[a][b] == a)
            for a in range(self.n)
        )

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(
            mask_of(b for b in range(self.n) if self.meet[a][b] == b)
            for a in range(self.n)
        )

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        """Elements that are not the join of their strict lower set.

        In a finite distributive lattice these are exactly the join-prime
        elements, hence the prime-filter generators.
        """
        out = []
        for a in range(self.n):
            if a == self.bottom:
                continue
            acc = self.bottom
            for b in bits(self.down_masks[a] ^ (1 << a)):
                acc = self.join[acc][b]
            if acc != a:
                out.append(a)
        return tuple(out)


def _as_table(rows) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


def validate_lattice(meet, join) -> FiniteLattice:
    """Check every bounded-distributive-lattice axiom on the given tables.

    Raises NotALattice(axiom, witness) or NotDistributive(a, b, c) naming the
    first violation.  Carriers are capped at 128 so the n^2 tables and n^3
    scans stay small.
    """
    meet_t, join_t = _as_table(meet), _as_table(join)
    n = len(meet_t)
    if n == 0 or len(join_t) != n or any(len(r) != n for r in meet_t + join_t):
        raise NotALattice("shape", (n,))
    if n > TABLE_CAP:
        raise NotALattice("carrier-cap", (n, TABLE_CAP))
    m = np.array(meet_t, dtype=np.int64)
    j = np.array(join_t, dtype=np.int64)
    if m.min() < 0 or m.max() >= n or j.min() < 0 or j.max() >= n:
        raise NotALattice("range", ())
    ar = np.arange(n)

    def first_bad(bad, axiom):
        if bad.any():
            raise NotALattice(axiom, tuple(int(v) for v in np.argwhere(bad)[0]))

    for table, name in ((m, "meet"), (j, "join")):
        first_bad(table[ar, ar] != ar, f"{name}-idempotence")
        first_bad(table != table.T, f"{name}-commutativity")
        first_bad(table[table, :] != table[:, table], f"{name}-associativity")
    first_bad(m[ar[:, None], j] != ar[:, None], "meet-absorption")
    first_bad(j[ar[:, None], m] != ar[:, None], "join-absorption")

    bottoms = [a for a in range(n) if (m[a, :] == a).all()]
    tops = [a for a in range(n) if (j[a, :] == a).all()]
    if len(bottoms) != 1 or len(tops) != 1:
        raise NotALattice("bounds", (len(bottoms), len(tops)))

    lhs = m[:, j]
    rhs = j[m[:, :, None], m[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        a, b, c = np.argwhere(bad)[0]
        raise NotDistributive(int(a), int(b), int(c))
    return FiniteLattice(n, meet_t, join_t, bottoms[0], tops[0])


@dataclass(frozen=True)
class HeytingAlgebra:
    lattice: FiniteLattice
    implies: Table

    @property
    def n(self) -> int:
        return self.lattice.n


def heyting_complete(lat: FiniteLattice) -> HeytingAlgebra:
    """Adjoin the implication: implies[b][c] = max {a : a∧b <= c}.

    The candidate set is a join-closed downset, so its maximum is the join of
    the join-irreducibles it contains; membership of the result is re-checked
    and NoMaximum raised on failure (unreachable for valid input).
    """
    n = lat.n
    ji = lat.join_irreducibles
    rows = []
    for b in range(n):
        row = []
        for c in range(n):
            acc = lat.bottom
            for a in ji:
                if lat.leq(lat.meet[a][b], c):
                    acc = lat.join[acc][a]
            if not lat.leq(lat.meet[acc][b], c):
                raise NoMaximum(f"no maximum for {b} -> {c}")
            row.append(acc)
        rows.append(tuple(row))
    return HeytingAlgebra(lat, tuple(rows))


@dataclass(frozen=True)
class GodelCheck:
    holds: bool
    counterexample: tuple[int, int] | None


def is_godel(h: HeytingAlgebra) -> GodelCheck:
    """Check (x -> y) ∨ (y -> x) = 1 for all pairs, first violation wins."""
    lat, imp = h.lattice, h.implies
    for x in range(lat.n):
        for y in range(lat.n):
            if lat.join[imp[x][y]][imp[y][x]] != lat.top:
                return GodelCheck(False, (x, y))
    return GodelCheck(True, None)


@dataclass(frozen=True)
class PrimeFilter:
    members: frozenset[int]


def _spectrum_generators(lat: FiniteLattice) -> list[int]:
    """Join-irreducibles ordered by the mask of the filter they generate."""
    return sorted(lat.join_irreducibles, key=lambda a: lat.up_masks[a])


def prime_filters(lat: FiniteLattice) -> list[PrimeFilter]:
    """All prime filters: the principal upsets of join-irreducible elements,
    canonically sorted by member mask."""
    return [PrimeFilter(points_of(lat.up_masks[a])) for a in _spectrum_generators(lat)]


def spectrum(lat: FiniteLattice) -> FinitePoset:
    """Poset of prime filters under inclusion.

    Filter i is below filter j iff generator j is below generator i.
    """
    gens = _spectrum_generators(lat)
    k = len(gens)
    pairs = [(i, jdx) for i in range(k) for jdx in range(k)
             if lat.leq(gens[jdx], gens[i])]
    labels = tuple("{" + ",".join(map(str, sorted(bits(lat.up_masks[g])))) + "}"
                   for g in gens)
    return from_relation(k, pairs, labels)


def upset_algebra(p: FinitePoset) -> HeytingAlgebra:
    """Heyting algebra of all upsets of p (the discrete-space clopen upsets),
    with implication U -> V = {x : U ∩ upset(x) ⊆ V}."""
    elems = upset_masks(p)
    index = {m: i for i, m in enumerate(elems)}
    k = len(elems)
    meet = tuple(tuple(index[elems[a] & elems[b]] for b in range(k)) for a in range(k))
    join = tuple(tuple(index[elems[a] | elems[b]] for b in range(k)) for a in range(k))
    lat = FiniteLattice(k, meet, join, index[0], index[p.full])
    imp_rows = []
    for a in range(k):
        row = []
        for b in range(k):
            m = 0
            for x in range(p.n):
                if not (p.up_masks[x] & elems[a]) & ~elems[b]:
                    m |= 1 << x
            row.append(index[m])
        imp_rows.append(tuple(row))
    return HeytingAlgebra(lat, tuple(imp_rows))


def upset_algebra_elements(p: FinitePoset) -> tuple[frozenset[int], ...]:
    """Carrier of upset_algebra(p) as point sets, in element-index order."""
    return tuple(points_of(m) for m in upset_masks(p))


def lattice_of_sets(sets) -> FiniteLattice:
    """Lattice of a finite family of point sets closed under union and
    intersection, ordered by inclusion (element order: ascending mask)."""
    masks = sorted({mask_of(s) for s in sets})
    index = {m: i for i, m in enumerate(masks)}
    k = len(masks)
    if k == 0:
        raise NotALattice("empty-family", ())
    try:
        meet = tuple(tuple(index[masks[a] & masks[b]] for b in range(k)) for a in range(k))
        join = tuple(tuple(index[masks[a] | masks[b]] for b in range(k)) for a in range(k))
    except KeyError as e:
        raise NotALattice("family-not-closed", (e.args[0],)) from e
    bot = masks[0]
    top = masks[-1]
    if any(bot & ~m or m & ~top for m in masks):
        raise NotALattice("family-not-closed", ())
    return FiniteLattice(k, meet, join, index[bot], index[top])


def gamma(lat: FiniteLattice, a: int) -> frozenset[int]:
    """Spectrum indices of the prime filters containing a."""
    if not 0 <= a < lat.n:
        raise ValueError("element out of range")
    gens = _spectrum_generators(lat)
    return frozenset(i for i, g in enumerate(gens) if lat.leq(g, a))
