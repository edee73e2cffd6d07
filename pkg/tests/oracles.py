"""Independent brute-force oracles used to compute expected values.

Everything here deliberately avoids the production code paths it checks:
labeled-poset enumeration backtracks over pair states, prime filters are
found by filtering all upsets through the definition, openness oracles
materialize full open-set families, and witness feasibility is an
exhaustive scan.
"""

import itertools

from esakia._bits import bits, full_mask, mask_of, subsets
from esakia.posets import FinitePoset, from_relation, upset_masks


def labeled_posets(n: int):
    """Yield the reflexive up-mask tables of every partial order on 0..n-1.

    Backtracks over unordered pairs in lexicographic order, assigning <, >,
    or incomparable, and propagates transitive closure; an assignment is
    rejected when closure would retroactively relate an earlier pair.
    """
    pairs = [(i, j) for j in range(n) for i in range(j)]
    pair_idx = {pr: k for k, pr in enumerate(pairs)}
    up = [1 << i for i in range(n)]
    down = [1 << i for i in range(n)]
    out = []

    def key(a, b):
        return (a, b) if a < b else (b, a)

    def relate(a, b, k):
        """Try closing a < b; return the undo list or None if it would
        touch a pair decided before step k."""
        new = [(x, y) for x in bits(down[a]) for y in bits(up[b])
               if not up[x] >> y & 1]
        if any(pair_idx[key(x, y)] < k for x, y in new):
            return None
        for x, y in new:
            up[x] |= 1 << y
            down[y] |= 1 << x
        return new

    def undo(new):
        for x, y in new:
            up[x] ^= 1 << y
            down[y] ^= 1 << x

    def rec(k: int):
        if k == len(pairs):
            out.append(tuple(up))
            return
        i, j = pairs[k]
        has_ij = up[i] >> j & 1
        has_ji = up[j] >> i & 1
        if not has_ij and not has_ji:
            rec(k + 1)
            for a, b in ((i, j), (j, i)):
                applied = relate(a, b, k)
                if applied is not None:
                    rec(k + 1)
                    undo(applied)
        else:
            rec(k + 1)  # the pair was forced earlier; only that branch exists
        return

    rec(0)
    return out


def _min_perm_encoding(up: tuple[int, ...]) -> tuple:
    """Canonical encoding by minimizing over all permutations (small n)."""
    n = len(up)
    best = None
    for perm in itertools.permutations(range(n)):
        enc = 0
        for i, x in enumerate(perm):
            row = 0
            for k, y in enumerate(perm):
                if x != y and up[x] >> y & 1:
                    row |= 1 << k
            enc = enc << n | row
        if best is None or enc < best:
            best = enc
    return (n, best)


def labeled_poset_count(n: int) -> int:
    return len(labeled_posets(n))


def class_count_by_min_perm(n: int) -> int:
    """Isomorphism classes by full-permutation canonicalization (n <= 5)."""
    return len({_min_perm_encoding(up) for up in labeled_posets(n)})


def poset_from_up(up: tuple[int, ...]) -> FinitePoset:
    n = len(up)
    return from_relation(n, [(x, y) for x in range(n) for y in bits(up[x])])


def automorphism_count(p: FinitePoset) -> int:
    count = 0
    for perm in itertools.permutations(range(p.n)):
        if all(p.leq(x, y) == p.leq(perm[x], perm[y])
               for x in range(p.n) for y in range(p.n)):
            count += 1
    return count


def all_isomorphisms_brute(p: FinitePoset, q: FinitePoset):
    """Every order isomorphism p -> q by plain permutation scan."""
    if p.n != q.n:
        return []
    return [perm for perm in itertools.permutations(range(p.n))
            if all(p.leq(x, y) == q.leq(perm[x], perm[y])
                   for x in range(p.n) for y in range(p.n))]


def prime_filters_brute(lat) -> list[int]:
    """Prime-filter member masks straight from the definition, filtering
    every upset of the lattice order."""
    lp = from_relation(lat.n, [(a, b) for a in range(lat.n)
                               for b in range(lat.n) if lat.leq(a, b)])
    full = full_mask(lat.n)
    found = []
    for um in upset_masks(lp):
        if um == 0 or um == full:
            continue
        members = list(bits(um))
        if any(not um >> lat.meet[a][b] & 1 for a in members for b in members):
            continue
        prime = all(
            um >> a & 1 or um >> b & 1
            for a in range(lat.n) for b in range(lat.n)
            if um >> lat.join[a][b] & 1)
        if prime:
            found.append(um)
    return sorted(found)


def implication_by_max_scan(lat, b: int, c: int) -> int:
    """max {a : a∧b <= c} by scanning for the element dominating the set."""
    s = [a for a in range(lat.n) if lat.leq(lat.meet[a][b], c)]
    maxes = [m for m in s if all(lat.leq(a, m) for a in s)]
    assert len(maxes) == 1, "candidate set must have a unique maximum"
    return maxes[0]


def all_opens(t) -> set[int]:
    """Full open-set family: every union of base elements."""
    ops = {0}
    for m in t.base_masks:
        ops |= {m | o for o in ops}
    return ops


def downset_open_for_all_opens(p: FinitePoset, t) -> bool:
    return all(t.is_open_mask(p.down_of_mask(u)) for u in all_opens(t))


def cone_feasible_set(st, x: int, alpha: int, target_mask: int) -> set:
    """All (v, ys, zs) triples satisfying the witness constraints, found by
    exhaustive scan."""
    tree = st.tree
    prof = st.profile
    hx = prof.heights[x]
    le_a = prof.le_mask(alpha)
    lt_a = prof.le_mask(alpha - 1) if alpha >= 1 else 0
    feasible = set()
    for v in bits(tree.down_masks[x]):
        y_ground = prof.above_mask(hx) & tree.up_masks[v] & le_a
        z_ground = lt_a & tree.up_masks[v]
        for ym in subsets(y_ground):
            up_y = tree.up_of_mask(ym) & le_a
            for zm in subsets(z_ground):
                cone = (tree.up_masks[v] & le_a) & ~(up_y | tree.down_of_mask(zm))
                if not cone & ~target_mask:
                    feasible.add((v, ym, zm))
    return feasible


def chain_poset(n: int) -> FinitePoset:
    return FinitePoset(n, frozenset((i, i + 1) for i in range(n - 1)))


def antichain_poset(n: int) -> FinitePoset:
    return FinitePoset(n, frozenset())


def mask(points) -> int:
    return mask_of(points)


def fs(*points) -> frozenset[int]:
    return frozenset(points)
