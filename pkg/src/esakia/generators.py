"""Poset generators: exhaustive isomorphism-class enumeration at small sizes
and seeded random posets, trees, and root systems."""

import random
from functools import lru_cache

from ._bits import bits
from .duality import canonical_form, canonical_key
from .errors import SizeCap
from .posets import FinitePoset, from_relation, order_dual, upset_masks

ENUMERATION_CAP = 7


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[FinitePoset, ...]:
    if n == 1:
        return (FinitePoset(1, frozenset()),)
    found: dict[tuple[int, int], FinitePoset] = {}
    for parent in _classes(n - 1):
        down_masks = sorted(parent.full ^ u for u in upset_masks(parent))
        for dm in down_masks:
            tops = [x for x in bits(dm)
                    if not (parent.up_masks[x] & dm & ~(1 << x))]
            covers = set(parent.covers)
            covers.update((m, n - 1) for m in tops)
            cand = FinitePoset(n, frozenset(covers))
            key = canonical_key(cand)
            if key not in found:
                found[key] = canonical_form(cand)
    return tuple(found[k] for k in sorted(found))


def enumerate_posets(n: int):
    """Yield one canonical representative per isomorphism class of n-element
    posets, built by maximal-element extension with canonical-form dedup."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > ENUMERATION_CAP:
        raise SizeCap(f"class enumeration capped at {ENUMERATION_CAP} elements")
    yield from _classes(n)


def random_poset(seed: int, n: int, edge_density: float = 0.3) -> FinitePoset:
    """Random DAG on 0..n-1 (edges i<j with the given density), closed and
    reduced to Hasse form; deterministic in the seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"poset:{seed}:{n}:{edge_density}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < edge_density]
    up = [1 << i for i in range(n)]
    for i in reversed(range(n)):
        for a, b in pairs:
            if a == i:
                up[i] |= up[b]
    rel = [(i, j) for i in range(n) for j in bits(up[i])]
    return from_relation(n, rel)


def random_tree(seed: int, n: int) -> FinitePoset:
    """Each non-root element gets a uniformly chosen parent among the earlier
    elements; element 0 is the root."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"tree:{seed}:{n}")
    covers = frozenset((rng.randrange(i), i) for i in range(1, n))
    return FinitePoset(n, covers)


def random_forest(seed: int, n: int) -> FinitePoset:
    """Each element past the first either starts a new component or attaches
    below a uniformly chosen earlier element."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(f"forest:{seed}:{n}")
    covers = set()
    for i in range(1, n):
        r = rng.randrange(i + 1)
        if r != i:
            covers.add((r, i))
    return FinitePoset(n, frozenset(covers))


def random_root_system(seed: int, n: int) -> FinitePoset:
    """Order dual of a random forest; a root system by construction."""
    return order_dual(random_forest(seed, n))

