"""Exact counting of connected node sets by cardinality.

``connected_counts`` is the production enumerator: every connected set is
generated exactly once by growing it from its minimum-index node, with a
forbidden set preventing duplicates.  ``connected_counts_bruteforce`` is the
independent oracle: iterate all 2^n subsets and test connectivity directly.
Both return arbitrary-precision counts (c_1, ..., c_n).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


class EnumerationBudgetError(RuntimeError):
    """The connected-set count exceeded the enumeration budget."""


@dataclass(frozen=True)
class ConnectedCounts:
    """counts[k-1] = number of connected sets of size k."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n:
            raise ValueError("counts vector must have length n")

    def c(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise IndexError(f"k must be in 1..{self.n}")
        return self.counts[k - 1]

    @property
    def total(self) -> int:
        return sum(self.counts)


def _neighbor_masks(g: Graph) -> list[int]:
    masks = []
    for v in range(g.n):
        m = 0
        for w in g.adj[v]:
            m |= 1 << w
        masks.append(m)
    return masks


def connected_counts(g: Graph, budget: int = 10**9) -> ConnectedCounts:
    """Count connected sets of every size by canonical extension enumeration.

    Each connected set S is produced exactly once: it is grown from its
    minimum-index node v using only nodes > v, and when the frontier is
    expanded with candidate u, all earlier-tried candidates join the
    forbidden set of that branch.  Output-sensitive: cost is proportional
    to the number of connected sets (times a small factor), so sparse
    families stay cheap; a budget caps runaway enumeration on dense graphs.
    """
    n = g.n
    if n == 0:
        return ConnectedCounts(0, ())
    nb = _neighbor_masks(g)
    counts = [0] * (n + 1)
    generated = 0
    for v in range(n):
        allowed = ~((1 << (v + 1)) - 1)  # nodes with index > v
        root = 1 << v
        # frames: (set mask, neighborhood-of-set mask, forbidden mask)
        stack = [(root, nb[v], 0)]
        while stack:
            smask, nbs, forb = stack.pop()
            generated += 1
            if generated > budget:
                raise EnumerationBudgetError(
                    f"more than {budget} connected sets in {g.label}"
                )
            counts[smask.bit_count()] += 1
            ext = nbs & allowed & ~smask & ~forb
            f = forb
            while ext:
                u = ext & (-ext)
                ext ^= u
                ubit = u.bit_length() - 1
                stack.append((smask | u, nbs | nb[ubit], f))
                f |= u
    return ConnectedCounts(n, tuple(counts[1:]))


def _mask_connected(mask: int, nb: list[int]) -> bool:
    seed = mask & (-mask)
    reach = seed
    while True:
        nxt = reach
        m = reach
        while m:
            low = m & (-m)
            m ^= low
            nxt |= nb[low.bit_length() - 1] & mask
        if nxt == reach:
            return reach == mask
        reach = nxt


def connected_counts_bruteforce(g: Graph, max_order: int = 25) -> ConnectedCounts:
    """Oracle: iterate all nonempty subsets, test connectivity each time.

    O(2^n) loop; rejected above ``max_order`` nodes.
    """
    n = g.n
    if n > max_order:
        raise ValueError(f"brute force limited to {max_order} nodes, got {n}")
    if n == 0:
        return ConnectedCounts(0, ())
    nb = _neighbor_masks(g)
    counts = [0] * (n + 1)
    for mask in range(1, 1 << n):
        if _mask_connected(mask, nb):
            counts[mask.bit_count()] += 1
    return ConnectedCounts(n, tuple(counts[1:]))
