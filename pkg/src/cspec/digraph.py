"""Simple directed graphs: construction, strong connectivity, induced
subdigraphs, and small-instance isomorphism.

Vertices are 0-based internally; the edge-list text format is 1-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapabilityError, InputError

VertexSubset = tuple[int, ...]

ISOMORPHISM_LIMIT = 16
SCAN_LIMIT = 20


@dataclass(frozen=True)
class Digraph:
    """Immutable simple digraph on vertices ``0..n-1``.

    Self-loops are rejected; antiparallel arcs ``(u, v)``, ``(v, u)`` are allowed.
    """

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
        object.__setattr__(self, "arcs", arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inc[v].append(u)
        return tuple(tuple(sorted(s)) for s in inc)

    @cached_property
    def succ_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in s) for s in self.succ)

    @cached_property
    def pred_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << v for v in s) for s in self.pred)

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def in_degree(self, v: int) -> int:
        return len(self.pred[v])

    def degree_pairs(self) -> list[tuple[int, int]]:
        """``(in, out)`` degree for each vertex."""
        return [(len(self.pred[v]), len(self.succ[v])) for v in range(self.n)]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.arcs:
            a[u, v] = 1
        return a

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of the digraph under the vertex map ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabel needs a permutation of range(n)")
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def disjoint_union(self, other: "Digraph") -> "Digraph":
        k = self.n
        return Digraph(
            self.n + other.n,
            self.arcs | frozenset((u + k, v + k) for u, v in other.arcs),
        )

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


def from_arc_list(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Digraph on ``n`` vertices with the given 0-based arcs; duplicates collapse."""
    return Digraph(n, frozenset(tuple(a) for a in arcs))


def directed_cycle(n: int) -> Digraph:
    return from_arc_list(n, [(i, (i + 1) % n) for i in range(n)] if n > 1 else [])


def directed_path(n: int) -> Digraph:
    return from_arc_list(n, [(i, i + 1) for i in range(n - 1)])


def complete_digraph(n: int) -> Digraph:
    return from_arc_list(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def _check_subset(d: Digraph, subset: Iterable[int]) -> VertexSubset:
    s = tuple(sorted(set(subset)))
    if not s:
        raise InputError("vertex subset must be nonempty")
    if s[0] < 0 or s[-1] >= d.n:
        raise InputError(f"vertex subset {s} out of range for n={d.n}")
    return s


def induced_subdigraph(d: Digraph, subset: Iterable[int]) -> Digraph:
    """Subdigraph induced by ``subset``, relabeled ``0..k-1`` in sorted order."""
    s = _check_subset(d, subset)
    index = {v: i for i, v in enumerate(s)}
    return Digraph(
        len(s),
        frozenset((index[u], index[v]) for u, v in d.arcs if u in index and v in index),
    )


def mask_to_subset(mask: int) -> VertexSubset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_to_mask(subset: Iterable[int]) -> int:
    m = 0
    for v in subset:
        m |= 1 << v
    return m


def induced_mask(d: Digraph, mask: int) -> Digraph:
    return induced_subdigraph(d, mask_to_subset(mask))


def arcs_within(d: Digraph, mask: int) -> int:
    total = 0
    sm = d.succ_mask
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        total += (sm[v] & mask).bit_count()
        m ^= low
    return total


# ---------------------------------------------------------------------------
# Strong connectivity
# ---------------------------------------------------------------------------


def strongly_connected_components(d: Digraph) -> list[VertexSubset]:
    """SCC partition (iterative Tarjan), blocks sorted by smallest member."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = itertools.count()
    blocks: list[VertexSubset] = []

    for root in range(d.n):
        if root in index:
            continue
        work = [(root, iter(d.succ[root]))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(d.succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                block = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    block.append(w)
                    if w == v:
                        break
                blocks.append(tuple(sorted(block)))
    blocks.sort(key=lambda b: b[0])
    return blocks


def is_strongly_connected(d: Digraph) -> bool:
    return d.n >= 1 and len(strongly_connected_components(d)) == 1


def _closure(adj_mask: Sequence[int], start: int, within: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj_mask[low.bit_length() - 1]
            f ^= low
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def mask_is_strongly_connected(d: Digraph, mask: int) -> bool:
    """Is the subdigraph induced by the bitmask ``mask`` strongly connected?"""
    if not mask:
        return False
    start = mask & -mask
    if _closure(d.succ_mask, start, mask) != mask:
        return False
    return _closure(d.pred_mask, start, mask) == mask


def is_acyclic(d: Digraph) -> bool:
    """No directed cycle; with no self-loops this means every SCC is a singleton."""
    return all(len(b) == 1 for b in strongly_connected_components(d))


# ---------------------------------------------------------------------------
# Induced strongly connected subsets
# ---------------------------------------------------------------------------


def _sc_masks_scan(d: Digraph) -> Iterator[int]:
    for k in range(1, d.n + 1):
        for combo in itertools.combinations(range(d.n), k):
            mask = subset_to_mask(combo)
            if k == 1 or mask_is_strongly_connected(d, mask):
                yield mask


def _connected_masks(d: Digraph) -> Iterator[int]:
    """Every weakly connected vertex set exactly once (ESU tree rooted at the minimal vertex)."""
    nbr = [d.succ_mask[v] | d.pred_mask[v] for v in range(d.n)]

    def extend(sub: int, ext: int, closed: int, above: int) -> Iterator[int]:
        yield sub
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            exclusive = nbr[w] & ~closed & above
            yield from extend(sub | low, ext | exclusive, closed | nbr[w], above)

    full = (1 << d.n) - 1
    for v in range(d.n):
        above = full & ~((1 << (v + 1)) - 1)
        yield from extend(1 << v, nbr[v] & above, (1 << v) | nbr[v], above)


def _sc_masks_grow(d: Digraph) -> list[int]:
    found = [m for m in _connected_masks(d) if m & (m - 1) == 0 or mask_is_strongly_connected(d, m)]
    found.sort(key=lambda m: (m.bit_count(), mask_to_subset(m)))
    return found


def sc_masks(d: Digraph, strategy: str = "auto") -> Iterator[int]:
    """Bitmasks of the induced strongly connected subsets, ordered by size then lexicographically."""
    if strategy == "auto":
        strategy = "scan" if d.n <= SCAN_LIMIT else "grow"
    if strategy == "scan":
        return _sc_masks_scan(d)
    if strategy == "grow":
        return iter(_sc_masks_grow(d))
    raise InputError(f"unknown enumeration strategy {strategy!r}")


def enumerate_induced_sc_subsets(d: Digraph, strategy: str = "auto") -> Iterator[VertexSubset]:
    """Nonempty vertex sets inducing a strongly connected subdigraph."""
    for mask in sc_masks(d, strategy):
        yield mask_to_subset(mask)


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------


def _refine_colors(d: Digraph, colors: list[int]) -> list[int]:
    """1-dimensional Weisfeiler-Leman refinement to a stable coloring."""
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in d.succ[v])),
                tuple(sorted(colors[w] for w in d.pred[v])),
            )
            for v in range(d.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def joint_colors(d1: Digraph, d2: Digraph) -> tuple[list[int], list[int]]:
    """Stable colorings of ``d1`` and ``d2`` computed on their disjoint union, so colors are comparable."""
    u = d1.disjoint_union(d2)
    start = [0] * u.n
    colors = _refine_colors(u, start)
    return colors[: d1.n], colors[d1.n :]


def wl_distinguishes(d1: Digraph, d2: Digraph) -> bool:
    """True when color refinement proves the two digraphs non-isomorphic."""
    if d1.n != d2.n or d1.m != d2.m:
        return True
    c1, c2 = joint_colors(d1, d2)
    return sorted(c1) != sorted(c2)


@dataclass
class IsomorphismSearch:
    """Outcome of a backtracking search, kept for certificates."""

    mapping: list[int] | None
    nodes: int
    pruned_by_invariants: bool


def search_isomorphism(d1: Digraph, d2: Digraph, max_n: int | None = ISOMORPHISM_LIMIT) -> IsomorphismSearch:
    """Backtracking search for a vertex bijection mapping arcs of ``d1`` onto arcs of ``d2``."""
    if max_n is not None and max(d1.n, d2.n) > max_n:
        raise CapabilityError(
            f"isomorphism search limited to n <= {max_n}; use family-level criteria instead"
        )
    if d1.n != d2.n or d1.m != d2.m or sorted(d1.degree_pairs()) != sorted(d2.degree_pairs()):
        return IsomorphismSearch(None, 0, True)
    if d1.n == 0:
        return IsomorphismSearch([], 0, False)
    c1, c2 = joint_colors(d1, d2)
    if sorted(c1) != sorted(c2):
        return IsomorphismSearch(None, 0, True)

    # most constrained first: rare colors, then BFS-ish to keep mapped neighbors adjacent
    freq: dict[int, int] = {}
    for c in c1:
        freq[c] = freq.get(c, 0) + 1
    order: list[int] = []
    placed = [False] * d1.n
    while len(order) < d1.n:
        frontier = [v for v in range(d1.n) if not placed[v] and any(
            placed[w] for w in d1.succ[v] + d1.pred[v])]
        pool = frontier or [v for v in range(d1.n) if not placed[v]]
        v = min(pool, key=lambda x: (freq[c1[x]], x))
        placed[v] = True
        order.append(v)

    by_color: dict[int, list[int]] = {}
    for w in range(d2.n):
        by_color.setdefault(c2[w], []).append(w)

    arcs2 = d2.arcs
    mapping = [-1] * d1.n
    used = [False] * d2.n
    nodes = 0

    def consistent(v: int, w: int) -> bool:
        for x in d1.succ[v]:
            if mapping[x] >= 0 and (w, mapping[x]) not in arcs2:
                return False
        for x in d1.pred[v]:
            if mapping[x] >= 0 and (mapping[x], w) not in arcs2:
                return False
        # arc counts between mapped vertices must match exactly
        out_mapped = sum(1 for x in d1.succ[v] if mapping[x] >= 0)
        in_mapped = sum(1 for x in d1.pred[v] if mapping[x] >= 0)
        out2 = sum(1 for y in d2.succ[w] if used[y])
        in2 = sum(1 for y in d2.pred[w] if used[y])
        return out_mapped == out2 and in_mapped == in2

    def backtrack(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if used[w]:
                continue
            nodes += 1
            if not consistent(v, w):
                continue
            mapping[v] = w
            used[w] = True
            if backtrack(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    found = backtrack(0)
    return IsomorphismSearch(list(mapping) if found else None, nodes, False)


def find_isomorphism(d1: Digraph, d2: Digraph, max_n: int | None = ISOMORPHISM_LIMIT) -> list[int] | None:
    return search_isomorphism(d1, d2, max_n).mapping


def are_isomorphic(d1: Digraph, d2: Digraph, max_n: int | None = ISOMORPHISM_LIMIT) -> bool:
    return search_isomorphism(d1, d2, max_n).mapping is not None


def is_isomorphism(d1: Digraph, d2: Digraph, mapping: Sequence[int]) -> bool:
    """Check a claimed isomorphism certificate."""
    if d1.n != d2.n or sorted(mapping) != list(range(d2.n)):
        return False
    return frozenset((mapping[u], mapping[v]) for u, v in d1.arcs) == d2.arcs


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------


def parse_edge_list(text: str) -> Digraph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (1-based); ``#`` starts a comment line."""
    lines = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        lines.append(s)
    if not lines:
        raise InputError("empty edge list")
    try:
        header = lines[0].split()
        n, m = int(header[0]), int(header[1])
        if len(header) != 2:
            raise ValueError
    except (ValueError, IndexError) as exc:
        raise InputError(f"bad edge-list header {lines[0]!r}; expected 'n m'") from exc
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} arcs but {len(body)} arc lines follow")
    arcs = []
    for s in body:
        parts = s.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad arc line {s!r}") from exc
        if not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"arc ({u}, {v}) out of range 1..{n}")
        arcs.append((u - 1, v - 1))
    return from_arc_list(n, arcs)


def format_edge_list(d: Digraph) -> str:
    """Canonical 1-based edge list with arcs sorted."""
    out = [f"{d.n} {d.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in d.sorted_arcs())
    return "\n".join(out) + "\n"


def read_edge_list(path: str) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
