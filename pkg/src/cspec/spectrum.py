"""Complementarity spectra of digraphs.

Π(D) is the set of spectral radii of induced strongly connected subdigraphs,
and it is the union of the spectra of the strongly connected components.
Components are enumerated exhaustively up to the scan limit; larger ones are
handled in family mode when they are recognized SCD₃ members.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Iterator

from .digraph import (
    SCAN_LIMIT,
    Digraph,
    arcs_within,
    induced_mask,
    induced_subdigraph,
    is_acyclic,
    mask_to_subset,
    sc_masks,
    strongly_connected_components,
    subset_to_mask,
)
from .errors import CapabilityError, InputError
from .families import FamilyDescriptor, recognize_family
from .radius import AlgebraicRadius, Order, char_poly, compare_radii, perron_root

CYCLE_BUDGET = 100_000


class CardinalityClass(enum.Enum):
    ACYCLIC = "Acyclic1"
    CYCLES_ONLY = "CyclesOnly2"
    THREE = "Three3"
    MORE = "More"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SpectrumElement:
    radius: AlgebraicRadius
    witness: tuple[int, ...]

    def to_json(self) -> dict:
        out = self.radius.to_json()
        out["witness"] = [v + 1 for v in self.witness]
        return out


@dataclass(frozen=True)
class ComplementaritySpectrum:
    """Sorted, exactly deduplicated complementarity eigenvalues with minimal witnesses."""

    n: int
    elements: tuple[SpectrumElement, ...]

    @property
    def radii(self) -> list[AlgebraicRadius]:
        return [e.radius for e in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def approx(self) -> list[float]:
        return [e.radius.approx for e in self.elements]

    def to_json(self) -> dict:
        return {"n": self.n, "elements": [e.to_json() for e in self.elements]}

    @classmethod
    def from_json(cls, data: dict) -> "ComplementaritySpectrum":
        elems = tuple(
            SpectrumElement(AlgebraicRadius.from_json(e), tuple(v - 1 for v in e["witness"]))
            for e in data["elements"]
        )
        return cls(int(data["n"]), elems)

    def __str__(self) -> str:
        return "{" + ", ".join(str(e.radius) for e in self.elements) + "}"


def _subset_radius(d: Digraph, mask: int) -> AlgebraicRadius:
    size = bin(mask).count("1")
    if size == 1:
        return AlgebraicRadius.zero()
    if arcs_within(d, mask) == size:
        return AlgebraicRadius.one()
    return perron_root(char_poly(induced_mask(d, mask)))


def _elementary_cycles(d: Digraph, budget: int = CYCLE_BUDGET) -> Iterator[tuple[int, ...]]:
    """Vertex sets of elementary cycles, each rooted at its smallest vertex."""
    steps = 0
    for root in range(d.n):
        path = [root]
        on = {root}
        stack = [iter(w for w in d.succ[root] if w >= root)]
        while stack:
            steps += 1
            if steps > budget:
                raise CapabilityError("cycle enumeration exceeded its budget")
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on.discard(path.pop())
                continue
            if w == root:
                yield tuple(sorted(path))
                continue
            if w in on:
                continue
            on.add(w)
            path.append(w)
            stack.append(iter(x for x in d.succ[w] if x >= root))


def _shortest_induced_cycle(d: Digraph) -> tuple[int, ...]:
    best = None
    for cyc in _elementary_cycles(d):
        if arcs_within(d, subset_to_mask(cyc)) == len(cyc):
            key = (len(cyc), cyc)
            if best is None or key < best:
                best = key
    assert best is not None
    return best[1]


def _component_candidates(d: Digraph, comp: tuple[int, ...], limit: int | None) -> list[tuple[tuple[int, ...], AlgebraicRadius]]:
    sub = induced_subdigraph(d, comp)
    k = sub.n
    if k == 1:
        return [(comp, AlgebraicRadius.zero())]
    out = [((comp[0],), AlgebraicRadius.zero())]
    if sub.m == k:
        return out + [(comp, AlgebraicRadius.one())]
    if limit is None or k <= limit:
        for mask in sc_masks(sub):
            if mask & (mask - 1) == 0:
                continue
            members = tuple(comp[v] for v in mask_to_subset(mask))
            out.append((members, _subset_radius(sub, mask)))
        return out
    rec = recognize_family(sub)
    if rec is None:
        raise CapabilityError(
            f"strongly connected component of size {k} exceeds the enumeration limit {limit} "
            "and is not a recognized SCD3 family member"
        )
    cyc = _shortest_induced_cycle(sub)
    out.append((tuple(comp[v] for v in cyc), AlgebraicRadius.one()))
    out.append((comp, perron_root(rec.descriptor.char_poly())))
    return out


def _dedupe(candidates: list[tuple[tuple[int, ...], AlgebraicRadius]]) -> list[SpectrumElement]:
    candidates = sorted(candidates, key=lambda c: (len(c[0]), c[0]))
    distinct: list[SpectrumElement] = []
    by_poly: dict = {}
    for witness, rho in candidates:
        key = (rho.defining_poly, rho.isolating)
        if key in by_poly:
            continue
        dup = False
        for e in distinct:
            if e.radius.isolating.intersect(rho.isolating) is None:
                continue
            if compare_radii(e.radius, rho) is Order.EQUAL:
                dup = True
                break
        by_poly[key] = True
        if not dup:
            distinct.append(SpectrumElement(rho, witness))
    order = functools.cmp_to_key(lambda x, y: {Order.LESS: -1, Order.EQUAL: 0, Order.GREATER: 1}[compare_radii(x.radius, y.radius)])
    return sorted(distinct, key=order)


def complementarity_spectrum(d: Digraph, limit: int | None = SCAN_LIMIT) -> ComplementaritySpectrum:
    """Π(D) with exact deduplication and witnesses minimal by (size, lexicographic).

    Components larger than ``limit`` use family mode (``{0, 1, ρ}`` once the
    component is recognized); ``limit=None`` forces exhaustive enumeration.
    """
    if d.n == 0:
        raise InputError("the empty digraph has no complementarity spectrum")
    candidates = []
    for comp in strongly_connected_components(d):
        candidates += _component_candidates(d, comp, limit)
    return ComplementaritySpectrum(d.n, tuple(_dedupe(candidates)))


def spectrum_whole_enumeration(d: Digraph) -> ComplementaritySpectrum:
    """Whole-digraph enumeration without the component split, for cross-checks."""
    candidates = [(mask_to_subset(mask), _subset_radius(d, mask)) for mask in sc_masks(d)]
    return ComplementaritySpectrum(d.n, tuple(_dedupe(candidates)))


def _is_cycle_block(d: Digraph, comp: tuple[int, ...]) -> bool:
    return len(comp) == 1 or arcs_within(d, subset_to_mask(comp)) == len(comp)


def is_in_scd3(d: Digraph, method: str = "auto") -> bool:
    """Strongly connected, neither a vertex nor a cycle, and every proper induced
    strongly connected subdigraph is a vertex or a cycle.

    ``enumerate`` checks the definition directly; ``structural`` recognizes the
    seven families instead, which is equivalent by the SCD₃ classification;
    ``auto`` enumerates up to the scan limit.
    """
    n = d.n
    if n < 3 or len(strongly_connected_components(d)) != 1 or d.m == n:
        return False
    if method == "auto":
        method = "enumerate" if n <= SCAN_LIMIT else "structural"
    if method == "structural":
        return recognize_family(d) is not None
    if method != "enumerate":
        raise InputError(f"unknown method {method!r}")
    full = (1 << n) - 1
    for mask in sc_masks(d):
        if mask == full:
            continue
        size = bin(mask).count("1")
        if size > 1 and arcs_within(d, mask) != size:
            return False
    return True


def scd3_descriptor(d: Digraph) -> FamilyDescriptor | None:
    rec = recognize_family(d)
    return rec.descriptor if rec else None


def spectrum_cardinality_class(d: Digraph) -> CardinalityClass:
    """|Π(D)| class from component structure alone, without subset enumeration."""
    if is_acyclic(d):
        return CardinalityClass.ACYCLIC
    comps = strongly_connected_components(d)
    big = [c for c in comps if not _is_cycle_block(d, c)]
    if not big:
        return CardinalityClass.CYCLES_ONLY
    radii = []
    for comp in big:
        rec = recognize_family(induced_subdigraph(d, comp))
        if rec is None:
            return CardinalityClass.MORE
        radii.append(perron_root(rec.descriptor.char_poly()))
    if all(compare_radii(radii[0], r) is Order.EQUAL for r in radii[1:]):
        return CardinalityClass.THREE
    return CardinalityClass.MORE


def spectra_equal(d1: Digraph, d2: Digraph, limit: int | None = SCAN_LIMIT) -> bool:
    s1 = complementarity_spectrum(d1, limit)
    s2 = complementarity_spectrum(d2, limit)
    if len(s1) != len(s2):
        return False
    return all(compare_radii(a, b) is Order.EQUAL for a, b in zip(s1.radii, s2.radii))
