"""The seven families of strongly connected digraphs with three complementarity eigenvalues.

Vertex labels (1-based, as in reports; builds are 0-based internally):

* ``∞(r, s)``: vertices ``1..r`` form the first cycle; vertex ``j'`` of the
  second cycle (``j >= 2``) is label ``r + j - 1``, so ``1' = 1``, ``2' = r + 1``
  and ``s' = n``. Types 1a, 1b and 2 add arcs on this labeling.
* ``θ(a, b, c)``: ``1`` is the fork ``u``; ``2..a+1`` the interior of the first
  path, ``a+2..a+b+1`` the interior of the second, ``a+b+2`` the join ``v``,
  and the rest the interior of the return path ``v -> u``.
* Types 3, 4 and 5: the cycle ``1 -> 2 -> ... -> n -> 1`` plus chords.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import ClassVar, Iterator, Sequence

from .digraph import (
    Digraph,
    find_isomorphism,
    from_arc_list,
    is_isomorphism,
    is_strongly_connected,
)
from .errors import CapabilityError, ContractError, InputError, InternalError
from .exactpoly import IntPolynomial
from .radius import char_poly

FAMILIES = ("infinity", "type1a", "type1b", "type2", "theta", "type3", "type4", "type5")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


def _poly(n: int, *lower: tuple[int, int]) -> IntPolynomial:
    terms: dict[int, int] = {n: 1}
    for deg, c in lower:
        terms[deg] = terms.get(deg, 0) + c
    return IntPolynomial.from_terms(terms)


class FamilyDescriptor:
    """Common interface of the family parameter records."""

    family: ClassVar[str]

    @property
    def n(self) -> int:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    def arcs(self) -> list[tuple[int, int]]:
        """1-based arc list of the canonical build."""
        raise NotImplementedError

    def char_poly(self) -> IntPolynomial:
        raise NotImplementedError

    def build(self) -> Digraph:
        return from_arc_list(self.n, [(u - 1, v - 1) for u, v in self.arcs()])

    def iso_key(self) -> tuple | None:
        """Complete isomorphism invariant, or ``None`` where no parameter criterion is known."""
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"family": self.family, "params": self.params(), "n": self.n}

    def __str__(self) -> str:
        items = [f"{k}={v}" for k, v in self.params().items() if k != "cycle_sizes"]
        if self.family in ("type3", "type4", "type5"):
            items.insert(0, f"n={self.n}")
        return f"{self.family}({','.join(items)})"


def _infinity_arcs(r: int, s: int) -> list[tuple[int, int]]:
    n = r + s - 1
    arcs = [(k, k + 1) for k in range(1, r)] + [(r, 1)]
    second = [1] + list(range(r + 1, n + 1))
    arcs += [(second[k], second[(k + 1) % s]) for k in range(s)]
    return arcs


@dataclass(frozen=True)
class Infinity(FamilyDescriptor):
    """Coalescence of a directed ``r``-cycle and ``s``-cycle at one vertex."""

    r: int
    s: int
    family: ClassVar[str] = "infinity"

    def __post_init__(self):
        _require(self.r >= 2 and self.s >= 2, f"infinity needs r, s >= 2, got ({self.r}, {self.s})")

    @property
    def n(self) -> int:
        return self.r + self.s - 1

    def params(self) -> dict:
        return {"r": self.r, "s": self.s}

    def arcs(self) -> list[tuple[int, int]]:
        return _infinity_arcs(self.r, self.s)

    def char_poly(self) -> IntPolynomial:
        return _poly(self.n, (self.s - 1, -1), (self.r - 1, -1))

    def iso_key(self) -> tuple:
        return (self.family, min(self.r, self.s), max(self.r, self.s))


@dataclass(frozen=True)
class Type1a(FamilyDescriptor):
    """``∞(r, s)`` plus the arc ``(r, 2')`` from the smaller cycle into the larger."""

    r: int
    s: int
    family: ClassVar[str] = "type1a"

    def __post_init__(self):
        _require(2 <= self.r <= self.s, f"{self.family} needs 2 <= r <= s, got ({self.r}, {self.s})")

    @property
    def n(self) -> int:
        return self.r + self.s - 1

    def params(self) -> dict:
        return {"r": self.r, "s": self.s}

    def arcs(self) -> list[tuple[int, int]]:
        return _infinity_arcs(self.r, self.s) + [(self.r, self.r + 1)]

    def char_poly(self) -> IntPolynomial:
        return _poly(self.n, (self.s - 1, -1), (self.r - 1, -1), (0, -1))

    def iso_key(self) -> tuple:
        # with equal cycles the two added arcs are exchanged by swapping the cycles
        return ("type1", self.r, self.s) if self.r == self.s else (self.family, self.r, self.s)


@dataclass(frozen=True)
class Type1b(Type1a):
    """``∞(r, s)`` plus the arc ``(s', 2)`` from the larger cycle into the smaller."""

    family: ClassVar[str] = "type1b"

    def arcs(self) -> list[tuple[int, int]]:
        return _infinity_arcs(self.r, self.s) + [(self.n, 2)]


@dataclass(frozen=True)
class Type2(FamilyDescriptor):
    """``∞(r, s)`` plus both arcs ``(r, 2')`` and ``(s', 2)``."""

    r: int
    s: int
    family: ClassVar[str] = "type2"

    def __post_init__(self):
        _require(self.r >= 2 and self.s >= 2, f"type2 needs r, s >= 2, got ({self.r}, {self.s})")

    @property
    def n(self) -> int:
        return self.r + self.s - 1

    def params(self) -> dict:
        return {"r": self.r, "s": self.s}

    def arcs(self) -> list[tuple[int, int]]:
        return _infinity_arcs(self.r, self.s) + [(self.r, self.r + 1), (self.n, 2)]

    def char_poly(self) -> IntPolynomial:
        return _poly(self.n, (self.s - 1, -1), (self.r - 1, -1), (1, -1), (0, -2))

    def iso_key(self) -> tuple:
        return (self.family, min(self.r, self.s), max(self.r, self.s))


@dataclass(frozen=True)
class Theta(FamilyDescriptor):
    """Two directed paths ``u -> v`` with ``a`` and ``b`` interior vertices and a return path with ``c``."""

    a: int
    b: int
    c: int
    family: ClassVar[str] = "theta"

    def __post_init__(self):
        _require(0 <= self.a <= self.b and self.b > 0 and self.c >= 0,
                 f"theta needs 0 <= a <= b, b > 0, c >= 0, got ({self.a}, {self.b}, {self.c})")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + 2

    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}

    def arcs(self) -> list[tuple[int, int]]:
        a, b, n = self.a, self.b, self.n
        u, v = 1, a + b + 2
        path_a = [u] + list(range(2, a + 2)) + [v]
        path_b = [u] + list(range(a + 2, a + b + 2)) + [v]
        path_c = [v] + list(range(a + b + 3, n + 1)) + [u]
        arcs = []
        for path in (path_a, path_b, path_c):
            arcs += list(zip(path, path[1:]))
        return arcs

    def char_poly(self) -> IntPolynomial:
        return _poly(self.n, (self.b, -1), (self.a, -1))

    def iso_key(self) -> tuple:
        return (self.family, self.a, self.b, self.c)


def _cycle_arcs(n: int) -> list[tuple[int, int]]:
    return [(k, k % n + 1) for k in range(1, n + 1)]


@dataclass(frozen=True)
class Type3(FamilyDescriptor):
    """``C_n`` plus chords ``(1, i)`` and ``(i-1, j)``."""

    size: int
    i: int
    j: int
    family: ClassVar[str] = "type3"

    def __post_init__(self):
        _require(2 < self.i < self.j <= self.size,
                 f"type3 needs 2 < i < j <= n, got n={self.size}, i={self.i}, j={self.j}")

    @property
    def n(self) -> int:
        return self.size

    def params(self) -> dict:
        return {"i": self.i, "j": self.j}

    def arcs(self) -> list[tuple[int, int]]:
        return _cycle_arcs(self.size) + [(1, self.i), (self.i - 1, self.j)]

    def char_poly(self) -> IntPolynomial:
        return _poly(self.n, (self.i - 2, -1), (self.j - self.i, -1), (0, -1))

    def iso_key(self) -> tuple:
        return (self.family, self.size, self.i, self.j)


def _check_type4_chords(n: int, chords: Sequence[tuple[int, int]]) -> None:
    _require(len(chords) >= 2, f"type4 needs at least two chords, got {len(chords)}")
    prev = 0
    for x, y in chords:
        _require(prev < y < x <= n,
                 f"type4 chords must satisfy 1 <= y_1 < x_1 < y_2 < ... <= n, got {list(chords)} for n={n}")
        prev = x


@dataclass(frozen=True)
class Type4(FamilyDescriptor):
    """``C_n`` plus backward chords ``(x_t, y_t)`` on disjoint increasing stretches."""

    size: int
    chords: tuple[tuple[int, int], ...]
    family: ClassVar[str] = "type4"

    def __post_init__(self):
        chords = tuple(tuple(c) for c in self.chords)
        object.__setattr__(self, "chords", chords)
        _check_type4_chords(self.size, chords)

    @property
    def n(self) -> int:
        return self.size

    @property
    def k(self) -> int:
        return len(self.chords)

    def params(self) -> dict:
        return {"chords": [list(c) for c in self.chords]}

    def arcs(self) -> list[tuple[int, int]]:
        return _cycle_arcs(self.size) + list(self.chords)

    def char_poly(self) -> IntPolynomial:
        return char_poly(self.build(), max_n=None)

    def iso_key(self) -> None:
        return None

    def __str__(self) -> str:
        return f"type4(n={self.size},chords={[list(c) for c in self.chords]})"


def type4_pair(n: int, i: int) -> Type4:
    """The two-chord member ``C_n ∪ {(2,1), (i+1,i)}``."""
    _require(n >= 4 and 3 <= i <= n - 1, f"two-chord type4 needs n >= 4 and 3 <= i <= n-1, got n={n}, i={i}")
    return Type4(n, ((2, 1), (i + 1, i)))


def type4_pair_isomorphic(n: int, i: int, j: int) -> bool:
    return i == j or i + j == n + 2


def type5_cycle_sizes(n: int, i: int, j: int) -> tuple[int, int, int]:
    _require(3 < i and i + 1 < j <= n, f"type5 needs 3 < i, i+1 < j <= n, got n={n}, i={i}, j={j}")
    return tuple(sorted((n - i + 2, n - j + i, j - 2)))


def type5_from_cycle_sizes(n: int, sizes: Sequence[int]) -> tuple[int, int] | None:
    """Smallest ``(i, j)`` realizing the cycle sizes on ``n`` vertices, or ``None``."""
    found = []
    for t1, t2, t3 in set(itertools.permutations(sizes)):
        j = t1 + 2
        i = n + 2 - t2
        if 3 < i and i + 1 < j <= n and n - j + i == t3:
            found.append((i, j))
    return min(found) if found else None


def type5_triples(n: int, realizable_only: bool = False) -> list[tuple[int, int, int]]:
    """All ``4 <= r <= s <= t < n`` with ``r + s + t = 2n`` (paper's enumeration range).

    With ``realizable_only`` the list is cut to ``t <= n - 2``: no chord pattern
    produces a cycle on ``n - 1`` vertices.
    """
    top = n - 2 if realizable_only else n - 1
    out = []
    for r in range(4, top + 1):
        for s in range(r, top + 1):
            t = 2 * n - r - s
            if s <= t <= top:
                out.append((r, s, t))
    return out


def type5_poly(n: int, sizes: Sequence[int]) -> IntPolynomial:
    r, s, t = sizes
    return _poly(n, (n - r, -1), (n - s, -1), (n - t, -1), (0, -2))


@dataclass(frozen=True)
class Type5(FamilyDescriptor):
    """``C_n`` plus chords ``(1, i)``, ``(i-1, j)``, ``(j-1, 2)``; equal when the cycle sizes agree."""

    size: int
    i: int = field(compare=False)
    j: int = field(compare=False)
    cycle_sizes: tuple[int, int, int] = field(init=False)
    family: ClassVar[str] = "type5"

    def __post_init__(self):
        object.__setattr__(self, "cycle_sizes", type5_cycle_sizes(self.size, self.i, self.j))

    @classmethod
    def from_sizes(cls, n: int, sizes: Sequence[int]) -> "Type5":
        ij = type5_from_cycle_sizes(n, sizes)
        if ij is None:
            raise InputError(f"cycle sizes {tuple(sizes)} are not realized by a type5 digraph on {n} vertices")
        return cls(n, *ij)

    @property
    def n(self) -> int:
        return self.size

    def params(self) -> dict:
        return {"i": self.i, "j": self.j, "cycle_sizes": list(self.cycle_sizes)}

    def arcs(self) -> list[tuple[int, int]]:
        return _cycle_arcs(self.size) + [(1, self.i), (self.i - 1, self.j), (self.j - 1, 2)]

    def char_poly(self) -> IntPolynomial:
        return type5_poly(self.size, self.cycle_sizes)

    def iso_key(self) -> tuple:
        return (self.family, self.size, self.cycle_sizes)


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def build(f: FamilyDescriptor) -> Digraph:
    return f.build()


def family_char_poly(f: FamilyDescriptor) -> IntPolynomial:
    return f.char_poly()


def descriptors_isomorphic(f1: FamilyDescriptor, f2: FamilyDescriptor) -> bool:
    """Isomorphism of the builds decided from parameters where a criterion is known."""
    if f1.n != f2.n:
        return False
    both1 = {f1.family, f2.family} <= {"type1a", "type1b"}
    if f1.family != f2.family and not both1:
        return False
    k1, k2 = f1.iso_key(), f2.iso_key()
    if k1 is not None and k2 is not None:
        return k1 == k2
    if f1.chords == f2.chords:
        return True
    return find_isomorphism(f1.build(), f2.build(), max_n=None) is not None


def descriptor_from_json(data: dict) -> FamilyDescriptor:
    fam = data.get("family")
    p = data.get("params", {})
    try:
        if fam == "infinity":
            return Infinity(p["r"], p["s"])
        if fam == "type1a":
            return Type1a(p["r"], p["s"])
        if fam == "type1b":
            return Type1b(p["r"], p["s"])
        if fam == "type2":
            return Type2(p["r"], p["s"])
        if fam == "theta":
            return Theta(p["a"], p["b"], p["c"])
        if fam == "type3":
            return Type3(data["n"], p["i"], p["j"])
        if fam == "type4":
            return Type4(data["n"], tuple(tuple(c) for c in p["chords"]))
        if fam == "type5":
            if "i" in p:
                return Type5(data["n"], p["i"], p["j"])
            return Type5.from_sizes(data["n"], p["cycle_sizes"])
    except KeyError as exc:
        raise InputError(f"missing descriptor field {exc}") from None
    raise InputError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


def make_descriptor(family: str, n: int | None = None, **params) -> FamilyDescriptor:
    """Descriptor from loose keyword parameters (CLI helper)."""
    data = {"family": family, "params": params}
    if n is not None:
        data["n"] = n
    elif family in ("type3", "type4", "type5"):
        raise InputError(f"{family} needs n")
    return descriptor_from_json(data)


def _type4_chord_sets(n: int) -> Iterator[tuple[tuple[int, int], ...]]:
    for size in range(4, n + 1, 2):
        for pts in itertools.combinations(range(1, n + 1), size):
            yield tuple((pts[t + 1], pts[t]) for t in range(0, size, 2))


def enumerate_members(family: str, n: int) -> list[FamilyDescriptor]:
    """All valid parameter tuples of ``family`` on ``n`` vertices, ``r <= s`` for the ∞-family."""
    if family in ("infinity", "type1a", "type1b", "type2"):
        cls = {"infinity": Infinity, "type1a": Type1a, "type1b": Type1b, "type2": Type2}[family]
        return [cls(r, n + 1 - r) for r in range(2, (n + 1) // 2 + 1) if n + 1 - r >= r]
    if family == "theta":
        return [Theta(a, b, n - 2 - a - b) for a in range(0, n) for b in range(max(a, 1), n - 1 - a)]
    if family == "type3":
        return [Type3(n, i, j) for i in range(3, n + 1) for j in range(i + 1, n + 1)]
    if family == "type4":
        return [Type4(n, c) for c in _type4_chord_sets(n)]
    if family == "type5":
        return [Type5(n, i, j) for i in range(4, n + 1) for j in range(i + 2, n + 1)]
    raise InputError(f"unknown family {family!r}")


def enumerate_classes(family: str, n: int) -> list[FamilyDescriptor]:
    """One representative per isomorphism class (first in parameter order)."""
    seen: list[FamilyDescriptor] = []
    keys: set = set()
    for f in enumerate_members(family, n):
        key = f.iso_key()
        if key is None:
            if any(descriptors_isomorphic(f, g) for g in seen):
                continue
        elif key in keys:
            continue
        keys.add(key)
        seen.append(f)
    return seen


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

HAMILTON_BUDGET = 200_000


@dataclass(frozen=True)
class Recognition:
    """A family descriptor with an explicit isomorphism ``build(descriptor) -> D``."""

    descriptor: FamilyDescriptor
    mapping: tuple[int, ...]


def _walk(d: Digraph, start: int, stop: int) -> list[int] | None:
    """Interior of the forced path ``start -> ... -> stop`` through vertices of out-degree 1."""
    path: list[int] = []
    v = start
    while v != stop:
        if len(path) > d.n or len(d.succ[v]) != 1:
            return None
        path.append(v)
        v = d.succ[v][0]
    return path


def _recognize_surplus_one(d: Digraph) -> Recognition | None:
    hubs = [v for v in range(d.n) if d.out_degree(v) == 2 and d.in_degree(v) == 2]
    forks = [v for v in range(d.n) if d.out_degree(v) == 2]
    joins = [v for v in range(d.n) if d.in_degree(v) == 2]
    if len(hubs) == 1:
        h = hubs[0]
        loops = [_walk(d, w, h) for w in d.succ[h]]
        if any(p is None for p in loops):
            return None
        loops.sort(key=len)
        f = Infinity(len(loops[0]) + 1, len(loops[1]) + 1)
        return Recognition(f, tuple([h] + loops[0] + loops[1]))
    if len(forks) == 1 and len(joins) == 1 and forks[0] != joins[0]:
        u, v = forks[0], joins[0]
        paths = []
        for w in d.succ[u]:
            paths.append([] if w == v else _walk(d, w, v))
        back = _walk(d, d.succ[v][0], u) if d.succ[v][0] != u else []
        if any(p is None for p in paths) or back is None:
            return None
        paths.sort(key=len)
        f = Theta(len(paths[0]), len(paths[1]), len(back))
        return Recognition(f, tuple([u] + paths[0] + paths[1] + [v] + back))
    return None


def _hamiltonian_cycles(d: Digraph, budget: int = HAMILTON_BUDGET) -> list[list[int]]:
    n = d.n
    cycles: list[list[int]] = []
    path = [0]
    on = [False] * n
    on[0] = True
    steps = 0
    stack = [iter(d.succ[0])]
    while stack:
        steps += 1
        if steps > budget:
            raise CapabilityError("Hamiltonian cycle search exceeded its budget")
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on[path.pop()] = False
            continue
        if nxt == 0 and len(path) == n:
            cycles.append(list(path))
            continue
        if on[nxt]:
            continue
        on[nxt] = True
        path.append(nxt)
        stack.append(iter(d.succ[nxt]))
    return cycles


def _swap_map(r: int, s: int) -> list[int]:
    """0-based relabeling from the ``∞(r, s)`` labeling to the ``∞(s, r)`` labeling."""
    n = r + s - 1
    perm = [0] * n
    for k in range(2, r + 1):
        perm[k - 1] = s + k - 2
    for j in range(2, s + 1):
        perm[r + j - 2] = j - 1
    return perm


def _match_chords(n: int, chords: frozenset) -> list[tuple[FamilyDescriptor, list[int] | None]]:
    """Descriptors whose cycle-plus-chords form equals ``C_n ∪ chords``.

    The second entry, when present, is a relabeling from the positional digraph
    to ``build(descriptor)``; ``None`` means the identity.
    """
    out: list[tuple[FamilyDescriptor, list[int] | None]] = []
    k = len(chords)
    if k in (2, 3):
        first = [x for (x, y) in chords if y == 1]
        if len(first) == 1:
            r = first[0]
            s = n - r + 1
            base = {(r, 1), (1, r + 1)}
            if 2 <= r <= n - 1 and s >= 2:
                if k == 2 and chords == base:
                    if r <= s:
                        out.append((Type1a(r, s), None))
                    else:
                        out.append((Type1b(s, r), _swap_map(r, s)))
                if k == 3 and chords == base | {(n, 2)} and r <= s:
                    out.append((Type2(r, s), None))
        from_one = [y for (x, y) in chords if x == 1]
        if len(from_one) == 1:
            i = from_one[0]
            rest = chords - {(1, i)}
            if k == 2 and len(rest) == 1:
                (x, j), = rest
                if x == i - 1 and 2 < i < j <= n:
                    out.append((Type3(n, i, j), None))
            if k == 3:
                for x, j in rest:
                    if x == i - 1 and chords == {(1, i), (i - 1, j), (j - 1, 2)} and 3 < i and i + 1 < j <= n:
                        out.append((Type5(n, i, j), None))
    if k >= 2 and all(y < x for x, y in chords):
        ordered = tuple(sorted(chords, key=lambda c: c[1]))
        prev, ok = 0, True
        for x, y in ordered:
            if not prev < y < x <= n:
                ok = False
                break
            prev = x
        if ok:
            out.append((Type4(n, ordered), None))
    return out


def _recognize_hamiltonian(d: Digraph) -> Recognition | None:
    n = d.n
    found: list[Recognition] = []
    for cyc in _hamiltonian_cycles(d):
        pos = {v: t for t, v in enumerate(cyc)}
        ham = {(cyc[t], cyc[(t + 1) % n]) for t in range(n)}
        raw = [(pos[u], pos[v]) for u, v in d.arcs if (u, v) not in ham]
        for shift in range(n):
            chords = frozenset(((a - shift) % n + 1, (b - shift) % n + 1) for a, b in raw)
            for f, relabel in _match_chords(n, chords):
                # positional vertex p (0-based) is D-vertex cyc[(p + shift) % n]
                positional = [cyc[(p + shift) % n] for p in range(n)]
                if relabel is None:
                    mapping = positional
                else:
                    mapping = [0] * n
                    for p in range(n):
                        mapping[relabel[p]] = positional[p]
                found.append(Recognition(f, tuple(mapping)))
    if not found:
        return None
    fams = {"type1a" if r.descriptor.family == "type1b" else r.descriptor.family for r in found}
    if len(fams) > 1:
        raise InternalError(f"digraph matches several families: {sorted(fams)}")
    return min(found, key=lambda r: _descriptor_order(r.descriptor))


def _descriptor_order(f: FamilyDescriptor) -> tuple:
    if isinstance(f, Type4):
        return (FAMILIES.index(f.family), f.chords)
    if isinstance(f, Type5):
        return (FAMILIES.index(f.family), (f.i, f.j))
    return (FAMILIES.index(f.family), tuple(v for v in f.params().values() if isinstance(v, int)))


def recognize_family(d: Digraph) -> Recognition | None:
    """Structural recognition of the seven families, certified by an explicit isomorphism.

    Arc surplus ``m - n`` and the degree bound (every member has in- and
    out-degrees at most 2) prefilter; ∞ and θ are traced from their branch
    vertices, and the Hamiltonian types are read off as chord patterns over
    every rotation of every Hamiltonian cycle.
    """
    n = d.n
    if n < 3 or not is_strongly_connected(d):
        return None
    if any(d.out_degree(v) > 2 or d.in_degree(v) > 2 for v in range(n)):
        return None
    surplus = d.m - n
    if surplus < 1:
        return None
    rec = _recognize_surplus_one(d) if surplus == 1 else _recognize_hamiltonian(d)
    if rec is None:
        return None
    if not is_isomorphism(rec.descriptor.build(), d, rec.mapping):
        raise InternalError(f"recognition of {rec.descriptor} produced an invalid vertex map")
    return rec


def classify_scd3(d: Digraph, check_membership: bool = True) -> FamilyDescriptor:
    """Family descriptor of an SCD₃ digraph.

    With ``check_membership`` the SCD₃ property is confirmed by enumeration
    (exhaustive for n up to the scan limit) before recognition.
    """
    if not is_strongly_connected(d):
        raise ContractError("classification needs a strongly connected digraph")
    member = None
    if check_membership:
        from .spectrum import is_in_scd3

        member = is_in_scd3(d)
    rec = recognize_family(d)
    if member is False:
        raise ContractError("digraph is not in SCD3")
    if rec is None:
        if member:
            raise InternalError("SCD3 member not matched by any family")
        raise ContractError("digraph is not recognized as an SCD3 family member")
    return rec.descriptor
