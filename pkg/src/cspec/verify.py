"""Reproduction harness: one operation per claim, each returning a report with exact certificates.

Every ``Verified`` report carries data that :func:`check_report` re-validates
without repeating the search: isolating intervals are re-checked by sign
evaluation, orderings by interval disjointness, equalities by a common factor
with a root in the overlap, and non-isomorphism by an invariant mismatch.
"""
from __future__ import annotations

import csv
import enum
import io
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .digraph import (
    Digraph,
    arcs_within,
    from_arc_list,
    is_isomorphism,
    joint_colors,
    search_isomorphism,
    subset_to_mask,
)
from .errors import InputError
from .exactpoly import (
    H_POLY,
    IntPolynomial,
    exact_divide,
    factor_trinomial,
    h_power,
    iter_theta_pairs,
    min_poly_perron,
    perron_roots_equal,
    theta_polynomial,
    trinomial,
    trinomial_is_reducible,
)
from .families import (
    FamilyDescriptor,
    Infinity,
    Type1a,
    Type1b,
    Type2,
    Type3,
    Type5,
    enumerate_members,
    type4_pair,
    type4_pair_isomorphic,
    type5_poly,
    type5_triples,
)
from .radius import (
    AlgebraicRadius,
    Order,
    certify_comparison,
    char_poly,
    check_comparison,
    check_isolation,
    isolate_unique_positive_root,
    perron_root,
)
from .spectrum import ComplementaritySpectrum, _elementary_cycles, complementarity_spectrum, spectra_equal


class Status(enum.Enum):
    VERIFIED = "Verified"
    REFUTED = "Refuted"
    SKIPPED = "Skipped"

    def __str__(self) -> str:
        return self.value


@dataclass
class VerificationReport:
    claim_id: str
    status: Status
    certificates: list[dict] = field(default_factory=list)
    detail: str = ""
    reason: str | None = None
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status is not Status.REFUTED

    def to_json(self, include_timing: bool = False, include_certificates: bool = True) -> dict:
        out = {"claim_id": self.claim_id, "status": self.status.value}
        if self.reason is not None:
            out["reason"] = self.reason
        out["detail"] = self.detail
        out["stats"] = self.stats
        if include_certificates:
            out["certificates"] = self.certificates
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
            if self.timings:
                out["timings"] = self.timings
        return out

    def summary_row(self, include_timing: bool = False) -> dict:
        row = {
            "claim_id": self.claim_id,
            "status": self.status.value,
            "reason": self.reason or "",
            "items": self.stats.get("items", len(self.certificates)),
            "detail": self.detail,
        }
        if include_timing:
            row["elapsed_seconds"] = f"{self.elapsed:.3f}"
        return row


def summary_csv(reports: Sequence[VerificationReport], include_timing: bool = False) -> str:
    buf = io.StringIO()
    rows = [r.summary_row(include_timing) for r in reports]
    fields = list(rows[0].keys()) if rows else ["claim_id", "status", "reason", "items", "detail"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _timed(fn: Callable[..., VerificationReport]) -> Callable[..., VerificationReport]:
    def wrapper(*args, **kwargs) -> VerificationReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.elapsed = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def default_workers() -> int:
    env = os.environ.get("CSPEC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"CSPEC_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    """Ordered map, in a process pool when ``workers > 1``."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=1))


# ---------------------------------------------------------------------------
# Certificate builders
# ---------------------------------------------------------------------------


def _comparison_cert(label_a: str, a: AlgebraicRadius, label_b: str, b: AlgebraicRadius) -> tuple[Order, dict]:
    cert = certify_comparison(a, b)
    data = {"kind": "comparison", "left_label": label_a, "right_label": label_b}
    data.update(cert.to_json())
    return cert.order, data


def _digraph_json(d: Digraph) -> dict:
    return {"n": d.n, "arcs": [[u + 1, v + 1] for u, v in d.sorted_arcs()]}


def _digraph_from_json(data: dict) -> Digraph:
    return from_arc_list(data["n"], [(u - 1, v - 1) for u, v in data["arcs"]])


def _noniso_cert(d1: Digraph, d2: Digraph) -> dict | None:
    """Non-isomorphism certificate, or ``None`` when the digraphs are isomorphic."""
    search = search_isomorphism(d1, d2)
    if search.mapping is not None:
        return None
    cert = {"kind": "noniso", "left": _digraph_json(d1), "right": _digraph_json(d2), "nodes": search.nodes}
    if sorted(d1.degree_pairs()) != sorted(d2.degree_pairs()):
        cert["method"] = "degree"
    elif search.pruned_by_invariants:
        cert["method"] = "wl"
    else:
        cert["method"] = "exhaustive"
    return cert


def _iso_cert(d1: Digraph, d2: Digraph, mapping: Sequence[int]) -> dict:
    return {"kind": "iso", "left": _digraph_json(d1), "right": _digraph_json(d2), "mapping": [v + 1 for v in mapping]}


# ---------------------------------------------------------------------------
# Chains and the sandwich remark
# ---------------------------------------------------------------------------

CHAIN_FAMILIES = {"infinity": Infinity, "type1a": Type1a, "type1b": Type1b, "type2": Type2}


def _radius(f: FamilyDescriptor) -> AlgebraicRadius:
    return perron_root(f.char_poly())


@_timed
def verify_ordering_chain(family: str, n: int) -> VerificationReport:
    """Members with ``r + s - 1 = n`` ordered by decreasing ``r`` have strictly increasing radii."""
    if family not in CHAIN_FAMILIES:
        raise InputError(f"chain family must be one of {', '.join(CHAIN_FAMILIES)}, got {family!r}")
    if n < 3:
        raise InputError(f"chain needs n >= 3, got {n}")
    members = sorted(enumerate_members(family, n), key=lambda f: -f.r)
    certs = []
    for f in members:
        if f.n <= 40 and f.char_poly() != char_poly(f.build()):
            return VerificationReport(f"chain-{family}", Status.REFUTED, detail=f"closed form differs for {f}")
    for lo, hi in zip(members, members[1:]):
        order, cert = _comparison_cert(str(lo), _radius(lo), str(hi), _radius(hi))
        certs.append(cert)
        if order is not Order.LESS:
            return VerificationReport(
                f"chain-{family}", Status.REFUTED, certs, detail=f"rho({lo}) is not below rho({hi}): {order}"
            )
    chain = " < ".join(f"rho({f})" for f in members)
    return VerificationReport(f"chain-{family}", Status.VERIFIED, certs, detail=chain or "empty",
                              stats={"n": n, "members": len(members), "items": len(certs)})


@_timed
def verify_remark_sandwich(r: int, s: int) -> VerificationReport:
    """ρ(∞(r,s)) < ρ(D₁(r,s)) < ρ(D₂(r,s))."""
    if not 2 <= r <= s:
        raise InputError(f"sandwich needs 2 <= r <= s, got ({r}, {s})")
    chain = [Infinity(r, s), Type1a(r, s), Type2(r, s)]
    certs = []
    for lo, hi in zip(chain, chain[1:]):
        order, cert = _comparison_cert(str(lo), _radius(lo), str(hi), _radius(hi))
        certs.append(cert)
        if order is not Order.LESS:
            return VerificationReport("remark-sandwich", Status.REFUTED, certs, detail=f"{lo} vs {hi}: {order}")
    # both type 1 variants share one characteristic polynomial
    if Type1a(r, s).char_poly() != Type1b(r, s).char_poly():
        return VerificationReport("remark-sandwich", Status.REFUTED, certs, detail="type1a/1b polynomials differ")
    return VerificationReport("remark-sandwich", Status.VERIFIED, certs, detail=f"r={r}, s={s}",
                              stats={"items": len(certs)})


# ---------------------------------------------------------------------------
# Cospectral counterexamples
# ---------------------------------------------------------------------------


def _cospectral_pair(f1: FamilyDescriptor, f2: FamilyDescriptor) -> tuple[bool, list[dict], str]:
    d1, d2 = f1.build(), f2.build()
    p1, p2 = char_poly(d1), char_poly(d2)
    certs: list[dict] = []
    if p1 != p2:
        return False, certs, f"characteristic polynomials differ: {p1} vs {p2}"
    certs.append({"kind": "polys-equal", "left_label": str(f1), "right_label": str(f2),
                  "left": _digraph_json(d1), "right": _digraph_json(d2), "poly": p1.to_json()})
    non = _noniso_cert(d1, d2)
    if non is None:
        return False, certs, f"{f1} and {f2} are isomorphic"
    non.update({"left_label": str(f1), "right_label": str(f2)})
    certs.append(non)
    if not spectra_equal(d1, d2):
        return False, certs, f"complementarity spectra of {f1} and {f2} differ"
    spec = complementarity_spectrum(d1)
    certs.append({"kind": "spectra-equal", "left_label": str(f1), "right_label": str(f2),
                  "spectrum": spec.to_json()})
    return True, certs, f"{f1} and {f2}: not isomorphic, p = {p1}"


@_timed
def verify_cospectral_counterexamples(kind: str, n: int, extra: int | None = None) -> VerificationReport:
    """Non-isomorphic members with equal characteristic polynomials (so the class is not DCS).

    ``type1``: ``D1a(r, s)`` vs ``D1b(r, s)`` with ``r = extra`` (all ``r < s`` if omitted);
    ``type3``: ``D3(3, n)`` vs ``D3(n-1, n)``;
    ``type4``: ``D4(3)`` vs ``D4(j)`` with ``j = extra`` (all ``4 <= j <= n-2`` if omitted).
    """
    claim = f"counterexample-{kind}"
    if kind == "type1":
        rs = [extra] if extra is not None else [r for r in range(2, n) if r < n + 1 - r]
        pairs = []
        for r in rs:
            s = n + 1 - r
            if not 2 <= r < s:
                raise InputError(f"type1 counterexample needs 2 <= r < s with r + s - 1 = n, got r={r}, n={n}")
            pairs.append((Type1a(r, s), Type1b(r, s)))
    elif kind == "type3":
        if n < 5:
            raise InputError(f"type3 counterexample needs n >= 5, got {n}")
        pairs = [(Type3(n, 3, n), Type3(n, n - 1, n))]
    elif kind == "type4":
        js = [extra] if extra is not None else list(range(4, n - 1))
        pairs = []
        for j in js:
            if not (3 < j <= n - 1 and j != n - 1) or n < 6:
                raise InputError(f"type4 counterexample needs n >= 6 and 3 < j < n-1, got n={n}, j={j}")
            pairs.append((type4_pair(n, 3), type4_pair(n, j)))
    else:
        raise InputError(f"counterexample kind must be type1, type3 or type4, got {kind!r}")
    certs: list[dict] = []
    for f1, f2 in pairs:
        ok, c, msg = _cospectral_pair(f1, f2)
        certs += c
        if not ok:
            return VerificationReport(claim, Status.REFUTED, certs, detail=msg)
    if not pairs:
        return VerificationReport(claim, Status.SKIPPED, reason=f"no admissible pair on n={n}")
    return VerificationReport(claim, Status.VERIFIED, certs, detail=f"{len(pairs)} pair(s) on n={n}",
                              stats={"n": n, "pairs": len(pairs), "items": len(pairs)})


# ---------------------------------------------------------------------------
# Bulk distinctness of Perron roots
# ---------------------------------------------------------------------------


def _distinct_roots(polys: Sequence[IntPolynomial]) -> tuple[list[AlgebraicRadius], list[tuple[int, int, dict]], int]:
    """Isolate each unique positive root and separate them all.

    Returns the final radii, any certified equal pairs (with certificates) and
    the number of comparisons needed beyond the initial isolation.
    """
    radii = []
    for p in polys:
        iv = isolate_unique_positive_root(p)
        radii.append(AlgebraicRadius(p, iv, float(iv.midpoint)))
    equal: dict[tuple[int, int], dict] = {}
    comparisons = 0
    while True:
        order = sorted(range(len(radii)), key=lambda k: (radii[k].isolating.lo, radii[k].isolating.hi))
        changed = False
        for a, b in zip(order, order[1:]):
            ra, rb = radii[a], radii[b]
            if ra.isolating.strictly_below(rb.isolating):
                continue
            key = (min(a, b), max(a, b))
            if key in equal:
                continue
            cert = certify_comparison(ra, rb)
            comparisons += 1
            if cert.order is Order.EQUAL:
                equal[key] = cert.to_json()
            else:
                radii[a], radii[b] = cert.left, cert.right
                changed = True
        if not changed:
            break
    return radii, [(a, b, c) for (a, b), c in sorted(equal.items())], comparisons


def _roots_cert(kind: str, n: int, params: Sequence, radii: Sequence[AlgebraicRadius]) -> dict:
    order = sorted(range(len(radii)), key=lambda k: radii[k].isolating.lo)
    return {
        "kind": "distinct-roots",
        "family": kind,
        "n": n,
        "roots": [{"params": list(params[k]), **radii[k].isolating.to_json()} for k in order],
    }


def _bulk_poly(kind: str, n: int, params: Sequence[int]) -> IntPolynomial:
    if kind == "theta":
        return theta_polynomial(n, params[0], params[1])
    if kind == "type5":
        return type5_poly(n, params)
    raise InputError(f"unknown bulk family {kind!r}")


def _theta_one(task: tuple[int, bool]) -> dict:
    n, exhaustive = task
    t0 = time.perf_counter()
    pairs = list(iter_theta_pairs(n))
    problems: list[str] = []
    minpolys = {}
    lemma_hits = 0
    for a, b in pairs:
        mp = min_poly_perron(n, a, b, check=True)
        minpolys[(a, b)] = mp
        if a == b:
            continue
        fac = factor_trinomial(n - a, b - a)
        if fac.irreducible:
            continue
        terms = dict(fac.cofactor.terms())
        shaped = len(terms) == 3 and terms.get(0) == -1 and list(terms.values()).count(-1) == 2 \
            and terms.get(fac.cofactor.degree) == 1
        if shaped:
            lemma_hits += 1
            d = fac.d
            k2 = fac.cofactor.degree
            m2 = next(e for e in terms if e not in (0, k2))
            if (fac.k, fac.m, k2, m2) != (5 * d, 4 * d, 3 * d, d):
                problems.append(f"cofactor of f_({fac.k},{fac.m}) is the trinomial f_({k2},{m2}) outside the 5d/4d pattern")
            a2, b2 = n - k2, n - k2 + m2
            if a2 >= 0 and n > b2 >= a2 and n >= a2 + b2 + 2:
                problems.append(f"(a,b)=({a},{b}) collides in shape with admissible ({a2},{b2})")
    by_poly: dict[IntPolynomial, tuple[int, int]] = {}
    for key, mp in minpolys.items():
        if mp in by_poly:
            problems.append(f"equal minimal polynomials for {by_poly[mp]} and {key}: {mp}")
        by_poly[mp] = key
    radii, equal, extra = _distinct_roots([theta_polynomial(n, a, b) for a, b in pairs])
    for i, j, _ in equal:
        problems.append(f"equal Perron roots for (a,b)={pairs[i]} and {pairs[j]}")
    gcd_checks = 0
    if exhaustive:
        mps = [minpolys[p] for p in pairs]
        for (i, p), (j, q) in itertools.combinations(enumerate(mps), 2):
            gcd_checks += 1
            if perron_roots_equal(p, q):
                problems.append(f"perron_roots_equal holds for {pairs[i]} and {pairs[j]}")
    return {
        "n": n,
        "pairs": len(pairs),
        "problems": problems,
        "lemma_pattern_hits": lemma_hits,
        "overlap_comparisons": extra,
        "gcd_checks": gcd_checks,
        "certificate": _roots_cert("theta", n, pairs, radii),
        "collisions": [{"left": list(pairs[i]), "right": list(pairs[j]), "certificate": c} for i, j, c in equal],
        "seconds": time.perf_counter() - t0,
    }


@_timed
def verify_theta_dcs(n_max: int, n_min: int = 3, workers: int = 1, exhaustive_gcd: bool = False,
                     keep_certificates: bool = True) -> VerificationReport:
    """Distinct Perron roots for all admissible θ parameter pairs of each order ``n``.

    Two independent exact checks per ``n``: the minimal polynomials are pairwise
    different, and certified isolating intervals are pairwise disjoint (with a
    gcd equality test wherever refinement alone cannot separate). With
    ``exhaustive_gcd`` every pair is also tested by ``perron_roots_equal``.
    """
    if n_max < 3:
        raise InputError(f"theta-dcs needs n_max >= 3, got {n_max}")
    results = _map(_theta_one, [(n, exhaustive_gcd) for n in range(max(3, n_min), n_max + 1)], workers)
    problems = [f"n={r['n']}: {p}" for r in results for p in r["problems"]]
    certs = [r["certificate"] for r in results] if keep_certificates else []
    certs += [{"kind": "collision", "n": r["n"], **c} for r in results for c in r["collisions"]]
    stats = {
        "n_range": [max(3, n_min), n_max],
        "items": sum(r["pairs"] for r in results),
        "per_n": {str(r["n"]): r["pairs"] for r in results},
        "lemma_pattern_hits": sum(r["lemma_pattern_hits"] for r in results),
        "overlap_comparisons": sum(r["overlap_comparisons"] for r in results),
        "gcd_checks": sum(r["gcd_checks"] for r in results),
    }
    if problems:
        return VerificationReport("theta-dcs", Status.REFUTED, certs, detail="; ".join(problems[:20]), stats=stats)
    return VerificationReport("theta-dcs", Status.VERIFIED, certs,
                              detail=f"{stats['items']} parameter pairs, 0 collisions", stats=stats)


def _type5_one(n: int) -> dict:
    t0 = time.perf_counter()
    triples = type5_triples(n)
    radii, equal, extra = _distinct_roots([type5_poly(n, t) for t in triples]) if triples else ([], [], 0)
    return {
        "n": n,
        "triples": len(triples),
        "overlap_comparisons": extra,
        "certificate": _roots_cert("type5", n, triples, radii),
        "collisions": [{"left": list(triples[i]), "right": list(triples[j]), "certificate": c}
                       for i, j, c in equal],
        "seconds": time.perf_counter() - t0,
    }


FULL_TYPE5_RANGE = (5, 200)
DESK_TYPE5_RANGE = (5, 120)


@_timed
def verify_type5_distinctness(n_lo: int, n_hi: int, workers: int = 1,
                              keep_certificates: bool = True) -> VerificationReport:
    """Pairwise distinct Perron roots of ``x^n - x^(n-r) - x^(n-s) - x^(n-t) - 2`` over all
    ``4 <= r <= s <= t < n`` with ``r + s + t = 2n``."""
    if not 5 <= n_lo <= n_hi:
        raise InputError(f"type5-distinct needs 5 <= n_lo <= n_hi, got ({n_lo}, {n_hi})")
    results = _map(_type5_one, list(range(n_lo, n_hi + 1)), workers)
    collisions = [{"kind": "collision", "n": r["n"], **c} for r in results for c in r["collisions"]]
    certs = [r["certificate"] for r in results] if keep_certificates else []
    certs += collisions
    stats = {
        "n_range": [n_lo, n_hi],
        "items": sum(r["triples"] for r in results),
        "per_n": {str(r["n"]): r["triples"] for r in results},
        "vacuous_n": [r["n"] for r in results if r["triples"] <= 1],
        "overlap_comparisons": sum(r["overlap_comparisons"] for r in results),
    }
    timings = {"seconds_per_n": {str(r["n"]): round(r["seconds"], 4) for r in results}}
    if collisions:
        first = collisions[0]
        return VerificationReport("type5-distinct", Status.REFUTED, certs,
                                  detail=f"COLLISION at n={first['n']}: {first['left']} vs {first['right']}",
                                  stats=stats, timings=timings)
    return VerificationReport("type5-distinct", Status.VERIFIED, certs,
                              detail=f"{stats['items']} triples over n in [{n_lo}, {n_hi}], 0 collisions",
                              stats=stats, timings=timings)


# ---------------------------------------------------------------------------
# Type 5 structure
# ---------------------------------------------------------------------------


def _proper_induced_cycle_sizes(d: Digraph) -> list[int]:
    sizes = []
    for cyc in set(_elementary_cycles(d)):
        if len(cyc) < d.n and arcs_within(d, subset_to_mask(cyc)) == len(cyc):
            sizes.append(len(cyc))
    return sorted(sizes)


@_timed
def verify_type5_isomorphism_lemma(n: int) -> VerificationReport:
    """For all Type 5 members on ``n`` vertices: isomorphic ⟺ cospectral ⟺ equal cycle sizes."""
    if n > 12:
        raise InputError(f"type5-isomorphism is limited to n <= 12 (isomorphism testing), got {n}")
    members = enumerate_members("type5", n) if n >= 6 else []
    claim = "type5-isomorphism"
    builds = [f.build() for f in members]
    polys = [char_poly(d) for d in builds]
    certs: list[dict] = []
    for f, d, p in zip(members, builds, polys):
        sizes = _proper_induced_cycle_sizes(d)
        if tuple(sizes) != f.cycle_sizes or sum(sizes) != 2 * n or p != f.char_poly():
            return VerificationReport(claim, Status.REFUTED, certs,
                                      detail=f"D5({f.i},{f.j}): cycles {sizes}, p = {p}")
    iso_pairs = 0
    for (a, fa), (b, fb) in itertools.combinations(enumerate(members), 2):
        search = search_isomorphism(builds[a], builds[b])
        iso = search.mapping is not None
        cospectral = polys[a] == polys[b]
        same = fa.cycle_sizes == fb.cycle_sizes
        if not iso == cospectral == same:
            return VerificationReport(claim, Status.REFUTED, certs,
                                      detail=f"D5({fa.i},{fa.j}) vs D5({fb.i},{fb.j}): iso={iso}, "
                                             f"cospectral={cospectral}, equal sizes={same}")
        if iso:
            iso_pairs += 1
            cert = _iso_cert(builds[a], builds[b], search.mapping)
            cert.update({"left_label": f"D5({fa.i},{fa.j})", "right_label": f"D5({fb.i},{fb.j})"})
            certs.append(cert)
    stats = {"n": n, "members": len(members), "pairs": len(members) * (len(members) - 1) // 2,
             "isomorphic_pairs": iso_pairs, "items": len(members)}
    return VerificationReport(claim, Status.VERIFIED, certs,
                              detail=f"{len(members)} members, {iso_pairs} isomorphic pairs, all sums 2n",
                              stats=stats)


def _check_triple(n: int, t: Sequence[int]) -> tuple[int, int, int]:
    r, s, u = t
    if not (4 <= r <= s <= u < n and r + s + u == 2 * n):
        raise InputError(f"need 4 <= r <= s <= t < n with r+s+t = 2n, got {tuple(t)} for n={n}")
    return (r, s, u)


def partial_order_pattern(outer: Sequence[int], inner: Sequence[int]) -> str | None:
    """Which hypothesis, if any, places ``inner`` strictly inside ``outer``."""
    r, s, t = outer
    r2, s2, t2 = inner
    if tuple(outer) == tuple(inner):
        return None
    if r <= r2 <= s2 <= t2 <= s <= t:
        return "nested"
    if r <= s <= r2 <= s2 <= t2 <= t:
        return "split"
    return None


@_timed
def verify_type5_partial_order(t1: Sequence[int], t2: Sequence[int], n: int) -> VerificationReport:
    """Order of Type 5 radii under the two nesting hypotheses.

    The certified direction is ρ(inner) < ρ(outer): the triple carrying the
    extreme sizes has the larger Perron root.
    """
    claim = "type5-partial-order"
    a, b = _check_triple(n, t1), _check_triple(n, t2)
    if a == b:
        return VerificationReport(claim, Status.SKIPPED, reason="identical triples")
    ra = perron_root(type5_poly(n, a))
    rb = perron_root(type5_poly(n, b))
    pat_ab, pat_ba = partial_order_pattern(a, b), partial_order_pattern(b, a)
    if pat_ab is None and pat_ba is None:
        order, cert = _comparison_cert(f"{a}", ra, f"{b}", rb)
        cert["informative"] = True
        return VerificationReport(claim, Status.SKIPPED, [cert], reason="hypothesis not matched",
                                  detail=f"direct comparison: rho{a} {order.value} rho{b}")
    outer, inner, pattern = (a, b, pat_ab) if pat_ab else (b, a, pat_ba)
    r_out, r_in = (ra, rb) if outer == a else (rb, ra)
    order, cert = _comparison_cert(f"{inner}", r_in, f"{outer}", r_out)
    status = Status.VERIFIED if order is Order.LESS else Status.REFUTED
    return VerificationReport(claim, status, [cert], detail=f"{pattern}: rho{inner} {order.value} rho{outer}",
                              stats={"pattern": pattern, "items": 1})


@_timed
def verify_type5_partial_order_sweep(n: int, realizable_only: bool = True) -> VerificationReport:
    """Every ordered pair of triples on ``n`` matching a hypothesis, plus the
    equal-``r`` corollary (``r = r'``, ``s < s'``), certified in the proven direction."""
    claim = "type5-partial-order"
    triples = type5_triples(n, realizable_only=realizable_only)
    radii = {t: perron_root(type5_poly(n, t)) for t in triples}
    counts = {"nested": 0, "split": 0, "equal-r": 0}
    certs = []
    for x, y in itertools.permutations(triples, 2):
        pattern = partial_order_pattern(x, y)
        if pattern is None and x[0] == y[0] and x[1] < y[1]:
            pattern = "equal-r"
        if pattern is None:
            continue
        order, cert = _comparison_cert(f"{y}", radii[y], f"{x}", radii[x])
        cert["pattern"] = pattern
        certs.append(cert)
        counts[pattern] += 1
        if order is not Order.LESS:
            return VerificationReport(claim, Status.REFUTED, certs, detail=f"{pattern}: rho{y} {order.value} rho{x}")
    return VerificationReport(claim, Status.VERIFIED, certs,
                              detail=f"n={n}: " + ", ".join(f"{k}={v}" for k, v in counts.items()),
                              stats={"n": n, "triples": len(triples), "items": len(certs), **counts})


# ---------------------------------------------------------------------------
# Trinomials
# ---------------------------------------------------------------------------


@_timed
def verify_trinomial(k_max: int) -> VerificationReport:
    """The factorization criterion for ``x^k - x^m - 1`` on ``1 <= m < k <= k_max``."""
    claim = "trinomial"
    problems = []
    factored = 0
    for k in range(2, k_max + 1):
        for m in range(1, k):
            fac = factor_trinomial(k, m)
            if fac.irreducible == trinomial_is_reducible(k, m):
                problems.append(f"({k},{m}) outcome contradicts the criterion")
                continue
            if fac.irreducible:
                continue
            factored += 1
            d = fac.d
            if h_power(d) * fac.cofactor != trinomial(k, m):
                problems.append(f"h(x^{d}) * cofactor != f_({k},{m})")
            if factor_trinomial(fac.k1, fac.m1).cofactor.compose_power(d) != fac.cofactor:
                problems.append(f"cofactor of ({k},{m}) is not the d-composition of ({fac.k1},{fac.m1})")
            low = [c for e, c in fac.cofactor.terms() if e < 2 * d]
            if sorted(e for e, _ in fac.cofactor.terms() if e < 2 * d) != [0, d] or low != [-1, -1]:
                problems.append(f"cofactor of ({k},{m}) is not -x^{d} - 1 mod x^{2 * d}")
    base = H_POLY * trinomial(3, 1) == trinomial(5, 4) and exact_divide(trinomial(5, 4), H_POLY) == trinomial(3, 1)
    if not base:
        problems.append("f_(5,4) != h * f_(3,1)")
    stats = {"k_max": k_max, "items": k_max * (k_max - 1) // 2, "factored": factored}
    cert = {"kind": "trinomial-table", "k_max": k_max,
            "factored": [[k, m] for k in range(2, k_max + 1) for m in range(1, k) if trinomial_is_reducible(k, m)]}
    if problems:
        return VerificationReport(claim, Status.REFUTED, [cert], detail="; ".join(problems[:20]), stats=stats)
    return VerificationReport(claim, Status.VERIFIED, [cert],
                              detail=f"{stats['items']} trinomials, {factored} factored, f_(5,4) = h * f_(3,1)",
                              stats=stats)


# ---------------------------------------------------------------------------
# Aggregation and the claim registry
# ---------------------------------------------------------------------------


def combine(claim_id: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    """Merge sub-reports in order; any Refuted wins, all-Skipped stays Skipped."""
    reports = list(reports)
    if len(reports) == 1:
        reports[0].claim_id = claim_id
        return reports[0]
    certs = [c for r in reports for c in r.certificates]
    elapsed = sum(r.elapsed for r in reports)
    refuted = [r for r in reports if r.status is Status.REFUTED]
    items = sum(r.stats.get("items", 0) for r in reports)
    stats = {"subreports": len(reports), "items": items,
             "skipped": sum(r.status is Status.SKIPPED for r in reports)}
    if refuted:
        rep = VerificationReport(claim_id, Status.REFUTED, certs, detail=refuted[0].detail, stats=stats)
    elif reports and all(r.status is Status.SKIPPED for r in reports):
        rep = VerificationReport(claim_id, Status.SKIPPED, certs, reason=reports[0].reason, stats=stats)
    else:
        rep = VerificationReport(claim_id, Status.VERIFIED, certs,
                                 detail=f"{len(reports) - stats['skipped']} sub-claims verified", stats=stats)
    rep.elapsed = elapsed
    return rep


@dataclass(frozen=True)
class Claim:
    claim_id: str
    summary: str
    run: Callable[..., VerificationReport]


def _chain_claim(family: str) -> Callable[..., VerificationReport]:
    def run(n: int | None = None, n_min: int = 3, n_max: int = 30, **_) -> VerificationReport:
        ns = [n] if n is not None else range(n_min, n_max + 1)
        return combine(f"chain-{family}", (verify_ordering_chain(family, k) for k in ns))
    return run


def _sandwich(n_max: int = 15, r: int | None = None, s: int | None = None, **_) -> VerificationReport:
    if r is not None and s is not None:
        return verify_remark_sandwich(r, s)
    return combine("remark-sandwich", (verify_remark_sandwich(a, b)
                                       for b in range(2, n_max + 1) for a in range(2, b + 1)))


def _counter(kind: str, lo: int, hi: int) -> Callable[..., VerificationReport]:
    def run(n: int | None = None, n_min: int = lo, n_max: int = hi, extra: int | None = None, **_) -> VerificationReport:
        ns = [n] if n is not None else range(n_min, n_max + 1)
        return combine(f"counterexample-{kind}", (verify_cospectral_counterexamples(kind, k, extra) for k in ns))
    return run


def _type1_counter(n: int | None = None, s_max: int = 8, r: int | None = None, **_) -> VerificationReport:
    if n is not None:
        return verify_cospectral_counterexamples("type1", n, r)
    return combine("counterexample-type1", (verify_cospectral_counterexamples("type1", a + b - 1, a)
                                            for b in range(3, s_max + 1) for a in range(2, b)))


def _theta(n_max: int = 60, n_min: int = 3, workers: int = 1, **_) -> VerificationReport:
    return verify_theta_dcs(n_max, n_min=n_min, workers=workers)


def _type5(n_min: int | None = None, n_max: int | None = None, full: bool = False, workers: int = 1,
           n: int | None = None, **_) -> VerificationReport:
    lo, hi = FULL_TYPE5_RANGE if full else DESK_TYPE5_RANGE
    if n is not None:
        lo = hi = n
    return verify_type5_distinctness(n_min or lo, n_max or hi, workers=workers)


def _type5_iso(n: int | None = None, n_min: int = 6, n_max: int = 12, **_) -> VerificationReport:
    ns = [n] if n is not None else range(n_min, n_max + 1)
    return combine("type5-isomorphism", (verify_type5_isomorphism_lemma(k) for k in ns))


def _type5_order(n: int | None = None, n_min: int = 6, n_max: int = 24, t1=None, t2=None, **_) -> VerificationReport:
    if t1 is not None and t2 is not None:
        return verify_type5_partial_order(t1, t2, n if n is not None else sum(t1) // 2)
    example = verify_type5_partial_order((6, 10, 12), (8, 9, 11), 14)
    ns = [n] if n is not None else range(n_min, n_max + 1)
    sweep = combine("type5-partial-order", (verify_type5_partial_order_sweep(k) for k in ns))
    rep = combine("type5-partial-order", [example, sweep])
    rep.detail = f"{sweep.detail}; example (6,10,12) vs (8,9,11): {example.status.value} ({example.reason}), {example.detail}"
    return rep


def _trinomial(k_max: int = 60, **_) -> VerificationReport:
    return verify_trinomial(k_max)


CLAIMS: dict[str, Claim] = {c.claim_id: c for c in [
    Claim("chain-infinity", "radius chain of infinity digraphs on n vertices", _chain_claim("infinity")),
    Claim("chain-type1a", "radius chain of type 1a digraphs", _chain_claim("type1a")),
    Claim("chain-type1b", "radius chain of type 1b digraphs", _chain_claim("type1b")),
    Claim("chain-type2", "radius chain of type 2 digraphs", _chain_claim("type2")),
    Claim("remark-sandwich", "rho(infinity) < rho(D1) < rho(D2)", _sandwich),
    Claim("counterexample-type1", "cospectral non-isomorphic type 1a/1b pairs", _type1_counter),
    Claim("counterexample-type3", "cospectral non-isomorphic type 3 pairs", _counter("type3", 5, 12)),
    Claim("counterexample-type4", "cospectral non-isomorphic type 4 pairs", _counter("type4", 7, 12)),
    Claim("theta-dcs", "theta digraphs are determined by their complementarity spectrum", _theta),
    Claim("type5-distinct", "pairwise distinct type 5 Perron roots", _type5),
    Claim("type5-isomorphism", "type 5: isomorphic iff cospectral iff equal cycle sizes", _type5_iso),
    Claim("type5-partial-order", "type 5 radius order under nesting hypotheses", _type5_order),
    Claim("trinomial", "factorization of x^k - x^m - 1", _trinomial),
]}


def run_claim(claim_id: str, **kwargs) -> VerificationReport:
    if claim_id not in CLAIMS:
        raise InputError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}")
    t0 = time.perf_counter()
    rep = CLAIMS[claim_id].run(**{k: v for k, v in kwargs.items() if v is not None})
    rep.elapsed = time.perf_counter() - t0
    return rep


def run_all(workers: int = 1, full: bool = False, **overrides) -> list[VerificationReport]:
    out = []
    for cid in CLAIMS:
        kwargs = {"workers": workers}
        if cid == "type5-distinct":
            kwargs["full"] = full
        kwargs.update(overrides.get(cid, {}))
        out.append(run_claim(cid, **kwargs))
    return out


# ---------------------------------------------------------------------------
# Checker mode
# ---------------------------------------------------------------------------


def _check_distinct_roots(cert: dict) -> list[str]:
    problems = []
    prev = None
    for entry in cert["roots"]:
        poly = _bulk_poly(cert["family"], cert["n"], entry["params"])
        iv = AlgebraicRadius.from_json({"poly": poly.to_json(), "lo": entry["lo"], "hi": entry["hi"]}).isolating
        if not check_isolation(poly, iv):
            problems.append(f"n={cert['n']} {entry['params']}: interval does not isolate the root")
        if prev is not None and not prev.strictly_below(iv):
            problems.append(f"n={cert['n']} {entry['params']}: interval not separated from its predecessor")
        prev = iv
    return problems


def _check_noniso(cert: dict) -> list[str]:
    d1, d2 = _digraph_from_json(cert["left"]), _digraph_from_json(cert["right"])
    method = cert["method"]
    if method == "degree":
        ok = sorted(d1.degree_pairs()) != sorted(d2.degree_pairs())
    elif method == "wl":
        c1, c2 = joint_colors(d1, d2)
        ok = sorted(c1) != sorted(c2)
    else:
        ok = search_isomorphism(d1, d2, max_n=None).mapping is None
    return [] if ok else [f"non-isomorphism certificate ({method}) does not hold"]


def check_certificate(cert: dict) -> list[str]:
    kind = cert.get("kind")
    if kind == "comparison":
        return [] if check_comparison(cert) else [f"comparison {cert.get('left_label')} vs {cert.get('right_label')} fails"]
    if kind == "distinct-roots":
        return _check_distinct_roots(cert)
    if kind == "noniso":
        return _check_noniso(cert)
    if kind == "iso":
        d1, d2 = _digraph_from_json(cert["left"]), _digraph_from_json(cert["right"])
        return [] if is_isomorphism(d1, d2, [v - 1 for v in cert["mapping"]]) else ["isomorphism map is invalid"]
    if kind == "polys-equal":
        poly = IntPolynomial.from_json(cert["poly"])
        ok = char_poly(_digraph_from_json(cert["left"])) == poly == char_poly(_digraph_from_json(cert["right"]))
        return [] if ok else ["characteristic polynomials differ"]
    if kind == "spectra-equal":
        spec = ComplementaritySpectrum.from_json(cert["spectrum"])
        bad = [e for e in spec.elements if not check_isolation(e.radius.defining_poly, e.radius.isolating)]
        return [f"{len(bad)} spectrum intervals do not isolate"] if bad else []
    if kind == "trinomial-table":
        listed = {tuple(x) for x in cert["factored"]}
        bad = [km for km in listed if factor_trinomial(*km).irreducible]
        return [f"not reducible: {bad[:5]}"] if bad else []
    if kind == "collision":
        c = cert["certificate"]
        return [] if check_comparison(c) else ["collision certificate fails"]
    return [f"unknown certificate kind {kind!r}"]


def check_report(data: dict) -> list[str]:
    """Re-validate a serialized report; returns the list of problems (empty when sound)."""
    problems = []
    for cert in data.get("certificates", []):
        if cert.get("informative"):
            continue
        problems += check_certificate(cert)
    return problems
