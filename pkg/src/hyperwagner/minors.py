"""Deletion, contraction, and minor containment for uniform complexes.

Minor containment is decided by a branch-set search: each target vertex is
mapped to a nonempty, connected, pairwise-disjoint set of host vertices, and
each target facet to a host facet meeting the branch sets of its vertices
exactly once each. A small exhaustive oracle over operation sequences
(brute_force_minor) cross-checks the branch-set model on small inputs.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .complexes import (
    FaceKey,
    UniformComplex,
    canonical_key,
    face_key,
    support_key,
)
from .errors import (
    BadParameters,
    NotAFace,
    NotAFacet,
    TooLargeForOracle,
    UniformityMismatch,
)

FOUND = "found"
NOT_FOUND = "not-found"
BUDGET_EXHAUSTED = "budget-exhausted"


def delete_facet(c: UniformComplex, e: Iterable[int]) -> UniformComplex:
    """Remove one facet; every vertex stays in the vertex table."""
    key = face_key(e)
    if not c.has_facet(key):
        raise NotAFacet(f"{key} is not a facet")
    return UniformComplex(c.d, c.n, [f for f in c.facets if f != key], c.names)


def delete_face(c: UniformComplex, v: Iterable[int]) -> UniformComplex:
    """Remove every facet containing the given proper face.

    Vertices are retained, so deleting the last faces at a vertex leaves it
    isolated rather than gone.
    """
    key = face_key(v)
    if not key or len(key) >= c.d or not c.is_face(key):
        raise NotAFace(f"{key} is not a proper face")
    need = set(key)
    kept = [f for f in c.facets if not need.issubset(f)]
    return UniformComplex(c.d, c.n, kept, c.names)


def contract(c: UniformComplex, a: Iterable[int]) -> UniformComplex:
    """Identify all vertices of a face to one new vertex (appended last).

    Facet images with fewer than d distinct vertices are discarded and
    duplicate images are merged, so the result is again simple.
    """
    key = face_key(a)
    if len(key) < 2 or len(key) > c.d or not c.is_face(key):
        raise NotAFace(f"{key} is not a face of dimension >= 1")
    dropped = set(key)
    kept = [v for v in range(c.n) if v not in dropped]
    remap = {v: i for i, v in enumerate(kept)}
    merged = len(kept)
    for v in dropped:
        remap[v] = merged
    images = set()
    for f in c.facets:
        img = frozenset(remap[v] for v in f)
        if len(img) == c.d:
            images.add(tuple(sorted(img)))
    names = None
    if c.names is not None:
        names = [c.names[v] for v in kept]
        names.append("+".join(c.names[v] for v in key))
    return UniformComplex(c.d, merged + 1, sorted(images), names)


def merge_multiples(d: int, n: int, facets: Iterable[Sequence[int]],
                    names: Optional[Sequence[str]] = None) -> UniformComplex:
    """Build a complex from a raw facet multiset, collapsing duplicates."""
    keys = []
    seen = set()
    for f in facets:
        k = face_key(f)
        if k not in seen:
            seen.add(k)
            keys.append(k)
    return UniformComplex(d, n, keys, names)


@dataclass(frozen=True)
class MinorWitness:
    """Branch sets indexed by target vertex, plus a facet assignment.

    facet_assignment pairs each target facet with the host facet realizing
    it; pairs are sorted by target facet.
    """
    branch_sets: tuple[tuple[int, ...], ...]
    facet_assignment: tuple[tuple[FaceKey, FaceKey], ...]


@dataclass(frozen=True)
class SearchBudget:
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit <= 0:
            raise BadParameters(f"node_limit={self.node_limit}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise BadParameters(f"time_limit={self.time_limit}")


@dataclass(frozen=True)
class MinorOutcome:
    status: str
    witness: Optional[MinorWitness]
    nodes: int
    reason: str = ""


def witness_problems(g: UniformComplex, h: UniformComplex,
                     w: MinorWitness) -> list[str]:
    """Every violated witness invariant, as human-readable strings."""
    problems: list[str] = []
    if g.d != h.d:
        return [f"uniformity mismatch: host d={g.d}, target d={h.d}"]
    if len(w.branch_sets) != h.n:
        return [f"expected {h.n} branch sets, got {len(w.branch_sets)}"]
    owner: dict[int, int] = {}
    for u, bs in enumerate(w.branch_sets):
        if not bs:
            problems.append(f"branch set of target vertex {u} is empty")
        for v in bs:
            if not 0 <= v < g.n:
                problems.append(f"branch vertex {v} outside host range")
            elif v in owner:
                problems.append(
                    f"host vertex {v} lies in branch sets {owner[v]} and {u}")
            else:
                owner[v] = u
    adj: dict[int, set[int]] = {}
    for a, b in g.faces(1):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for u, bs in enumerate(w.branch_sets):
        members = {v for v in bs if 0 <= v < g.n}
        if not members:
            continue
        reached = {min(members)}
        frontier = [min(members)]
        while frontier:
            x = frontier.pop()
            for y in adj.get(x, ()):
                if y in members and y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if reached != members:
            problems.append(f"branch set of target vertex {u} is not connected")
    assigned_targets = [face_key(hf) for hf, _ in w.facet_assignment]
    if sorted(assigned_targets) != list(h.facets):
        problems.append("facet assignment does not cover the target facets "
                        "exactly once each")
    for hf, gf in w.facet_assignment:
        hkey, gkey = face_key(hf), face_key(gf)
        if not g.has_facet(gkey):
            problems.append(f"assigned {gkey} is not a host facet")
            continue
        if not h.has_facet(hkey):
            continue
        hit = {u: 0 for u in hkey}
        stray = []
        for v in gkey:
            u = owner.get(v)
            if u in hit:
                hit[u] += 1
            else:
                stray.append(v)
        if stray or any(count != 1 for count in hit.values()):
            problems.append(
                f"host facet {gkey} does not meet the branch sets of {hkey} "
                "exactly once each")
    return problems


def verify_witness(g: UniformComplex, h: UniformComplex,
                   w: MinorWitness) -> bool:
    return not witness_problems(g, h, w)


class _OutOfBudget(Exception):
    pass


class _Tracker:
    __slots__ = ("node_limit", "deadline", "nodes")

    def __init__(self, budget: Optional[SearchBudget]):
        self.node_limit = budget.node_limit if budget else None
        self.deadline = None
        if budget and budget.time_limit is not None:
            self.deadline = time.monotonic() + budget.time_limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _OutOfBudget("node limit reached")
        if (self.deadline is not None and self.nodes % 256 == 0
                and time.monotonic() > self.deadline):
            raise _OutOfBudget("time limit reached")


def _grow(seed: int, allowed: int, adj: Sequence[int],
          max_size: int) -> Iterator[tuple[int, int]]:
    """Connected subsets of `allowed` whose minimum element is `seed`.

    Yields (subset, outside neighbourhood) pairs. Duplicate-free: once a
    candidate vertex has been branched on, it is banned for the remaining
    siblings, so every subset appears through exactly one addition order.
    """
    def rec(bset: int, nbr: int, banned: int, size: int) -> Iterator[tuple[int, int]]:
        yield bset, nbr
        if size == max_size:
            return
        cand = nbr & allowed & ~banned
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            child = bset | low
            yield from rec(child, (nbr | adj[v]) & ~child, banned, size + 1)
            banned |= low

    seed_bit = 1 << seed
    if allowed & seed_bit:
        yield from rec(seed_bit, adj[seed] & ~seed_bit, 0, 1)


def _symmetry_classes(h: UniformComplex) -> list[list[int]]:
    """Greedy partition of support vertices into swap-interchangeable cliques.

    Two vertices land in one class only if every transposition within the
    class fixes the facet set, so any permutation of a class extends to an
    automorphism and branch-set order within a class can be pinned.
    """
    facs = set(h.facets)

    def swappable(u: int, v: int) -> bool:
        for f in h.facets:
            swapped = tuple(sorted(v if x == u else u if x == v else x
                                   for x in f))
            if swapped not in facs:
                return False
        return True

    classes: list[list[int]] = []
    for u in h.support_vertices:
        for cls in classes:
            if all(swappable(u, w) for w in cls):
                cls.append(u)
                break
        else:
            classes.append([u])
    return classes


def _search_support(g: UniformComplex, h: UniformComplex,
                    tracker: _Tracker) -> Optional[
                        tuple[dict[int, int], list[tuple[FaceKey, FaceKey]],
                              list[int]]]:
    """Branch sets for the support vertices of h inside the support of g.

    Returns (branch masks keyed by target vertex, facet assignment, support
    vertex list of g for decoding), or None. Masks index into g's support
    vertex list, not raw ids.
    """
    gsup = list(g.support_vertices)
    m = len(gsup)
    gi = {v: i for i, v in enumerate(gsup)}
    adj = [0] * m
    for a, b in g.faces(1):
        adj[gi[a]] |= 1 << gi[b]
        adj[gi[b]] |= 1 << gi[a]
    gfacets = [(sum(1 << gi[v] for v in f), f) for f in g.facets]
    full_mask = (1 << m) - 1

    hsup = list(h.support_vertices)
    if not hsup:
        return {}, [], gsup
    hdeg = {u: 0 for u in hsup}
    for a, b in h.faces(1):
        hdeg[a] += 1
        hdeg[b] += 1
    hinc = {u: 0 for u in hsup}
    partner_sets: dict[int, set[int]] = {u: set() for u in hsup}
    for f in h.facets:
        for u in f:
            hinc[u] += 1
            partner_sets[u].update(w for w in f if w != u)
    order = sorted(hsup, key=lambda u: (-hdeg[u], -hinc[u], u))
    pos = {u: k for k, u in enumerate(order)}
    earlier_classmates = {u: [] for u in hsup}
    for cls in _symmetry_classes(h):
        for u in cls:
            earlier_classmates[u] = [w for w in cls if pos[w] < pos[u]]

    hfacets = list(h.facets)
    facets_of = {u: [i for i, f in enumerate(hfacets) if u in f] for u in hsup}
    isolated_h = h.n - len(hsup)
    spare_g = g.n - m

    branch = {u: 0 for u in hsup}
    placed_count = [0] * len(hfacets)

    def popcount(x: int) -> int:
        return x.bit_count()

    # Partner structure of h over placement positions: bit j stands for
    # order[j]; partners share at least one facet. After t placements the
    # positions >= t are exactly the unplaced support vertices.
    partner_pos = [0] * len(order)
    for u in hsup:
        for w in partner_sets[u]:
            partner_pos[pos[u]] |= 1 << pos[w]

    # Unplaced positions split into partner-connected pieces; each piece's
    # branch sets must end up inside one connected region of free vertices
    # (consecutive branch sets of a piece touch through shared host facets,
    # whose vertices are pairwise skeleton-adjacent).
    pieces_at: list[list[tuple[int, list[tuple[int, int]]]]] = []
    for t in range(len(order) + 1):
        seen_pos: set[int] = set()
        pieces = []
        for p in range(t, len(order)):
            if p in seen_pos:
                continue
            seen_pos.add(p)
            stack = [p]
            piece = 0
            while stack:
                q = stack.pop()
                piece |= 1 << q
                rest = partner_pos[q]
                while rest:
                    low = rest & -rest
                    rest ^= low
                    r = low.bit_length() - 1
                    if r >= t and r not in seen_pos:
                        seen_pos.add(r)
                        stack.append(r)
            partners = []
            for j in range(t):
                need = popcount(partner_pos[j] & piece)
                if need:
                    partners.append((j, need))
            pieces.append((popcount(piece), partners))
        pieces_at.append(pieces)

    need_tab = [[popcount(partner_pos[j] >> t) for t in range(len(order) + 1)]
                for j in range(len(order))]
    d2_placed_partners = [[w for w in partner_sets[u] if pos[w] < k]
                          for k, u in enumerate(order)]
    nbr_by_pos = [0] * len(order)
    two_uniform = g.d == 2

    def facet_realizable(idx: int) -> bool:
        members = hfacets[idx]
        union = 0
        for u in members:
            union |= branch[u]
        for tmask, _ in gfacets:
            if tmask & ~union:
                continue
            if all(popcount(tmask & branch[u]) == 1 for u in members):
                return True
        return False

    def facet_lookahead(idx: int, placed_mask: int) -> bool:
        placed_members = [u for u in hfacets[idx] if branch[u]]
        union = 0
        for u in placed_members:
            union |= branch[u]
        blocked = placed_mask & ~union
        for tmask, _ in gfacets:
            if tmask & blocked:
                continue
            if all(popcount(tmask & branch[u]) == 1 for u in placed_members):
                return True
        return False

    def choose_assignment() -> list[tuple[FaceKey, FaceKey]]:
        out = []
        for idx, members in enumerate(hfacets):
            union = 0
            for u in members:
                union |= branch[u]
            chosen = None
            for tmask, fkey in gfacets:
                if tmask & ~union:
                    continue
                if all(popcount(tmask & branch[u]) == 1 for u in members):
                    chosen = fkey
                    break
            assert chosen is not None
            out.append((members, chosen))
        return out

    def place(k: int, placed_mask: int) -> Optional[list[tuple[FaceKey, FaceKey]]]:
        if k == len(order):
            return choose_assignment()
        u = order[k]
        bound = -1
        for w in earlier_classmates[u]:
            if branch[w]:
                low = (branch[w] & -branch[w]).bit_length() - 1
                bound = max(bound, low)
        free = full_mask & ~placed_mask
        after = len(order) - k - 1
        max_size = min(popcount(free) - after,
                       popcount(free) + spare_g - after - isolated_h)
        if max_size <= 0:
            return None
        t = k + 1
        pieces = pieces_at[t]
        needs = need_tab
        placed_partners = d2_placed_partners[k]
        seeds = free
        while seeds:
            low = seeds & -seeds
            seeds ^= low
            seed = low.bit_length() - 1
            if seed <= bound:
                continue
            allowed = free & ~(low - 1)
            for bset, nb in _grow(seed, allowed, adj, max_size):
                tracker.tick()
                branch[u] = bset
                nbr_by_pos[k] = nb
                new_mask = placed_mask | bset
                new_free = full_mask & ~new_mask
                ok = True
                if two_uniform:
                    # an edge between two placed sets needs direct skeleton
                    # contact; partial edges are covered by the counting
                    # prune below
                    for w in placed_partners:
                        if not nb & branch[w]:
                            ok = False
                            break
                else:
                    for idx in facets_of[u]:
                        placed_count[idx] += 1
                    for idx, members in enumerate(hfacets):
                        count = placed_count[idx]
                        if count == 0:
                            continue
                        if count == len(members):
                            if idx in facets_of[u] and not facet_realizable(idx):
                                ok = False
                                break
                        elif not facet_lookahead(idx, new_mask):
                            ok = False
                            break
                if ok:
                    # disjoint future branch sets contact a placed set in
                    # distinct vertices, one per unplaced partner
                    for j in range(t):
                        need = needs[j][t]
                        if need and popcount(nbr_by_pos[j] & new_free) < need:
                            ok = False
                            break
                if ok and pieces:
                    comps = []
                    rest = new_free
                    while rest:
                        comp = rest & -rest
                        frontier = comp
                        while frontier:
                            grown = 0
                            while frontier:
                                lowb = frontier & -frontier
                                frontier ^= lowb
                                grown |= adj[lowb.bit_length() - 1]
                            frontier = grown & new_free & ~comp
                            comp |= frontier
                        comps.append(comp)
                        rest &= ~comp
                    for size, partners in pieces:
                        for comp in comps:
                            if popcount(comp) >= size and all(
                                    popcount(nbr_by_pos[j] & comp) >= need
                                    for j, need in partners):
                                break
                        else:
                            ok = False
                            break
                if ok:
                    result = place(k + 1, new_mask)
                    if result is not None:
                        return result
                branch[u] = 0
                if not two_uniform:
                    for idx in facets_of[u]:
                        placed_count[idx] -= 1
        return None

    assignment = place(0, 0)
    if assignment is None:
        return None
    return dict(branch), assignment, gsup


def _assemble_witness(g: UniformComplex, h: UniformComplex,
                      branch_masks: dict[int, int],
                      assignment: list[tuple[FaceKey, FaceKey]],
                      gsup: list[int]) -> MinorWitness:
    sets: dict[int, tuple[int, ...]] = {}
    used: set[int] = set()
    for u, mask in branch_masks.items():
        members = tuple(gsup[i] for i in range(mask.bit_length())
                        if mask >> i & 1)
        sets[u] = members
        used.update(members)
    spare = (v for v in range(g.n) if v not in used)
    for u in range(h.n):
        if u not in sets:
            sets[u] = (next(spare),)
    return MinorWitness(tuple(sets[u] for u in range(h.n)),
                        tuple(assignment))


def _counting_bound(g: UniformComplex, h: UniformComplex) -> bool:
    """True when counts alone rule out an h-minor in g."""
    if h.n > g.n or len(h.support_vertices) > len(g.support_vertices):
        return True
    if len(h.facets) > len(g.facets):
        return True
    for i in range(1, h.d):
        if len(h.faces(i)) > len(g.faces(i)):
            return True
    return False


def has_minor(g: UniformComplex, h: UniformComplex,
              budget: Optional[SearchBudget] = None,
              reduce_first: bool = False) -> MinorOutcome:
    """Decide whether h is a minor of g, with a verifying witness on Found.

    Deterministic for a fixed input; a node or time budget turns an
    unfinished search into BUDGET_EXHAUSTED rather than an answer. With
    reduce_first (sound only when every target vertex has skeleton degree
    at least 3, checked here), degree-reducible host vertices at d=2 are
    eliminated before the search and the witness is lifted back.
    """
    if g.d != h.d:
        raise UniformityMismatch(f"host d={g.d}, target d={h.d}")
    if g.d < 2:
        raise BadParameters("minor search needs uniformity >= 2")
    if _counting_bound(g, h):
        return MinorOutcome(NOT_FOUND, None, 0, "counting bound")
    tracker = _Tracker(budget)
    if reduce_first and g.d == 2 and _reduction_safe(h):
        return _has_minor_reduced(g, h, tracker)
    try:
        found = _search_support(g, h, tracker)
    except _OutOfBudget as stop:
        return MinorOutcome(BUDGET_EXHAUSTED, None, tracker.nodes, str(stop))
    if found is None:
        return MinorOutcome(NOT_FOUND, None, tracker.nodes)
    witness = _assemble_witness(g, h, found[0], found[1], found[2])
    assert verify_witness(g, h, witness)
    return MinorOutcome(FOUND, witness, tracker.nodes)


def _reduction_safe(h: UniformComplex) -> bool:
    if h.isolated_vertices:
        return False
    deg = {u: 0 for u in h.support_vertices}
    for a, b in h.faces(1):
        deg[a] += 1
        deg[b] += 1
    return bool(deg) and min(deg.values()) >= 3


def _has_minor_reduced(g: UniformComplex, h: UniformComplex,
                       tracker: _Tracker) -> MinorOutcome:
    active = set(range(g.n))
    orig: dict[int, set[int]] = {v: {v} for v in active}
    nbrs: dict[int, set[int]] = {v: set() for v in active}
    rep: dict[frozenset[int], FaceKey] = {}
    for a, b in g.facets:
        nbrs[a].add(b)
        nbrs[b].add(a)
        rep[frozenset((a, b))] = (a, b)

    def drop_edge(x: int, y: int) -> None:
        nbrs[x].discard(y)
        nbrs[y].discard(x)
        del rep[frozenset((x, y))]

    changed = True
    while changed:
        changed = False
        for v in sorted(active):
            degree = len(nbrs[v])
            if degree == 0:
                active.remove(v)
            elif degree == 1:
                drop_edge(v, next(iter(nbrs[v])))
                active.remove(v)
            elif degree == 2:
                a, b = sorted(nbrs[v])
                via_b = rep[frozenset((v, b))]
                drop_edge(v, a)
                drop_edge(v, b)
                orig[a] |= orig[v]
                if b not in nbrs[a]:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
                    rep[frozenset((a, b))] = via_b
                active.remove(v)
            else:
                continue
            del orig[v], nbrs[v]
            changed = True
            break

    verts = sorted(active)
    back = {v: i for i, v in enumerate(verts)}
    reduced_facets = sorted(tuple(sorted((back[a], back[b])))
                            for a, b in (tuple(e) for e in rep))
    reduced = UniformComplex(2, len(verts), reduced_facets)
    if _counting_bound(reduced, h):
        return MinorOutcome(NOT_FOUND, None, tracker.nodes, "counting bound")
    try:
        found = _search_support(reduced, h, tracker)
    except _OutOfBudget as stop:
        return MinorOutcome(BUDGET_EXHAUSTED, None, tracker.nodes, str(stop))
    if found is None:
        return MinorOutcome(NOT_FOUND, None, tracker.nodes)
    branch_masks, assignment, gsup = found
    lifted_sets: dict[int, tuple[int, ...]] = {}
    for u, mask in branch_masks.items():
        members: set[int] = set()
        for i in range(mask.bit_length()):
            if mask >> i & 1:
                members |= orig[verts[gsup[i]]]
        lifted_sets[u] = tuple(sorted(members))
    lifted_assignment = []
    for hf, gf in assignment:
        a, b = verts[gf[0]], verts[gf[1]]
        lifted_assignment.append((hf, rep[frozenset((a, b))]))
    witness = MinorWitness(tuple(lifted_sets[u] for u in range(h.n)),
                           tuple(lifted_assignment))
    assert verify_witness(g, h, witness)
    return MinorOutcome(FOUND, witness, tracker.nodes)


def brute_force_minor(g: UniformComplex, h: UniformComplex) -> bool:
    """Exhaustive oracle over facet-deletion and face-contraction sequences.

    Accepts a state whose facet structure matches h up to isomorphism
    provided enough vertices remain to carry h's isolated ones; leftover
    isolated vertices beyond that are immaterial. delete_face is omitted
    from the move set because it equals a sequence of facet deletions.
    """
    if g.d != h.d:
        raise UniformityMismatch(f"host d={g.d}, target d={h.d}")
    if g.n > 9 and len(g.facets) > 14:
        raise TooLargeForOracle(
            f"n={g.n}, facets={len(g.facets)}: oracle guard is n <= 9 or "
            "facets <= 14")
    target = support_key(h)
    t_support = len(h.support_vertices)
    t_facets = len(h.facets)
    seen: set[tuple] = set()

    def rec(c: UniformComplex) -> bool:
        if support_key(c) == target and c.n >= h.n:
            return True
        if (len(c.facets) < t_facets or c.n < h.n
                or len(c.support_vertices) < t_support):
            return False
        key = canonical_key(c)
        if key in seen:
            return False
        seen.add(key)
        for e in c.facets:
            if rec(delete_facet(c, e)):
                return True
        for i in range(1, c.d):
            for a in c.faces(i):
                if rec(contract(c, a)):
                    return True
        return False

    return rec(g)
