"""Integer simplicial homology and topological certificates.

All linear algebra is exact over the integers: boundary matrices are built
with the alternating-sign convention and reduced by a fraction-free Smith
normal form with minimum-absolute-value pivoting. Python ints keep
intermediate entries exact at any size.

The fundamental group helper is a heuristic by design: it answers
"nontrivial" only from the abelianization, "trivial" only when a greedy
Tietze simplification empties the presentation within a move budget, and
"unknown" otherwise. Certificates that would need more than that say so.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .complexes import FaceKey, UniformComplex, strip_isolated
from .errors import BadParameters, Disconnected, UniformityMismatch


@dataclass(frozen=True)
class BoundaryMatrix:
    """The map from i-chains to (i-1)-chains, rows indexed by (i-1)-faces."""
    dim: int
    rows: tuple[FaceKey, ...]
    cols: tuple[FaceKey, ...]
    entries: tuple[tuple[int, ...], ...]


def boundary_matrices(c: UniformComplex) -> list[BoundaryMatrix]:
    """Boundary maps for dimensions 1..d-1, composite verified to vanish."""
    mats: list[BoundaryMatrix] = []
    for i in range(1, c.d):
        rows = c.faces(i - 1)
        cols = c.faces(i)
        row_index = {f: r for r, f in enumerate(rows)}
        entries = [[0] * len(cols) for _ in rows]
        for j, col in enumerate(cols):
            for k in range(len(col)):
                sub = col[:k] + col[k + 1:]
                entries[row_index[sub]][j] = -1 if k % 2 else 1
        mats.append(BoundaryMatrix(i, rows, cols,
                                   tuple(tuple(r) for r in entries)))
    for low, high in zip(mats, mats[1:]):
        _assert_composite_zero(low, high)
    return mats


def _assert_composite_zero(low: BoundaryMatrix, high: BoundaryMatrix) -> None:
    for j, col in enumerate(high.cols):
        acc = {}
        for r, face in enumerate(high.rows):
            coef = high.entries[r][j]
            if coef:
                for rr in range(len(low.rows)):
                    inner = low.entries[rr][r]
                    if inner:
                        acc[rr] = acc.get(rr, 0) + coef * inner
        if any(acc.values()):
            raise AssertionError(f"boundary composite nonzero on {col}")


def smith_normal_form(entries: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Invariant factors (d1 | d2 | ...) and rank of an integer matrix."""
    a = [list(map(int, row)) for row in entries]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    for row in a:
        if len(row) != ncols:
            raise BadParameters("ragged matrix")
    factors: list[int] = []
    top = 0
    while top < nrows and top < ncols:
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = a[i][j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        if a[top][top] < 0:
            a[top] = [-x for x in a[top]]
        p = a[top][top]
        dirty = False
        for i in range(top + 1, nrows):
            v = a[i][top]
            if v:
                q = v // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                if a[i][top]:
                    dirty = True
        for j in range(top + 1, ncols):
            v = a[top][j]
            if v:
                q = v // p
                if q:
                    for i in range(top, nrows):
                        a[i][j] -= q * a[i][top]
                if a[top][j]:
                    dirty = True
        if dirty:
            continue  # a smaller remainder appeared; re-pick the pivot
        fix = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if a[i][j] % p:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            a[top] = [x + y for x, y in zip(a[top], a[fix])]
            continue
        factors.append(p)
        top += 1
    return tuple(factors), len(factors)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers and torsion, one slot per dimension 0..d-1."""
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    f_vector: tuple[int, ...]
    euler: int

    def trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion)


def homology(c: UniformComplex) -> HomologyProfile:
    """Reduced integer homology of the facet-supported part of c."""
    dims = c.d
    f = [len(c.faces(i)) for i in range(dims)]
    mats = boundary_matrices(c)
    rank = [0] * (dims + 1)
    torsion_src: list[tuple[int, ...]] = [()] * (dims + 1)
    rank[0] = 1 if f[0] else 0  # augmentation map onto Z
    for mat in mats:
        factors, r = smith_normal_form(mat.entries)
        rank[mat.dim] = r
        torsion_src[mat.dim] = tuple(x for x in factors if x > 1)
    betti = tuple(f[i] - rank[i] - rank[i + 1] for i in range(dims))
    torsion = tuple(torsion_src[i + 1] for i in range(dims))
    euler = sum((-1) ** i * f[i] for i in range(dims))
    return HomologyProfile(betti, torsion, tuple(f), euler)


# fundamental group ----------------------------------------------------


def _spanning_tree(vertices: Sequence[int], adj: dict[int, list[int]]) -> set[FaceKey]:
    root = vertices[0]
    seen = {root}
    tree: set[FaceKey] = set()
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    tree.add((min(u, v), max(u, v)))
                    nxt.append(v)
        frontier = sorted(nxt)
    if len(seen) != len(vertices):
        raise Disconnected("complex is not connected")
    return tree


def _normalize(word: list[int]) -> list[int]:
    out: list[int] = []
    for sym in word:
        if out and out[-1] == -sym:
            out.pop()
        else:
            out.append(sym)
    while len(out) >= 2 and out[0] == -out[-1]:
        out.pop()
        out.pop(0)
    return out


def fundamental_group_status(c: UniformComplex, move_budget: int = 10000) -> str:
    """One of "trivial", "nontrivial", "unknown".

    Nontrivial is certified through the abelianization (H1 != 0). Trivial is
    certified when greedy Tietze moves kill every generator of the edge-path
    presentation within the budget. Anything else is unknown.
    """
    if not c.facets:
        raise Disconnected("empty complex")
    if len(support_components(c)) != 1 or c.isolated_vertices:
        raise Disconnected("complex is not connected")
    prof = homology(c)
    if len(prof.betti) > 1 and prof.betti[1]:
        return "nontrivial"
    if len(prof.torsion) > 1 and prof.torsion[1]:
        return "nontrivial"
    support = c.support_vertices
    edges = c.faces(1) if c.d >= 2 else ()
    adj: dict[int, list[int]] = {v: [] for v in support}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    tree = _spanning_tree(support, adj)
    gen_index: dict[FaceKey, int] = {}
    for e in edges:
        if e not in tree:
            gen_index[e] = len(gen_index) + 1
    if not gen_index:
        return "trivial"

    def symbol(u: int, v: int) -> Optional[int]:
        e = (min(u, v), max(u, v))
        g = gen_index.get(e)
        if g is None:
            return None
        return g if u < v else -g

    relators: list[list[int]] = []
    triangles = c.faces(2) if c.d >= 3 else ()
    for a, b, cc in triangles:
        word = [s for s in (symbol(a, b), symbol(b, cc), symbol(cc, a)) if s is not None]
        word = _normalize(word)
        if word:
            relators.append(word)

    alive = set(gen_index.values())
    moves = 0
    while alive and moves < move_budget:
        relators = [w for w in (_normalize(w) for w in relators) if w]
        step = None
        for w in relators:
            if len(w) == 1:
                step = ("kill", abs(w[0]), None)
                break
        if step is None:
            for w in relators:
                if len(w) == 2 and abs(w[0]) != abs(w[1]):
                    # w reads x * y = 1, so y = x^-1
                    step = ("subst", abs(w[1]), [-w[0]] if w[1] > 0 else [w[0]])
                    break
        if step is None:
            counts: dict[int, int] = {}
            for w in relators:
                for sym in w:
                    counts[abs(sym)] = counts.get(abs(sym), 0) + 1
            lone = sorted(g for g, k in counts.items() if k == 1)
            if lone:
                g = lone[0]
                relators = [w for w in relators if all(abs(s) != g for s in w)]
                alive.discard(g)
                moves += 1
                continue
            break
        kind, g, repl = step
        if kind == "kill":
            relators = [[s for s in w if abs(s) != g] for w in relators]
        else:
            rewritten = []
            for w in relators:
                out: list[int] = []
                for s in w:
                    if abs(s) != g:
                        out.append(s)
                    else:
                        out.extend(repl if s > 0 else [-x for x in reversed(repl)])
                rewritten.append(out)
            relators = rewritten
        alive.discard(g)
        moves += 1
    return "trivial" if not alive else "unknown"


# shape check ----------------------------------------------------------


@dataclass(frozen=True)
class ShapeReport:
    """Connectivity and vanishing-homology conditions for ambient dimension d."""
    d: int
    connected: bool
    isolated: tuple[int, ...]
    window: tuple[tuple[int, int, tuple[int, ...]], ...]  # (dim, betti, torsion)
    pi1: Optional[str]
    failures: tuple[str, ...]
    verdict: str  # PASS | PASS-MODULO-PI1-UNKNOWN | FAIL


def support_components(c: UniformComplex) -> list[tuple[int, ...]]:
    """Connected components of the facet-supported 1-skeleton."""
    adj: dict[int, set[int]] = {v: set() for v in c.support_vertices}
    for fac in c.facets:
        for u, v in itertools.combinations(fac, 2):
            adj[u].add(v)
            adj[v].add(u)
    comps = []
    seen: set[int] = set()
    for v in c.support_vertices:
        if v in seen:
            continue
        comp = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def rd_shape_check(c: UniformComplex) -> ShapeReport:
    """Necessary local-flatness conditions for living inside R^d.

    Requires connectivity and vanishing reduced homology in dimensions
    1..d-2; for d >= 3 the fundamental group must be trivial, with honest
    degradation to PASS-MODULO-PI1-UNKNOWN when the heuristic cannot tell.
    """
    failures: list[str] = []
    isolated = c.isolated_vertices
    comps = support_components(c)
    connected = len(comps) == 1 and not isolated
    if not c.facets:
        failures.append("no facets")
    elif not connected:
        failures.append("disconnected")
    prof = homology(c) if c.facets else None
    window = []
    homology_ok = True
    for i in range(1, c.d - 1):
        b = prof.betti[i] if prof else 0
        t = prof.torsion[i] if prof else ()
        window.append((i, b, t))
        if b or t:
            homology_ok = False
    if not homology_ok:
        failures.append("homology nonzero in window")
    pi1: Optional[str] = None
    if c.d >= 3 and connected and c.facets:
        pi1 = fundamental_group_status(c)
        if pi1 == "nontrivial":
            failures.append("fundamental group nontrivial")
    if failures:
        verdict = "FAIL"
    elif c.d >= 3 and pi1 == "unknown":
        verdict = "PASS-MODULO-PI1-UNKNOWN"
    else:
        verdict = "PASS"
    return ShapeReport(c.d, connected, isolated, tuple(window), pi1,
                       tuple(failures), verdict)


# manifold certificates ------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    ok: Optional[bool]  # None means could not be decided
    detail: str = ""


@dataclass(frozen=True)
class ManifoldCertificate:
    kind: str  # "sphere" or "ball"
    k: int
    status: str  # certified | refuted | unknown
    evidence: tuple[Check, ...] = field(default_factory=tuple)

    def check(self, name: str) -> Optional[Check]:
        for ev in self.evidence:
            if ev.name == name:
                return ev
        return None


def _face_facet_counts(c: UniformComplex, dim: int) -> dict[FaceKey, int]:
    counts: dict[FaceKey, int] = {}
    for fac in c.facets:
        for sub in itertools.combinations(fac, dim + 1):
            counts[sub] = counts.get(sub, 0) + 1
    return counts


def _dual_connected(c: UniformComplex, shared_dim: int) -> bool:
    if not c.facets:
        return False
    by_face: dict[FaceKey, list[int]] = {}
    for idx, fac in enumerate(c.facets):
        for sub in itertools.combinations(fac, shared_dim + 1):
            by_face.setdefault(sub, []).append(idx)
    seen = {0}
    frontier = [0]
    while frontier:
        idx = frontier.pop()
        for sub in itertools.combinations(c.facets[idx], shared_dim + 1):
            for other in by_face[sub]:
                if other not in seen:
                    seen.add(other)
                    frontier.append(other)
    return len(seen) == len(c.facets)


def _status_from(evidence: list[Check], exact: bool) -> str:
    if any(ev.ok is False for ev in evidence):
        return "refuted"
    if not exact and any(ev.ok is None for ev in evidence):
        return "unknown"
    return "certified"


def certify_sphere(c: UniformComplex, k: int) -> ManifoldCertificate:
    """Certificate that c triangulates the k-sphere.

    Exact for k <= 2; for k >= 3 "certified" records that every necessary
    condition passed (closed pseudomanifold, connected, strongly connected
    dual, sphere homology, trivial fundamental group), which is the best a
    computable check can honestly claim there.
    """
    if c.d != k + 1:
        raise UniformityMismatch(f"complex is {c.d}-uniform, sphere of dim {k} needs {k + 1}")
    evidence: list[Check] = []
    if k == 0:
        ok = c.n == 2 and len(c.facets) == 2 and not c.isolated_vertices
        evidence.append(Check("two-points", ok, f"{len(c.facets)} facets on {c.n} vertices"))
        return ManifoldCertificate("sphere", 0, "certified" if ok else "refuted",
                                   tuple(evidence))
    evidence.append(Check("nonempty", bool(c.facets), f"{len(c.facets)} facets"))
    evidence.append(Check("no-isolated", not c.isolated_vertices,
                          f"{len(c.isolated_vertices)} isolated vertices"))
    if not c.facets:
        return ManifoldCertificate("sphere", k, "refuted", tuple(evidence))
    counts = _face_facet_counts(c, k - 1)
    bad = sorted(f for f, m in counts.items() if m != 2)
    evidence.append(Check("closed-pseudomanifold", not bad,
                          f"{len(bad)} ridges not in exactly 2 facets"))
    evidence.append(Check("connected", len(support_components(c)) == 1
                          and not c.isolated_vertices, ""))
    evidence.append(Check("dual-connected", _dual_connected(c, k - 1), ""))
    prof = homology(c)
    want = tuple(0 if i < k else 1 for i in range(k + 1))
    hom_ok = prof.betti == want and not any(prof.torsion)
    evidence.append(Check("sphere-homology", hom_ok,
                          f"betti {prof.betti}, torsion {prof.torsion}"))
    if k >= 2 and all(ev.ok for ev in evidence):
        pi1 = fundamental_group_status(c)
        evidence.append(Check("pi1-trivial",
                              True if pi1 == "trivial" else (False if pi1 == "nontrivial" else None),
                              pi1))
    exact = k <= 2
    return ManifoldCertificate("sphere", k, _status_from(evidence, exact), tuple(evidence))


def _link_is_path_or_cycle(link: UniformComplex) -> bool:
    if link.d != 2 or not link.facets:
        return False
    deg: dict[int, int] = {}
    for u, v in link.facets:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if link.isolated_vertices:
        return False
    if any(d > 2 for d in deg.values()):
        return False
    return len(support_components(link)) == 1


def certify_ball(c: UniformComplex, k: int) -> ManifoldCertificate:
    """Certificate that c triangulates the k-ball. Exact for k <= 2."""
    if c.d != k + 1:
        raise UniformityMismatch(f"complex is {c.d}-uniform, ball of dim {k} needs {k + 1}")
    evidence: list[Check] = []
    if k == 0:
        ok = c.n == 1 and len(c.facets) == 1
        evidence.append(Check("one-point", ok, f"{len(c.facets)} facets on {c.n} vertices"))
        return ManifoldCertificate("ball", 0, "certified" if ok else "refuted",
                                   tuple(evidence))
    evidence.append(Check("nonempty", bool(c.facets), f"{len(c.facets)} facets"))
    evidence.append(Check("no-isolated", not c.isolated_vertices,
                          f"{len(c.isolated_vertices)} isolated vertices"))
    if not c.facets:
        return ManifoldCertificate("ball", k, "refuted", tuple(evidence))
    counts = _face_facet_counts(c, k - 1)
    overfull = sorted(f for f, m in counts.items() if m > 2)
    evidence.append(Check("ridges-at-most-2", not overfull,
                          f"{len(overfull)} ridges in more than 2 facets"))
    boundary = tuple(sorted(f for f, m in counts.items() if m == 1))
    evidence.append(Check("boundary-nonempty", bool(boundary),
                          f"{len(boundary)} boundary ridges"))
    evidence.append(Check("connected", len(support_components(c)) == 1
                          and not c.isolated_vertices, ""))
    prof = homology(c)
    evidence.append(Check("trivial-homology", prof.trivial(),
                          f"betti {prof.betti}, torsion {prof.torsion}"))
    if boundary:
        bd = strip_isolated(UniformComplex(k, c.n, boundary, c.names))
        bd_cert = certify_sphere(bd, k - 1)
        evidence.append(Check("boundary-sphere",
                              True if bd_cert.status == "certified"
                              else (None if bd_cert.status == "unknown" else False),
                              f"boundary sphere status {bd_cert.status}"))
    if k == 2 and all(ev.ok for ev in evidence):
        links_ok = all(_link_is_path_or_cycle(c.link(v)) for v in c.support_vertices)
        evidence.append(Check("vertex-links", links_ok, "paths or cycles"))
    if k >= 3 and all(ev.ok for ev in evidence):
        pi1 = fundamental_group_status(c)
        evidence.append(Check("pi1-trivial",
                              True if pi1 == "trivial" else (False if pi1 == "nontrivial" else None),
                              pi1))
    exact = k <= 2
    return ManifoldCertificate("ball", k, _status_from(evidence, exact), tuple(evidence))
