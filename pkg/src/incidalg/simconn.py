"""Simple-connectedness apparatus: order-complex homology, first Hochschild
cohomology, fundamental-group presentations, crowns, and the critical
subposet search.

HH1 is computed through H1 of the order complex (the additive group of the
field is abelian, so homomorphisms from the fundamental group factor
through its abelianization).  A second, fully independent routine computes
the same dimension straight from the definition (derivations modulo inner
derivations on the comparable-pair basis); it is quadratic-size in the
algebra dimension and intended as a cross-check on small posets.

Whether the fundamental group itself is trivial is never decided here:
only the presentation and the H1 data are reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from incidalg import linalg
from incidalg.linalg import IntMatrix
from incidalg.poset import Poset, PosetError, interval, is_connected, order_complex_2skeleton


@dataclass(frozen=True)
class H1Data:
    betti1: int
    torsion: tuple          # invariant factors > 1, divisibility chain
    euler_data: tuple       # simplex counts in dimensions 0, 1, 2


@dataclass(frozen=True)
class Pi1Presentation:
    generators: int
    generator_edges: tuple  # the non-tree edges, one generator each
    relators: tuple         # words: tuples of (generator index, +-1)


@dataclass(frozen=True)
class CrownWitness:
    n: int
    xs: tuple
    ys: tuple
    kind: str               # "crown" | "weak"


@dataclass(frozen=True)
class QnWitness:
    n: int
    source: str
    xs: tuple
    ys: tuple
    sink: str


def boundary_matrices(p: Poset):
    """Integer boundary matrices of the order-complex 2-skeleton.

    d1 maps edges to vertices, d2 maps triangles to edges; orientations
    follow the poset order on each chain.
    """
    oc = order_complex_2skeleton(p)
    vidx = {v: i for i, v in enumerate(oc.vertices)}
    eidx = {e: i for i, e in enumerate(oc.edges)}
    nv, ne, nt = len(oc.vertices), len(oc.edges), len(oc.triangles)
    d1 = [0] * (nv * ne)
    for j, (a, b) in enumerate(oc.edges):
        d1[vidx[b] * ne + j] += 1
        d1[vidx[a] * ne + j] -= 1
    d2 = [0] * (ne * nt)
    for j, (a, b, c) in enumerate(oc.triangles):
        d2[eidx[(b, c)] * nt + j] += 1
        d2[eidx[(a, c)] * nt + j] -= 1
        d2[eidx[(a, b)] * nt + j] += 1
    return oc, IntMatrix(nv, ne, d1), IntMatrix(ne, nt, d2)


def h1_order_complex(p: Poset) -> H1Data:
    """H1 of the order complex over the integers, via Smith normal form."""
    if not is_connected(p):
        raise PosetError("H1 of a disconnected poset is not computed here")
    oc, d1, d2 = boundary_matrices(p)
    r1 = linalg.int_rank(d1)
    snf2 = linalg.smith_normal_form(d2)
    betti1 = len(oc.edges) - r1 - snf2.rank
    torsion = tuple(d for d in snf2.nonzero_factors if d > 1)
    return H1Data(
        betti1=betti1,
        torsion=torsion,
        euler_data=(len(oc.vertices), len(oc.edges), len(oc.triangles)),
    )


def _check_char(char: int):
    if char == 0:
        return
    if char < 2 or any(char % q == 0 for q in range(2, int(char**0.5) + 1)):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")


def hh1_dimension(p: Poset, char: int = 0) -> int:
    """dim HH1 = dim Hom(H1(Z), K+) = betti1 + #{torsion factors killed by
    the characteristic}."""
    _check_char(char)
    h = h1_order_complex(p)
    extra = sum(1 for d in h.torsion if char and d % char == 0)
    return h.betti1 + extra


def pi1_presentation(p: Poset) -> Pi1Presentation:
    """Edge-path presentation from a BFS spanning tree of the 1-skeleton.

    One generator per non-tree edge, one relator per 2-simplex; words are
    freely reduced and nothing else.
    """
    if not is_connected(p):
        raise PosetError("pi1 of a disconnected poset is not computed here")
    oc = order_complex_2skeleton(p)
    edge_set = set(oc.edges)
    adj = {v: set() for v in oc.vertices}
    for a, b in oc.edges:
        adj[a].add(b)
        adj[b].add(a)

    def oriented(v, w):
        # edges are stored in poset orientation (lower, upper)
        return (v, w) if (v, w) in edge_set else (w, v)

    root = oc.vertices[0]
    tree = set()
    seen = {root}
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    tree.add(oriented(v, w))
                    nxt.append(w)
        frontier = nxt
    gen_edges = tuple(e for e in oc.edges if e not in tree)
    gen_idx = {e: i for i, e in enumerate(gen_edges)}

    def word(a, b):
        # the directed edge a -> b as a (possibly empty) one-letter word
        if (a, b) in gen_idx:
            return [(gen_idx[(a, b)], 1)]
        return []

    relators = []
    for a, b, c in oc.triangles:
        w = word(a, b) + word(b, c) + [(g, -s) for (g, s) in reversed(word(a, c))]
        reduced = []
        for t in w:
            if reduced and reduced[-1][0] == t[0] and reduced[-1][1] == -t[1]:
                reduced.pop()
            else:
                reduced.append(t)
        relators.append(tuple(reduced))
    return Pi1Presentation(
        generators=len(gen_edges),
        generator_edges=gen_edges,
        relators=tuple(relators),
    )


def abelianized_pi1(pres: Pi1Presentation):
    """(betti, torsion) of the abelianization, by SNF of the exponent matrix."""
    rows = []
    for rel in pres.relators:
        row = [0] * pres.generators
        for g, s in rel:
            row[g] += s
        rows.append(row)
    if rows and pres.generators:
        snf = linalg.smith_normal_form(
            IntMatrix(len(rows), pres.generators, [x for r in rows for x in r])
        )
        betti = pres.generators - snf.rank
        torsion = tuple(d for d in snf.nonzero_factors if d > 1)
    else:
        betti = pres.generators
        torsion = ()
    return betti, torsion


# --- crowns ------------------------------------------------------------------


def _strictly_less(p: Poset, a: str, b: str) -> bool:
    return a != b and p.leq(a, b)


def _is_antichain(p: Poset, elems) -> bool:
    return not any(
        _strictly_less(p, a, b) or _strictly_less(p, b, a)
        for a, b in itertools.combinations(elems, 2)
    )


def _cyclic_labelling(p: Poset, xs_set, ys_set):
    """Read the crown comparability pattern off the bipartite graph.

    Requires: every comparability between the two sets goes upward
    (x < y), the graph is 2-regular, and it forms a single cycle through
    all 2n points.  Returns (xs, ys) labelled so that ``xs[i] < ys[i]``
    and ``xs[i] < ys[i+1]`` (cyclically), or None when the pattern fails.
    """
    for y in ys_set:
        for x in xs_set:
            if _strictly_less(p, y, x):
                return None
    above = {x: [y for y in ys_set if _strictly_less(p, x, y)] for x in xs_set}
    below = {y: [x for x in xs_set if _strictly_less(p, x, y)] for y in ys_set}
    if any(len(v) != 2 for v in above.values()):
        return None
    if any(len(v) != 2 for v in below.values()):
        return None
    start = min(xs_set)
    best = None
    for first in sorted(above[start]):
        xs = [start]
        ys = []
        y = first
        ok = True
        while True:
            ys.append(y)
            nx = [x for x in below[y] if x != xs[-1]]
            if len(nx) != 1:
                ok = False
                break
            x = nx[0]
            if x == start:
                break
            xs.append(x)
            ny = [z for z in above[x] if z != y]
            if len(ny) != 1:
                ok = False
                break
            y = ny[0]
        if not ok or len(xs) != len(xs_set) or len(ys) != len(ys_set):
            continue
        # walk order: start < ys[0] > xs[1] < ys[1] ...; relabel so that
        # xs[i] < ys[i], ys[i+1]: here xs[i] < ys[i-1], ys[i] -> shift ys by 1
        ys = ys[-1:] + ys[:-1]
        for i, x in enumerate(xs):
            if not (
                _strictly_less(p, x, ys[i])
                and _strictly_less(p, x, ys[(i + 1) % len(ys)])
            ):
                ok = False
                break
        if ok and (best is None or tuple(ys) < best[1]):
            best = (tuple(xs), tuple(ys))
    return best


def _crown_conditions(p: Poset, xs, ys, require_crown: bool):
    """Literal interval-intersection conditions of the crown definition."""
    n = len(xs)
    J = {}
    for i in range(n):
        J[(i, i)] = interval(p, xs[i], ys[i]).members
        J[(i, (i + 1) % n)] = interval(p, xs[i], ys[(i + 1) % n]).members
    keys = sorted(J)
    for i in range(n):
        allowed = {((i - 1) % n, i), (i, (i + 1) % n), (i, i)}
        for key in keys:
            if key in allowed:
                continue
            if J[(i, i)] & J[key]:
                return False
        if not (J[(i, i)] & J[((i - 1) % n, i)]):
            return False
        if not (J[(i, i)] & J[(i, (i + 1) % n)]):
            return False
    for k1, k2, k3 in itertools.combinations(keys, 3):
        if J[k1] & J[k2] & J[k3]:
            return False
    if require_crown:
        for i in range(n):
            if J[(i, i)] & J[(i, (i + 1) % n)] != {xs[i]}:
                return False
            if J[((i - 1) % n, i)] & J[(i, i)] != {ys[i]}:
                return False
    return True


def verify_crown_witness(p: Poset, w: CrownWitness) -> bool:
    """Re-verify a witness independently of how the search found it."""
    if len(w.xs) != w.n or len(w.ys) != w.n or w.n < 2:
        return False
    if len(set(w.xs) | set(w.ys)) != 2 * w.n:
        return False
    if not _is_antichain(p, w.xs) or not _is_antichain(p, w.ys):
        return False
    lab = _cyclic_labelling(p, frozenset(w.xs), frozenset(w.ys))
    if lab is None:
        return False
    return _crown_conditions(p, w.xs, w.ys, require_crown=(w.kind == "crown"))


def find_crown(p: Poset, max_n: int = 6, kind: str = "crown"):
    """Search for a (weak) crown, smallest n first.

    Candidate x-sets and y-sets are enumerated in lexicographic order and
    the first witness found is returned (after canonical cyclic
    labelling), so the result is deterministic.  Returns None when no
    witness exists within ``max_n``.
    """
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    if kind not in ("crown", "weak"):
        raise ValueError("kind must be 'crown' or 'weak'")
    elems = p.elements
    for n in range(2, max_n + 1):
        if 2 * n > len(elems):
            break
        for xs_set in itertools.combinations(elems, n):
            if not _is_antichain(p, xs_set):
                continue
            rest = [
                e
                for e in elems
                if e not in xs_set
                and not any(_strictly_less(p, e, x) for x in xs_set)
                and any(_strictly_less(p, x, e) for x in xs_set)
            ]
            for ys_set in itertools.combinations(rest, n):
                if not _is_antichain(p, ys_set):
                    continue
                lab = _cyclic_labelling(p, frozenset(xs_set), frozenset(ys_set))
                if lab is None:
                    continue
                xs, ys = lab
                if _crown_conditions(p, xs, ys, require_crown=(kind == "crown")):
                    return CrownWitness(n=n, xs=xs, ys=ys, kind=kind)
    return None


def is_strongly_simply_connected(p: Poset, max_n: int | None = None):
    """(answer, witness): by the crown criterion for incidence algebras, the
    algebra is strongly simply connected iff no crown exists.  The search
    is exact for n up to |poset|/2 (the maximum possible)."""
    if not is_connected(p):
        raise PosetError("strong simple connectedness needs a connected poset")
    bound = len(p.elements) // 2
    if max_n is not None:
        bound = min(bound, max_n)
    if bound < 2:
        return True, None
    w = find_crown(p, max_n=bound, kind="crown")
    return (w is None), w


def find_critical_qn(p: Poset, max_n: int = 6):
    """Full subposet isomorphic to the critical shape: a unique source under
    a crown-patterned double layer over a unique sink."""
    elems = p.elements
    for n in range(2, max_n + 1):
        if 2 * n + 2 > len(elems):
            break
        for xs_set in itertools.combinations(elems, n):
            if not _is_antichain(p, xs_set):
                continue
            below_all = set(elems)
            for x in xs_set:
                below_all &= {e for e in p.down_set(x) if e != x}
            if not below_all:
                continue
            rest = [
                e
                for e in elems
                if e not in xs_set
                and not any(_strictly_less(p, e, x) for x in xs_set)
                and any(_strictly_less(p, x, e) for x in xs_set)
            ]
            for ys_set in itertools.combinations(rest, n):
                if not _is_antichain(p, ys_set):
                    continue
                above_all = set(elems) - set(xs_set) - set(ys_set)
                for y in ys_set:
                    above_all &= {e for e in p.up_set(y) if e != y}
                above_all -= below_all
                if not above_all:
                    continue
                lab = _cyclic_labelling(p, frozenset(xs_set), frozenset(ys_set))
                if lab is None:
                    continue
                xs, ys = lab
                sources = sorted(below_all - set(ys_set))
                if not sources:
                    continue
                return QnWitness(
                    n=n,
                    source=sources[0],
                    xs=xs,
                    ys=ys,
                    sink=min(above_all),
                )
    return None


# --- derivation-quotient HH1 (independent cross-check) ----------------------


class _SparseEliminator:
    """Incremental sparse row reduction over Q (char 0) or F_p."""

    def __init__(self, char: int):
        self.char = char
        self.pivots = {}  # column -> normalized row (dict col -> coeff)

    def _normalize(self, row, col):
        c = row[col]
        if self.char:
            inv = pow(c, self.char - 2, self.char)
            return {j: (v * inv) % self.char for j, v in row.items() if v % self.char}
        return {j: v / c for j, v in row.items() if v}

    def add_row(self, row) -> bool:
        """Reduce ``row`` against the pivots; returns True if independent."""
        if self.char:
            row = {j: v % self.char for j, v in row.items() if v % self.char}
        else:
            row = {j: Fraction(v) for j, v in row.items() if v}
        while row:
            col = min(row)
            piv = self.pivots.get(col)
            if piv is None:
                self.pivots[col] = self._normalize(row, col)
                return True
            c = row[col]
            for j, v in piv.items():
                nv = row.get(j, 0 if self.char else Fraction(0)) - c * v
                if self.char:
                    nv %= self.char
                if nv:
                    row[j] = nv
                elif j in row:
                    del row[j]
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def hh1_dimension_via_derivations(p: Poset, char: int = 0) -> int:
    """dim Der(A)/Inn(A) from the literal Leibniz equations on the pair
    basis.  Exponential care is not needed, but the system is quadratic in
    the algebra dimension; intended for posets of at most ~8 elements."""
    _check_char(char)
    pairs = [(a, b) for a in p.elements for b in sorted(p.up_set(a))]
    pairs.sort()
    pidx = {pr: i for i, pr in enumerate(pairs)}
    dim = len(pairs)
    nunk = dim * dim

    def unk(src, tgt):
        return pidx[src] * dim + pidx[tgt]

    elim = _SparseEliminator(char)
    for (a, b) in pairs:
        for (c, d) in pairs:
            # Leibniz at the pair: delta(e_ab e_cd) = delta(e_ab) e_cd
            # + e_ab delta(e_cd).  The right side contributes
            # T[(ab),(sc)] at target (s, d) and T[(cd),(bt)] at (a, t);
            # the left side is delta(e_ad) when b == c (every basis
            # target gets an equation then) and zero otherwise.
            if b == c:
                targets = pairs
            else:
                targets = sorted(
                    {(s, d) for s in p.down_set(c)}
                    | {(a, t) for t in p.up_set(b)}
                )
            for (s, t) in targets:
                row = {}
                if t == d and (s, c) in pidx:
                    k = unk((a, b), (s, c))
                    row[k] = row.get(k, 0) + 1
                if s == a and (b, t) in pidx:
                    k = unk((c, d), (b, t))
                    row[k] = row.get(k, 0) + 1
                if b == c:
                    k = unk((a, d), (s, t))
                    row[k] = row.get(k, 0) - 1
                row = {k: v for k, v in row.items() if v}
                if row:
                    elim.add_row(row)
    dim_der = nunk - elim.rank

    inner = _SparseEliminator(char)
    for (c, d) in pairs:
        row = {}
        for (a, b) in pairs:
            if b == c and (a, d) in pidx:
                k = unk((a, b), (a, d))
                row[k] = row.get(k, 0) + 1
            if d == a and (c, b) in pidx:
                k = unk((a, b), (c, b))
                row[k] = row.get(k, 0) - 1
        row = {k: v for k, v in row.items() if v}
        if row:
            inner.add_row(row)
    return dim_der - inner.rank
