"""Finite-dimensional modules as representations of the poset.

A module assigns a vector space to every element and an exact rational
matrix to every cover, with all parallel path composites equal.  Only the
cover maps are stored; composites along longer relations are derived along
the lexicographically least cover path and validated against all others.

Kernels, radicals, covers and hom spaces reduce to pointwise exact linear
algebra, which is why no Groebner-style machinery appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from incidalg import linalg
from incidalg.linalg import RatMatrix
from incidalg.algebra import IncidenceAlgebra
from incidalg.poset import PosetError


class RepresentationError(ValueError):
    pass


class PosetRepresentation:
    __slots__ = ("dims", "maps")

    def __init__(self, dims: dict, maps: dict):
        self.dims = dict(dims)
        self.maps = dict(maps)

    def dim_total(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.dim_total() == 0

    def dim_vector(self, order) -> tuple:
        return tuple(self.dims[e] for e in order)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PosetRepresentation)
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __repr__(self) -> str:
        return f"PosetRepresentation(dims={self.dims!r})"


class ModuleMap:
    """Element-wise blocks of a homomorphism; naturality is checked by
    :func:`validate_map`, not assumed."""

    __slots__ = ("blocks",)

    def __init__(self, blocks: dict):
        self.blocks = dict(blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleMap) and self.blocks == other.blocks

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other (matching blocks multiplied pointwise)."""
        return ModuleMap(
            {e: self.blocks[e].mul(other.blocks[e]) for e in self.blocks}
        )

    def __repr__(self) -> str:
        shapes = {e: (b.rows, b.cols) for e, b in sorted(self.blocks.items())}
        return f"ModuleMap(shapes={shapes!r})"


@dataclass(frozen=True)
class ProjectiveSum:
    """P = sum of P_a over a list of (element, copy) summands.

    ``at[e]`` lists, in coordinate order, the indices of the summands
    supported at ``e`` (those with summand element below ``e``); this fixes
    the basis used by every matrix involving ``P``.
    """

    summands: tuple
    rep: PosetRepresentation
    at: dict


# --- constructions ---------------------------------------------------------


def _check_element(A: IncidenceAlgebra, a: str):
    if a not in A.poset._index:
        raise PosetError(f"unknown element {a!r}")


def projective_module(A: IncidenceAlgebra, a: str) -> PosetRepresentation:
    """P_a: one-dimensional at every b >= a, identity maps on the support."""
    _check_element(A, a)
    up = A.poset.up_set(a)
    dims = {e: (1 if e in up else 0) for e in A.poset.elements}
    maps = {}
    for (x, y) in A.poset.covers:
        block = RatMatrix(dims[y], dims[x], [1] * (dims[y] * dims[x]))
        maps[(x, y)] = block
    return PosetRepresentation(dims, maps)


def simple_module(A: IncidenceAlgebra, a: str) -> PosetRepresentation:
    _check_element(A, a)
    dims = {e: (1 if e == a else 0) for e in A.poset.elements}
    maps = {}
    for (x, y) in A.poset.covers:
        maps[(x, y)] = RatMatrix.zeros(dims[y], dims[x])
    return PosetRepresentation(dims, maps)


def injective_module(A: IncidenceAlgebra, a: str) -> PosetRepresentation:
    """I_a: one-dimensional at every b <= a, identity maps on the support."""
    _check_element(A, a)
    down = A.poset.down_set(a)
    dims = {e: (1 if e in down else 0) for e in A.poset.elements}
    maps = {}
    for (x, y) in A.poset.covers:
        block = RatMatrix(dims[y], dims[x], [1] * (dims[y] * dims[x]))
        maps[(x, y)] = block
    return PosetRepresentation(dims, maps)


def canonical_sincere_module(A: IncidenceAlgebra) -> PosetRepresentation:
    """K at every element, the identity at every cover.

    This is the sincere indecomposable module that exists over every
    connected incidence algebra; connectivity of the Hasse graph forces
    all components of an endomorphism to agree, so End is one-dimensional.
    """
    dims = {e: 1 for e in A.poset.elements}
    maps = {c: RatMatrix.identity(1) for c in A.poset.covers}
    return PosetRepresentation(dims, maps)


def direct_sum_of_projectives(A: IncidenceAlgebra, summands) -> ProjectiveSum:
    """Sum of P_a over (element, copy) pairs, ordered deterministically."""
    summands = tuple(sorted(summands, key=lambda s: (A.position[s[0]], s[1])))
    at = {}
    dims = {}
    for e in A.poset.elements:
        idx = [i for i, (a, _) in enumerate(summands) if A.poset.leq(a, e)]
        at[e] = idx
        dims[e] = len(idx)
    maps = {}
    for (x, y) in A.poset.covers:
        m = RatMatrix.zeros(dims[y], dims[x])
        rowpos = {s: r for r, s in enumerate(at[y])}
        for c, s in enumerate(at[x]):
            m.entries[rowpos[s] * dims[x] + c] = Fraction(1)
        maps[(x, y)] = m
    return ProjectiveSum(summands=summands, rep=PosetRepresentation(dims, maps), at=at)


def multiplicity_vector(A: IncidenceAlgebra, ps: ProjectiveSum) -> dict:
    mult = {e: 0 for e in A.poset.elements}
    for (a, _) in ps.summands:
        mult[a] += 1
    return mult


# --- path composites and validation ----------------------------------------


def path_composite(A: IncidenceAlgebra, M: PosetRepresentation, x: str, y: str) -> RatMatrix:
    """Composite map M_x -> M_y along the lex-least cover path."""
    if not A.poset.leq(x, y):
        raise RepresentationError(f"{x!r} is not below {y!r}")
    m = RatMatrix.identity(M.dims[x])
    cur = x
    cover_set = set(A.poset.covers)
    while cur != y:
        for z in sorted(A.poset.up_set(cur)):
            if z != cur and (cur, z) in cover_set and A.poset.leq(z, y):
                m = M.maps[(cur, z)].mul(m)
                cur = z
                break
        else:
            raise AssertionError("no cover path between comparable elements")
    return m


def _all_cover_paths(A: IncidenceAlgebra, x: str, y: str):
    cover_set = set(A.poset.covers)
    out = []

    def walk(cur, acc):
        if cur == y:
            out.append(list(acc))
            return
        for z in sorted(A.poset.up_set(cur)):
            if z != cur and (cur, z) in cover_set and A.poset.leq(z, y):
                acc.append((cur, z))
                walk(z, acc)
                acc.pop()

    walk(x, [])
    return out


def validate_representation(A: IncidenceAlgebra, M: PosetRepresentation):
    """Shape checks plus exact commutativity of parallel path composites.

    For posets up to 12 elements every pair of cover paths between every
    comparable pair is compared; beyond that the equivalent local check
    (canonical composite against each final cover) is used.
    """
    p = A.poset
    if set(M.dims) != set(p.elements):
        raise RepresentationError("dims must cover exactly the poset elements")
    for e, d in M.dims.items():
        if d < 0:
            raise RepresentationError(f"negative dimension at {e!r}")
    if set(M.maps) != set(p.covers):
        raise RepresentationError("maps must cover exactly the cover pairs")
    for (x, y), m in M.maps.items():
        if (m.rows, m.cols) != (M.dims[y], M.dims[x]):
            raise RepresentationError(
                f"map for cover ({x!r}, {y!r}) has shape "
                f"{(m.rows, m.cols)}, expected {(M.dims[y], M.dims[x])}"
            )
    if len(p) <= 12:
        for x in p.elements:
            for y in sorted(p.up_set(x)):
                paths = _all_cover_paths(A, x, y)
                if len(paths) <= 1:
                    continue
                mats = []
                for path in paths:
                    m = RatMatrix.identity(M.dims[x])
                    for c in path:
                        m = M.maps[c].mul(m)
                    mats.append(m)
                for m in mats[1:]:
                    if m != mats[0]:
                        raise RepresentationError(
                            f"parallel path composites differ between {x!r} and {y!r}"
                        )
    else:
        for (u, v) in p.covers:
            for x in sorted(p.down_set(u)):
                lhs = path_composite(A, M, x, v)
                rhs = M.maps[(u, v)].mul(path_composite(A, M, x, u))
                if lhs != rhs:
                    raise RepresentationError(
                        f"composites into cover ({u!r}, {v!r}) differ from {x!r}"
                    )


def validate_map(A: IncidenceAlgebra, f: ModuleMap, M: PosetRepresentation, N: PosetRepresentation):
    for e in A.poset.elements:
        b = f.blocks[e]
        if (b.rows, b.cols) != (N.dims[e], M.dims[e]):
            raise RepresentationError(f"block at {e!r} has wrong shape")
    for (x, y) in A.poset.covers:
        lhs = N.maps[(x, y)].mul(f.blocks[x])
        rhs = f.blocks[y].mul(M.maps[(x, y)])
        if lhs != rhs:
            raise RepresentationError(f"naturality fails at cover ({x!r}, {y!r})")


# --- hom spaces -------------------------------------------------------------


def hom_space(A: IncidenceAlgebra, M: PosetRepresentation, N: PosetRepresentation):
    """Exact basis of Hom(M, N), solved from the naturality squares."""
    p = A.poset
    offsets = {}
    total = 0
    for e in p.elements:
        offsets[e] = total
        total += N.dims[e] * M.dims[e]
    rows = []
    for (x, y) in p.covers:
        nm = N.maps[(x, y)]      # N_x -> N_y
        mm = M.maps[(x, y)]      # M_x -> M_y
        # equation: nm . f_x - f_y . mm = 0, entrywise (i, j)
        for i in range(N.dims[y]):
            for j in range(M.dims[x]):
                row = [Fraction(0)] * total
                for t in range(N.dims[x]):
                    c = nm[i, t]
                    if c:
                        row[offsets[x] + t * M.dims[x] + j] += c
                for t in range(M.dims[y]):
                    c = mm[t, j]
                    if c:
                        row[offsets[y] + i * M.dims[y] + t] -= c
                if any(row):
                    rows.append(row)
    if rows:
        sys_m = RatMatrix.from_rows(rows)
    else:
        sys_m = RatMatrix.zeros(0, total)
    basis = linalg.kernel_basis(sys_m)
    out = []
    for k in range(basis.cols):
        blocks = {}
        for e in p.elements:
            ent = [
                basis.entries[(offsets[e] + i) * basis.cols + k]
                for i in range(N.dims[e] * M.dims[e])
            ]
            blocks[e] = RatMatrix(N.dims[e], M.dims[e], ent)
        out.append(ModuleMap(blocks))
    return out


# --- radical, top, covers, kernels ------------------------------------------


def radical_subspaces(A: IncidenceAlgebra, M: PosetRepresentation) -> dict:
    """Basis columns of rad(M)_e = sum of images of the cover maps into e."""
    p = A.poset
    incoming = {e: [] for e in p.elements}
    for (x, y) in p.covers:
        incoming[y].append(M.maps[(x, y)])
    out = {}
    for e in p.elements:
        cols = []
        for m in incoming[e]:
            for j in range(m.cols):
                cols.append(m.column(j))
        if cols:
            stacked = RatMatrix.from_rows(
                [[col[i] for col in cols] for i in range(M.dims[e])]
            )
            out[e] = linalg.column_space_basis(stacked)
        else:
            out[e] = RatMatrix.zeros(M.dims[e], 0)
    return out


def radical_and_top(A: IncidenceAlgebra, M: PosetRepresentation):
    """(rad M, top M); the top carries the induced (zero) maps."""
    p = A.poset
    rad_basis = radical_subspaces(A, M)
    rad_dims = {e: rad_basis[e].cols for e in p.elements}
    rad_maps = {}
    for (x, y) in p.covers:
        img = M.maps[(x, y)].mul(rad_basis[x])
        sol = linalg.solve(rad_basis[y], img)
        if sol is None:
            raise AssertionError("radical is not closed under the structure maps")
        rad_maps[(x, y)] = sol
    rad = PosetRepresentation(rad_dims, rad_maps)
    top_dims = {e: M.dims[e] - rad_dims[e] for e in p.elements}
    top_maps = {
        (x, y): RatMatrix.zeros(top_dims[y], top_dims[x]) for (x, y) in p.covers
    }
    top = PosetRepresentation(top_dims, top_maps)
    return rad, top


def _complement_columns(basis: RatMatrix) -> list:
    """Indices of standard basis vectors completing ``basis`` to a basis of
    the ambient space (deterministic: RREF pivots of [basis | I])."""
    n = basis.rows
    aug = basis.hstack(RatMatrix.identity(n))
    _, pivots = linalg.rref(aug)
    return [j - basis.cols for j in pivots if j >= basis.cols]


def projective_cover(A: IncidenceAlgebra, M: PosetRepresentation):
    """(P, surjection P -> M) with P = sum of P_a to the power dim top(M)_a.

    The surjection lifts a chosen section of M -> top M: at each element
    ``a`` the lift vectors are the standard basis vectors completing a
    radical basis (deterministic).  Raises on the zero module.
    """
    if M.is_zero():
        raise RepresentationError("zero module has no projective cover")
    p = A.poset
    rad_basis = radical_subspaces(A, M)
    summands = []
    lifts = {}
    for a in p.elements:
        comp = _complement_columns(rad_basis[a])
        lifts[a] = comp
        for j in range(len(comp)):
            summands.append((a, j))
    ps = direct_sum_of_projectives(A, summands)
    blocks = {}
    for e in p.elements:
        cols = []
        for si in ps.at[e]:
            a, j = ps.summands[si]
            coord = lifts[a][j]
            vec = [Fraction(0)] * M.dims[a]
            vec[coord] = Fraction(1)
            comp = path_composite(A, M, a, e)
            cols.append([
                sum(comp[i, t] * vec[t] for t in range(M.dims[a]))
                for i in range(M.dims[e])
            ])
        ent = []
        for i in range(M.dims[e]):
            for c in cols:
                ent.append(c[i])
        blocks[e] = RatMatrix(M.dims[e], len(cols), ent)
    surj = ModuleMap(blocks)
    for e in p.elements:
        if linalg.rank(blocks[e]) != M.dims[e]:
            raise AssertionError("projective cover failed to surject")
    return ps, surj


def kernel_of_map(A: IncidenceAlgebra, f: ModuleMap, M: PosetRepresentation, N: PosetRepresentation):
    """(K, inclusion K -> M) with K_e = ker f_e, structure maps restricted."""
    p = A.poset
    kb = {e: linalg.kernel_basis(f.blocks[e]) for e in p.elements}
    dims = {e: kb[e].cols for e in p.elements}
    maps = {}
    for (x, y) in p.covers:
        img = M.maps[(x, y)].mul(kb[x])
        sol = linalg.solve(kb[y], img)
        if sol is None:
            raise AssertionError("kernel is not closed under the structure maps")
        maps[(x, y)] = sol
    K = PosetRepresentation(dims, maps)
    incl = ModuleMap({e: kb[e] for e in p.elements})
    return K, incl


def dual_module(A: IncidenceAlgebra, A_op: IncidenceAlgebra, M: PosetRepresentation) -> PosetRepresentation:
    """Transpose dualization into representations of the opposite poset."""
    dims = dict(M.dims)
    maps = {}
    for (x, y) in A.poset.covers:
        maps[(y, x)] = M.maps[(x, y)].transpose()
    return PosetRepresentation(dims, maps)


# --- serialization -----------------------------------------------------------


def module_to_dict(M: PosetRepresentation) -> dict:
    """JSON-ready form with string-encoded exact fractions."""
    return {
        "dims": {e: d for e, d in sorted(M.dims.items())},
        "maps": [
            {
                "cover": [x, y],
                "matrix": [[str(v) for v in m.row(i)] for i in range(m.rows)],
            }
            for (x, y), m in sorted(M.maps.items())
        ],
    }


def module_from_dict(A: IncidenceAlgebra, doc: dict) -> PosetRepresentation:
    if not isinstance(doc, dict) or "dims" not in doc or "maps" not in doc:
        raise RepresentationError("module document needs 'dims' and 'maps'")
    dims = {e: int(d) for e, d in doc["dims"].items()}
    maps = {}
    for item in doc["maps"]:
        x, y = item["cover"]
        rows = [[Fraction(v) for v in row] for row in item["matrix"]]
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if nr:
            maps[(x, y)] = RatMatrix.from_rows(rows)
        else:
            maps[(x, y)] = RatMatrix.zeros(dims.get(y, 0), dims.get(x, 0))
    M = PosetRepresentation(dims, maps)
    validate_representation(A, M)
    return M
