"""Minimal projective resolutions and the dimensions built on them.

Incidence algebras are triangular, so every module has projective
dimension at most |poset| - 1; the resolution loop enforces that bound as
a hard failure (exceeding it would mean a bug, not a long resolution).
Global dimension is computed from the simple modules only, which is the
standard finite reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from incidalg import linalg, modules
from incidalg.algebra import IncidenceAlgebra, build_algebra
from incidalg.modules import (
    ModuleMap,
    PosetRepresentation,
    ProjectiveSum,
    dual_module,
    kernel_of_map,
    projective_cover,
    radical_subspaces,
    simple_module,
)
from incidalg.poset import opposite


class ResolutionBoundExceeded(RuntimeError):
    """Signals an internal bug: triangularity caps pd at |poset| - 1."""


@dataclass
class Resolution:
    """0 -> P_len -> ... -> P_0 -> M -> 0 with minimal terms.

    ``terms[k]`` is the multiplicity vector of the k-th term,
    ``proj[k]`` the explicit projective sum, ``differentials[k]`` the map
    P_{k+1} -> P_k, and ``augmentation`` the map P_0 -> M.
    """

    module: PosetRepresentation
    terms: list
    proj: list
    differentials: list
    augmentation: ModuleMap

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_projective_resolution(A: IncidenceAlgebra, M: PosetRepresentation) -> Resolution:
    if M.is_zero():
        raise modules.RepresentationError("cannot resolve the zero module")
    bound = len(A.poset) - 1
    terms = []
    proj = []
    diffs = []
    augmentation = None
    prev_incl = None
    current = M
    while True:
        ps, surj = projective_cover(A, current)
        terms.append(modules.multiplicity_vector(A, ps))
        proj.append(ps)
        if augmentation is None:
            augmentation = surj
        else:
            diffs.append(prev_incl.compose(surj))
        kernel, incl = kernel_of_map(A, surj, ps.rep, current)
        if kernel.is_zero():
            break
        current = kernel
        prev_incl = incl
        if len(terms) > bound:
            raise ResolutionBoundExceeded(
                f"resolution of a module over a {len(A.poset)}-element poset "
                f"exceeded length {bound}"
            )
    return Resolution(
        module=M,
        terms=terms,
        proj=proj,
        differentials=diffs,
        augmentation=augmentation,
    )


def verify_resolution(A: IncidenceAlgebra, res: Resolution):
    """Exactness and minimality, re-checked from scratch.

    Exactness at interior terms: im d_{k+1} = ker d_k, compared through
    pointwise ranks (the inclusion im <= ker follows from d.d = 0, which
    is itself checked exactly).  Minimality: every differential's image
    lies in the radical of its target.
    """
    p = A.poset
    maps = [res.augmentation] + res.differentials
    for k in range(len(maps) - 1):
        comp = maps[k].compose(maps[k + 1])
        for e in p.elements:
            if not comp.blocks[e].is_zero():
                raise AssertionError(f"d.d != 0 at degree {k + 1}, element {e!r}")
    for e in p.elements:
        if linalg.rank(res.augmentation.blocks[e]) != res.module.dims[e]:
            raise AssertionError("augmentation is not surjective")
    for k in range(len(maps) - 1):
        for e in p.elements:
            r_img = linalg.rank(maps[k + 1].blocks[e])
            dim_ker = maps[k].blocks[e].cols - linalg.rank(maps[k].blocks[e])
            if r_img != dim_ker:
                raise AssertionError(
                    f"resolution not exact at degree {k + 1}, element {e!r}"
                )
    for k, d in enumerate(res.differentials):
        target = res.proj[k]
        rad = radical_subspaces(A, target.rep)
        for e in p.elements:
            if d.blocks[e].cols == 0:
                continue
            if linalg.solve(rad[e], d.blocks[e]) is None:
                raise AssertionError(f"differential {k} is not radical at {e!r}")


def projective_dimension(A: IncidenceAlgebra, M: PosetRepresentation) -> int:
    return minimal_projective_resolution(A, M).length


def injective_dimension(A: IncidenceAlgebra, M: PosetRepresentation) -> int:
    """Projective dimension of the dual module over the opposite poset."""
    p_op = opposite(A.poset)
    A_op = build_algebra(p_op, allow_disconnected=True)
    return projective_dimension(A_op, dual_module(A, A_op, M))


def global_dimension(A: IncidenceAlgebra) -> int:
    """Max projective dimension of the simple modules (a theorem makes the
    sup over all modules equal to this)."""
    best = 0
    for a in A.poset.elements:
        best = max(best, projective_dimension(A, simple_module(A, a)))
    return best


def simple_resolutions(A: IncidenceAlgebra) -> dict:
    return {
        a: minimal_projective_resolution(A, simple_module(A, a))
        for a in A.poset.elements
    }


def ext_dims_between_simples(A: IncidenceAlgebra):
    """ext[k][(a, b)] = dim Ext^k(S_a, S_b), read off minimal resolutions.

    Minimality kills the differentials in Hom(-, S_b), so the Ext
    dimension is the multiplicity of P_b in the k-th term.  Returns a list
    indexed by k = 0 .. gldim of dicts over ordered pairs.
    """
    ress = simple_resolutions(A)
    gldim = max(res.length for res in ress.values())
    table = [dict() for _ in range(gldim + 1)]
    for a, res in ress.items():
        for k, mult in enumerate(res.terms):
            for b, m in mult.items():
                if m:
                    table[k][(a, b)] = m
    return table


def betti_table(A: IncidenceAlgebra) -> dict:
    """Per-simple multiplicity vectors of the minimal resolution terms."""
    out = {}
    for a, res in simple_resolutions(A).items():
        out[a] = [
            {e: m for e, m in sorted(term.items()) if m} for term in res.terms
        ]
    return out
