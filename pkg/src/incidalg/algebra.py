"""The incidence algebra of a finite poset, in the comparable-pair basis.

The algebra is never stored as paths modulo an ideal: commutativity
relations identify all parallel paths, so one basis element ``e[a,b]`` per
comparable pair ``a <= b`` with ``e[a,b] . e[b,c] = e[a,c]`` is an exact
and canonical model.

Conventions (fixed once, used everywhere):

* modules are right modules; representation maps point along covers
  ``a -> b`` for ``a`` covered by ``b``;
* ``Hom(P_a, P_b)`` is identified with ``e_b A e_a`` and is nonzero iff
  ``b <= a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from incidalg import linalg
from incidalg.linalg import IntMatrix, RatMatrix
from incidalg.poset import Poset, PosetError, is_connected, linear_extension


class IncidenceAlgebra:
    __slots__ = ("poset", "basis", "basis_index", "order", "position")

    def __init__(self, poset: Poset, basis):
        self.poset = poset
        self.basis = tuple(basis)
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        self.order = tuple(linear_extension(poset))
        self.position = {e: i for i, e in enumerate(self.order)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def hom_dim_projectives(self, a: str, b: str) -> int:
        """dim Hom(P_a, P_b) = dim e_b A e_a: 1 iff b <= a, else 0."""
        return 1 if self.poset.leq(b, a) else 0

    def __repr__(self) -> str:
        return f"IncidenceAlgebra(|poset|={len(self.poset)}, dim={self.dimension})"


@dataclass(frozen=True)
class CartanData:
    order: tuple
    cartan: IntMatrix
    moebius: IntMatrix
    coxeter: RatMatrix
    coxeter_polynomial: tuple  # integer coefficients, ascending powers


def build_algebra(p: Poset, allow_disconnected: bool = False) -> IncidenceAlgebra:
    """Basis = comparable pairs in (linear-extension, id) order.

    Disconnected posets are rejected by default since every statement this
    package certifies is about connected incidence algebras; pass
    ``allow_disconnected=True`` to proceed anyway.
    """
    if not allow_disconnected and not is_connected(p):
        raise PosetError("poset is disconnected (pass allow_disconnected to override)")
    return IncidenceAlgebra(p, p.comparable_pairs())


def multiply(A: IncidenceAlgebra, x: dict, y: dict) -> dict:
    """Bilinear extension of e[a,b] . e[c,d] = delta(b, c) e[a,d].

    Elements are dicts mapping basis pairs to coefficients; zero terms are
    dropped in the result.
    """
    out = {}
    for (a, b), cx in x.items():
        if not cx:
            continue
        for (c, d), cy in y.items():
            if b != c or not cy:
                continue
            key = (a, d)
            v = out.get(key, Fraction(0)) + Fraction(cx) * Fraction(cy)
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def unit(A: IncidenceAlgebra) -> dict:
    return {(e, e): Fraction(1) for e in A.poset.elements}


def cartan_data(A: IncidenceAlgebra) -> CartanData:
    """Zeta matrix, its inverse (Moebius), and the Coxeter transformation.

    With the linear extension as basis order the zeta matrix
    ``C[i][j] = [elem_i <= elem_j]`` is unitriangular, so det C = 1 and
    the Moebius matrix is integral.  The Coxeter matrix is
    ``-C^{-T} . C``; its characteristic polynomial has integer
    coefficients and is palindromic up to sign.
    """
    order = A.order
    n = len(order)
    ent = []
    for a in order:
        up = A.poset.up_set(a)
        ent.extend(1 if b in up else 0 for b in order)
    cartan = IntMatrix(n, n, ent)
    moebius = linalg.invert_unimodular(cartan)
    coxeter = moebius.transpose().to_rational().mul(cartan.to_rational()).scaled(-1)
    cp = linalg.charpoly(coxeter)
    coeffs = []
    for c in cp:
        if c.denominator != 1:
            raise AssertionError("Coxeter polynomial must be integral")
        coeffs.append(c.numerator)
    return CartanData(
        order=tuple(order),
        cartan=cartan,
        moebius=moebius,
        coxeter=coxeter,
        coxeter_polynomial=tuple(coeffs),
    )


def cartan_report(A: IncidenceAlgebra) -> dict:
    """JSON-ready dump of basis and Cartan data (used by the CLI)."""
    cd = cartan_data(A)
    return {
        "dimension": A.dimension,
        "basis": [list(p) for p in A.basis],
        "order": list(cd.order),
        "cartan": cd.cartan.to_rows(),
        "moebius": cd.moebius.to_rows(),
        "coxeter_polynomial": list(cd.coxeter_polynomial),
    }
