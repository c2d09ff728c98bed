"""Independent oracles used to pin expected values.

The crossed-product elements act on the standard basis (E_k) by

    U^n M_f E_k = f(k) E_{k+n},

so products and adjoints can be checked entry by entry against operator
composition on a window of basis vectors, without going through the algebra's
own multiplication.
"""
from __future__ import annotations

from bdalg import BDElement, Cyclo


def apply_to_basis(a: BDElement, k: int) -> dict:
    """The column of matrix entries of a at basis vector E_k: {row: value}."""
    out: dict = {}
    for n, f in a.coeffs.items():
        v = f.at(k)
        if not v.is_zero():
            i = k + n
            out[i] = out[i] + v if i in out else v
    return {i: v for i, v in out.items() if not v.is_zero()}


def compose_on_basis(a: BDElement, b: BDElement, k: int) -> dict:
    """The column of a(b(E_k)) computed by operator composition."""
    out: dict = {}
    for j, c in apply_to_basis(b, k).items():
        for i, d in apply_to_basis(a, j).items():
            t = d * c
            out[i] = out[i] + t if i in out else t
    return {i: v for i, v in out.items() if not v.is_zero()}


def columns_equal(col1: dict, col2: dict) -> bool:
    keys = set(col1) | set(col2)
    zero = Cyclo.zero()
    return all(col1.get(i, zero) == col2.get(i, zero) for i in keys)


def entry(a: BDElement, i: int, j: int) -> Cyclo:
    """The matrix entry <E_i, a E_j>."""
    return apply_to_basis(a, j).get(i, Cyclo.zero())
