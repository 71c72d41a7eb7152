"""Brace operations built from partial composition.

Everything here is a signed sum of partial compositions:

    total_compose(f, g)   f . g = sum_i f o_i g over all slots of f
    cup(mu, f, g)         f ~ g = (-1)**deg(f) (mu o_0 f) o_deg(f) g
    tribrace(h, f, g)     {h; f, g}   = sum (h o_i f) o_j g,  j >= i + deg f
    tetrabrace(h, f, g, b) {h; f, g, b} = sum ((h o_i f) o_j g) o_k b,
                          j >= i + deg f, k >= j + deg g
    bracket(f, g)         [f, g] = f . g - (-1)**(|f| |g|) g . f

The brace sums insert the later arguments strictly to the right of the
earlier ones.  Empty sums return the zero op of the nominal degree; if that
degree would be negative the operation raises DegreeUnderflowError instead.
"""

from __future__ import annotations

from .errors import DegreeMismatchError, DegreeUnderflowError
from .multiop import MultiOp, _check_pair, add, partial_compose, scale, sub, zero_op
from .scalars import sign_pow


def _require_mu(mu: MultiOp):
    if mu.degree != 2:
        raise DegreeMismatchError(f"mu must have degree 2, got {mu.degree}")


def _zero(like: MultiOp, degree: int) -> MultiOp:
    if degree < 0:
        raise DegreeUnderflowError(f"result would have degree {degree}")
    return zero_op(like.dim, degree, like.variance, like.backend)


def total_compose(f: MultiOp, g: MultiOp) -> MultiOp:
    """Sum of g inserted into every slot of f (degree f + |g|)."""
    _check_pair(f, g)
    out = None
    for i in range(f.degree):
        term = partial_compose(f, g, i)
        out = term if out is None else add(out, term)
    if out is None:
        return _zero(f, f.degree + g.reduced_degree)
    return out


def mu_squared(mu: MultiOp) -> MultiOp:
    """Associator tensor of a binary multiplication: mu . mu.

    Zero exactly when mu is associative.
    """
    _require_mu(mu)
    return total_compose(mu, mu)


def cup(mu: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """Cup product of f and g relative to the multiplication mu."""
    _require_mu(mu)
    _check_pair(mu, f)
    _check_pair(f, g)
    return scale(
        sign_pow(f.degree),
        partial_compose(partial_compose(mu, f, 0), g, f.degree),
    )


def tribrace(h: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """Double sum (h o_i f) o_j g with g strictly right of f's block."""
    _check_pair(h, f)
    _check_pair(f, g)
    upper_j = h.reduced_degree + f.reduced_degree
    out = None
    for i in range(h.degree - 1):
        hf = partial_compose(h, f, i)
        for j in range(i + f.degree, upper_j + 1):
            term = partial_compose(hf, g, j)
            out = term if out is None else add(out, term)
    if out is None:
        return _zero(h, h.degree + f.reduced_degree + g.reduced_degree)
    return out


def tetrabrace(h: MultiOp, f: MultiOp, g: MultiOp, b: MultiOp) -> MultiOp:
    """Triple sum ((h o_i f) o_j g) o_k b with disjoint right-ordered blocks."""
    _check_pair(h, f)
    _check_pair(f, g)
    _check_pair(g, b)
    rh, rf, rg = h.reduced_degree, f.reduced_degree, g.reduced_degree
    out = None
    for i in range(h.degree - 2):
        hf = partial_compose(h, f, i)
        for j in range(i + f.degree, rh + rf):
            hfg = partial_compose(hf, g, j)
            for k in range(j + g.degree, rh + rf + rg + 1):
                term = partial_compose(hfg, b, k)
                out = term if out is None else add(out, term)
    if out is None:
        return _zero(
            h,
            h.degree + f.reduced_degree + g.reduced_degree + b.reduced_degree,
        )
    return out


def bracket(f: MultiOp, g: MultiOp) -> MultiOp:
    """Graded commutator of total composition."""
    sign = sign_pow(f.reduced_degree * g.reduced_degree)
    return sub(total_compose(f, g), scale(sign, total_compose(g, f)))


def compose_associator(h: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """Associator of total composition: (h . f) . g - h . (f . g).

    Equals tribrace(h, f, g) + (-1)**(|f| |g|) tribrace(h, g, f), the
    right-symmetry property that makes the bracket satisfy Jacobi.
    """
    return sub(
        total_compose(total_compose(h, f), g),
        total_compose(h, total_compose(f, g)),
    )
