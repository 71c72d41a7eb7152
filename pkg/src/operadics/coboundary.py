"""Coboundary operator attached to a binary multiplication, and its deviations.

For a fixed degree-2 op mu the coboundary of f is the right adjoint action

    d f = [f, mu] = f . mu - (-1)**|f| mu . f        (degree +1)

d is a right derivation of the bracket but not of total composition or of
the cup product; the deviation combinations below quantify exactly how far
off it is.  The associator tensor mu . mu controls all of them, and d
squares to zero precisely when mu is associative.
"""

from __future__ import annotations

from .braces import bracket, cup, total_compose, tribrace, _require_mu
from .multiop import MultiOp, add, identity_op, scale, sub
from .scalars import sign_pow


def coboundary(mu: MultiOp, f: MultiOp) -> MultiOp:
    """d f = [f, mu]."""
    _require_mu(mu)
    return bracket(f, mu)


def coboundary_via_unit(mu: MultiOp, f: MultiOp) -> MultiOp:
    """Equivalent unit-based form: f ~ 1 + f . mu + (-1)**|f| 1 ~ f."""
    _require_mu(mu)
    unit = identity_op(f.dim, f.variance, f.backend)
    return add(
        add(cup(mu, f, unit), total_compose(f, mu)),
        scale(sign_pow(f.reduced_degree), cup(mu, unit, f)),
    )


def adjoint_action(f: MultiOp, x: MultiOp) -> MultiOp:
    """Right adjoint action of f: x -> [x, f]."""
    return bracket(x, f)


def coboundary_square(mu: MultiOp, f: MultiOp) -> MultiOp:
    """d(d f).  Equals [f, mu . mu], so it vanishes for associative mu."""
    return coboundary(mu, coboundary(mu, f))


def compose_deviation(mu: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """How far d is from being a derivation of total composition:

    d(f . g) - f . d g - (-1)**|g| d f . g
    """
    return sub(
        sub(
            coboundary(mu, total_compose(f, g)),
            total_compose(f, coboundary(mu, g)),
        ),
        scale(sign_pow(g.reduced_degree), total_compose(coboundary(mu, f), g)),
    )


def brace_deviation(mu: MultiOp, h: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """How far d is from being a derivation of the tribrace:

    d{h,f,g} - {h,f,dg} - (-1)**|g| {h,df,g} - (-1)**(|g|+|f|) {dh,f,g}
    """
    out = sub(
        coboundary(mu, tribrace(h, f, g)),
        tribrace(h, f, coboundary(mu, g)),
    )
    out = sub(
        out,
        scale(sign_pow(g.reduced_degree), tribrace(h, coboundary(mu, f), g)),
    )
    return sub(
        out,
        scale(
            sign_pow(g.reduced_degree + f.reduced_degree),
            tribrace(coboundary(mu, h), f, g),
        ),
    )


def cup_deviation(mu: MultiOp, f: MultiOp, g: MultiOp) -> MultiOp:
    """How far d is from being a derivation of the cup product:

    d(f ~ g) - f ~ d g - (-1)**deg(g) d f ~ g
    """
    return sub(
        sub(coboundary(mu, cup(mu, f, g)), cup(mu, f, coboundary(mu, g))),
        scale(sign_pow(g.degree), cup(mu, coboundary(mu, f), g)),
    )
