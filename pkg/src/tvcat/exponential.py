"""Graph exponentials and the exponentiability criterion.

The carrier of an exponential <X,Y> is the set of admissible maps X -> Y
(those underlying structure-compatible maps out of X x E, where E is the
one-point generator), stored as value tuples in carrier order so they can
serve as carrier elements themselves.  The structure b^a is computed with
Heyting-implication meets; since binary meet distributes over joins, the
defining supremum is attained and the meet formula is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .categories import (TVFunctor, TVStructure, check_category, product)
from .limits import check_guard
from .quantale import FormatError
from .report import CheckReport, Reporter, sort_key
from .vrel import VRel, pair_carrier


class NotTransitive(RuntimeError):
    """The exponential graph failed the category axioms; carries the
    offending tuple.  Signals that the base is not exponentiable against
    the chosen target."""

    def __init__(self, witness, law="transitivity"):
        super().__init__("exponential graph is not a category (%s) at %r"
                         % (law, witness))
        self.witness = witness
        self.law = law


@dataclass
class ExponentialGraph:
    """The graph <X,Y> together with its evaluation data."""

    sx: TVStructure
    sy: TVStructure
    structure: TVStructure  # carrier: admissible maps as value tuples

    def apply(self, h: tuple, x):
        return h[self.sx.carrier.index(x)]

    def ev_functor(self) -> TVFunctor:
        """Evaluation as a map out of the product <X,Y> x X."""
        p, _, _ = product(self.structure, self.sx)
        ev = {(h, x): self.apply(h, x) for (h, x) in p.carrier}
        return TVFunctor(p, self.sy, ev)


def admissible_maps(sx: TVStructure, sy: TVStructure,
                    guard: int | None = None) -> tuple:
    """Maps h: X -> Y underlying structure-compatible maps X x E -> Y: over
    every T-element of X x 1 sitting above the unit point of T1,
    a(t, x) /\\ k <= b(Th t, h x)."""
    q = sx.quantale
    monad = sx.monad
    check_guard(len(sy.carrier) ** len(sx.carrier), "exponential carrier", guard)
    cells = pair_carrier(sx.carrier, ("*",))
    estar = monad.unit("*")
    tests = []
    for w in monad.carrier(cells):
        if monad.map_elem(lambda p: p[1], w) != estar:
            continue
        tests.append(monad.map_elem(lambda p: p[0], w))
    out = []
    for values in iter_product(sy.carrier, repeat=len(sx.carrier)):
        h = dict(zip(sx.carrier, values))
        if all(q.le(q.meet[sx.a(t, x)][q.unit],
                    sy.a(monad.map_elem(lambda z: h[z], t), h[x]))
               for t in tests for x in sx.carrier):
            out.append(tuple(values))
    return tuple(out)


def graph_exponential(sx: TVStructure, sy: TVStructure,
                      guard: int | None = None) -> ExponentialGraph:
    """The largest structure on the admissible maps making evaluation
    structure-compatible: b^a(p, h) is the meet, over T-elements q of Z x X
    above p and points x, of heyting(a(Tpi_X q, x), b(Tev q, h x))."""
    if sx.quantale != sy.quantale:
        raise FormatError("exponential across different quantales")
    q = sx.quantale
    monad = sx.monad
    z = admissible_maps(sx, sy, guard)
    cells = pair_carrier(z, sx.carrier)
    tz = monad.carrier(z)
    xidx = {x: i for i, x in enumerate(sx.carrier)}
    acc = {(p, h): q.top for p in tz for h in z}
    for w in monad.carrier(cells):
        p = monad.map_elem(lambda c: c[0], w)
        tx = monad.map_elem(lambda c: c[1], w)
        tev = monad.map_elem(lambda c: c[0][xidx[c[1]]], w)
        for h in z:
            cur = acc[(p, h)]
            for x in sx.carrier:
                cur = q.meet[cur][q.heyting[sx.a(tx, x)][sy.a(tev, h[xidx[x]])]]
            acc[(p, h)] = cur
    ent = {k: v for k, v in acc.items() if v != q.bottom}
    s = TVStructure(sx.ext, z, VRel(q, tz, z, ent))
    return ExponentialGraph(sx, sy, s)


def check_exponentiability(sx: TVStructure) -> CheckReport:
    """The splitting criterion: for all in-bound XX, x, u, v,
    \\/_t (Ta(XX,t) /\\ u) (x) (a(t,x) /\\ v) >= a(m XX, x) /\\ (u (x) v)."""
    rep = Reporter("exponentiability", bound=sx.ext.bound_info())
    q = sx.quantale
    monad = sx.monad
    ta = sx.ext.extend(sx.a)
    elems = range(q.n)
    for xx in sorted(ta.src, key=sort_key):
        mx = monad.mult(xx)
        if mx is None:
            rep.skip()
            continue
        for x in sx.carrier:
            for u in elems:
                for v in elems:
                    rep.tick()
                    rhs = q.meet[sx.a(mx, x)][q.tensor[u][v]]
                    lhs = q.sup(q.tensor[q.meet[ta(xx, t)][u]]
                                [q.meet[sx.a(t, x)][v]] for t in sx.tx)
                    if not q.le(rhs, lhs):
                        return rep.fail("splitting", [repr(xx), repr(x),
                                                      q.labels[u], q.labels[v]],
                                        lhs=q.labels[lhs], rhs=q.labels[rhs])
    return rep.ok()


def check_frame_criterion(sx: TVStructure) -> CheckReport:
    """Over a frame: a . m = a . Ta as relations TTX -|-> X.  The details
    record the exponentiability verdict so the equivalence of the two tests
    can be asserted per instance."""
    q = sx.quantale
    if not q.is_frame():
        raise FormatError("the frame criterion needs a frame quantale")
    rep = Reporter("frame_criterion", bound=sx.ext.bound_info())
    monad = sx.monad
    ta = sx.ext.extend(sx.a)
    expo = check_exponentiability(sx).passed
    for xx in sorted(ta.src, key=sort_key):
        mx = monad.mult(xx)
        if mx is None:
            rep.skip()
            continue
        for x in sx.carrier:
            rep.tick()
            via_m = sx.a(mx, x)
            via_ta = q.sup(q.tensor[ta(xx, t)][sx.a(t, x)] for t in sx.tx)
            if via_m != via_ta:
                return rep.fail("composite-mismatch", [repr(xx), repr(x)],
                                via_m=q.labels[via_m], via_ta=q.labels[via_ta],
                                exponentiability=expo)
    return rep.ok(exponentiability=expo)


def exponential_in_cats(sx: TVStructure, sy: TVStructure,
                        guard: int | None = None) -> ExponentialGraph:
    """Builds the graph exponential and certifies it as a category; raises
    NotTransitive (with the witness) when the axioms fail."""
    exp = graph_exponential(sx, sy, guard)
    sub = check_category(exp.structure)
    if not sub.passed:
        raise NotTransitive(sub.witness, sub.law)
    return exp


def curry(fmap: dict, sz: TVStructure, exp: ExponentialGraph) -> TVFunctor:
    """Transpose a map f: Z x X -> Y (given as a dict on pairs) through the
    exponential; verifies membership in the carrier and functoriality."""
    xs = exp.sx.carrier
    maps = {}
    for z in sz.carrier:
        h = tuple(fmap[(z, x)] for x in xs)
        if h not in exp.structure.carrier:
            raise FormatError("curried map at %r is not admissible" % (z,))
        maps[z] = h
    fbar = TVFunctor(sz, exp.structure, maps)
    return fbar


def check_universal_property(exp: ExponentialGraph, fmap: dict,
                             sz: TVStructure,
                             guard: int | None = None) -> CheckReport:
    """ev . (curry f x 1) = f exactly, curry f is structure-compatible, and
    no other map Z -> <X,Y> satisfies the same equation (exhausted within
    the guard)."""
    rep = Reporter("universal_property", bound=exp.sx.ext.bound_info())
    fbar = curry(fmap, sz, exp)
    sub = check_category(sz)
    if not sub.passed:
        raise FormatError("universal property needs a category as domain")
    fsub = None
    from .categories import check_functor
    fsub = check_functor(fbar)
    rep.tick(fsub.samples)
    if not fsub.passed:
        return rep.fail("curry-not-functor", fsub.witness, **fsub.details)
    for z in sz.carrier:
        for x in exp.sx.carrier:
            rep.tick()
            if exp.apply(fbar.map[z], x) != fmap[(z, x)]:
                return rep.fail("triangle", [repr(z), repr(x)])
    zcar = exp.structure.carrier
    check_guard(len(zcar) ** len(sz.carrier), "uniqueness exhaustion", guard)
    others = 0
    for values in iter_product(zcar, repeat=len(sz.carrier)):
        g = dict(zip(sz.carrier, values))
        rep.tick()
        if g == fbar.map:
            continue
        if all(exp.apply(g[z], x) == fmap[(z, x)]
               for z in sz.carrier for x in exp.sx.carrier):
            others += 1
            return rep.fail("uniqueness", [repr(values)])
    return rep.ok(alternatives=others)
