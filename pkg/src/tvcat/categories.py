"""(T,V)-categories: structures, functors, lifts, reflector, duals, M/K.

A structure is a carrier X together with a V-relation a: TX -|-> X.  For the
word monad only the in-bound fragment of a is stored and every derived report
carries the depth bound.  Reflexivity (R) and transitivity (T) are checked,
never assumed; graph constructors return unchecked structures whose category
status is established by an explicit check_category call.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iter_product

from .limits import check_guard
from .monads import TheoryMonad, monad_by_name, monad_from_dict
from .quantale import FormatError, Quantale, quantale_by_name
from .report import CheckReport, Reporter, sort_key
from .theory import LaxExtension
from .vrel import VRel, pair_carrier, random_relation


class TVStructure:
    """A pair (X, a) with a: TX -|-> X over a fixed lax extension."""

    def __init__(self, ext: LaxExtension, carrier: tuple, a: VRel,
                 name: str = "", flags: dict | None = None):
        if a.src != ext.monad.carrier(carrier) or a.dst != carrier:
            raise FormatError("structure relation carriers do not match TX, X")
        if len(set(carrier)) != len(carrier):
            raise FormatError("carrier has duplicate elements")
        self.ext = ext
        self.carrier = carrier
        self.a = a
        self.name = name
        self.flags = dict(flags or {})

    @property
    def quantale(self) -> Quantale:
        return self.ext.quantale

    @property
    def monad(self) -> TheoryMonad:
        return self.ext.monad

    @property
    def tx(self) -> tuple:
        return self.a.src

    def a0(self) -> VRel:
        """The underlying V-category structure a . e: X -|-> X."""
        e = self.monad.unit
        ent = {}
        for x in self.carrier:
            for y in self.carrier:
                v = self.a(e(x), y)
                if v != self.quantale.bottom:
                    ent[(x, y)] = v
        return VRel(self.quantale, self.carrier, self.carrier, ent)

    def __repr__(self):
        return "TVStructure(%s, |X|=%d)" % (self.name or "?", len(self.carrier))

    def __eq__(self, other):
        if not isinstance(other, TVStructure):
            return NotImplemented
        return (self.quantale == other.quantale
                and self.carrier == other.carrier and self.a == other.a)

    def __hash__(self):
        return hash(self.carrier)


@dataclass
class TVFunctor:
    source: TVStructure
    target: TVStructure
    map: dict

    def __post_init__(self):
        missing = [x for x in self.source.carrier if x not in self.map]
        if missing:
            raise FormatError("functor map misses carrier elements: %r" % missing)
        tgt = set(self.target.carrier)
        if any(self.map[x] not in tgt for x in self.source.carrier):
            raise FormatError("functor map leaves the target carrier")

    def __call__(self, x):
        return self.map[x]

    def t_map(self, t):
        """Tf applied to a T-element of the source."""
        return self.source.monad.map_elem(lambda x: self.map[x], t)


def identity_functor(s: TVStructure) -> TVFunctor:
    return TVFunctor(s, s, {x: x for x in s.carrier})


def compose_functors(g: TVFunctor, f: TVFunctor) -> TVFunctor:
    if f.target is not g.source and f.target != g.source:
        raise FormatError("functor composition mismatch")
    return TVFunctor(f.source, g.target, {x: g.map[f.map[x]] for x in f.source.carrier})


# ---- axioms ----

def check_graph(s: TVStructure) -> CheckReport:
    """Reflexivity (R): k <= a(e x, x) for every point."""
    rep = Reporter("graph", bound=s.ext.bound_info())
    q = s.quantale
    e = s.monad.unit
    for x in sorted(s.carrier, key=sort_key):
        rep.tick()
        if not q.le(q.unit, s.a(e(x), x)):
            return rep.fail("reflexivity", [repr(x)],
                            value=q.labels[s.a(e(x), x)])
    return rep.ok()


def check_category(s: TVStructure) -> CheckReport:
    """(R) and (T) with witnesses; (T) quantifies over in-bound TTX only."""
    rep = Reporter("category", bound=s.ext.bound_info())
    q = s.quantale
    sub = check_graph(s)
    rep.tick(sub.samples)
    if not sub.passed:
        return rep.fail(sub.law, sub.witness, **sub.details)
    ta = s.ext.extend(s.a)
    monad = s.monad
    bot = q.bottom
    for xx in sorted(ta.src, key=sort_key):
        mx = monad.mult(xx)
        if mx is None:
            rep.skip()
            continue
        for xv in s.tx:
            v1 = ta(xx, xv)
            if v1 == bot:
                rep.tick(len(s.carrier))
                continue
            for x in s.carrier:
                rep.tick()
                lhs = q.tens(v1, s.a(xv, x))
                if not q.le(lhs, s.a(mx, x)):
                    return rep.fail("transitivity", [repr(xx), repr(xv), repr(x)],
                                    lhs=q.labels[lhs], rhs=q.labels[s.a(mx, x)])
    s.flags["category"] = True
    return rep.ok()


def is_category(s: TVStructure) -> bool:
    if "category" not in s.flags:
        s.flags["category"] = check_category(s).passed
    return s.flags["category"]


def check_functor(f: TVFunctor) -> CheckReport:
    rep = Reporter("functor", bound=f.source.ext.bound_info())
    q = f.source.quantale
    if q != f.target.quantale:
        raise FormatError("functor across different quantales")
    b = f.target.a
    for t in sorted(f.source.tx, key=sort_key):
        ft = f.t_map(t)
        for x in f.source.carrier:
            rep.tick()
            if not q.le(f.source.a(t, x), b(ft, f.map[x])):
                return rep.fail("functoriality", [repr(t), repr(x)],
                                lhs=q.labels[f.source.a(t, x)],
                                rhs=q.labels[b(ft, f.map[x])])
    return rep.ok()


def check_fully_faithful(f: TVFunctor) -> CheckReport:
    """Functoriality with equality: a(t, x) = b(Tf t, f x) throughout."""
    rep = Reporter("fully_faithful", bound=f.source.ext.bound_info())
    q = f.source.quantale
    b = f.target.a
    for t in sorted(f.source.tx, key=sort_key):
        ft = f.t_map(t)
        for x in f.source.carrier:
            rep.tick()
            if f.source.a(t, x) != b(ft, f.map[x]):
                return rep.fail("fully-faithful", [repr(t), repr(x)],
                                lhs=q.labels[f.source.a(t, x)],
                                rhs=q.labels[b(ft, f.map[x])])
    return rep.ok()


def functor_leq(f: TVFunctor, g: TVFunctor) -> bool:
    """The 2-cell order: f <= g iff k <= b(e(f x), g x) pointwise."""
    if f.source.carrier != g.source.carrier or f.target is not g.target:
        if f.target != g.target:
            raise FormatError("functor order needs a common (co)domain")
    q = f.target.quantale
    b = f.target.a
    e = f.target.monad.unit
    return all(q.le(q.unit, b(e(f.map[x]), g.map[x])) for x in f.source.carrier)


def functor_equiv(f: TVFunctor, g: TVFunctor) -> bool:
    return functor_leq(f, g) and functor_leq(g, f)


# ---- initial and final lifts ----

def initial_lift(ext: LaxExtension, carrier: tuple, cone) -> TVStructure:
    """Initial structure for a family of maps into structured targets:
    a(t, x) = /\\_i b_i(Tf_i t, f_i x)."""
    q = ext.quantale
    monad = ext.monad
    tx = monad.carrier(carrier)
    ent = {}
    for t in tx:
        for x in carrier:
            v = q.inf(tgt.a(monad.map_elem(lambda z: m[z], t), m[x])
                      for m, tgt in cone)
            if v != q.bottom:
                ent[(t, x)] = v
    return TVStructure(ext, carrier, VRel(q, tx, carrier, ent))


def product(sx: TVStructure, sy: TVStructure):
    """Binary product via the initial lift of the two projections; returns
    (structure, p1, p2)."""
    carrier = pair_carrier(sx.carrier, sy.carrier)
    p1 = {p: p[0] for p in carrier}
    p2 = {p: p[1] for p in carrier}
    s = initial_lift(sx.ext, carrier, [(p1, sx), (p2, sy)])
    return s, TVFunctor(s, sx, p1), TVFunctor(s, sy, p2)


def subspace(s: TVStructure, subset: tuple) -> TVFunctor:
    """Initial lift along the inclusion; returns the (fully faithful)
    inclusion functor."""
    if any(x not in s.carrier for x in subset):
        raise FormatError("subspace elements must come from the carrier")
    inc = {x: x for x in subset}
    sub = initial_lift(s.ext, tuple(subset), [(inc, s)])
    return TVFunctor(sub, s, inc)


def final_lift(ext: LaxExtension, carrier: tuple, cocone) -> TVStructure:
    """Final graph structure for a sink of maps out of structured sources,
    joined with the reflexive floor e-degree: b(t, y) = \\/ {a_i(s, x) |
    Tf_i s = t, f_i x = y} v (k at (e y, y))."""
    q = ext.quantale
    monad = ext.monad
    ty = monad.carrier(carrier)
    acc: dict = {}

    def bump(key, v):
        prev = acc.get(key)
        acc[key] = v if prev is None else q.join[prev][v]

    for y in carrier:
        bump((monad.unit(y), y), q.unit)
    for src, m in cocone:
        for (t, x), v in src.a.entries.items():
            bump((monad.map_elem(lambda z: m[z], t), m[x]), v)
    ent = {k: v for k, v in acc.items() if v != q.bottom}
    return TVStructure(ext, carrier, VRel(q, ty, carrier, ent))


def graph_to_category(s: TVStructure) -> TVStructure:
    """Least category structure above the given graph: joins in the
    reflexive floor, then iterates the transitivity-defect closure
    a |-> a v (m-image of Ta (x) a) to its fixed point.  Defects sitting at
    out-of-bound words cannot be propagated; their presence is recorded in
    the bounded_closure flag."""
    q = s.quantale
    monad = s.monad
    ext = s.ext
    ent = dict(s.a.entries)
    for x in s.carrier:
        key = (monad.unit(x), x)
        ent[key] = q.join[ent.get(key, q.bottom)][q.unit]
    bounded_defect = False
    while True:
        a = VRel(q, s.tx, s.carrier, {k: v for k, v in ent.items() if v != q.bottom})
        ta = ext.extend(a)
        changed = False
        for (xx, xv), v1 in ta.entries.items():
            mx = monad.mult(xx)
            for x in s.carrier:
                v = q.tens(v1, a(xv, x))
                if v == q.bottom:
                    continue
                if mx is None:
                    bounded_defect = True
                    continue
                key = (mx, x)
                old = ent.get(key, q.bottom)
                new = q.join[old][v]
                if new != old:
                    ent[key] = new
                    changed = True
        if not changed:
            break
    out = TVStructure(s.ext, s.carrier, a, name=s.name)
    out.flags["category"] = True
    if bounded_defect:
        out.flags["bounded_closure"] = True
    return out


def coproduct(sx: TVStructure, sy: TVStructure):
    """Disjoint union with the final structure; returns (structure, i1, i2).
    Carrier elements are tagged ("0", x) / ("1", y)."""
    m1 = {x: ("0", x) for x in sx.carrier}
    m2 = {y: ("1", y) for y in sy.carrier}
    carrier = tuple(m1[x] for x in sx.carrier) + tuple(m2[y] for y in sy.carrier)
    s = final_lift(sx.ext, carrier, [(sx, m1), (sy, m2)])
    s = graph_to_category(s)
    return s, TVFunctor(sx, s, m1), TVFunctor(sy, s, m2)


def quotient(s: TVStructure, proj: dict):
    """Final structure along a surjection, closed back into a category;
    returns (structure, projection functor)."""
    image = []
    for x in s.carrier:
        if proj[x] not in image:
            image.append(proj[x])
    g = final_lift(s.ext, tuple(image), [(s, proj)])
    g = graph_to_category(g)
    return g, TVFunctor(s, g, proj)


def tensor(sx: TVStructure, sy: TVStructure) -> TVStructure:
    """The tensor structure c(w, (x,y)) = a(Tpi_X w, x) (x) b(Tpi_Y w, y);
    a graph in general, category status by explicit check."""
    q = sx.quantale
    monad = sx.monad
    carrier = pair_carrier(sx.carrier, sy.carrier)
    tw = monad.carrier(carrier)
    ent = {}
    for w in tw:
        wx = monad.map_elem(lambda p: p[0], w)
        wy = monad.map_elem(lambda p: p[1], w)
        for x, y in carrier:
            v = q.tens(sx.a(wx, x), sy.a(wy, y))
            if v != q.bottom:
                ent[(w, (x, y))] = v
    s = TVStructure(sx.ext, carrier, VRel(q, tw, carrier, ent))
    s.flags["category"] = check_category(s).passed
    return s


# ---- separation and the reflector ----

def equiv_classes(s: TVStructure) -> list[tuple]:
    """Partition of the carrier by mutual k-closeness of points (the
    relation compared by the separation condition), closed transitively so
    that graphs are handled as well as categories."""
    q = s.quantale
    a0 = s.a0()
    near = {x: {x} for x in s.carrier}
    for x in s.carrier:
        for y in s.carrier:
            if q.le(q.unit, a0(x, y)) and q.le(q.unit, a0(y, x)):
                near[x].add(y)
    changed = True
    while changed:
        changed = False
        for x in s.carrier:
            for y in tuple(near[x]):
                if not near[y] <= near[x]:
                    near[x] |= near[y]
                    changed = True
    seen = set()
    classes = []
    for x in s.carrier:
        if x in seen:
            continue
        cls = tuple(sorted(near[x], key=sort_key))
        seen.update(cls)
        classes.append(cls)
    return classes


def separated(s: TVStructure) -> bool:
    return all(len(c) == 1 for c in equiv_classes(s))


def reflect_R(s: TVStructure):
    """Quotient by mutual k-closeness with the induced structure
    a~(t, [x]) = \\/ {a(w, x') | T eta w = t, x' ~ x}; returns (quotient,
    eta).  Class labels are the least original member of each class."""
    q = s.quantale
    monad = s.monad
    classes = equiv_classes(s)
    rep_of = {}
    for cls in classes:
        for x in cls:
            rep_of[x] = cls[0]
    carrier = []
    for x in s.carrier:
        if rep_of[x] not in carrier:
            carrier.append(rep_of[x])
    carrier = tuple(carrier)
    ty = monad.carrier(carrier)
    acc: dict = {}
    for (w, x1), v in s.a.entries.items():
        key = (monad.map_elem(lambda z: rep_of[z], w), rep_of[x1])
        prev = acc.get(key)
        acc[key] = v if prev is None else q.join[prev][v]
    ent = {k: v for k, v in acc.items() if v != q.bottom}
    out = TVStructure(s.ext, carrier, VRel(q, ty, carrier, ent), name=s.name)
    reached = {monad.map_elem(lambda z: rep_of[z], w) for w in s.tx}
    if any(t not in reached for t in ty):
        # a fiber of T eta came out empty (possible only under depth
        # truncation); the affected entries default to bottom
        out.flags["empty_eta_fiber"] = True
    eta = TVFunctor(s, out, dict(rep_of))
    return out, eta


def check_initial(f: TVFunctor) -> CheckReport:
    """f carries the initial structure: a(t, x) = b(Tf t, f x) exactly (the
    single-map case of the initial lift)."""
    sub = check_fully_faithful(f)
    sub.check = "initial"
    return sub


def check_final(f: TVFunctor) -> CheckReport:
    """f carries the final structure: b(t, y) is exactly the join of a over
    the fiber of (Tf, f)."""
    rep = Reporter("final", bound=f.source.ext.bound_info())
    q = f.source.quantale
    acc: dict = {}
    for (t, x), v in f.source.a.entries.items():
        key = (f.t_map(t), f.map[x])
        prev = acc.get(key, q.bottom)
        acc[key] = q.join[prev][v]
    b = f.target.a
    for t in sorted(f.target.tx, key=sort_key):
        for y in f.target.carrier:
            rep.tick()
            if b(t, y) != acc.get((t, y), q.bottom):
                return rep.fail("final-structure", [repr(t), repr(y)],
                                lhs=q.labels[b(t, y)],
                                rhs=q.labels[acc.get((t, y), q.bottom)])
    return rep.ok()


def check_R_preserves_products(sx: TVStructure, sy: TVStructure) -> CheckReport:
    """The reflector applied to a product agrees with the product of the
    reflections, along the canonical comparison ([(x,y)] |-> ([x],[y]))."""
    rep = Reporter("R_preserves_products", bound=sx.ext.bound_info())
    p, _, _ = product(sx, sy)
    rp, eta_p = reflect_R(p)
    rx, eta_x = reflect_R(sx)
    ry, eta_y = reflect_R(sy)
    q_prod, _, _ = product(rx, ry)
    phi = {z: (eta_x.map[z[0]], eta_y.map[z[1]]) for z in rp.carrier}
    rep.tick()
    if len(set(phi.values())) != len(rp.carrier) or len(rp.carrier) != len(q_prod.carrier):
        return rep.fail("comparison-not-bijective",
                        {"left": len(rp.carrier), "right": len(q_prod.carrier)})
    comparison = TVFunctor(rp, q_prod, phi)
    sub = check_fully_faithful(comparison)
    rep.tick(sub.samples)
    if not sub.passed:
        return rep.fail("comparison-not-iso", sub.witness, **sub.details)
    return rep.ok()


# ---- duals, M and K ----

def dual(s: TVStructure) -> TVStructure:
    """X^op = (TX, m . (Ta)-degree . m): the structure on TX whose value at
    (XX, t) joins Ta(YY, m XX) over all YY with m YY = t."""
    q = s.quantale
    monad = s.monad
    ta = s.ext.extend(s.a)
    carrier = s.tx
    ttx = monad.carrier(carrier)
    fibers: dict = {}
    for yy in ttx:
        my = monad.mult(yy)
        if my is not None:
            fibers.setdefault(my, []).append(yy)
    ent = {}
    bounded = False
    for xx in ttx:
        mx = monad.mult(xx)
        if mx is None:
            bounded = True
            continue
        for t in carrier:
            v = q.sup(ta(yy, mx) for yy in fibers.get(t, ()))
            if v != q.bottom:
                ent[(xx, t)] = v
    out = TVStructure(s.ext, carrier, VRel(q, ttx, carrier, ent),
                      name=s.name + "^op" if s.name else "")
    if bounded:
        out.flags["bounded_dual"] = True
    return out


@dataclass
class EMAlgebra:
    """A V-category (X, a0) with an algebra map alpha: TX -> X; for bounded
    monads alpha may be partial (missing keys are skipped in checks)."""

    ext: LaxExtension
    carrier: tuple
    a0: VRel
    alpha: dict
    flags: dict = field(default_factory=dict)

    @property
    def quantale(self):
        return self.ext.quantale


def check_algebra(alg: EMAlgebra) -> CheckReport:
    rep = Reporter("em_algebra", bound=alg.ext.bound_info())
    q = alg.quantale
    monad = alg.ext.monad
    a0 = alg.a0
    for x in alg.carrier:
        rep.tick()
        if not q.le(q.unit, a0(x, x)):
            return rep.fail("v-reflexivity", [repr(x)])
        for y in alg.carrier:
            for z in alg.carrier:
                rep.tick()
                if not q.le(q.tens(a0(x, y), a0(y, z)), a0(x, z)):
                    return rep.fail("v-transitivity", [repr(x), repr(y), repr(z)])
    tx = monad.carrier(alg.carrier)
    for x in alg.carrier:
        rep.tick()
        if alg.alpha.get(monad.unit(x)) != x:
            return rep.fail("algebra-unit", [repr(x)])
    for xx in monad.carrier(tx):
        mx = monad.mult(xx)
        if mx is None or any(t not in alg.alpha for t in _t_letters(monad, xx)):
            rep.skip()
            continue
        rep.tick()
        if alg.alpha.get(monad.map_elem(lambda t: alg.alpha[t], xx)) != alg.alpha.get(mx):
            return rep.fail("algebra-mult", [repr(xx)])
    ta0 = alg.ext.extend(a0)
    for t in tx:
        if t not in alg.alpha:
            rep.skip()
            continue
        for u in tx:
            if u not in alg.alpha:
                rep.skip()
                continue
            rep.tick()
            if not q.le(ta0(t, u), a0(alg.alpha[t], alg.alpha[u])):
                return rep.fail("alpha-v-functor", [repr(t), repr(u)])
    return rep.ok()


def _t_letters(monad, tt):
    from .monads import _letters
    return _letters(monad, tt)


def functor_M(s: TVStructure) -> EMAlgebra:
    """M sends (X, a) to (TX, Ta . m-degree, m)."""
    q = s.quantale
    monad = s.monad
    ta = s.ext.extend(s.a)
    carrier = s.tx
    ttx = monad.carrier(carrier)
    ent: dict = {}
    alpha = {}
    for xx in ttx:
        mx = monad.mult(xx)
        if mx is None:
            continue
        alpha[xx] = mx
        for t in carrier:
            v = ta(xx, t)
            key = (mx, t)
            prev = ent.get(key, q.bottom)
            ent[key] = q.join[prev][v]
    a0 = VRel(q, carrier, carrier, {k: v for k, v in ent.items() if v != q.bottom})
    return EMAlgebra(s.ext, carrier, a0, alpha)


def functor_K(alg: EMAlgebra) -> TVStructure:
    """K sends (X, a0, alpha) to (X, a0 . alpha)."""
    q = alg.quantale
    monad = alg.ext.monad
    tx = monad.carrier(alg.carrier)
    ent = {}
    bounded = False
    for t in tx:
        ax = alg.alpha.get(t)
        if ax is None:
            bounded = True
            continue
        for x in alg.carrier:
            v = alg.a0(ax, x)
            if v != q.bottom:
                ent[(t, x)] = v
    out = TVStructure(alg.ext, alg.carrier, VRel(q, tx, alg.carrier, ent))
    if bounded:
        out.flags["bounded_algebra"] = True
    return out


def v_hom_xi(ext: LaxExtension) -> TVStructure:
    """The structure (V, hom_xi) on the quantale's own carrier, with element
    labels as points."""
    q = ext.quantale
    r = ext.hom_xi()
    lab = q.labels.__getitem__
    rel = r.rename(lambda t: ext.monad.map_elem(lab, t), lab)
    return TVStructure(ext, tuple(q.labels), rel, name="V_hom_xi")


# ---- representability ----

def find_representation(s: TVStructure, guard: int | None = None):
    """Search for alpha: TX -> X making a left adjoint to the unit: a
    structure-compatible map out of the canonical structure on TX with
    alpha . e ~ 1.  Returns None, or (alpha, report) for the least candidate
    in pointwise carrier order; the report records pseudo-algebra status
    alpha . T alpha ~ alpha . m on in-bound elements."""
    q = s.quantale
    monad = s.monad
    tx = s.tx
    check_guard(len(s.carrier) ** len(tx), "representation search", guard)
    ta = s.ext.extend(s.a)
    ttx = monad.carrier(tx)
    fibers: dict = {}
    for yy in ttx:
        my = monad.mult(yy)
        if my is not None:
            fibers.setdefault(my, []).append(yy)
    # the canonical structure on TX: a^(XX, t) = \/ {Ta(YY, t) | m YY = m XX}
    hat: dict = {}
    for xx in ttx:
        mx = monad.mult(xx)
        if mx is None:
            continue
        for t in tx:
            v = q.sup(ta(yy, t) for yy in fibers.get(mx, ()))
            if v != q.bottom:
                hat[(xx, t)] = v
    a0 = s.a0()
    e = monad.unit
    order = sorted(s.carrier, key=sort_key)
    tx_sorted = sorted(tx, key=sort_key)
    for values in iter_product(order, repeat=len(tx_sorted)):
        alpha = dict(zip(tx_sorted, values))
        if not all(q.le(q.unit, a0(alpha[e(x)], x))
                   and q.le(q.unit, a0(x, alpha[e(x)])) for x in s.carrier):
            continue
        ok = True
        for (xx, t), v in hat.items():
            fxx = monad.map_elem(lambda u: alpha[u], xx)
            if not q.le(v, s.a(fxx, alpha[t])):
                ok = False
                break
        if not ok:
            continue
        rep = Reporter("representation", bound=s.ext.bound_info())
        pseudo = True
        for xx in ttx:
            mx = monad.mult(xx)
            if mx is None:
                rep.skip()
                continue
            rep.tick()
            lhs = alpha[monad.map_elem(lambda u: alpha[u], xx)]
            rhs = alpha[mx]
            if not (q.le(q.unit, a0(lhs, rhs)) and q.le(q.unit, a0(rhs, lhs))):
                pseudo = False
        return alpha, rep.ok(pseudo_algebra=pseudo)
    return None


# ---- constructors and serialization ----

def discrete(ext: LaxExtension, xs: tuple) -> TVStructure:
    """a(t, x) = k iff t = e(x), bottom elsewhere."""
    q = ext.quantale
    monad = ext.monad
    tx = monad.carrier(xs)
    ent = {(monad.unit(x), x): q.unit for x in xs}
    return TVStructure(ext, tuple(xs), VRel(q, tx, tuple(xs), ent))


def indiscrete(ext: LaxExtension, xs: tuple) -> TVStructure:
    q = ext.quantale
    monad = ext.monad
    tx = monad.carrier(xs)
    ent = {(t, x): q.top for t in tx for x in xs}
    return TVStructure(ext, tuple(xs), VRel(q, tx, tuple(xs), ent))


def one_point(ext: LaxExtension) -> TVStructure:
    return discrete(ext, ("*",))


def from_order(ext: LaxExtension, xs: tuple, pairs) -> TVStructure:
    """Identity-monad convenience: the structure of a preorder given by
    covering or order pairs (reflexive-transitive closure taken)."""
    q = ext.quantale
    rel = {(x, x) for x in xs}
    rel.update(pairs)
    changed = True
    while changed:
        changed = False
        for (x, y) in tuple(rel):
            for (y2, z) in tuple(rel):
                if y == y2 and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    from .monads import _letters
    monad = ext.monad
    tx = monad.carrier(tuple(xs))
    ent = {}
    for t in tx:
        for x in xs:
            if all((l, x) in rel for l in _letters(monad, t)):
                ent[(t, x)] = q.unit
    return TVStructure(ext, tuple(xs), VRel(q, tx, tuple(xs), ent))


def random_category(ext: LaxExtension, xs: tuple, rng) -> TVStructure:
    """A random graph closed into a category; the workhorse for sampled
    soundness suites."""
    q = ext.quantale
    monad = ext.monad
    tx = monad.carrier(tuple(xs))
    r = random_relation(q, tx, tuple(xs), rng)
    s = TVStructure(ext, tuple(xs), r)
    return graph_to_category(s)


def t_elem_to_str(monad: TheoryMonad, t) -> str:
    kind = monad.kind
    if kind == "word":
        return ",".join(t)
    if kind == "labelled":
        return "%s,%s" % t
    return str(t)


def t_elem_from_str(monad: TheoryMonad, text: str):
    kind = monad.kind
    if kind == "word":
        return tuple(p for p in text.split(",") if p != "")
    if kind == "labelled":
        x, _, h = text.rpartition(",")
        return (x, h)
    return text


def structure_to_dict(s: TVStructure) -> dict:
    q = s.quantale
    monad = s.monad
    entries = {}
    for t in s.tx:
        for x in s.carrier:
            v = s.a(t, x)
            if v != q.bottom:
                entries["%s;%s" % (t_elem_to_str(monad, t), x)] = q.labels[v]
    return {"quantale": q.to_dict(), "monad": monad.describe(),
            "carrier": list(s.carrier), "structure": entries}


def structure_from_dict(d: dict) -> TVStructure:
    qspec = d.get("quantale")
    if isinstance(qspec, str):
        q = quantale_by_name(qspec)
    elif isinstance(qspec, dict):
        q = Quantale.from_dict(qspec)
    else:
        raise FormatError("structure file needs a quantale name or object")
    mspec = d.get("monad", "identity")
    monad = monad_by_name(mspec) if isinstance(mspec, str) else monad_from_dict(mspec)
    carrier = tuple(str(x) for x in d.get("carrier", ()))
    if not carrier:
        raise FormatError("structure file needs a nonempty carrier")
    ext = LaxExtension(monad, q)
    tx = monad.carrier(carrier)
    txset = set(tx)
    ent = {}
    for key, lab in d.get("structure", {}).items():
        tpart, sep, xpart = key.rpartition(";")
        if not sep:
            raise FormatError("structure key %r must look like 'T-elem;x'" % key)
        t = t_elem_from_str(monad, tpart)
        if t not in txset or xpart not in carrier:
            raise FormatError("structure key %r outside carriers" % key)
        ent[(t, xpart)] = q.index(lab)
    s = TVStructure(ext, carrier, VRel(q, tx, carrier, ent),
                    name=str(d.get("name", "")))
    s.flags["graph"] = check_graph(s).passed
    s.flags["category"] = check_category(s).passed
    return s


def structure_from_file(path: str) -> TVStructure:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return structure_from_dict(json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError("cannot load structure %s: %s" % (path, exc))
