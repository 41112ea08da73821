"""Finite-data Set-monads with enumerable action on small carriers.

Three genuinely distinct kinds are shipped: the identity monad, the free
monoid (word) monad truncated at a depth bound, and the "labelled" monad
X |-> X x H for a finite monoid H.  Ultrafilters on finite sets are
principal, so the ultrafilter monad is shipped as an alias of the identity
monad; gallery entries built on it document that reduction.

Each monad carries its algebra map ``xi`` on the quantale, which induces the
lax extension to V-relations (see theory.py).  For the word monad the
multiplication is partial: flattening may exceed the depth bound, in which
case operations skip the element and report it as a coverage statistic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .quantale import FormatError, Quantale
from .report import CheckReport, Reporter, sort_key
from .vrel import pair_carrier


@dataclass(frozen=True)
class Monoid:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    unit: int

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise FormatError("monoid table must be %dx%d" % (n, n))
        if any(not 0 <= v < n for r in self.table for v in r):
            raise FormatError("monoid table entry out of range")
        if not 0 <= self.unit < n:
            raise FormatError("monoid unit out of range")
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise FormatError("monoid table is not associative")
        for a in range(n):
            if self.table[self.unit][a] != a or self.table[a][self.unit] != a:
                raise FormatError("monoid unit law fails")

    def mul(self, a: str, b: str) -> str:
        return self.labels[self.table[self.labels.index(a)][self.labels.index(b)]]

    @classmethod
    def from_dict(cls, d: dict) -> "Monoid":
        labels = tuple(str(x) for x in d["elements"])
        idx = {lab: i for i, lab in enumerate(labels)}
        table = tuple(tuple(idx[v] for v in row) for row in d["table"])
        return cls(labels, table, idx[d["unit"]])

    def to_dict(self) -> dict:
        return {"elements": list(self.labels),
                "table": [[self.labels[v] for v in row] for row in self.table],
                "unit": self.labels[self.unit]}


def z2() -> Monoid:
    return Monoid(("e", "g"), ((0, 1), (1, 0)), 0)


class TheoryMonad:
    """Common interface: carrier enumeration, functorial action on elements,
    unit, (possibly partial) multiplication, and the algebra map xi."""

    kind: str
    bounded = False

    def carrier(self, xs: tuple) -> tuple:
        raise NotImplementedError

    def map_elem(self, f: Callable, t):
        raise NotImplementedError

    def unit(self, x):
        raise NotImplementedError

    def mult(self, tt):
        """Flatten one level; None when out of the depth bound."""
        raise NotImplementedError

    def in_bound(self, tt) -> bool:
        return self.mult(tt) is not None

    def xi(self, tv, q: Quantale) -> int:
        raise NotImplementedError

    def xi_of_values(self, values, q: Quantale) -> int:
        """xi evaluated from the sequence of base-letter values; must agree
        with the structural route through map_elem and xi."""
        raise NotImplementedError

    def bound_info(self):
        return None

    def describe(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self.kind)


class IdentityMonad(TheoryMonad):
    kind = "identity"

    def carrier(self, xs):
        return tuple(xs)

    def map_elem(self, f, t):
        return f(t)

    def unit(self, x):
        return x

    def mult(self, tt):
        return tt

    def xi(self, tv, q):
        return tv

    def xi_of_values(self, values, q):
        return values[0]


class FiniteUltrafilterMonad(IdentityMonad):
    """On finite carriers every ultrafilter is principal, so this is the
    identity monad under another name; kept distinct so reports can state
    which reduction was used."""

    kind = "finite_ultrafilter"


class WordMonad(TheoryMonad):
    """Free monoid monad, truncated: TX holds words of length <= max_len.

    Quantifications over TTX range over words-of-words whose flattening stays
    within the bound; everything derived from them carries a bounded-depth
    flag.  xi is the tensor product of the letters (unit for the empty word).
    """

    kind = "word"
    bounded = True

    def __init__(self, max_len: int):
        if max_len < 1:
            raise FormatError("word monad needs max_len >= 1")
        self.max_len = max_len

    def carrier(self, xs):
        out = [()]
        for ln in range(1, self.max_len + 1):
            out.extend(product(xs, repeat=ln))
        return tuple(out)

    def map_elem(self, f, t):
        return tuple(f(x) for x in t)

    def unit(self, x):
        return (x,)

    def mult(self, tt):
        flat = tuple(x for w in tt for x in w)
        return flat if len(flat) <= self.max_len else None

    def xi(self, tv, q):
        return q.tens_all(tv)

    def xi_of_values(self, values, q):
        return q.tens_all(values)

    def bound_info(self):
        return {"max_word_len": self.max_len}

    def describe(self):
        return {"kind": "word", "max_len": self.max_len}


class LabelledMonad(TheoryMonad):
    """X |-> X x H for a finite monoid H; xi projects out the label."""

    kind = "labelled"

    def __init__(self, monoid: Monoid):
        self.monoid = monoid

    def carrier(self, xs):
        return tuple((x, h) for x in xs for h in self.monoid.labels)

    def map_elem(self, f, t):
        return (f(t[0]), t[1])

    def unit(self, x):
        return (x, self.monoid.labels[self.monoid.unit])

    def mult(self, tt):
        (x, h1), h2 = tt
        return (x, self.monoid.mul(h1, h2))

    def xi(self, tv, q):
        return tv[0]

    def xi_of_values(self, values, q):
        return values[0]

    def describe(self):
        return {"kind": "labelled", "monoid": self.monoid.to_dict()}


def monad_from_dict(d: dict) -> TheoryMonad:
    kind = d.get("kind")
    if kind == "identity":
        return IdentityMonad()
    if kind == "finite_ultrafilter":
        return FiniteUltrafilterMonad()
    if kind == "word":
        if "max_len" not in d:
            raise FormatError("word monad needs max_len")
        return WordMonad(int(d["max_len"]))
    if kind == "labelled":
        if "monoid" not in d:
            raise FormatError("labelled monad needs a monoid table")
        return LabelledMonad(Monoid.from_dict(d["monoid"]))
    raise FormatError("unknown monad kind %r" % kind)


def monad_by_name(spec: str) -> TheoryMonad:
    """Resolve compact CLI syntax: identity, word:2, labelled:z2, ..."""
    base, _, arg = spec.partition(":")
    if base == "identity":
        return IdentityMonad()
    if base == "finite_ultrafilter":
        return FiniteUltrafilterMonad()
    if base == "word":
        try:
            return WordMonad(int(arg))
        except ValueError:
            raise FormatError("word monad needs a numeric depth, e.g. word:2")
    if base == "labelled":
        if arg == "z2":
            return LabelledMonad(z2())
        raise FormatError("unknown builtin monoid %r (only z2)" % arg)
    raise FormatError("unknown monad %r" % spec)


def can_map(monad: TheoryMonad, xs: tuple, ys: tuple) -> dict:
    """The comparison map T(X x Y) -> TX x TY as an explicit dict."""
    pairs = pair_carrier(xs, ys)
    return {w: (monad.map_elem(lambda p: p[0], w),
                monad.map_elem(lambda p: p[1], w))
            for w in monad.carrier(pairs)}


# ---- law checks ----

def check_monad_laws(monad: TheoryMonad, xs: tuple, q: Quantale | None = None) -> CheckReport:
    """Monad unit/associativity laws on the in-bound fragment over carrier xs,
    plus the algebra laws for xi on the quantale when one is given."""
    rep = Reporter("monad_laws", bound=monad.bound_info())
    tx = monad.carrier(xs)
    # m . eT = id and m . Te = id
    for t in tx:
        rep.tick()
        if monad.mult(monad.unit(t)) != t:
            return rep.fail("mult-unit-left", repr(t))
        te = monad.map_elem(monad.unit, t)
        m = monad.mult(te)
        if m is None:
            rep.skip()
        elif m != t:
            return rep.fail("mult-unit-right", repr(t))
    # m . mT = m . Tm on in-bound three-level elements
    ttx = monad.carrier(tx)
    for ttt in monad.carrier(ttx):
        lhs_inner = monad.mult(ttt)
        tm = monad.map_elem(monad.mult, ttt) if all(
            monad.in_bound(t2) for t2 in _letters(monad, ttt)) else None
        if lhs_inner is None or tm is None:
            rep.skip()
            continue
        lhs = monad.mult(lhs_inner)
        rhs = monad.mult(tm)
        if lhs is None or rhs is None:
            rep.skip()
            continue
        rep.tick()
        if lhs != rhs:
            return rep.fail("mult-associative", repr(ttt))
    if q is not None:
        elems = tuple(range(q.n))
        for v in elems:
            rep.tick()
            if monad.xi(monad.unit(v), q) != v:
                return rep.fail("xi-unit", q.labels[v])
        for tt in monad.carrier(monad.carrier(elems)):
            m = monad.mult(tt)
            if m is None:
                rep.skip()
                continue
            rep.tick()
            lhs = monad.xi(m, q)
            rhs = monad.xi(monad.map_elem(lambda t: monad.xi(t, q), tt), q)
            if lhs != rhs:
                return rep.fail("xi-mult", repr(tt))
    return rep.ok()


def _letters(monad: TheoryMonad, t):
    """Base positions of a T-element, for in-bound screening."""
    if isinstance(monad, WordMonad):
        return t
    if isinstance(monad, LabelledMonad):
        return (t[0],)
    return (t,)


def check_bc_samples(monad: TheoryMonad, squares=None) -> CheckReport:
    """Weak-pullback preservation on sampled pullback squares of finite
    functions, and the weak-pullback property of the m-naturality squares."""
    rep = Reporter("bc_squares", bound=monad.bound_info())
    if squares is None:
        squares = _default_squares()
    for a_car, b_car, c_car, f, g in squares:
        p_car = tuple(p for p in pair_carrier(a_car, b_car) if f[p[0]] == g[p[1]])
        tp = monad.carrier(p_car)
        ta = monad.carrier(a_car)
        tb = monad.carrier(b_car)
        reachable = set()
        for tpv in tp:
            reachable.add((monad.map_elem(lambda p: p[0], tpv),
                           monad.map_elem(lambda p: p[1], tpv)))
        for fa in ta:
            for fb in tb:
                if monad.map_elem(lambda x: f[x], fa) != monad.map_elem(lambda y: g[y], fb):
                    continue
                rep.tick()
                if (fa, fb) not in reachable:
                    return rep.fail("weak-pullback", [repr(fa), repr(fb)])
    # m-naturality squares as weak pullbacks, over small function samples
    for a_car, b_car, f in _default_functions():
        ta = monad.carrier(a_car)
        tb = monad.carrier(b_car)
        tta = monad.carrier(ta)
        images = {}
        for big in tta:
            m = monad.mult(big)
            if m is None:
                rep.skip()
                continue
            key = (monad.map_elem(lambda t: monad.map_elem(lambda x: f[x], t), big), m)
            images.setdefault(key[0], set()).add(m)
        for bigb in monad.carrier(tb):
            mb = monad.mult(bigb)
            if mb is None:
                rep.skip()
                continue
            for fa in ta:
                if monad.map_elem(lambda x: f[x], fa) != mb:
                    continue
                rep.tick()
                if fa not in images.get(bigb, set()):
                    return rep.fail("m-naturality-weak-pullback",
                                    [repr(bigb), repr(fa)])
    return rep.ok()


def _default_squares():
    a = ("a0", "a1")
    b = ("b0", "b1")
    c = ("c0",)
    f1 = {"a0": "c0", "a1": "c0"}
    g1 = {"b0": "c0", "b1": "c0"}
    c2 = ("c0", "c1")
    f2 = {"a0": "c0", "a1": "c1"}
    g2 = {"b0": "c0", "b1": "c1"}
    return [(a, b, c, f1, g1), (a, b, c2, f2, g2)]


def _default_functions():
    a = ("a0", "a1")
    b = ("b0",)
    return [(a, b, {"a0": "b0", "a1": "b0"}),
            (a, a, {"a0": "a1", "a1": "a0"})]
