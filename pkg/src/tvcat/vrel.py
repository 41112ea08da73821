"""V-relations: quantale-valued matrices between finite carriers.

Carrier elements are arbitrary hashable values (strings, or nested tuples for
product and monad carriers).  Entries map carrier pairs to quantale element
indices; missing pairs are bottom, so sparse structures stay sparse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping

from .quantale import FormatError, Quantale
from .report import sort_key


def pair_carrier(xs: tuple, ys: tuple) -> tuple:
    """Row-major product carrier; every module pairs carriers through this
    single helper so projections and joint structures stay aligned."""
    return tuple((x, y) for x in xs for y in ys)


@dataclass(frozen=True)
class VRel:
    quantale: Quantale
    src: tuple
    dst: tuple
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        srcset, dstset = set(self.src), set(self.dst)
        n = self.quantale.n
        for (x, y), v in self.entries.items():
            if x not in srcset or y not in dstset:
                raise FormatError("relation entry outside carriers: %r" % ((x, y),))
            if not 0 <= v < n:
                raise FormatError("relation entry out of quantale range")

    def __call__(self, x, y) -> int:
        return self.entries.get((x, y), self.quantale.bottom)

    def _make(self, src, dst, fn: Callable) -> "VRel":
        bot = self.quantale.bottom
        ent = {}
        for x in src:
            for y in dst:
                v = fn(x, y)
                if v != bot:
                    ent[(x, y)] = v
        return VRel(self.quantale, src, dst, ent)

    # ---- relational calculus ----

    def compose(self, r: "VRel") -> "VRel":
        """self . r, for r: X -|-> Y and self: Y -|-> Z."""
        if self.quantale is not r.quantale and self.quantale != r.quantale:
            raise FormatError("composition across different quantales")
        if self.src != r.dst:
            raise FormatError("carrier mismatch in composition")
        q = self.quantale
        mid = r.dst
        return r._make(r.src, self.dst, lambda x, z: q.sup(
            q.tens(r(x, y), self(y, z)) for y in mid))

    def transpose(self) -> "VRel":
        return self._make(self.dst, self.src, lambda y, x: self(x, y))

    def owedge(self, s: "VRel") -> "VRel":
        """Joint relation on product carriers with entrywise meet."""
        q = self.quantale
        src = pair_carrier(self.src, s.src)
        dst = pair_carrier(self.dst, s.dst)
        return self._make(src, dst, lambda p, p1: q.meet[self(p[0], p1[0])][s(p[1], p1[1])])

    def tensor_scalar(self, u: int) -> "VRel":
        q = self.quantale
        return self._make(self.src, self.dst, lambda x, y: q.tens(self(x, y), u))

    def meet(self, s: "VRel") -> "VRel":
        q = self.quantale
        return self._make(self.src, self.dst, lambda x, y: q.meet[self(x, y)][s(x, y)])

    def join(self, s: "VRel") -> "VRel":
        q = self.quantale
        return self._make(self.src, self.dst, lambda x, y: q.join[self(x, y)][s(x, y)])

    def leq(self, s: "VRel") -> bool:
        q = self.quantale
        return all(q.le(self(x, y), s(x, y))
                   for x in self.src for y in self.dst)

    def first_gap(self, s: "VRel"):
        """First (x, y) in deterministic order where self(x,y) is not below
        s(x,y), or None; the witness primitive for relation comparisons."""
        q = self.quantale
        for x in sorted(self.src, key=sort_key):
            for y in sorted(self.dst, key=sort_key):
                if not q.le(self(x, y), s(x, y)):
                    return x, y
        return None

    def __eq__(self, other):
        if not isinstance(other, VRel):
            return NotImplemented
        if (self.quantale != other.quantale or self.src != other.src
                or self.dst != other.dst):
            return False
        return all(self(x, y) == other(x, y)
                   for x in self.src for y in self.dst)

    def __hash__(self):
        return hash((self.src, self.dst))

    def restrict(self, src: tuple, dst: tuple) -> "VRel":
        return self._make(src, dst, self)

    def rename(self, fsrc: Callable, fdst: Callable) -> "VRel":
        """Transport along carrier bijections."""
        src = tuple(fsrc(x) for x in self.src)
        dst = tuple(fdst(y) for y in self.dst)
        ent = {(fsrc(x), fdst(y)): v for (x, y), v in self.entries.items()}
        return VRel(self.quantale, src, dst, ent)


def id_rel(q: Quantale, xs: tuple) -> VRel:
    """Identity relation: unit on the diagonal, bottom elsewhere."""
    return VRel(q, xs, xs, {(x, x): q.unit for x in xs})


def from_function(q: Quantale, f: Callable, src: tuple, dst: tuple) -> VRel:
    """Graph of a function as a V-relation (unit where y = f(x))."""
    return VRel(q, src, dst, {(x, f(x)): q.unit for x in src})


def constant_rel(q: Quantale, src: tuple, dst: tuple, u: int) -> VRel:
    ent = {} if u == q.bottom else {(x, y): u for x in src for y in dst}
    return VRel(q, src, dst, ent)


def all_relations(q: Quantale, src: tuple, dst: tuple):
    """Exhaustive generator of all V-relations src -|-> dst, in a fixed
    deterministic order."""
    cells = [(x, y) for x in src for y in dst]
    for values in product(range(q.n), repeat=len(cells)):
        ent = {c: v for c, v in zip(cells, values) if v != q.bottom}
        yield VRel(q, src, dst, ent)


def random_relation(q: Quantale, src: tuple, dst: tuple, rng) -> VRel:
    ent = {}
    for x in src:
        for y in dst:
            v = rng.randrange(q.n)
            if v != q.bottom:
                ent[(x, y)] = v
    return VRel(q, src, dst, ent)
