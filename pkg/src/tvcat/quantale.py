"""Finite commutative unital quantales with Heyting meet structure.

All lattice and tensor data live in precomputed integer tables so the heavily
quantified checks in the rest of the package run on O(1) lookups.  Elements
are referred to by their index in the ``labels`` tuple; labels only matter at
the file-format boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .report import CheckReport, Reporter


class FormatError(ValueError):
    """Malformed input tables or files."""


def _closure(n: int, pairs: set[tuple[int, int]]) -> list[list[bool]]:
    leq = [[i == j for j in range(n)] for i in range(n)]
    for lo, hi in pairs:
        leq[lo][hi] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_i, row_k = leq[i], leq[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


@dataclass(frozen=True)
class Quantale:
    """A finite commutative unital quantale (V, <=, tensor, k).

    ``leq``, ``tensor`` are the primal tables; joins, meets, bottom, top,
    residuation ``hom`` and the Heyting implication are derived at
    construction time.  Construction is lenient about algebraic laws (so that
    ``check_quantale`` can report violations with witnesses) but requires the
    order to be a lattice, since everything else is derived from joins.
    """

    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    tensor: tuple[tuple[int, ...], ...]
    unit: int
    name: str = field(default="quantale", compare=False)
    # derived tables
    join: tuple[tuple[int, ...], ...] = field(init=False, compare=False)
    meet: tuple[tuple[int, ...], ...] = field(init=False, compare=False)
    bottom: int = field(init=False, compare=False)
    top: int = field(init=False, compare=False)
    hom: tuple[tuple[int, ...], ...] = field(init=False, compare=False)
    heyting: tuple[tuple[int, ...], ...] = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise FormatError("leq table must be %dx%d" % (n, n))
        if len(self.tensor) != n or any(len(row) != n for row in self.tensor):
            raise FormatError("tensor table must be %dx%d" % (n, n))
        if any(not (0 <= v < n) for row in self.tensor for v in row):
            raise FormatError("tensor entry out of range")
        if not 0 <= self.unit < n:
            raise FormatError("unit index out of range")
        leq = self.leq
        rng = range(n)

        def lub(cands):
            for w in cands:
                if all(leq[w][z] for z in cands):
                    return w
            return None

        def glb(cands):
            for w in cands:
                if all(leq[z][w] for z in cands):
                    return w
            return None

        join = [[None] * n for _ in rng]
        meet = [[None] * n for _ in rng]
        for u, v in product(rng, rng):
            join[u][v] = lub([w for w in rng if leq[u][w] and leq[v][w]])
            meet[u][v] = glb([w for w in rng if leq[w][u] and leq[w][v]])
        bot = next((w for w in rng if all(leq[w][z] for z in rng)), None)
        top = next((w for w in rng if all(leq[z][w] for z in rng)), None)
        if bot is None or top is None or any(
                x is None for row in join + meet for x in row):
            raise FormatError("order is not a lattice")
        hom = [[self._sup_of([v for v in rng if leq[self.tensor[u][v]][w]])
                for w in rng] for u in rng]
        heyt = [[self._sup_of([v for v in rng if leq[meet[u][v]][w]])
                 for w in rng] for u in rng]
        object.__setattr__(self, "join", tuple(map(tuple, join)))
        object.__setattr__(self, "meet", tuple(map(tuple, meet)))
        object.__setattr__(self, "bottom", bot)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "hom", tuple(map(tuple, hom)))
        object.__setattr__(self, "heyting", tuple(map(tuple, heyt)))

    def _sup_of(self, elems) -> int:
        # used during construction, before self.join is frozen
        n = len(self.labels)
        cands = [w for w in range(n)
                 if all(self.leq[u][w] for u in elems)]
        for w in cands:
            if all(self.leq[w][z] for z in cands):
                return w
        raise FormatError("order is not a lattice")

    # ---- element-level operations ----

    @property
    def n(self) -> int:
        return len(self.labels)

    def le(self, u: int, v: int) -> bool:
        return self.leq[u][v]

    def sup(self, elems) -> int:
        out = self.bottom
        for u in elems:
            out = self.join[out][u]
        return out

    def inf(self, elems) -> int:
        out = self.top
        for u in elems:
            out = self.meet[out][u]
        return out

    def tens(self, u: int, v: int) -> int:
        return self.tensor[u][v]

    def tens_all(self, elems) -> int:
        out = self.unit
        for u in elems:
            out = self.tensor[out][u]
        return out

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise FormatError("unknown quantale element %r" % (label,))

    def is_frame(self) -> bool:
        return self.tensor == self.meet

    def __repr__(self):
        return "Quantale(%s, n=%d)" % (self.name, self.n)

    # ---- file format ----

    def to_dict(self) -> dict:
        covers = []
        for i, j in product(range(self.n), repeat=2):
            if i != j and self.leq[i][j] and not any(
                    k != i and k != j and self.leq[i][k] and self.leq[k][j]
                    for k in range(self.n)):
                covers.append([self.labels[i], self.labels[j]])
        tens = {}
        for i in range(self.n):
            for j in range(i, self.n):
                tens["%s,%s" % (self.labels[i], self.labels[j])] = \
                    self.labels[self.tensor[i][j]]
        return {"elements": list(self.labels), "order": covers,
                "tensor": tens, "unit": self.labels[self.unit]}

    @classmethod
    def from_dict(cls, d: dict, name: str = "quantale") -> "Quantale":
        try:
            labels = tuple(str(x) for x in d["elements"])
            order = d["order"]
            tens_in = d["tensor"]
            unit_label = d["unit"]
        except (KeyError, TypeError) as exc:
            raise FormatError("quantale file missing field: %s" % exc)
        if len(set(labels)) != len(labels):
            raise FormatError("duplicate element labels")
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        pairs = set()
        for lo, hi in order:
            if lo not in idx or hi not in idx:
                raise FormatError("order pair mentions unknown element")
            pairs.add((idx[lo], idx[hi]))
        leq = _closure(n, pairs)
        for i, j in product(range(n), repeat=2):
            if i != j and leq[i][j] and leq[j][i]:
                raise FormatError(
                    "order is not antisymmetric: %s ~ %s" % (labels[i], labels[j]))
        tensor = [[None] * n for _ in range(n)]
        for key, val in tens_in.items():
            # labels may themselves contain commas; accept any comma split
            # whose two sides are both known labels
            splits = [(key[:p], key[p + 1:]) for p in range(len(key))
                      if key[p] == "," and key[:p] in idx and key[p + 1:] in idx]
            if not splits:
                raise FormatError("bad tensor key %r" % key)
            a, b = splits[0]
            if val not in idx:
                raise FormatError("tensor entry mentions unknown element")
            i, j, v = idx[a], idx[b], idx[val]
            for p, q in ((i, j), (j, i)):
                if tensor[p][q] is not None and tensor[p][q] != v:
                    raise FormatError(
                        "conflicting tensor entries for %s,%s" % (a, b))
                tensor[p][q] = v
        if any(x is None for row in tensor for x in row):
            raise FormatError("tensor table is incomplete")
        if unit_label not in idx:
            raise FormatError("unknown unit element")
        return cls(labels, tuple(map(tuple, leq)),
                   tuple(map(tuple, tensor)), idx[unit_label], name=name)

    @classmethod
    def from_file(cls, path: str) -> "Quantale":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                d = json.load(fh)
            except json.JSONDecodeError as exc:
                raise FormatError("%s: invalid JSON: %s" % (path, exc))
        return cls.from_dict(d, name=path)


# ---- law checking ----

def check_quantale(q: Quantale) -> CheckReport:
    """Validate every quantale law; first violation wins, with witnesses
    reported by label."""
    rep = Reporter("quantale")
    lab = q.labels
    rng = range(q.n)
    for u in rng:
        rep.tick()
        if not q.leq[u][u]:
            return rep.fail("order-reflexive", [lab[u]])
    for u, v in product(rng, rng):
        rep.tick()
        if u != v and q.leq[u][v] and q.leq[v][u]:
            return rep.fail("order-antisymmetric", [lab[u], lab[v]])
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        if q.leq[u][v] and q.leq[v][w] and not q.leq[u][w]:
            return rep.fail("order-transitive", [lab[u], lab[v], lab[w]])
    # lattice completeness is enforced at construction time
    for u, v in product(rng, rng):
        rep.tick()
        if q.tensor[u][v] != q.tensor[v][u]:
            return rep.fail("tensor-commutative", [lab[u], lab[v]])
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        if q.tensor[q.tensor[u][v]][w] != q.tensor[u][q.tensor[v][w]]:
            return rep.fail("tensor-associative", [lab[u], lab[v], lab[w]])
    for u in rng:
        rep.tick()
        if q.tensor[q.unit][u] != u:
            return rep.fail("tensor-unit", [lab[u]])
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        if q.tensor[u][q.join[v][w]] != q.join[q.tensor[u][v]][q.tensor[u][w]]:
            return rep.fail("tensor-join-distributive", [lab[u], lab[v], lab[w]])
    for u in rng:
        rep.tick()
        if q.tensor[u][q.bottom] != q.bottom:
            return rep.fail("tensor-bottom", [lab[u]])
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        if q.leq[q.tensor[u][v]][w] != q.leq[v][q.hom[u][w]]:
            return rep.fail("hom-adjunction", [lab[u], lab[v], lab[w]])
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        if q.leq[q.meet[u][v]][w] != q.leq[v][q.heyting[u][w]]:
            return rep.fail("heyting-adjunction", [lab[u], lab[v], lab[w]])
    return rep.ok()


def residuate(q: Quantale, u: int, w: int) -> int:
    """hom(u, w) = sup of all v with u (x) v <= w."""
    return q.hom[u][w]


def check_condition_inj(q: Quantale) -> CheckReport:
    """Distribution of the meet over below-tensor decompositions:
    w /\\ (u(x)v) must equal sup of u'(x)v' over u'<=u, v'<=v, u'(x)v'<=w."""
    rep = Reporter("condition_inj")
    rng = range(q.n)
    for u, v, w in product(rng, rng, rng):
        rep.tick()
        lhs = q.meet[w][q.tensor[u][v]]
        rhs = q.sup(q.tensor[u1][v1]
                    for u1 in rng if q.leq[u1][u]
                    for v1 in rng if q.leq[v1][v]
                    and q.leq[q.tensor[u1][v1]][w])
        if lhs != rhs:
            return rep.fail("inj-decomposition",
                            [q.labels[u], q.labels[v], q.labels[w]],
                            lhs=q.labels[lhs], rhs=q.labels[rhs])
    return rep.ok()


@dataclass(frozen=True)
class QuantaleHom:
    """Map between quantales, given by an element table (index -> index)."""

    source: Quantale
    target: Quantale
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.n:
            raise FormatError("hom table size mismatch")
        if any(not 0 <= v < self.target.n for v in self.table):
            raise FormatError("hom table entry out of range")

    def __call__(self, u: int) -> int:
        return self.table[u]

    def is_surjective(self) -> bool:
        return set(self.table) == set(range(self.target.n))


def check_hom(h: QuantaleHom) -> CheckReport:
    """Quantale homomorphism laws: preserves tensor, unit and all joins."""
    rep = Reporter("quantale_hom")
    s, t, f = h.source, h.target, h.table
    rng = range(s.n)
    rep.tick()
    if f[s.unit] != t.unit:
        return rep.fail("preserves-unit", [s.labels[s.unit]])
    for u, v in product(rng, rng):
        rep.tick()
        if f[s.tensor[u][v]] != t.tensor[f[u]][f[v]]:
            return rep.fail("preserves-tensor", [s.labels[u], s.labels[v]])
    for u, v in product(rng, rng):
        rep.tick()
        if f[s.join[u][v]] != t.join[f[u]][f[v]]:
            return rep.fail("preserves-joins", [s.labels[u], s.labels[v]])
    rep.tick()
    if f[s.bottom] != t.bottom:
        return rep.fail("preserves-bottom", [s.labels[s.bottom]])
    return rep.ok()


def check_lemma_surjective_transfer(h: QuantaleHom) -> CheckReport:
    """Surjective homomorphic images inherit the inj-decomposition condition;
    a counterexample here would be a genuine anomaly."""
    rep = Reporter("lemma_surjective_transfer")
    hom_ok = check_hom(h).passed
    surj = h.is_surjective()
    src_ok = check_condition_inj(h.source).passed
    tgt_ok = check_condition_inj(h.target).passed
    rep.tick()
    if hom_ok and surj and src_ok and not tgt_ok:
        return rep.fail("surjective-transfer",
                        {"source_inj": src_ok, "target_inj": tgt_ok})
    return rep.ok(applicable=hom_ok and surj and src_ok,
                  homomorphism=hom_ok, surjective=surj,
                  source_inj=src_ok, target_inj=tgt_ok)


# ---- bundled quantales ----

def two() -> Quantale:
    """The two-element quantale ({0,1}, <=, &, 1)."""
    leq = ((True, True), (False, True))
    tensor = ((0, 0), (0, 1))
    return Quantale(("0", "1"), leq, tensor, 1, name="two")


def chain_trunc_add(n: int) -> Quantale:
    """Chain {0,..,n-1} with reversed order and truncated addition; a finite
    analogue of the extended non-negative reals under +.  Unit is 0 (the top
    of the quantale order); n-1 plays the role of infinity (the bottom)."""
    if n < 1:
        raise FormatError("chain needs at least one element")
    labels = tuple(str(i) for i in range(n))
    leq = tuple(tuple(i >= j for j in range(n)) for i in range(n))
    tensor = tuple(tuple(min(n - 1, i + j) for j in range(n)) for i in range(n))
    return Quantale(labels, leq, tensor, 0, name="trunc_add_%d" % n)


def lukasiewicz(n: int) -> Quantale:
    """Evenly spaced n-point subchain of [0,1] with u (x) v = max(0, u+v-1)."""
    if n < 2:
        raise FormatError("chain needs at least two elements")
    vals = [Fraction(i, n - 1) for i in range(n)]
    labels = tuple(str(v) for v in vals)
    leq = tuple(tuple(vals[i] <= vals[j] for j in range(n)) for i in range(n))

    def t(i, j):
        return vals.index(max(Fraction(0), vals[i] + vals[j] - 1))

    tensor = tuple(tuple(t(i, j) for j in range(n)) for i in range(n))
    return Quantale(labels, leq, tensor, n - 1, name="lukasiewicz_%d" % n)


def godel_chain(n: int) -> Quantale:
    """Chain 0 < 1 < .. < n-1 with tensor = min (a frame); the n-point model
    of the ultrametric quantale."""
    if n < 1:
        raise FormatError("chain needs at least one element")
    labels = tuple(str(i) for i in range(n))
    leq = tuple(tuple(i <= j for j in range(n)) for i in range(n))
    tensor = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    return Quantale(labels, leq, tensor, n - 1, name="godel_%d" % n)


def powerset_frame(k: int) -> Quantale:
    """Powerset of a k-element set, ordered by inclusion, tensor = meet."""
    if k < 0:
        raise FormatError("k must be non-negative")
    subsets = list(range(1 << k))
    labels = tuple(
        "{" + ",".join(str(i) for i in range(k) if s >> i & 1) + "}"
        for s in subsets)
    leq = tuple(tuple(s & t == s for t in subsets) for s in subsets)
    tensor = tuple(tuple(subsets.index(s & t) for t in subsets) for s in subsets)
    return Quantale(labels, leq, tensor, (1 << k) - 1, name="powerset_%d" % k)


BUILTIN_QUANTALES = {
    "two": lambda: two(),
    "trunc_add": chain_trunc_add,
    "lukasiewicz": lukasiewicz,
    "godel": godel_chain,
    "powerset": powerset_frame,
}


def quantale_by_name(spec: str) -> Quantale:
    """Resolve ``two``, ``lukasiewicz:3`` etc., or a path to a JSON file."""
    if ":" in spec:
        base, _, arg = spec.partition(":")
        if base in BUILTIN_QUANTALES:
            try:
                n = int(arg)
            except ValueError:
                raise FormatError("bad quantale parameter %r" % arg)
            return BUILTIN_QUANTALES[base](n)
    elif spec in BUILTIN_QUANTALES:
        return BUILTIN_QUANTALES[spec]()
    return Quantale.from_file(spec)
