"""Explicit finite groups given by multiplication tables.

A :class:`FiniteGroup` stores its carrier (arbitrary hashable payloads), a
Cayley table over element ids ``0..n-1``, identity, inverses and generators.
A :class:`GroupMap` is a homomorphism stored as an id -> id table.

Groups built by :func:`close` put the identity at id 0 and the remaining
elements in breadth-first discovery order, so tables and reports are
deterministic.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Optional, Sequence

DEFAULT_MAX_ORDER = 1024


class GroupError(Exception):
    """Base class for engine errors."""


class CapExceeded(GroupError):
    pass


class NotAGroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NonUniformFibers(GroupError):
    pass


class NotAHomomorphism(GroupError):
    """Raised with the first witness triple ``(x, y, xy)`` where images disagree."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    carrier: tuple
    table: tuple
    identity: int
    inverses: tuple
    generators: tuple
    labels: tuple = ()
    # subgroups remember where they live: ambient group and id of each element there
    ambient: Optional["FiniteGroup"] = field(default=None, repr=False)
    ambient_ids: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.carrier))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.carrier)})

    @property
    def order(self) -> int:
        return len(self.carrier)

    def __len__(self) -> int:
        return len(self.carrier)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def index(self, payload: Hashable) -> int:
        """Element id of ``payload``; KeyError if it is not in the carrier."""
        return self._index[payload]

    def __contains__(self, payload) -> bool:
        return payload in self._index

    def label(self, x: int) -> str:
        return self.labels[x]

    def id_of_label(self, label: str) -> int:
        return self.labels.index(label)

    def power(self, x: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.table[r][x]
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
            if k > self.order:
                raise NotAGroup(f"{self.name}: element {self.label(x)} has no finite order")
        return k

    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[x][y] == t[y][x] for x in range(n) for y in range(x + 1, n))

    def inclusion(self) -> "GroupMap":
        if self.ambient is None:
            raise ValueError(f"{self.name} is not a recorded subgroup")
        return GroupMap(f"incl_{self.name}", self, self.ambient, self.ambient_ids)

    def with_table(self, table) -> "FiniteGroup":
        """Copy with a replaced table and no validation (used to build fixtures)."""
        return FiniteGroup(
            self.name, self.carrier, tuple(tuple(r) for r in table), self.identity,
            self.inverses, self.generators, self.labels, self.ambient, self.ambient_ids,
        )


def _labeller(label):
    return label if label is not None else str


def close(
    generators: Sequence[Hashable],
    product: Callable,
    *,
    name: str = "G",
    label: Optional[Callable] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Group generated by ``generators`` under ``product``.

    Payloads must be hashable; element equality is payload ``==``.
    Raises CapExceeded past ``max_order`` elements and NotAGroup if the closed
    set has no identity or some element has no inverse.
    """
    if not generators:
        raise ValueError("close() needs at least one generator")
    found: dict = {}
    order: list = []
    queue = deque()
    for g in generators:
        if g not in found:
            found[g] = len(order)
            order.append(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = product(x, g)
            if y not in found:
                if len(order) >= max_order:
                    raise CapExceeded(f"{name}: closure exceeds {max_order} elements")
                found[y] = len(order)
                order.append(y)
                queue.append(y)

    ident = next((x for x in order if product(x, x) == x), None)
    if ident is None:
        raise NotAGroup(f"{name}: closure has no identity element")
    carrier = [ident] + [x for x in order if x != ident]
    index = {x: i for i, x in enumerate(carrier)}
    table = []
    for x in carrier:
        row = []
        for y in carrier:
            z = product(x, y)
            if z not in index:
                raise NotAGroup(f"{name}: product of {x} and {y} escapes the closure")
            row.append(index[z])
        table.append(tuple(row))
    inverses = []
    for i in range(len(carrier)):
        j = next((j for j in range(len(carrier)) if table[i][j] == 0), None)
        if j is None or table[j][i] != 0:
            raise NotAGroup(f"{name}: {carrier[i]} has no inverse")
        inverses.append(j)
    gens = tuple(dict.fromkeys(index[g] for g in generators))
    lab = _labeller(label)
    return FiniteGroup(
        name, tuple(carrier), tuple(table), 0, tuple(inverses), gens,
        tuple(lab(x) for x in carrier),
    )


def from_table(name: str, table: Sequence[Sequence[int]], labels: Sequence[str] = (), carrier=None) -> FiniteGroup:
    """Wrap a raw Cayley table. Identity and inverses are read off the table."""
    n = len(table)
    table = tuple(tuple(r) for r in table)
    ident = next((e for e in range(n) if all(table[e][x] == x for x in range(n))), None)
    if ident is None:
        raise NotAGroup(f"{name}: table has no left identity")
    inverses = []
    for x in range(n):
        y = next((y for y in range(n) if table[x][y] == ident), None)
        if y is None:
            raise NotAGroup(f"{name}: {x} has no inverse")
        inverses.append(y)
    carrier = tuple(carrier) if carrier is not None else tuple(range(n))
    g = FiniteGroup(name, carrier, table, ident, tuple(inverses), tuple(range(n)), tuple(labels))
    return FiniteGroup(name, carrier, table, ident, tuple(inverses), _greedy_generators(g), tuple(labels))


def check_group(g: FiniteGroup) -> list[str]:
    """Return a list of violated group axioms (empty when ``g`` is a valid group).

    Each message names a witness. Checks the Latin-square property, all n^3
    associativity triples, identity and inverse laws, and that the generators
    generate.
    """
    problems = []
    n, t = g.order, g.table
    full = set(range(n))
    if len(t) != n or any(len(r) != n for r in t):
        return [f"{g.name}: table shape is not {n}x{n}"]
    for x in range(n):
        if set(t[x]) != full:
            dup = next(v for v, c in Counter(t[x]).items() if c > 1)
            problems.append(f"{g.name}: row {g.label(x)} repeats {g.label(dup)}")
            break
    for y in range(n):
        col = [t[x][y] for x in range(n)]
        if set(col) != full:
            dup = next(v for v, c in Counter(col).items() if c > 1)
            problems.append(f"{g.name}: column {g.label(y)} repeats {g.label(dup)}")
            break
    e = g.identity
    for x in range(n):
        if t[e][x] != x or t[x][e] != x:
            problems.append(f"{g.name}: identity law fails at {g.label(x)}")
            break
    for x in range(n):
        if t[x][g.inverses[x]] != e or t[g.inverses[x]][x] != e:
            problems.append(f"{g.name}: inverse law fails at {g.label(x)}")
            break
    assoc = _associativity_witness(g)
    if assoc is not None:
        x, y, z = assoc
        problems.append(
            f"{g.name}: ({g.label(x)}*{g.label(y)})*{g.label(z)} != {g.label(x)}*({g.label(y)}*{g.label(z)})"
        )
    if not problems and len(_generated(g, g.generators)) != n:
        problems.append(f"{g.name}: generators do not generate the carrier")
    return problems


def _associativity_witness(g: FiniteGroup):
    t = g.table
    n = g.order
    for x in range(n):
        tx = t[x]
        for y in range(n):
            xy = tx[y]
            txy, ty = t[xy], t[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    return (x, y, z)
    return None


def _generated(g: FiniteGroup, seed: Iterable[int]) -> list[int]:
    """Ids of the subgroup generated by ``seed``, identity first then BFS order."""
    seed = list(dict.fromkeys(seed))
    out = [g.identity]
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in seed:
            y = g.table[x][s]
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def _greedy_generators(g: FiniteGroup) -> tuple:
    gens: list[int] = []
    span = {g.identity}
    while len(span) < g.order:
        best, best_span = None, span
        for x in range(g.order):
            if x in span:
                continue
            s = set(_generated(g, gens + [x]))
            if len(s) > len(best_span):
                best, best_span = x, s
        gens.append(best)
        span = best_span
    return tuple(gens) if gens else (g.identity,)


def subgroup_from_ids(g: FiniteGroup, ids: Iterable[int], name: Optional[str] = None, generators=None) -> FiniteGroup:
    """Subgroup on an explicit closed set of ids (order kept as given)."""
    ids = list(ids)
    pos = {x: i for i, x in enumerate(ids)}
    if g.identity not in pos:
        raise NotAGroup("subset does not contain the identity")
    table = []
    for x in ids:
        row = []
        for y in ids:
            z = g.table[x][y]
            if z not in pos:
                raise NotAGroup(f"subset not closed: {g.label(x)}*{g.label(y)} = {g.label(z)}")
            row.append(pos[z])
        table.append(tuple(row))
    inverses = tuple(pos[g.inverses[x]] for x in ids)
    sub = FiniteGroup(
        name or f"sub({g.name})", tuple(g.carrier[x] for x in ids), tuple(table), pos[g.identity],
        inverses, (), tuple(g.labels[x] for x in ids), g, tuple(ids),
    )
    gens = tuple(pos[x] for x in generators) if generators else _greedy_generators(sub)
    return FiniteGroup(
        sub.name, sub.carrier, sub.table, sub.identity, sub.inverses, gens, sub.labels, g, tuple(ids),
    )


def subgroup(g: FiniteGroup, seed: Iterable[int], name: Optional[str] = None) -> FiniteGroup:
    """Subgroup of ``g`` generated by ``seed``; records its inclusion into ``g``."""
    seed = [s for s in seed]
    ids = _generated(g, seed)
    gens = [s for s in dict.fromkeys(seed) if s != g.identity]
    return subgroup_from_ids(g, ids, name, generators=gens or None)


def center(g: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    t = g.table
    ids = [z for z in range(g.order) if z != g.identity and all(t[z][x] == t[x][z] for x in range(g.order))]
    return subgroup_from_ids(g, [g.identity] + ids, name or f"Z({g.name})")


def derived_subgroup(g: FiniteGroup) -> FiniteGroup:
    t, inv = g.table, g.inverses
    comms = {t[t[inv[x]][inv[y]]][t[x][y]] for x in range(g.order) for y in range(g.order)}
    return subgroup(g, sorted(comms), name=f"[{g.name},{g.name}]")


def direct_product(a: FiniteGroup, b: FiniteGroup, *, name: Optional[str] = None, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Componentwise product on pairs; element ``(i, j)`` has id ``i*|b| + j``."""
    n, m = a.order, b.order
    if n * m > max_order:
        raise CapExceeded(f"|{a.name} x {b.name}| = {n * m} exceeds {max_order}")
    carrier = tuple((x, y) for x in a.carrier for y in b.carrier)
    labels = tuple(f"({la}, {lb})" for la in a.labels for lb in b.labels)
    table = tuple(
        tuple(a.table[i][k] * m + b.table[j][l] for k in range(n) for l in range(m))
        for i in range(n)
        for j in range(m)
    )
    inverses = tuple(a.inverses[i] * m + b.inverses[j] for i in range(n) for j in range(m))
    gens = tuple(dict.fromkeys(
        [ga * m + b.identity for ga in a.generators] + [a.identity * m + gb for gb in b.generators]
    ))
    return FiniteGroup(
        name or f"{a.name} x {b.name}", carrier, table, a.identity * m + b.identity, inverses, gens, labels,
    )


@dataclass(frozen=True)
class Coset:
    """Payload of a quotient element: its least-id representative and member ids."""

    rep: int
    members: frozenset
    label: str

    def __str__(self) -> str:
        return self.label


def quotient(g: FiniteGroup, normal, *, name: Optional[str] = None) -> tuple[FiniteGroup, "GroupMap"]:
    """Coset group ``g / normal`` and the canonical projection.

    ``normal`` is a subgroup of ``g`` (with recorded ambient ids) or an iterable
    of ids in ``g``. Cosets are represented by their least element id.
    """
    if isinstance(normal, FiniteGroup):
        if normal.ambient is not g:
            raise ValueError(f"{normal.name} is not a recorded subgroup of {g.name}")
        nids = set(normal.ambient_ids)
    else:
        nids = set(normal)
    t, inv = g.table, g.inverses
    for x in range(g.order):
        for h in nids:
            c = t[t[x][h]][inv[x]]
            if c not in nids:
                raise NotNormal(
                    f"{g.label(x)}*{g.label(h)}*{g.label(x)}^-1 = {g.label(c)} leaves the subgroup"
                )
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for x in range(g.order):
        if x in coset_of:
            continue
        members = {t[x][h] for h in nids}
        rep = min(members)
        k = len(reps)
        reps.append(rep)
        for y in members:
            coset_of[y] = k
    members_of = [frozenset(y for y in range(g.order) if coset_of[y] == k) for k in range(len(reps))]
    carrier = tuple(Coset(r, m, f"[{g.label(r)}]") for r, m in zip(reps, members_of))
    table = tuple(tuple(coset_of[t[r][s]] for s in reps) for r in reps)
    inverses = tuple(coset_of[inv[r]] for r in reps)
    gens = tuple(dict.fromkeys(coset_of[s] for s in g.generators))
    qname = name or f"{g.name}/N"
    q = FiniteGroup(qname, carrier, table, coset_of[g.identity], inverses, gens)
    proj = GroupMap(f"proj_{qname}", g, q, tuple(coset_of[x] for x in range(g.order)))
    return q, proj


@dataclass(frozen=True, eq=False)
class GroupMap:
    name: str
    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __repr__(self) -> str:
        return f"GroupMap({self.name!r}: {self.domain.name} -> {self.codomain.name})"

    def apply_payload(self, payload):
        return self.codomain.carrier[self.images[self.domain.index(payload)]]

    def image_ids(self) -> list[int]:
        return sorted(set(self.images))

    def image(self, name: Optional[str] = None) -> FiniteGroup:
        return subgroup(self.codomain, [self.images[s] for s in self.domain.generators], name=name or f"im({self.name})")

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.domain.order

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "GroupMap", name: Optional[str] = None) -> "GroupMap":
        """``other o self``: apply self first."""
        if other.domain is not self.codomain:
            raise ValueError(f"cannot compose {self.name} with {other.name}: {self.codomain.name} != {other.domain.name}")
        return GroupMap(name or f"{other.name}o{self.name}", self.domain, other.codomain,
                        tuple(other.images[y] for y in self.images))


def compose(*maps: GroupMap, name: Optional[str] = None) -> GroupMap:
    """``compose(f, g, h) = f o g o h`` (h applied first)."""
    result = maps[-1]
    for f in reversed(maps[:-1]):
        result = result.then(f)
    return GroupMap(name or "o".join(m.name for m in maps), result.domain, result.codomain, result.images)


def identity_map(g: FiniteGroup) -> GroupMap:
    return GroupMap(f"id_{g.name}", g, g, tuple(range(g.order)))


def homomorphism_witness(f: GroupMap) -> Optional[tuple[int, int]]:
    """First pair ``(x, y)`` with ``f(xy) != f(x)f(y)``, or None."""
    d, c, img = f.domain.table, f.codomain.table, f.images
    if len(img) != f.domain.order:
        return (-1, -1)
    for x in range(f.domain.order):
        dx, cx = d[x], c[img[x]]
        for y in range(f.domain.order):
            if img[dx[y]] != cx[img[y]]:
                return (x, y)
    return None


def check_homomorphism(f: GroupMap) -> list[str]:
    problems = []
    if len(f.images) != f.domain.order:
        return [f"{f.name}: image table has length {len(f.images)}, expected {f.domain.order}"]
    if f.images[f.domain.identity] != f.codomain.identity:
        problems.append(f"{f.name}: identity maps to {f.codomain.label(f.images[f.domain.identity])}")
    w = homomorphism_witness(f)
    if w is not None:
        x, y = w
        d = f.domain
        xy = d.mul(x, y)
        problems.append(
            f"{f.name}: f({d.label(x)}*{d.label(y)}) = f({d.label(xy)}) = {f.codomain.label(f(xy))}"
            f" but f({d.label(x)})*f({d.label(y)}) = {f.codomain.label(f.codomain.mul(f(x), f(y)))}"
        )
    return problems


def hom_from_images(domain: FiniteGroup, codomain: FiniteGroup, assignment: dict, *, name: str = "f") -> GroupMap:
    """Extend a generator assignment ``{domain id: codomain id}`` to a homomorphism.

    Raises NotAHomomorphism with the earliest breadth-first witness ``(x, s, xs)``
    when an element is reached by two words with different images.
    """
    gens = list(assignment)
    missing = [s for s in domain.generators if s not in assignment]
    images: dict[int, int] = {domain.identity: codomain.identity}
    queue = deque([domain.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = domain.table[x][s]
            val = codomain.table[images[x]][assignment[s]]
            if y not in images:
                images[y] = val
                queue.append(y)
            elif images[y] != val:
                raise NotAHomomorphism(
                    f"{name}: {domain.label(y)} = {domain.label(x)}*{domain.label(s)} has images "
                    f"{codomain.label(images[y])} and {codomain.label(val)}",
                    witness=(x, s, y),
                )
    if len(images) != domain.order:
        raise ValueError(f"{name}: assignment does not cover the generators {missing}")
    f = GroupMap(name, domain, codomain, tuple(images[x] for x in range(domain.order)))
    w = homomorphism_witness(f)
    if w is not None:
        x, y = w
        raise NotAHomomorphism(f"{name}: law fails at ({domain.label(x)}, {domain.label(y)})",
                               witness=(x, y, domain.mul(x, y)))
    return f


def map_from_function(domain: FiniteGroup, codomain: FiniteGroup, fn: Callable, *, name: str = "f") -> GroupMap:
    """Tabulate ``fn`` on payloads and check the homomorphism law exhaustively."""
    images = tuple(codomain.index(fn(x)) for x in domain.carrier)
    f = GroupMap(name, domain, codomain, images)
    problems = check_homomorphism(f)
    if problems:
        x, y = homomorphism_witness(f) or (domain.identity, domain.identity)
        raise NotAHomomorphism(problems[0], witness=(x, y, domain.mul(x, y)))
    return f


def kernel(f: GroupMap, name: Optional[str] = None) -> FiniteGroup:
    e = f.codomain.identity
    ids = [x for x in range(f.domain.order) if f.images[x] == e]
    ids.sort(key=lambda x: x != f.domain.identity)
    return subgroup_from_ids(f.domain, ids, name or f"ker({f.name})")


def fiber_degree(f: GroupMap) -> int:
    """Common size of the nonempty fibers of ``f``."""
    sizes = set(Counter(f.images).values())
    if len(sizes) != 1:
        raise NonUniformFibers(f"{f.name}: fiber sizes {sorted(sizes)}")
    return sizes.pop()


@dataclass(frozen=True)
class Fingerprint:
    order: int
    is_abelian: bool
    order_multiset: dict
    center_order: int
    exponent: int
    derived_order: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "is_abelian": self.is_abelian,
            "order_multiset": {str(k): v for k, v in sorted(self.order_multiset.items())},
            "center_order": self.center_order,
            "exponent": self.exponent,
            "derived_order": self.derived_order,
        }


def fingerprint(g: FiniteGroup) -> Fingerprint:
    orders = Counter(g.element_order(x) for x in range(g.order))
    return Fingerprint(
        order=g.order,
        is_abelian=g.is_abelian(),
        order_multiset=dict(sorted(orders.items())),
        center_order=center(g).order,
        exponent=math.lcm(*orders),
        derived_order=derived_subgroup(g).order,
    )


def _element_signature(g: FiniteGroup, x: int) -> tuple[int, int]:
    t = g.table
    centralizer = sum(1 for y in range(g.order) if t[x][y] == t[y][x])
    return g.element_order(x), centralizer


def _extend(a: FiniteGroup, b: FiniteGroup, gens: list[int], imgs: list[int]) -> Optional[dict]:
    """Extend gens -> imgs over the subgroup they generate, injectively; None on conflict."""
    images = {a.identity: b.identity}
    used = {b.identity}
    queue = deque([a.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, imgs):
            y = a.table[x][s]
            val = b.table[images[x]][t]
            if y in images:
                if images[y] != val:
                    return None
            else:
                if val in used:
                    return None
                images[y] = val
                used.add(val)
                queue.append(y)
    return images


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> Optional[GroupMap]:
    """An isomorphism ``a -> b`` if one exists, else None.

    Rejects on fingerprint mismatch, then backtracks over images of a greedy
    minimal generating set of ``a``, pruning on (element order, centralizer
    size) and on partial consistency of the extension.
    """
    if a.order != b.order:
        return None
    if fingerprint(a) != fingerprint(b):
        return None
    gens = list(_greedy_generators(a))
    sig_b: dict = {}
    for y in range(b.order):
        sig_b.setdefault(_element_signature(b, y), []).append(y)
    candidates = [sig_b.get(_element_signature(a, s), []) for s in gens]

    def search(k: int, imgs: list[int]) -> Optional[dict]:
        if k == len(gens):
            ext = _extend(a, b, gens, imgs)
            return ext if ext is not None and len(ext) == a.order else None
        for t in candidates[k]:
            trial = imgs + [t]
            if _extend(a, b, gens[: k + 1], trial) is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    ext = search(0, [])
    if ext is None:
        return None
    f = GroupMap(f"iso({a.name},{b.name})", a, b, tuple(ext[x] for x in range(a.order)))
    # full law and bijectivity, independent of the search bookkeeping
    if check_homomorphism(f) or not f.is_bijective():
        return None
    return f


@dataclass(frozen=True)
class CayleyTable:
    headers: list
    rows: list

    def to_text(self) -> str:
        width = max(len(h) for h in self.headers)
        col = lambda s: s.rjust(width)
        lines = [col("*") + " | " + " ".join(col(h) for h in self.headers)]
        lines.append("-" * len(lines[0]))
        for h, row in zip(self.headers, self.rows):
            lines.append(col(h) + " | " + " ".join(col(v) for v in row))
        return "\n".join(lines)

    def to_csv(self) -> str:
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["*"] + self.headers)
        for h, row in zip(self.headers, self.rows):
            w.writerow([h] + row)
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {"headers": self.headers, "rows": self.rows}


def cayley_table(g: FiniteGroup) -> CayleyTable:
    return CayleyTable(
        headers=list(g.labels),
        rows=[[g.labels[g.table[x][y]] for y in range(g.order)] for x in range(g.order)],
    )
