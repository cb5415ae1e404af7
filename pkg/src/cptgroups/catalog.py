"""Small catalog of reference groups for :func:`identify`.

Entries are built from arithmetic rules of their own (modular addition,
dicyclic/dihedral pair rules), not from the quaternion or matrix code used
elsewhere, so a positive identification is an independent confirmation.
"""

from __future__ import annotations

from functools import lru_cache

from .groups import (
    FiniteGroup,
    GroupError,
    close,
    direct_product,
    fingerprint,
    is_isomorphic,
)

CATALOG_ORDERS = (1, 2, 4, 8, 16, 128)


class NotInCatalog(GroupError):
    pass


def cyclic(n: int, name: str | None = None) -> FiniteGroup:
    if n == 1:
        return close([0], lambda a, b: 0, name=name or "Trivial", label=lambda x: "e")
    return close([1], lambda a, b: (a + b) % n, name=name or f"C{n}")


def dihedral(n: int, name: str | None = None) -> FiniteGroup:
    """Symmetries of the n-gon; elements ``(k, e)`` stand for ``r^k s^e``."""

    def mul(x, y):
        (a, e), (b, f) = x, y
        return ((a + (-b if e else b)) % n, (e + f) % 2)

    return close([(1, 0), (0, 1)], mul, name=name or f"D{n}", label=lambda x: f"r{x[0]}s{x[1]}")


def dicyclic(n: int, name: str | None = None) -> FiniteGroup:
    """Dicyclic group of order 4n: ``x^{2n} = 1, y^2 = x^n, y x y^-1 = x^-1``."""
    m = 2 * n

    def mul(p, q):
        (a, e), (b, f) = p, q
        if not e:
            return ((a + b) % m, f)
        # x^a y x^b y^f = x^(a-b) y^(1+f), and y^2 = x^n
        return ((a - b + n * f) % m, 1 - f)

    return close([(1, 0), (0, 1)], mul, name=name or f"Dic{n}", label=lambda x: f"x{x[0]}y{x[1]}")


def _product(*factors: FiniteGroup, name: str) -> FiniteGroup:
    g = factors[0]
    for h in factors[1:]:
        g = direct_product(g, h)
    return FiniteGroup(name, g.carrier, g.table, g.identity, g.inverses, g.generators, g.labels)


@lru_cache(maxsize=None)
def catalog() -> dict[str, FiniteGroup]:
    c2 = cyclic(2, "Z2")
    c4 = cyclic(4, "C4")
    q8 = dicyclic(2, "Q8")
    d4 = dihedral(4, "D4")
    z2_3 = _product(c2, c2, c2, name="Z2^3")
    entries = [
        cyclic(1),
        c2,
        c4,
        _product(c2, c2, name="Klein D2"),
        cyclic(8, "C8"),
        z2_3,
        _product(c4, c2, name="C4 x C2"),
        q8,
        d4,
        _product(q8, c2, name="Q8 x Z2"),
        _product(d4, c2, name="D4 x Z2"),
        _product(c2, c2, c2, c2, name="Z2^4"),
        _product(c4, c2, c2, name="C4 x C2 x C2"),
        _product(_product(q8, c2, name="Q8 x Z2"), z2_3, name="(Q8 x Z2) x Z2^3"),
    ]
    return {g.name: g for g in entries}


@lru_cache(maxsize=None)
def _catalog_fingerprints() -> dict:
    return {name: fingerprint(ref) for name, ref in catalog().items()}


def identify(g: FiniteGroup) -> str:
    """Catalog name of ``g``: fingerprint match confirmed by an explicit isomorphism."""
    fp = fingerprint(g)
    for name, ref in catalog().items():
        if _catalog_fingerprints()[name] == fp and is_isomorphic(g, ref) is not None:
            return name
    raise NotInCatalog(f"{g.name} (order {g.order}) matches no catalog entry")
