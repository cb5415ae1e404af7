import pytest

from cptgroups.catalog import NotInCatalog, catalog, cyclic, dicyclic, dihedral, identify
from cptgroups.groups import check_group, close, direct_product, fingerprint, is_isomorphic


@pytest.mark.parametrize("name", list(catalog()))
def test_catalog_entries_are_groups_and_self_identify(name):
    g = catalog()[name]
    if g.order <= 16:
        assert check_group(g) == []
    assert identify(g) == name


def test_catalog_fingerprints_are_distinct_per_order():
    seen = {}
    for name, g in catalog().items():
        key = repr(fingerprint(g))
        assert key not in seen, (name, seen.get(key))
        seen[key] = name


def test_dicyclic_two_is_quaternion():
    q8 = dicyclic(2)
    assert fingerprint(q8).order_multiset == {1: 1, 2: 1, 4: 6}
    assert is_isomorphic(q8, dihedral(4)) is None


def test_identify_trivial():
    assert identify(cyclic(1)) == "Trivial"


def test_identify_rejects_c4_for_klein():
    klein = direct_product(cyclic(2), cyclic(2))
    assert identify(klein) == "Klein D2"
    assert identify(cyclic(4)) == "C4"


def test_not_in_catalog_same_fingerprint():
    def mul(x, y):
        (a, b), (c, d) = x, y
        return ((a + (c if b % 2 == 0 else -c)) % 4, (b + d) % 4)

    with pytest.raises(NotInCatalog):
        identify(close([(1, 0), (0, 1)], mul, name="C4:C4"))


def test_not_in_catalog_order_outside_coverage():
    with pytest.raises(NotInCatalog):
        identify(cyclic(3))
