import pytest

from cptgroups import linear as la
from cptgroups.atlas import I, J, K, ONE, QuatUnit, lambda_matrix
from cptgroups.catalog import cyclic, dihedral, identify
from cptgroups.groups import (
    CapExceeded,
    NonUniformFibers,
    NotAGroup,
    NotAHomomorphism,
    NotNormal,
    GroupMap,
    cayley_table,
    center,
    check_group,
    check_homomorphism,
    close,
    compose,
    direct_product,
    fiber_degree,
    fingerprint,
    hom_from_images,
    identity_map,
    is_isomorphic,
    kernel,
    quotient,
    subgroup,
)

from oracles import all_functions, brute_center, brute_cosets, brute_order, naive_closure

Q_ELEMS = [QuatUnit(s, a) for s in (1, -1) for a in "1ijk"]


@pytest.fixture(scope="module")
def Q():
    return close([I, J], QuatUnit.__mul__, name="Q")


def test_quaternion_law_by_hand():
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K
    assert I * I == J * J == K * K == -ONE


def test_close_pt_group():
    g = close([la.PARITY, la.TIME_REVERSAL], la.Matrix.__matmul__, name="G_PT")
    assert g.order == 4
    assert set(g.carrier) == {la.identity(4), la.PARITY, la.TIME_REVERSAL, la.PARITY @ la.TIME_REVERSAL}
    assert g.carrier[0] == la.identity(4)
    assert check_group(g) == []


def test_close_trivial():
    g = close([la.identity(4)], la.Matrix.__matmul__)
    assert g.order == 1 and g.identity == 0 and check_group(g) == []


def test_close_su2_matches_naive_closure():
    gens = [lambda_matrix(I), lambda_matrix(J)]
    g = close(gens, la.Matrix.__matmul__)
    assert set(g.carrier) == naive_closure(gens, la.Matrix.__matmul__)
    assert g.order == 8


def test_close_is_deterministic_identity_first(Q):
    assert [str(x) for x in Q.carrier] == ["1", "i", "j", "-1", "k", "-k", "-i", "-j"]
    again = close([I, J], QuatUnit.__mul__)
    assert again.carrier == Q.carrier and again.table == Q.table


def test_close_cap_exceeded():
    with pytest.raises(CapExceeded):
        close([1], lambda a, b: a + b, max_order=50)


def test_close_not_a_group():
    # max is an idempotent semigroup law with no inverses
    with pytest.raises(NotAGroup):
        close([1, 2], max)


def test_subgroup_examples(Q):
    triv = subgroup(Q, [Q.identity])
    assert triv.order == 1
    minus_one = subgroup(Q, [Q.index(-ONE)])
    assert minus_one.order == 2
    cyc = subgroup(Q, [Q.index(I)])
    assert set(cyc.carrier) == {ONE, I, -ONE, -I}
    # powers of i by hand
    assert {I, I * I, I * I * I, I * I * I * I} == set(cyc.carrier)
    incl = cyc.inclusion()
    assert check_homomorphism(incl) == [] and incl.is_injective()


def test_center_of_q_matches_brute_force(Q):
    z = center(Q)
    assert set(z.carrier) == brute_center(Q_ELEMS, QuatUnit.__mul__) == {ONE, -ONE}


def test_center_of_abelian_is_everything():
    g = direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))
    assert center(g).order == 8


def test_direct_product_orders(Q):
    z2 = cyclic(2)
    g = direct_product(Q, z2)
    assert g.order == 16 and check_group(g) == []
    assert is_isomorphic(direct_product(Q, cyclic(1)), Q) is not None
    big = direct_product(g, direct_product(direct_product(z2, z2), z2))
    assert big.order == 128
    with pytest.raises(CapExceeded):
        direct_product(g, g, max_order=200)


def test_quotient_q_by_center(Q):
    qq, proj = quotient(Q, center(Q))
    fp = fingerprint(qq)
    assert (qq.order, fp.is_abelian, fp.exponent) == (4, True, 2)
    assert identify(qq) == "Klein D2"
    assert check_homomorphism(proj) == []
    # cosets match the brute-force partition
    oracle = brute_cosets(Q_ELEMS, {ONE, -ONE}, QuatUnit.__mul__)
    got = {frozenset(Q.carrier[x] for x in c.members) for c in qq.carrier}
    assert got == oracle
    # representatives are least ids
    assert all(c.rep == min(c.members) for c in qq.carrier)


def test_quotient_by_whole_group(Q):
    qq, _ = quotient(Q, range(Q.order))
    assert qq.order == 1


def test_quotient_g_psi_by_first_factor_center(Q):
    g = direct_product(Q, close([-1], lambda a, b: a * b))
    n = [g.index((ONE, 1)), g.index((-ONE, 1))]
    qq, _ = quotient(g, n)
    fp = fingerprint(qq)
    assert (qq.order, fp.is_abelian, fp.exponent) == (8, True, 2)
    elems = [(q, s) for q in Q_ELEMS for s in (1, -1)]
    mul = lambda x, y: (x[0] * y[0], x[1] * y[1])
    assert len(brute_cosets(elems, {(ONE, 1), (-ONE, 1)}, mul)) == 8


def test_quotient_not_normal():
    d4 = dihedral(4)
    refl = d4.index((0, 1))
    with pytest.raises(NotNormal):
        quotient(d4, [d4.identity, refl])


def test_hom_from_images_lambda(Q):
    H = close([lambda_matrix(I), lambda_matrix(J)], la.Matrix.__matmul__)
    lam = hom_from_images(Q, H, {Q.index(I): H.index(lambda_matrix(I)), Q.index(J): H.index(lambda_matrix(J))})
    assert lam.is_bijective()
    for q in Q_ELEMS:
        assert lam.apply_payload(q) == lambda_matrix(q)


def test_hom_from_images_trivial(Q):
    z2 = cyclic(2)
    f = hom_from_images(Q, z2, {s: z2.identity for s in Q.generators})
    assert set(f.images) == {z2.identity}


def test_hom_from_images_q_to_c4_fails(Q):
    c4 = cyclic(4)
    c = c4.index(1)
    # oracle: no function Q -> C4 with i, j -> c satisfies the law
    add = lambda a, b: (a + b) % 4
    candidates = [
        f for f in all_functions(Q_ELEMS, range(4))
        if f[I] == 1 and f[J] == 1
        and all(f[x * y] == add(f[x], f[y]) for x in Q_ELEMS for y in Q_ELEMS)
    ]
    assert candidates == []
    with pytest.raises(NotAHomomorphism) as info:
        hom_from_images(Q, c4, {Q.index(I): c, Q.index(J): c})
    x, s, y = info.value.witness
    assert Q.mul(x, s) == y


def test_hom_from_images_witness_is_reproducible(Q):
    c4 = cyclic(4)
    ws = set()
    for _ in range(3):
        with pytest.raises(NotAHomomorphism) as info:
            hom_from_images(Q, c4, {Q.index(I): 1, Q.index(J): 1})
        ws.add(info.value.witness)
    assert len(ws) == 1


def test_kernel_and_fiber_degree_identity(Q):
    idm = identity_map(Q)
    assert kernel(idm).order == 1
    assert fiber_degree(idm) == 1


def test_fiber_degree_non_uniform(Q):
    raw = GroupMap("raw", Q, Q, tuple([0] * 7 + [1]))
    with pytest.raises(NonUniformFibers):
        fiber_degree(raw)


def test_fingerprint_q_matches_brute_orders(Q):
    fp = fingerprint(Q)
    orders = {}
    for q in Q_ELEMS:
        k = brute_order(q, QuatUnit.__mul__, ONE)
        orders[k] = orders.get(k, 0) + 1
    assert fp.order_multiset == orders == {1: 1, 2: 1, 4: 6}
    assert (fp.order, fp.is_abelian, fp.center_order, fp.exponent, fp.derived_order) == (8, False, 2, 4, 2)


def test_fingerprint_trivial_and_z2_cubed():
    fp = fingerprint(cyclic(1))
    assert (fp.order, fp.is_abelian, fp.order_multiset, fp.center_order) == (1, True, {1: 1}, 1)
    z = cyclic(2)
    fp = fingerprint(direct_product(direct_product(z, z), z))
    assert fp.order_multiset == {1: 1, 2: 7} and fp.exponent == 2 and fp.is_abelian


def test_is_isomorphic_examples(Q):
    assert is_isomorphic(Q, Q) is not None
    klein = direct_product(cyclic(2), cyclic(2))
    assert is_isomorphic(klein, cyclic(4)) is None
    assert fingerprint(klein).order_multiset != fingerprint(cyclic(4)).order_multiset


def test_is_isomorphic_same_fingerprint_different_groups():
    # C4 x| C4 shares the fingerprint of Q8 x Z2 but is not isomorphic to it
    def mul(x, y):
        (a, b), (c, d) = x, y
        return ((a + (c if b % 2 == 0 else -c)) % 4, (b + d) % 4)

    c4c4 = close([(1, 0), (0, 1)], mul, name="C4:C4")
    q8z2 = direct_product(close([I, J], QuatUnit.__mul__), cyclic(2))
    assert fingerprint(c4c4) == fingerprint(q8z2)
    assert is_isomorphic(c4c4, q8z2) is None


def test_cayley_table_q(Q):
    t = cayley_table(Q)
    assert len(t.headers) == 8 and len(t.rows) == 8
    row = t.headers.index("i")
    assert t.rows[row][t.headers.index("j")] == "k"
    assert t.rows[t.headers.index("j")][t.headers.index("i")] == "-k"
    # matrix products agree
    assert lambda_matrix(I) @ lambda_matrix(J) == lambda_matrix(K)


def test_cayley_table_trivial():
    t = cayley_table(cyclic(1))
    assert t.rows == [["e"]]


def test_check_group_reports_corruption(Q):
    table = [list(r) for r in Q.table]
    table[2][3] = table[2][4]
    problems = check_group(Q.with_table(table))
    assert problems and "row" in problems[0]


def test_compose_order(Q):
    qq, proj = quotient(Q, center(Q))
    f = compose(identity_map(qq), proj, identity_map(Q))
    assert f.images == proj.images
