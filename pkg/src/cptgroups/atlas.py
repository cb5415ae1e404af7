"""Concrete construction of every named group and homomorphism.

Groups and maps are exposed by stable string names (``atlas.groups["G_psi"]``,
``atlas.maps["nu"]``). Infinite groups are never materialized: each codomain
such as SU(2) or the Poincare group is replaced by the finite subgroup
generated by the relevant images.

Naming: the quaternion unit usually written gamma is ``j`` here, and the
homomorphism gamma is ``gamma_map``.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

from . import linear as la
from .catalog import identify
from .groups import (
    DEFAULT_MAX_ORDER,
    CapExceeded,
    FiniteGroup,
    GroupError,
    GroupMap,
    center,
    check_homomorphism,
    close,
    compose,
    direct_product,
    fiber_degree,
    hom_from_images,
    is_isomorphic,
    kernel,
    map_from_function,
    quotient,
    subgroup_from_ids,
)
from .linear import I_UNIT, Matrix, SemidirectElem

# Klein-group pairing between Q/{+-1} and {E, P, T, PT}; any of the six
# bijections of the involutions works, this one is a convention.
PT_PAIRING = {"i": "P", "j": "T", "k": "PT"}

_AXIS_PRODUCT = {
    ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
}


class IllDefined(GroupError):
    pass


class ReconstructionFailed(GroupError):
    pass


class AtlasBuildError(GroupError):
    pass


@dataclass(frozen=True)
class QuatUnit:
    """Quaternion unit ``sign * axis`` with axis in ``"1ijk"``."""

    sign: int
    axis: str

    def __mul__(self, other: "QuatUnit") -> "QuatUnit":
        s = self.sign * other.sign
        a, b = self.axis, other.axis
        if a == "1":
            return QuatUnit(s, b)
        if b == "1":
            return QuatUnit(s, a)
        if a == b:
            return QuatUnit(-s, "1")
        t, c = _AXIS_PRODUCT[(a, b)]
        return QuatUnit(s * t, c)

    def __neg__(self) -> "QuatUnit":
        return QuatUnit(-self.sign, self.axis)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.axis


ONE, I, J, K = (QuatUnit(1, a) for a in "1ijk")


def lambda_matrix(q: QuatUnit) -> Matrix:
    """1 -> I, i -> -i s1, j -> -i s2, k -> -i s3, extended by sign."""
    base = la.identity(2) if q.axis == "1" else la.pauli("1ijk".index(q.axis)).scale(-I_UNIT)
    return base.scale(q.sign)


def sg(g: int) -> int:
    return 1 if g == 1 else -1


def nu_matrix(q: QuatUnit, g: int) -> Matrix:
    return lambda_matrix(q).scale(sg(g))


def su2_label(a: Matrix) -> str:
    """Readable name of a Pauli-group matrix, e.g. ``-i s1`` or ``-I``."""
    for k in (0, 1, 2, 3):
        base = la.identity(2) if k == 0 else la.pauli(k)
        for c, txt in ((1, ""), (-1, "-"), (I_UNIT, "i"), (-I_UNIT, "-i")):
            if base.scale(c) == a:
                if k == 0:
                    return {"": "I", "-": "-I", "i": "iI", "-i": "-iI"}[txt]
                return f"{txt}{' ' if txt.endswith('i') else ''}s{k}"
    return str(a)


_LORENTZ_NAMES = {
    la.identity(4): "E",
    la.PARITY: "P",
    la.TIME_REVERSAL: "T",
    la.PARITY @ la.TIME_REVERSAL: "PT",
}


def lorentz_label(m: Matrix) -> str:
    return _LORENTZ_NAMES.get(m, str(m))


def semidirect_label(x: SemidirectElem) -> str:
    part = su2_label(x.part) if x.part.n == 2 else str(x.part)
    t = x.translation
    tr = "0" if not any(t) else "(" + ",".join(str(v) for v in t) + ")"
    return f"({tr}, {part})"


@dataclass
class Atlas:
    groups: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    # intermediate objects that are not part of the public name list
    extras: dict = field(default_factory=dict)
    max_order: int = DEFAULT_MAX_ORDER

    def group(self, name: str) -> FiniteGroup:
        return self.groups[name]

    def map(self, name: str) -> GroupMap:
        return self.maps[name]

    def replace_group(self, name: str, g: FiniteGroup) -> "Atlas":
        """Copy with one group swapped everywhere, including inside the maps.

        Map tables are kept as they are, so a tampered group shows up as
        failing group and homomorphism laws rather than as a broken diagram.
        """
        old = self.groups[name]
        swap = lambda h: g if h is old else h
        maps = {
            k: GroupMap(f.name, swap(f.domain), swap(f.codomain), f.images) for k, f in self.maps.items()
        }
        groups = {k: swap(h) for k, h in self.groups.items()}
        return Atlas(groups, maps, dict(self.extras), self.max_order)


@contextmanager
def _step(label: str):
    """Re-raise construction failures with the name of what was being built."""
    try:
        yield
    except (CapExceeded, AtlasBuildError):
        raise
    except (GroupError, la.NotExact, la.NotUnitary, KeyError) as exc:
        raise AtlasBuildError(f"building {label}: {exc}") from exc


def build_atlas(max_order: int = DEFAULT_MAX_ORDER) -> Atlas:
    at = Atlas(max_order=max_order)
    G, M = at.groups, at.maps
    cap = dict(max_order=max_order)

    # quaternion side
    with _step("Q (quaternion group)"):
        Q = close([I, J], QuatUnit.__mul__, name="Q", **cap)
        G["Q"] = Q
    with _step("Z2 = {1, -1}"):
        Z2 = close([-1], lambda a, b: a * b, name="Z2", **cap)
        G["Z2"] = Z2
    with _step("G_psi = Q x Z2"):
        G_psi = direct_product(Q, Z2, name="G_psi", **cap)
        G["G_psi"] = G_psi

    # SU(2) side
    with _step("H = <-i s1, -i s2> in SU(2)"):
        H = close([lambda_matrix(I), lambda_matrix(J)], Matrix.__matmul__, name="H", label=su2_label, **cap)
        G["H"] = H
    with _step("lambda: Q -> H"):
        lam = map_from_function(Q, H, lambda_matrix, name="lambda")
        if not lam.is_bijective():
            raise AtlasBuildError("lambda is not a bijection onto H")
        M["lambda"] = lam
        M["mu"] = GroupMap("mu", Q, H, lam.images)
    with _step("PhiH = phi(H) in SO(3)"):
        PhiH = close([la.phi(H.carrier[s]) for s in H.generators], Matrix.__matmul__, name="PhiH", **cap)
        G["PhiH"] = PhiH
        M["phi_restricted"] = map_from_function(H, PhiH, la.phi, name="phi_restricted")

    # Lorentz side
    with _step("G_PT = <P, T>"):
        G["G_PT"] = G_PT = close([la.PARITY, la.TIME_REVERSAL], Matrix.__matmul__, name="G_PT", label=lorentz_label, **cap)
        G["P_sub"] = close([la.PARITY], Matrix.__matmul__, name="P_sub", label=lorentz_label, **cap)
        G["T_sub"] = close([la.TIME_REVERSAL], Matrix.__matmul__, name="T_sub", label=lorentz_label, **cap)

    with _step("Q/{+-1} and its pairing with G_PT"):
        ZQ = center(Q, name="Z(Q)")
        Qbar, proj = quotient(Q, ZQ, name="Q/Z2")
        at.extras.update({"Z(Q)": ZQ, "Q/Z2": Qbar, "proj_Q": proj})
        lift = {str(c): c for c in Qbar.carrier}
        assign = {Qbar.index(lift[f"[{ax}]"]): G_PT.id_of_label(PT_PAIRING[ax]) for ax in "ij"}
        pairing = hom_from_images(Qbar, G_PT, assign, name="pairing")
        if not pairing.is_bijective() or G_PT.label(pairing(Qbar.index(lift["[k]"]))) != PT_PAIRING["k"]:
            raise AtlasBuildError("PT pairing is not an isomorphism Q/Z2 -> G_PT")
        at.extras["pairing"] = pairing
        M["rho"] = compose(pairing, proj, name="rho")

    with _step("G_A = (Q/Z2) x Z2 and G_QED"):
        G_A = direct_product(Qbar, Z2, name="G_A", **cap)
        G["G_A"] = G_A
        G["G_QED"] = direct_product(G_psi, G_A, name="G_QED", **cap)

    with _step("psi: G_psi -> G_A"):
        def psi_fn(pair):
            q, g = pair
            return (proj.apply_payload(q), g)

        M["psi"] = psi = map_from_function(G_psi, G_A, psi_fn, name="psi")

    with _step("alpha, alpha_bar"):
        M["alpha"] = map_from_function(Q, G_psi, lambda q: (q, 1), name="alpha")
        inv_pair = {pairing(x): x for x in range(Qbar.order)}
        M["alpha_bar"] = map_from_function(
            G_PT, G_A, lambda m: (Qbar.carrier[inv_pair[G_PT.index(m)]], 1), name="alpha_bar"
        )

    with _step("mu_bar: G_PT -> PhiH"):
        M["mu_bar"] = _mu_bar(Q, G_PT, PhiH, M["rho"])

    with _step("nu: G_psi -> H"):
        M["nu"] = map_from_function(G_psi, H, lambda p: nu_matrix(*p), name="nu")
    with _step("nu_bar: G_A -> PhiH"):
        M["nu_bar"] = build_nu_bar(psi, M["nu"], M["phi_restricted"])

    # covering groups and their embeddings
    with _step("beta: H -> SL2(C) finite subgroup"):
        H_sl2 = close([H.carrier[s] for s in H.generators], Matrix.__matmul__, name="H_SL2C", label=su2_label, **cap)
        G["H_SL2C"] = H_sl2
        M["beta"] = map_from_function(H, H_sl2, lambda a: a, name="beta")
    with _step("beta_bar: PhiH -> SO^c(3,1) finite subgroup"):
        Lor = close([la.block_embed(PhiH.carrier[s]) for s in PhiH.generators], Matrix.__matmul__, name="Lor_fin", **cap)
        G["Lor_fin"] = Lor
        M["beta_bar"] = map_from_function(PhiH, Lor, la.block_embed, name="beta_bar")
    with _step("phi_tilde restricted"):
        M["phi_tilde_restricted"] = map_from_function(H_sl2, Lor, la.phi_tilde, name="phi_tilde_restricted")
    with _step("gamma_map, gamma_bar"):
        Pbar = close([la.zero_translation(H_sl2.carrier[s]) for s in H_sl2.generators], la.semidirect_product,
                     name="Pbar_fin", label=semidirect_label, **cap)
        P4 = close([la.zero_translation(Lor.carrier[s]) for s in Lor.generators], la.semidirect_product,
                   name="P_fin", label=semidirect_label, **cap)
        G["Pbar_fin"], G["P_fin"] = Pbar, P4
        M["gamma_map"] = map_from_function(H_sl2, Pbar, la.zero_translation, name="gamma_map")
        M["gamma_bar"] = map_from_function(Lor, P4, la.zero_translation, name="gamma_bar")
    with _step("phi_double restricted"):
        M["phi_double_restricted"] = map_from_function(Pbar, P4, la.phi_double, name="phi_double_restricted")
    with _step("varphi, varphi_bar"):
        M["varphi"] = compose(M["gamma_map"], M["beta"], M["nu"], name="varphi")
        M["varphi_bar"] = compose(M["gamma_bar"], M["beta_bar"], M["nu_bar"], name="varphi_bar")
    return at


def _mu_bar(Q: FiniteGroup, G_PT: FiniteGroup, PhiH: FiniteGroup, rho: GroupMap) -> GroupMap:
    """[q] -> phi(lambda(q)), checked to be independent of the lift q."""
    images: dict[int, int] = {}
    for qid, q in enumerate(Q.carrier):
        x = rho(qid)
        val = PhiH.index(la.phi(lambda_matrix(q)))
        if images.setdefault(x, val) != val:
            raise IllDefined(f"mu_bar: lifts of {G_PT.label(x)} disagree")
    f = GroupMap("mu_bar", G_PT, PhiH, tuple(images[x] for x in range(G_PT.order)))
    problems = check_homomorphism(f)
    if problems:
        raise AtlasBuildError(problems[0])
    return f


def build_nu_bar(psi: GroupMap, nu: GroupMap, phi_r: GroupMap) -> GroupMap:
    """Induced map on G_A: x -> phi(nu(y)) for y in the fiber of psi over x."""
    G_A, G_psi, PhiH = psi.codomain, psi.domain, phi_r.codomain
    images: dict[int, int] = {}
    for x in range(G_A.order):
        fiber = [y for y in range(G_psi.order) if psi(y) == x]
        vals = {phi_r(nu(y)) for y in fiber}
        if len(vals) != 1:
            raise IllDefined(f"nu_bar: fiber over {G_A.label(x)} maps to {sorted(PhiH.label(v) for v in vals)}")
        images[x] = vals.pop()
    f = GroupMap("nu_bar", G_A, PhiH, tuple(images[x] for x in range(G_A.order)))
    problems = check_homomorphism(f)
    if problems:
        raise AtlasBuildError(problems[0])
    return f


def nu_bar_fibers(at: Atlas) -> list[tuple[int, list[int], list]]:
    """For each class x of G_A: its psi-fiber and phi(nu(.)) on each fiber point."""
    psi, nu, phi_r = at.maps["psi"], at.maps["nu"], at.maps["phi_restricted"]
    out = []
    for x in range(psi.codomain.order):
        fiber = [y for y in range(psi.domain.order) if psi(y) == x]
        out.append((x, fiber, [phi_r.codomain.carrier[phi_r(nu(y))] for y in fiber]))
    return out


@dataclass(frozen=True)
class Reconstruction:
    group: FiniteGroup
    target: FiniteGroup
    iso: Optional[GroupMap]
    name: str


def pauli_group(max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return close([la.pauli(1), la.pauli(2), la.pauli(3)], Matrix.__matmul__, name="Pauli", label=su2_label,
                 max_order=max_order)


def reconstruct_g_psi(at: Atlas) -> Reconstruction:
    """preimage of PhiH under phi (inside the Pauli group), times Z2, mapped onto G_psi."""
    PhiH = at.groups["PhiH"]
    pg = pauli_group(at.max_order)
    ids = [x for x, a in enumerate(pg.carrier) if la.is_su2(a) and la.phi(a) in PhiH]
    pre = subgroup_from_ids(pg, ids, name="Phi^-1(D2)")
    g = direct_product(pre, at.groups["Z2"], name="Phi^-1(D2) x Z2", max_order=at.max_order)
    iso = is_isomorphic(g, at.groups["G_psi"])
    if iso is None:
        raise ReconstructionFailed("preimage x Z2 is not isomorphic to G_psi")
    return Reconstruction(g, at.groups["G_psi"], iso, "Phi^-1(D2) x Z2")


def reconstruct_g_A(at: Atlas) -> list[Reconstruction]:
    """G_PT x <P> and G_PT x <T>, each mapped onto G_A."""
    out = []
    for sub in ("P_sub", "T_sub"):
        g = direct_product(at.groups["G_PT"], at.groups[sub], name=f"G_PT x {sub}", max_order=at.max_order)
        iso = is_isomorphic(g, at.groups["G_A"])
        if iso is None or identify(g) != "Z2^3":
            raise ReconstructionFailed(f"G_PT x {sub} is not Z2^3")
        out.append(Reconstruction(g, at.groups["G_A"], iso, g.name))
    return out


def composed_maps(at: Atlas) -> tuple[GroupMap, GroupMap]:
    return at.maps["varphi"], at.maps["varphi_bar"]


def kernel_summary(f: GroupMap) -> tuple[int, str, int]:
    """(kernel order, catalog name of the kernel, fiber degree)."""
    k = kernel(f)
    return k.order, identify(k), fiber_degree(f)


GROUP_NAMES = ("Q", "Z2", "G_psi", "G_A", "G_QED", "H", "PhiH", "G_PT", "P_sub", "T_sub",
               "H_SL2C", "Lor_fin", "Pbar_fin", "P_fin")
MAP_NAMES = ("lambda", "mu", "rho", "psi", "mu_bar", "alpha", "alpha_bar", "beta", "beta_bar",
             "gamma_map", "gamma_bar", "nu", "nu_bar", "varphi", "varphi_bar", "phi_restricted",
             "phi_tilde_restricted", "phi_double_restricted")
