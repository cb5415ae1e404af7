"""Registry of verification checks and the report they produce.

Every check takes a built :class:`~cptgroups.atlas.Atlas` and returns a list
of problem strings; an empty list means the check passed. Check ids are
stable: ``engine.*`` for generic group/map laws, ``eqN.*`` and ``diagN.*`` for
the individual claims.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from . import linear as la
from .atlas import (
    I,
    J,
    K,
    ONE,
    Atlas,
    lambda_matrix,
    nu_bar_fibers,
    nu_matrix,
    reconstruct_g_A,
    reconstruct_g_psi,
    sg,
)
from .catalog import catalog, identify
from .diagrams import Malformed, builtin_diagrams, check as check_diagram, diagram13, diagram26, diagram29
from .groups import (
    CapExceeded,
    GroupError,
    GroupMap,
    center,
    check_group,
    check_homomorphism,
    direct_product,
    fiber_degree,
    fingerprint,
    is_isomorphic,
    kernel,
    quotient,
)

REPORT_VERSION = "1"


@dataclass(frozen=True)
class Check:
    id: str
    ref: str
    run: Callable[[Atlas], list]


@dataclass
class CheckResult:
    id: str
    ref: str
    status: str
    witness: str = ""


@dataclass
class VerificationReport:
    version: str = REPORT_VERSION
    checks: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        failed = sum(1 for c in self.checks if c.status != "pass")
        return {"total": len(self.checks), "passed": len(self.checks) - failed, "failed": failed}

    @property
    def passed(self) -> bool:
        return self.summary["failed"] == 0

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "status": "pass" if self.passed else "fail",
            "checks": [asdict(c) for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(data["version"], [CheckResult(**c) for c in data["checks"]])

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{'PASS' if c.status == 'pass' else 'FAIL'}] {c.id}: {c.ref}"
            if c.witness:
                line += f"\n       witness: {c.witness}"
            lines.append(line)
        s = self.summary
        lines.append(f"{s['passed']}/{s['total']} checks passed, {s['failed']} failed")
        return "\n".join(lines)


def _expect(cond: bool, message: str) -> list:
    return [] if cond else [message]


def _first_iso_theorem(f: GroupMap) -> list:
    k = kernel(f)
    q, _ = quotient(f.domain, k)
    im = f.image()
    if is_isomorphic(q, im) is None:
        return [f"{f.domain.name}/ker({f.name}) (order {q.order}) is not isomorphic to im({f.name}) (order {im.order})"]
    if f.domain.order != fiber_degree(f) * im.order:
        return [f"|{f.domain.name}| != fiber degree x |image| for {f.name}"]
    return []


def _identified(g, expected: str) -> list:
    got = identify(g)
    return _expect(got == expected, f"identify({g.name}) = {got}, expected {expected}")


def _iso_with_law(a, b) -> list:
    f = is_isomorphic(a, b)
    if f is None:
        return [f"no isomorphism {a.name} -> {b.name}"]
    return check_homomorphism(f) + _expect(f.is_bijective(), f"{f.name} is not bijective")


# --- claim checks -----------------------------------------------------------


def _eq1_order(at):
    g = at.groups["G_psi"]
    return _expect(g.order == 16, f"|G_psi| = {g.order}") + _expect(not g.is_abelian(), "G_psi is abelian")


def _eq1_iso(at):
    ref = direct_product(at.groups["Q"], at.groups["Z2"], name="Q x Z2")
    return _iso_with_law(at.groups["G_psi"], ref) + _identified(at.groups["G_psi"], "Q8 x Z2")


def _eq2(at):
    g = at.groups["G_A"]
    fp = fingerprint(g)
    return (
        _expect(g.order == 8, f"|G_A| = {g.order}")
        + _expect(fp.is_abelian, "G_A is not abelian")
        + _expect(fp.exponent == 2, f"exponent {fp.exponent}")
        + _identified(g, "Z2^3")
    )


def _eq3_order(at):
    g = at.groups["G_QED"]
    return _expect(g.order == 128, f"|G_QED| = {g.order}") + _expect(not g.is_abelian(), "G_QED is abelian")


def _eq3_iso(at):
    return _iso_with_law(at.groups["G_QED"], catalog()["(Q8 x Z2) x Z2^3"])


def _eq3_center(at):
    z = center(at.groups["G_QED"]).order
    return _expect(z == 32, f"|Z(G_QED)| = {z}")


def _eq4(at):
    lam, Q, H = at.maps["lambda"], at.groups["Q"], at.groups["H"]
    expected = {ONE: la.identity(2), I: la.pauli(1).scale(-la.I_UNIT), J: la.pauli(2).scale(-la.I_UNIT),
                K: la.pauli(3).scale(-la.I_UNIT)}
    problems = _expect(lam.is_bijective(), "lambda is not bijective")
    for q, m in expected.items():
        got = lam.apply_payload(q)
        if got != m:
            problems.append(f"lambda({q}) = {got}, expected {m}")
    return problems + check_homomorphism(lam)


def _eq5(at):
    H, G_psi = at.groups["H"], at.groups["G_psi"]
    z = center(H)
    problems = _expect(set(z.carrier) == {la.identity(2), -la.identity(2)}, f"Z(H) = {z.labels}")
    return problems + _iso_with_law(direct_product(H, z, name="H x Z(H)"), G_psi)


_ROTATIONS = {la.diag(1, 1, 1), la.diag(1, -1, -1), la.diag(-1, 1, -1), la.diag(-1, -1, 1)}


def _eq7_elements(at):
    H = at.groups["H"]
    image = {la.phi(a) for a in H.carrier}
    return _expect(image == _ROTATIONS, f"phi(H) = {sorted(map(str, image))}") + _expect(
        set(at.groups["PhiH"].carrier) == _ROTATIONS, "PhiH carrier differs from phi(H)")


def _eq7_klein(at):
    g = at.groups["PhiH"]
    e = g.identity
    problems = _expect(g.is_abelian(), "PhiH is not abelian")
    problems += [f"{g.label(x)}^2 != I" for x in range(g.order) if g.mul(x, x) != e]
    # every product of two distinct non-identity elements is the third one
    nontriv = [x for x in range(g.order) if x != e]
    for x in nontriv:
        for y in nontriv:
            if x != y and g.mul(x, y) in (e, x, y):
                problems.append(f"{g.label(x)}*{g.label(y)} = {g.label(g.mul(x, y))}")
    problems += _expect(is_isomorphic(g, catalog()["C4"]) is None, "PhiH is cyclic")
    return problems + _identified(g, "Klein D2")


def _eq8(at):
    r = reconstruct_g_psi(at)
    pre = r.group.carrier
    pre_order = len({a for a, _ in pre})
    return (
        _expect(pre_order == 8, f"|preimage| = {pre_order}")
        + _expect(any(a == -la.identity(2) for a, _ in pre), "-I not in preimage")
        + _identified(r.group, "Q8 x Z2")
        + check_homomorphism(r.iso)
    )


def _eq9(at):
    g = at.groups["G_PT"]
    return _identified(g, "Klein D2") + _expect(
        set(g.labels) == {"E", "P", "T", "PT"}, f"G_PT = {g.labels}")


def _eq9_mu_bar(at):
    mu = at.maps["mu_bar"]
    return check_homomorphism(mu) + _expect(mu.is_bijective(), "mu_bar is not a bijection G_PT -> PhiH")


def _eq11_12(sub):
    def run(at):
        r = next(x for x in reconstruct_g_A(at) if sub in x.name)
        return _expect(r.group.order == 8, f"order {r.group.order}") + _identified(r.group, "Z2^3") + check_homomorphism(r.iso)
    return run


def _kernel_z2(name):
    def run(at):
        k = kernel(at.maps[name])
        return _expect(k.order == 2, f"|ker {name}| = {k.order}") + _identified(k, "Z2")
    return run


def _eq15_psi(at):
    psi = at.maps["psi"]
    G_psi = at.groups["G_psi"]
    k = kernel(psi)
    expected = {(ONE, 1), (-ONE, 1)}
    q, _ = quotient(G_psi, k)
    return _kernel_z2("psi")(at) + _expect(set(k.carrier) == expected, f"ker psi = {k.labels}") + _identified(q, "Z2^3")


_EQ14_22 = ("rho", "psi", "mu_bar", "alpha", "alpha_bar", "beta", "beta_bar", "gamma_map", "gamma_bar")


def _eq14_22_homs(at):
    return [p for name in _EQ14_22 for p in check_homomorphism(at.maps[name])]


def _eq17_22_injective(at):
    names = ("alpha", "alpha_bar", "beta", "beta_bar", "gamma_map", "gamma_bar")
    return [f"{n} is not injective" for n in names if not at.maps[n].is_injective()]


def _eq23(at):
    nu = at.maps["nu"]
    problems = check_homomorphism(nu)
    for y, (q, g) in enumerate(nu.domain.carrier):
        direct = lambda_matrix(q).scale(sg(g))
        if nu.codomain.carrier[nu(y)] != direct:
            problems.append(f"nu{nu.domain.label(y)} != sg(g) lambda(q)")
    return problems


def _eq25(at):
    nu = at.maps["nu"]
    problems = _expect(fiber_degree(nu) == 2, f"fiber degree {fiber_degree(nu)}")
    for q in at.groups["Q"].carrier:
        if nu_matrix(q, -1) != nu_matrix(-q, 1):
            problems.append(f"nu({q},-1) != nu({-q},1)")
        if nu.apply_payload((q, -1)) != nu.apply_payload((-q, 1)):
            problems.append(f"table: nu({q},-1) != nu({-q},1)")
    k = kernel(nu)
    return problems + _expect(set(k.carrier) == {(ONE, 1), (-ONE, -1)}, f"ker nu = {k.labels}")


def _eq27_welldefined(at):
    problems = []
    G_A = at.groups["G_A"]
    for x, fiber, images in nu_bar_fibers(at):
        if len(fiber) != 2:
            problems.append(f"fiber over {G_A.label(x)} has {len(fiber)} points")
        if len(set(images)) != 1:
            problems.append(f"fiber over {G_A.label(x)} maps to {[str(m) for m in images]}")
    return problems


def _eq27_2to1(at):
    f = at.maps["nu_bar"]
    return check_homomorphism(f) + _expect(fiber_degree(f) == 2, f"fiber degree {fiber_degree(f)}")


def _diagram_cells(builder):
    def run(at):
        rep = check_diagram(builder(at))
        return [f"{o.subject}: {o.witness}" for o in rep.outcomes if o.kind == "cell" and not o.passed]
    return run


def _diagram_annotations(builder):
    def run(at):
        rep = check_diagram(builder(at))
        return [f"{o.kind} {o.subject}: {o.witness}" for o in rep.outcomes if o.kind != "cell" and not o.passed]
    return run


def _diag29_independent(at):
    """Both composites from payload arithmetic, compared against the table path."""
    psi, vbar = at.maps["psi"], at.maps["varphi_bar"]
    G_psi = at.groups["G_psi"]
    problems = []
    for y, (q, g) in enumerate(G_psi.carrier):
        a = nu_matrix(q, g)
        via_cover = la.phi_double(la.zero_translation(a))
        via_rotation = la.zero_translation(la.block_embed(la.phi(a)))
        via_tables = vbar.codomain.carrier[vbar(psi(y))]
        if not (via_cover == via_rotation == via_tables):
            problems.append(f"at {G_psi.label(y)}: {via_cover} / {via_rotation} / {via_tables}")
    return problems


def _eq28_values(at):
    vphi, vbar, psi = at.maps["varphi"], at.maps["varphi_bar"], at.maps["psi"]
    G_psi = at.groups["G_psi"]
    y = G_psi.index((I, 1))
    got = vphi.codomain.carrier[vphi(y)]
    got_bar = vbar.codomain.carrier[vbar(psi(y))]
    return (
        _expect(got == la.zero_translation(lambda_matrix(I)), f"varphi(i,1) = {got}")
        + _expect(vphi.apply_payload((ONE, 1)) == la.zero_translation(la.identity(2)), "varphi(1,1) != (0, I)")
        + _expect(got_bar == la.zero_translation(la.diag(1, 1, -1, -1)), f"varphi_bar(psi(i,1)) = {got_bar}")
        + check_homomorphism(vphi) + check_homomorphism(vbar)
    )


def _covering_sign(at):
    problems = []
    for a in at.groups["H"].carrier:
        if la.phi(-a) != la.phi(a):
            problems.append(f"phi(-A) != phi(A) for A = {a}")
        if la.phi_tilde(-a) != la.phi_tilde(a):
            problems.append(f"phi_tilde(-A) != phi_tilde(A) for A = {a}")
    return problems


def _covering_block(at):
    return [f"phi_tilde({a}) != block(phi({a}))" for a in at.groups["H"].carrier
            if la.phi_tilde(a) != la.block_embed(la.phi(a))]


def _diagrams_wellformed(at):
    problems = []
    for d in builtin_diagrams(at):
        rep = check_diagram(d)
        problems += [f"{d.name}: {o.kind} {o.subject}: {o.witness}" for o in rep.failures()]
    return problems


def _group_check(name):
    return lambda at: check_group(at.groups[name])


def _map_check(name):
    return lambda at: check_homomorphism(at.maps[name])


def _firstiso_check(name):
    return lambda at: _first_iso_theorem(at.maps[name])


CLAIMS = [
    Check("eq1.order16", "G_psi has 16 elements and is non-abelian", _eq1_order),
    Check("eq1.iso.QxZ2", "G_psi is isomorphic to Q x Z2", _eq1_iso),
    Check("eq2.G_A.Z2^3", "G_A is abelian of order 8 and exponent 2, i.e. Z2^3", _eq2),
    Check("eq3.G_QED.order128", "G_QED = G_psi x G_A has 128 elements", _eq3_order),
    Check("eq3.iso.catalog", "G_QED is isomorphic to (Q8 x Z2) x Z2^3", _eq3_iso),
    Check("eq3.G_QED.center", "Z(G_QED) has order 4 x 8 = 32", _eq3_center),
    Check("eq4.lambda.iso", "lambda: 1->I, i->-i s1, j->-i s2, k->-i s3 is an isomorphism Q -> H", _eq4),
    Check("eq5.center.H", "Z(H) = {I, -I} and G_psi is isomorphic to H x Z(H)", _eq5),
    Check("eq7.phiH.elements", "phi(H) = {I, Rx(pi), Ry(pi), Rz(pi)}", _eq7_elements),
    Check("eq7.phiH.klein", "phi(H) has the Klein D2 table and is not C4", _eq7_klein),
    Check("eq8.reconstruct", "phi^-1(D2) x Z2 is isomorphic to G_psi", _eq8),
    Check("eq9.G_PT.klein", "G_PT = {E, P, T, PT} is isomorphic to Klein D2", _eq9),
    Check("eq9.mu_bar.pairing", "mu_bar identifies the tables of G_PT and phi(H)", _eq9_mu_bar),
    Check("eq11.G_PTxP", "G_PT x <P> is Z2^3 and isomorphic to G_A", _eq11_12("P_sub")),
    Check("eq12.G_PTxT", "G_PT x <T> is Z2^3 and isomorphic to G_A", _eq11_12("T_sub")),
    Check("eq14.rho.kernel", "ker rho = {1, -1} is Z2", _kernel_z2("rho")),
    Check("eq15.psi.kernel", "ker psi = {(1,1), (-1,1)} is Z2 and G_psi / ker psi is Z2^3", _eq15_psi),
    Check("eq14-22.homs", "rho, psi, mu_bar, alpha, alpha_bar, beta, beta_bar, gamma, gamma_bar are homomorphisms", _eq14_22_homs),
    Check("eq17-22.injective", "alpha, alpha_bar, beta, beta_bar, gamma, gamma_bar are injective", _eq17_22_injective),
    Check("eq23.nu.hom", "nu(q, g) = sg(g) lambda(q) is a homomorphism", _eq23),
    Check("eq25.nu.2to1", "nu is 2 to 1 with nu(q, -1) = nu(-q, 1)", _eq25),
    Check("eq27.nu_bar.welldefined", "nu_bar(x) = phi(nu(y)) agrees on both points of each psi-fiber", _eq27_welldefined),
    Check("eq27.nu_bar.2to1", "nu_bar is a 2 to 1 homomorphism", _eq27_2to1),
    Check("eq28.varphi.values", "varphi = gamma o beta o nu and varphi_bar = gamma_bar o beta_bar o nu_bar", _eq28_values),
    Check("diag13.commutes", "the four squares of the discrete/continuous diagram commute", _diagram_cells(diagram13)),
    Check("diag13.fibers", "each vertical arrow is 2 to 1 with kernel Z2", _diagram_annotations(diagram13)),
    Check("diag26.commutes", "Phi o nu = nu_bar o psi", _diagram_cells(diagram26)),
    Check("diag26.degrees", "nu, psi, Phi, nu_bar are all 2 to 1", _diagram_annotations(diagram26)),
    Check("diag29.commutes", "Phi_double o varphi = varphi_bar o psi (tables)", _diagram_cells(diagram29)),
    Check("diag29.independent", "Phi_double o varphi = varphi_bar o psi (semidirect arithmetic vs tables)", _diag29_independent),
    Check("covering.sign_blind", "phi(-A) = phi(A) and phi_tilde(-A) = phi_tilde(A) on H", _covering_sign),
    Check("covering.block", "phi_tilde(A) = block_embed(phi(A)) on H", _covering_block),
    Check("diagrams.all", "all builtin diagrams pass every cell and annotation", _diagrams_wellformed),
]


def all_checks(at: Atlas) -> list[Check]:
    checks = [Check(f"engine.group.{n}", f"{n} satisfies the group axioms", _group_check(n)) for n in at.groups]
    checks += [Check(f"engine.map.{n}", f"{n} satisfies the homomorphism law", _map_check(n)) for n in at.maps]
    checks += [Check(f"engine.firstiso.{n}", f"{at.maps[n].domain.name}/ker {n} is isomorphic to im {n}",
                     _firstiso_check(n)) for n in at.maps]
    return checks + CLAIMS


def check_ids(at: Atlas) -> list[str]:
    return [c.id for c in all_checks(at)]


def run_checks(at: Atlas, only: Optional[str] = None) -> VerificationReport:
    """Run every check (or the one named by ``only``) in registry order.

    Any exception inside a check (a tampered table can break engine
    preconditions in arbitrary ways) becomes a failure with the exception as
    witness; CapExceeded and Malformed propagate as internal errors.
    """
    checks = all_checks(at)
    if only is not None:
        checks = [c for c in checks if c.id == only]
        if not checks:
            raise KeyError(only)
    report = VerificationReport()
    for c in checks:
        try:
            problems = c.run(at)
        except (CapExceeded, Malformed):
            raise
        except Exception as exc:  # noqa: BLE001
            problems = [f"{type(exc).__name__}: {exc}"]
        report.checks.append(CheckResult(c.id, c.ref, "fail" if problems else "pass", "; ".join(problems)))
    return report
