"""Commutative diagrams of finite groups and a checker for them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .atlas import Atlas
from .catalog import identify
from .groups import FiniteGroup, GroupError, GroupMap, NonUniformFibers, fiber_degree, kernel


class Malformed(GroupError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    map: GroupMap
    source: str
    target: str


@dataclass(frozen=True)
class Diagram:
    """Nodes, arrows, commutativity cells and per-arrow annotations.

    A cell is a pair of paths; each path lists arrow labels in the order they
    are applied. ``degrees`` holds expected fiber degrees and ``kernels``
    expected catalog names of kernels, both keyed by arrow label.
    """

    name: str
    nodes: tuple
    arrows: tuple
    cells: tuple = ()
    degrees: tuple = ()
    kernels: tuple = ()

    def node(self, label: str) -> FiniteGroup:
        return dict(self.nodes)[label]

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise Malformed(f"{self.name}: no arrow {label!r}")


@dataclass
class Outcome:
    kind: str
    subject: str
    passed: bool
    witness: str = ""


@dataclass
class Report:
    diagram: str
    outcomes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def failures(self) -> list:
        return [o for o in self.outcomes if not o.passed]


def validate(d: Diagram) -> None:
    nodes = dict(d.nodes)
    if len(nodes) != len(d.nodes):
        raise Malformed(f"{d.name}: duplicate node labels")
    labels = [a.label for a in d.arrows]
    if len(set(labels)) != len(labels):
        raise Malformed(f"{d.name}: duplicate arrow labels")
    for a in d.arrows:
        if a.source not in nodes or a.target not in nodes:
            raise Malformed(f"{d.name}: arrow {a.label} references an unknown node")
        if a.map.domain is not nodes[a.source] or a.map.codomain is not nodes[a.target]:
            raise Malformed(
                f"{d.name}: arrow {a.label} is {a.map.domain.name} -> {a.map.codomain.name}, "
                f"placed as {a.source} -> {a.target}"
            )
    for left, right in d.cells:
        ends = [_path_ends(d, p) for p in (left, right)]
        if ends[0] != ends[1]:
            raise Malformed(f"{d.name}: cell paths {left} and {right} have different endpoints")
    for label, _ in tuple(d.degrees) + tuple(d.kernels):
        d.arrow(label)


def _path_ends(d: Diagram, path) -> tuple[str, str]:
    if not path:
        raise Malformed(f"{d.name}: empty path")
    arrows = [d.arrow(lbl) for lbl in path]
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise Malformed(f"{d.name}: {a.label} then {b.label} is not composable")
    return arrows[0].source, arrows[-1].target


def evaluate_path(d: Diagram, path, x: int) -> int:
    for lbl in path:
        x = d.arrow(lbl).map(x)
    return x


def check(d: Diagram) -> Report:
    validate(d)
    report = Report(d.name)
    for left, right in d.cells:
        src, tgt = _path_ends(d, left)
        dom, cod = d.node(src), d.node(tgt)
        subject = f"{' ; '.join(left)} == {' ; '.join(right)}"
        witness = ""
        for x in range(dom.order):
            lx, rx = evaluate_path(d, left, x), evaluate_path(d, right, x)
            if lx != rx:
                witness = f"at {dom.label(x)}: {cod.label(lx)} != {cod.label(rx)}"
                break
        report.outcomes.append(Outcome("cell", subject, not witness, witness))
    for label, expected in d.degrees:
        f = d.arrow(label).map
        try:
            k = fiber_degree(f)
        except NonUniformFibers as exc:
            report.outcomes.append(Outcome("degree", label, False, str(exc)))
            continue
        ok = k == expected
        report.outcomes.append(Outcome("degree", label, ok, "" if ok else f"fiber degree {k}, expected {expected}"))
    for label, expected in d.kernels:
        try:
            got = identify(kernel(d.arrow(label).map))
        except GroupError as exc:
            got = f"unidentified ({exc})"
        ok = got == expected
        report.outcomes.append(Outcome("kernel", label, ok, "" if ok else f"kernel is {got}, expected {expected}"))
    return report


def _diagram(name, node_labels, arrows, at: Atlas, **kw) -> Diagram:
    nodes = tuple((n, at.groups[n]) for n in node_labels)
    arrs = tuple(Arrow(lbl, at.maps[m], s, t) for lbl, m, s, t in arrows)
    return Diagram(name, nodes, arrs, **kw)


def diagram13(at: Atlas) -> Diagram:
    verticals = ["psi", "rho", "Phi", "Phi_tilde", "Phi_double"]
    return _diagram(
        "diagram13",
        ["G_psi", "Q", "H", "H_SL2C", "Pbar_fin", "G_A", "G_PT", "PhiH", "Lor_fin", "P_fin"],
        [
            ("alpha", "alpha", "Q", "G_psi"),
            ("mu", "mu", "Q", "H"),
            ("beta", "beta", "H", "H_SL2C"),
            ("gamma", "gamma_map", "H_SL2C", "Pbar_fin"),
            ("alpha_bar", "alpha_bar", "G_PT", "G_A"),
            ("mu_bar", "mu_bar", "G_PT", "PhiH"),
            ("beta_bar", "beta_bar", "PhiH", "Lor_fin"),
            ("gamma_bar", "gamma_bar", "Lor_fin", "P_fin"),
            ("psi", "psi", "G_psi", "G_A"),
            ("rho", "rho", "Q", "G_PT"),
            ("Phi", "phi_restricted", "H", "PhiH"),
            ("Phi_tilde", "phi_tilde_restricted", "H_SL2C", "Lor_fin"),
            ("Phi_double", "phi_double_restricted", "Pbar_fin", "P_fin"),
        ],
        at,
        cells=(
            (("alpha", "psi"), ("rho", "alpha_bar")),
            (("mu", "Phi"), ("rho", "mu_bar")),
            (("beta", "Phi_tilde"), ("Phi", "beta_bar")),
            (("gamma", "Phi_double"), ("Phi_tilde", "gamma_bar")),
        ),
        degrees=tuple((v, 2) for v in verticals),
        kernels=tuple((v, "Z2") for v in verticals),
    )


def diagram26(at: Atlas) -> Diagram:
    return _diagram(
        "diagram26",
        ["G_psi", "H", "G_A", "PhiH"],
        [
            ("nu", "nu", "G_psi", "H"),
            ("psi", "psi", "G_psi", "G_A"),
            ("Phi", "phi_restricted", "H", "PhiH"),
            ("nu_bar", "nu_bar", "G_A", "PhiH"),
        ],
        at,
        cells=((("nu", "Phi"), ("psi", "nu_bar")),),
        degrees=(("nu", 2), ("psi", 2), ("Phi", 2), ("nu_bar", 2)),
    )


def diagram29(at: Atlas) -> Diagram:
    return _diagram(
        "diagram29",
        ["G_psi", "Pbar_fin", "G_A", "P_fin"],
        [
            ("varphi", "varphi", "G_psi", "Pbar_fin"),
            ("psi", "psi", "G_psi", "G_A"),
            ("Phi_double", "phi_double_restricted", "Pbar_fin", "P_fin"),
            ("varphi_bar", "varphi_bar", "G_A", "P_fin"),
        ],
        at,
        cells=((("varphi", "Phi_double"), ("psi", "varphi_bar")),),
    )


BUILTIN = {"diagram13": diagram13, "diagram26": diagram26, "diagram29": diagram29}


def builtin_diagrams(at: Atlas) -> list[Diagram]:
    return [build(at) for build in BUILTIN.values()]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(d: Diagram, *, annotate: Optional[bool] = True) -> str:
    """Graphviz text: one line per node, one line per arrow, in diagram order."""
    degrees = dict(d.degrees)
    lines = [f"digraph {_quote(d.name)} {{"]
    for label, g in d.nodes:
        lines.append(f"  {_quote(label)} [label={_quote(f'{label} (order {g.order})')}];")
    for a in d.arrows:
        text = a.label
        if annotate and a.label in degrees:
            text += f" [{degrees[a.label]}:1]"
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [label={_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
