"""Check every built-in diagram and write it as graphviz text.

    python scripts/export_diagrams.py [OUTDIR]
"""

import sys
from dataclasses import dataclass
from pathlib import Path

from cptgroups.atlas import build_atlas
from cptgroups.diagrams import BUILTIN, check, to_dot


@dataclass
class Config:
    outdir: Path = Path("diagrams")


def run(cfg: Config) -> int:
    at = build_atlas()
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    bad = 0
    for name, build in BUILTIN.items():
        d = build(at)
        rep = check(d)
        bad += not rep.passed
        path = cfg.outdir / f"{name}.dot"
        path.write_text(to_dot(d), encoding="utf-8")
        status = "ok" if rep.passed else f"{len(rep.failures())} failing"
        print(f"{name}: {len(d.nodes)} nodes, {len(d.arrows)} arrows, {len(d.cells)} cells, {status} -> {path}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(run(Config(Path(sys.argv[1])) if len(sys.argv) > 1 else Config()))
