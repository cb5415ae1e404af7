"""Build the atlas and print tables, fingerprints and catalog names.

    python scripts/reproduce_atlas.py [--tables Q,G_PT,PhiH] [--max-order N]
"""

import argparse
from dataclasses import dataclass, field

from cptgroups.atlas import GROUP_NAMES, MAP_NAMES, build_atlas, kernel_summary
from cptgroups.catalog import NotInCatalog, identify
from cptgroups.groups import DEFAULT_MAX_ORDER, cayley_table, fingerprint


@dataclass
class Config:
    tables: list = field(default_factory=lambda: ["Q", "H", "G_PT", "PhiH"])
    max_order: int = DEFAULT_MAX_ORDER


def run(cfg: Config) -> None:
    at = build_atlas(max_order=cfg.max_order)
    print(f"{'group':<10} {'order':>5}  {'catalog':<20} orders")
    for name in GROUP_NAMES:
        g = at.groups[name]
        try:
            cat = identify(g)
        except NotInCatalog:
            cat = "-"
        fp = fingerprint(g)
        print(f"{name:<10} {g.order:>5}  {cat:<20} {fp.order_multiset}")
    print()
    print(f"{'map':<22} {'kernel':>6}  {'catalog':<10} fiber")
    for name in MAP_NAMES:
        order, cat, degree = kernel_summary(at.maps[name])
        print(f"{name:<22} {order:>6}  {cat:<10} {degree}")
    for name in cfg.tables:
        print(f"\n{name}")
        print(cayley_table(at.groups[name]).to_text())


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--tables", default=",".join(Config().tables))
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    args = p.parse_args()
    run(Config(tables=[t for t in args.tables.split(",") if t], max_order=args.max_order))


if __name__ == "__main__":
    main()
