#!/usr/bin/env python3
"""Write the bundled comparison tables (table4, fig3, fig4) as CSV files."""

import argparse
import pathlib

from macc.tables import emit_table


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("out"))
    parser.add_argument("--nodes", type=int, default=15,
                        help="node count for the design-topology curves")
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for which in ("table4", "fig3", "fig4"):
        path = args.out_dir / f"{which}.csv"
        path.write_text(emit_table(which, num_nodes=args.nodes))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
