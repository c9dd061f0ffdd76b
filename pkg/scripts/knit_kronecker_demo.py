#!/usr/bin/env python3
"""Knit the Kronecker postprojective and preinjective components up to a
dimension cap, cross-check every member against the Tits-form root oracle,
and print the AR sequences ending at the first few postprojectives.
"""

import argparse

from arquiver import corpus
from arquiver.approx import Subcat
from arquiver.arseq import ar_end_in_subcat
from arquiver.knit import enumerate_indec, root_oracle_kronecker


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cap", type=int, default=13)
    args = parser.parse_args()
    alg = corpus.kronecker()
    for direction in ("from-projectives", "from-injectives"):
        table = enumerate_indec(alg, args.cap, direction)
        print(f"{direction} (cap {args.cap}, truncated={table.truncated}):")
        for m in table.members:
            verdict = root_oracle_kronecker(alg, m.dims)
            print(f"  dims {m.dims}  oracle: {verdict}")
    pp = Subcat(alg, "postprojective", [], cap=args.cap)
    members = {m.dims: m for m in pp.members()}
    for n in (2, 3, 4):
        outcome = ar_end_in_subcat(members[(n, n + 1)], pp)
        ses = outcome.ses
        print(
            f"AR sequence ending at P({n}): "
            f"0 -> {ses.left.dims} -> {ses.middle.dims} -> {ses.right.dims} -> 0 "
            f"[{outcome.status}]"
        )


if __name__ == "__main__":
    main()
