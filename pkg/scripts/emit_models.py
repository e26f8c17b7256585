#!/usr/bin/env python3
"""Generate all model-checking documents for a board into an output directory:
the Prolog fact base, the Alloy instance model, feasibility and best-cost
assertions for a sample request, and the DOT domain graph."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pinassign import (  # noqa: E402
    emit_alloy_best_assertions,
    emit_alloy_feasibility_assertion,
    emit_alloy_spec,
    emit_graph_dot,
    emit_prolog,
    parse_board,
    parse_request,
)

REPO = Path(__file__).resolve().parent.parent


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--board", default=str(REPO / "boards" / "stm32f4_demo.pins"), metavar="FILE"
    )
    parser.add_argument("--request", default="analog,analog", metavar="LIST")
    parser.add_argument("--max-len", type=int, default=3, help="prolog fact length bound")
    parser.add_argument("--out-dir", default=str(REPO / "out"), metavar="DIR")
    args = parser.parse_args()

    board = parse_board(Path(args.board).read_text(encoding="utf-8"))
    request = parse_request(args.request)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    with open(out_dir / "facts.pl", "w", encoding="utf-8") as sink:
        prolog = emit_prolog(board, args.max_len, sink=sink)
    print(f"facts.pl: {prolog.items} facts, {prolog.nbytes} bytes")

    costs = [p.cost for p in board.pins]
    outputs = {
        "model.als": emit_alloy_spec(board),
        "feasibility.als": emit_alloy_feasibility_assertion(request),
        "best.als": emit_alloy_best_assertions(request, min(costs), max(costs)),
        "domain.dot": emit_graph_dot(board),
    }
    for name, output in outputs.items():
        (out_dir / name).write_text(output.text, encoding="utf-8")
        print(f"{name}: {output.items} items, {output.nbytes} bytes")


if __name__ == "__main__":
    main()
