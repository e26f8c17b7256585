"""Emitters for model-checking targets: Prolog facts, Alloy models, DOT graphs.

The emitters translate a pin table (and a request, for assertions) into
external notations so the same instances can be fed to off-the-shelf
analyzers. Nothing here executes those tools; the native solver is the
engine, and the emitted documents are checked structurally (balanced
delimiters, terminated clauses) plus semantically via the test suite's
fact readers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from .board import Board, NO_DETAIL
from .request import Request

DEFAULT_FACT_CAP = 5_000_000

_PLAIN_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

PROLOG_INFERENCE_RULES = """\
getConfig(RequiredConfiguration, Pair) :-
    msort(RequiredConfiguration, S),
    config(S, Pair).

allConfigs(RequiredConfiguration, Set) :-
    setof([Pins,Costs],
        getConfig(RequiredConfiguration,
        [Pins,Costs]), Set).

cheapestConfig(R, Pins, Costs) :-
    setof([Pins,Costs],
     getConfig(R, [Pins,Costs]), Set),
    Set = [_|_],
    minimal(Set, [Pins,Costs]).

minimal([Pair], Pair).
minimal([[P0,C0]|Rest], Best) :-
    Rest = [_|_],
    minimal(Rest, [P1,C1]),
    (   C0 =< C1
    ->  Best = [P0,C0]
    ;   Best = [P1,C1]
    ).
"""


class EmitterCapError(RuntimeError):
    """Non-streamed emission refused: estimated output exceeds the cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__(
            f"estimated {estimate} facts exceeds the cap of {cap}; "
            "pass a sink to stream instead"
        )
        self.estimate = estimate
        self.cap = cap


@dataclass(frozen=True)
class EmitterOutput:
    """One emitted document with its size statistics.

    items counts the payload units of the target: Prolog facts, Alloy pin
    signatures, Alloy assertions, or DOT nodes plus edges. text is empty when
    the document was streamed to a sink; nbytes reflects what was written
    either way.
    """

    kind: str
    text: str
    items: int
    nbytes: int


def _check_balanced(text: str, comment: str | None = None) -> None:
    """Emitter self-check: delimiters balance outside quoted literals.

    Lines starting with the target's comment marker are skipped; they may
    quote arbitrary board names.
    """
    pairs = {")": "(", "]": "[", "}": "{"}
    stack: list[str] = []
    for line in text.split("\n"):
        if comment and line.lstrip().startswith(comment):
            continue
        quote: str | None = None
        for ch in line:
            if quote is not None:
                if ch == quote:
                    quote = None
                continue
            if ch in ("'", '"'):
                quote = ch
            elif ch in "([{":
                stack.append(ch)
            elif ch in ")]}":
                if not stack or stack.pop() != pairs[ch]:
                    raise AssertionError("emitted text has unbalanced delimiters")
        if quote is not None:
            raise AssertionError("emitted text has an unterminated quote")
    if stack:
        raise AssertionError("emitted text has unbalanced delimiters")


def _prolog_atom(token: str) -> str:
    atom = token.lower().replace("_", "-")
    if _PLAIN_ATOM_RE.match(atom):
        return atom
    return f"'{atom}'"


def _pin_atom(pin_id: str) -> str:
    atom = pin_id.lower()
    if _PLAIN_ATOM_RE.match(atom):
        return atom
    return f"'{atom}'"


def estimate_prolog_facts(board: Board, max_len: int) -> int:
    """Upper bound on the fact count: per-pin kind choices before multiset
    deduplication, summed over subset sizes 1..max_len via elementary
    symmetric polynomials."""
    choices = [len(set(pin.kinds())) for pin in board.pins]
    limit = min(max_len, len(choices))
    elementary = [1] + [0] * limit
    for c in choices:
        for k in range(limit, 0, -1):
            elementary[k] += elementary[k - 1] * c
    return sum(elementary[1:])


def _iter_prolog_facts(board: Board, max_len: int) -> Iterator[str]:
    indices = range(len(board.pins))
    for k in range(1, min(max_len, len(board)) + 1):
        for subset in itertools.combinations(indices, k):
            pins = [board.pins[i] for i in subset]
            cost = sum(p.cost for p in pins)
            pin_list = ",".join(_pin_atom(p.id) for p in pins)
            kind_lists = [sorted(set(p.kinds())) for p in pins]
            multisets = {tuple(sorted(combo)) for combo in itertools.product(*kind_lists)}
            for multiset in sorted(multisets):
                kinds = ",".join(_prolog_atom(kind) for kind in multiset)
                yield f"config([{kinds}],[[{pin_list}],{cost}])."


def emit_prolog(
    board: Board,
    max_len: int,
    sink=None,
    cap: int = DEFAULT_FACT_CAP,
) -> EmitterOutput:
    """Emit the fact base plus inference rules for a board.

    One fact per realizable (sorted kind multiset of length <= max_len,
    distinct pin set) pair, carrying the summed pin cost. Kind atoms are
    lowercased with underscores written as hyphens (quoted when needed);
    pin atoms are lowercased.

    Without a sink the whole document is returned in text form, refused with
    EmitterCapError when the estimated fact count exceeds cap. With a sink
    (any object with write(str)) the document is streamed regardless of size
    and the returned text is empty.
    """
    if max_len < 1:
        raise ValueError("max_len must be positive")
    if sink is None and estimate_prolog_facts(board, max_len) > cap:
        raise EmitterCapError(estimate_prolog_facts(board, max_len), cap)

    chunks: list[str] = []
    nbytes = 0

    def write(piece: str) -> None:
        nonlocal nbytes
        nbytes += len(piece.encode("utf-8"))
        if sink is None:
            chunks.append(piece)
        else:
            sink.write(piece)

    label = board.name or "unnamed board"
    write(f"% pin assignment fact base for {label}\n")
    write(f"% config(SortedKinds, [Pins, TotalCost]) up to length {max_len}\n\n")
    facts = 0
    for fact in _iter_prolog_facts(board, max_len):
        write(fact + "\n")
        facts += 1
    write("\n")
    write(PROLOG_INFERENCE_RULES)

    text = "".join(chunks)
    if sink is None:
        _check_balanced(text, comment="%")
    return EmitterOutput("prolog", text, facts, nbytes)


def emit_alloy_spec(board: Board) -> EmitterOutput:
    """Emit the Alloy instance model: abstract Pin/ConnType/ConnDetail
    signatures plus one singleton signature per pin carrying its connection
    types, details, and cost."""
    lines: list[str] = []
    label = board.name or "unnamed board"
    lines.append(f"// pin capability model for {label}")
    lines.append("abstract sig ConnType {}")
    lines.append("abstract sig ConnDetail {}")
    lines.append("abstract sig Pin {")
    lines.append("  conntype: some ConnType,")
    lines.append("  conn_detail: set ConnDetail,")
    lines.append("  cost: one Int")
    lines.append("}")
    lines.append("")

    kinds = sorted({e.kind for pin in board.pins for e in pin.entries})
    details = sorted(
        {e.detail for pin in board.pins for e in pin.entries if e.detail != NO_DETAIL}
    )
    for kind in kinds:
        lines.append(f"one sig {kind} extends ConnType {{}}")
    for detail in details:
        lines.append(f"one sig {detail} extends ConnDetail {{}}")
    if kinds or details:
        lines.append("")

    for pin in board.pins:
        conntype = " + ".join(e.kind for e in pin.entries)
        pin_details = [e.detail for e in pin.entries if e.detail != NO_DETAIL]
        conn_detail = " + ".join(pin_details) if pin_details else "none"
        lines.append(f"one sig {pin.id} extends Pin {{}} {{")
        lines.append(f"  conntype = {conntype}")
        lines.append(f"  conn_detail = {conn_detail}")
        lines.append(f"  cost = {pin.cost}}}")
        lines.append("")

    text = "\n".join(lines).rstrip("\n") + "\n"
    _check_balanced(text, comment="//")
    return EmitterOutput("alloy-spec", text, len(board.pins), len(text.encode("utf-8")))


def _quantifier(count: int) -> str:
    names = ", ".join(f"p{i}" for i in range(1, count + 1))
    if count == 1:
        return f"all {names}:Pin |"
    return f"all disj {names}:Pin |"


def emit_alloy_feasibility_assertion(request: Request) -> EmitterOutput:
    """Emit the negated feasibility assertion for a request.

    The assertion claims no disjoint pins can serve all slots; a model
    checker's counterexample is then a concrete valid assignment.
    """
    if request.length < 1:
        raise ValueError("feasibility assertion needs a nonempty request")
    name = "_".join(request.slots)
    terms = [
        f"    {kind} in p{i}.conntype" for i, kind in enumerate(request.slots, start=1)
    ]
    body = " &&\n".join(terms)
    text = (
        f"assert {name} {{\n"
        f"  {_quantifier(request.length)}\n"
        f"  not (\n{body}\n"
        f"  )}}\n"
        f"\n"
        f"check {name}\n"
    )
    _check_balanced(text)
    return EmitterOutput("alloy-assert", text, 1, len(text.encode("utf-8")))


def emit_alloy_best_assertions(
    request: Request, pc_min: int, pc_max: int
) -> EmitterOutput:
    """Emit the cost-probing assertion family for minimum-cost search.

    One assertion per total-cost bound X from length*pc_min to length*pc_max
    inclusive, ascending. Each embeds the chained cost sum bound inside the
    negation, and every check statement carries an integer bit-width large
    enough to represent length*pc_max.
    """
    if request.length < 1:
        raise ValueError("best-cost assertions need a nonempty request")
    if not 0 < pc_min <= pc_max:
        raise ValueError("need 0 < pc_min <= pc_max")
    length = request.length
    name = "_".join(request.slots)
    bitwidth = (length * pc_max).bit_length() + 1
    cost_expr = "p1.cost" + "".join(f".add[p{i}.cost]" for i in range(2, length + 1))
    terms = [
        f"    {kind} in p{i}.conntype" for i, kind in enumerate(request.slots, start=1)
    ]
    parts: list[str] = []
    count = 0
    for bound in range(length * pc_min, length * pc_max + 1):
        body = " &&\n".join(terms + [f"    {cost_expr}<={bound}"])
        parts.append(
            f"assert {name}_COST_{bound} {{\n"
            f"  {_quantifier(length)}\n"
            f"  not (\n{body}\n"
            f"  )}}\n"
            f"\n"
            f"check {name}_COST_{bound} for {bitwidth} int\n"
        )
        count += 1
    text = "\n".join(parts)
    _check_balanced(text)
    return EmitterOutput("alloy-assert", text, count, len(text.encode("utf-8")))


def emit_graph_dot(board: Board) -> EmitterOutput:
    """Emit the domain graph: virtual begin/end nodes, one node per pin
    labeled with its entries, and edges for every allowed path step (no
    self-loops; paths run begin -> pins -> end)."""
    lines = ["digraph pin_assignment_domain {", "  rankdir=LR;"]
    nodes = 2
    edges = 0
    lines.append('  n_B [label="n_B", shape=circle];')
    lines.append('  n_E [label="n_E", shape=doublecircle];')
    for pin in board.pins:
        nodes += 1
        label = "\\n".join([pin.id] + [str(e) for e in pin.entries])
        lines.append(f'  {pin.id} [shape=box, label="{label}"];')
    if board.pins:
        for pin in board.pins:
            lines.append(f"  n_B -> {pin.id};")
            edges += 1
        for a in board.pins:
            for b in board.pins:
                if a.id != b.id:
                    lines.append(f"  {a.id} -> {b.id};")
                    edges += 1
        for pin in board.pins:
            lines.append(f"  {pin.id} -> n_E;")
            edges += 1
    else:
        lines.append("  n_B -> n_E;")
        edges += 1
    lines.append("}")
    text = "\n".join(lines) + "\n"
    _check_balanced(text)
    return EmitterOutput("dot", text, nodes + edges, len(text.encode("utf-8")))
