"""Assignment engine: one feasible, all possible, or the cheapest pin binding.

A request of length l is served by an injective map from its slots to pins
such that every slot's pin offers an eligible entry of the slot's kind. Slot
indices always refer to the request's canonical (sorted) form, which makes
every verdict invariant under permutation of the input request.

Determinism contract: assignments are ordered lexicographically by the tuple
of chosen pin declaration indices, slot by slot. "First feasible" is the
minimum under that order; "best" is the minimum-total-cost assignment, ties
broken by the same order. The cost of an assignment is the sum of the costs
of its used pins, each charged once.

Two counting semantics are supported. LABELED counts every distinct
slot-to-pin map (two slots of the same kind with swapped pins are two
solutions). UNIQUE_PIN_SETS counts one representative per distinct set of
used pins, namely the smallest binding realizing that set.
"""

from __future__ import annotations

import re
import warnings
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator

from .board import Board, FunctionEntry, Pin
from .request import Request

REASON_KIND_UNSUPPORTED = "kind-unsupported"
REASON_PIGEONHOLE = "pigeonhole"
REASON_EXHAUSTED = "exhausted-search"

_ICU_CH12_RE = re.compile(r"TIM\d+_CH[12]\Z")
_COST_INF = 1 << 60


class AllPinsUsedWarning(UserWarning):
    """The request needs every pin on the board, leaving none free."""


class EnumerationLimitError(RuntimeError):
    """Materializing all solutions would exceed the configured cap."""

    def __init__(self, cap: int):
        super().__init__(
            f"more than {cap} solutions; raise the cap or stream with iter_assignments"
        )
        self.cap = cap


class Semantics(Enum):
    UNIQUE_PIN_SETS = "pinsets"
    LABELED = "labeled"


class BestStrategy(Enum):
    MIN_COST_MATCHING = "matching"
    COST_THRESHOLD = "threshold"
    ENUMERATE_MIN = "enumerate"


@dataclass(frozen=True)
class EligibilityRule:
    """A named predicate deciding whether an entry may serve a requested kind.

    Rules can only restrict eligibility: an entry is considered iff its kind
    matches the request slot and every active rule admits it.
    """

    name: str
    predicate: Callable[[Pin, FunctionEntry, str], bool]


def icu_channel_rule() -> EligibilityRule:
    """Admit ICU entries only on timer channels 1 or 2 (detail TIM<n>_CH1/2).

    Entries of other kinds are unaffected. ICU entries without a recognizable
    timer-channel detail are ineligible under this rule.
    """

    def predicate(pin: Pin, entry: FunctionEntry, kind: str) -> bool:
        if kind != "ICU":
            return True
        return bool(_ICU_CH12_RE.match(entry.detail))

    return EligibilityRule("icu-ch12", predicate)


RULES_BY_NAME = {"icu-ch12": icu_channel_rule}


@dataclass(frozen=True)
class SolveOptions:
    semantics: Semantics = Semantics.UNIQUE_PIN_SETS
    rules: tuple[EligibilityRule, ...] = ()
    strategy: BestStrategy = BestStrategy.MIN_COST_MATCHING
    enumeration_cap: int = 1_000_000


@dataclass(frozen=True)
class Binding:
    """One served slot: canonical slot index, kind, pin id, chosen detail."""

    slot: int
    kind: str
    pin: str
    detail: str


@dataclass(frozen=True)
class Assignment:
    """An injective slot-to-pin map with its total cost."""

    bindings: tuple[Binding, ...]
    total_cost: int
    board: Board = field(repr=False)

    @property
    def used_pins(self) -> frozenset[str]:
        return frozenset(b.pin for b in self.bindings)

    def pin_entry_map(self) -> dict[str, tuple[str, str]]:
        """Used pin id -> (kind, detail)."""
        return {b.pin: (b.kind, b.detail) for b in self.bindings}


@dataclass(frozen=True)
class Witness:
    """A deficient kind set: demanded occurrences exceed the supporting pins."""

    kinds: tuple[str, ...]
    pins: tuple[str, ...]
    demanded: int


@dataclass(frozen=True)
class Infeasible:
    reason: str
    message: str
    witness: Witness | None = None


SolveOutcome = Assignment | Infeasible


class _Problem:
    """Preprocessed solve instance: canonical slots plus eligibility tables."""

    def __init__(self, board: Board, request: Request, rules: tuple[EligibilityRule, ...]):
        self.board = board
        self.slots = request.canonical
        self.costs = [pin.cost for pin in board.pins]
        self.elig: dict[str, tuple[int, ...]] = {}
        self.detail: dict[tuple[int, str], str] = {}
        for kind in sorted(set(self.slots)):
            supporters = []
            for index, pin in enumerate(board.pins):
                details = [
                    e.detail
                    for e in pin.entries
                    if e.kind == kind and all(r.predicate(pin, e, kind) for r in rules)
                ]
                if details:
                    supporters.append(index)
                    self.detail[(index, kind)] = min(details)
            self.elig[kind] = tuple(supporters)

    def assignment(self, chosen: tuple[int, ...]) -> Assignment:
        bindings = tuple(
            Binding(i, kind, self.board.pins[p].id, self.detail[(p, kind)])
            for i, (kind, p) in enumerate(zip(self.slots, chosen))
        )
        return Assignment(bindings, sum(self.costs[p] for p in chosen), self.board)


def _matchable(problem: _Problem, kinds: tuple[str, ...], banned: set[int]) -> bool:
    """True iff the given slots can be matched to distinct non-banned pins."""
    match_pin: dict[int, int] = {}

    def augment(slot: int, visited: set[int]) -> bool:
        for p in problem.elig[kinds[slot]]:
            if p in banned or p in visited:
                continue
            visited.add(p)
            if p not in match_pin or augment(match_pin[p], visited):
                match_pin[p] = slot
                return True
        return False

    for slot in range(len(kinds)):
        if not augment(slot, set()):
            return False
    return True


def _hall_witness(problem: _Problem) -> Witness:
    """Extract a deficient kind set from a failed maximum matching.

    Starting from an unsaturated slot, alternating-path reachability yields a
    slot set whose kinds collectively demand more pins than support them.
    """
    kinds = problem.slots
    match_pin: dict[int, int] = {}
    match_slot: list[int | None] = [None] * len(kinds)

    def augment(slot: int, visited: set[int]) -> bool:
        for p in problem.elig[kinds[slot]]:
            if p in visited:
                continue
            visited.add(p)
            if p not in match_pin or augment(match_pin[p], visited):
                match_pin[p] = slot
                match_slot[slot] = p
                return True
        return False

    for slot in range(len(kinds)):
        augment(slot, set())
    unmatched = next(s for s in range(len(kinds)) if match_slot[s] is None)

    reach_slots = {unmatched}
    reach_pins: set[int] = set()
    frontier = [unmatched]
    while frontier:
        slot = frontier.pop()
        for p in problem.elig[kinds[slot]]:
            if p in reach_pins:
                continue
            reach_pins.add(p)
            owner = match_pin.get(p)
            if owner is not None and owner not in reach_slots:
                reach_slots.add(owner)
                frontier.append(owner)

    witness_kinds = tuple(sorted({kinds[s] for s in reach_slots}))
    support = sorted({p for k in witness_kinds for p in problem.elig[k]})
    demanded = sum(1 for k in kinds if k in witness_kinds)
    return Witness(
        witness_kinds,
        tuple(problem.board.pins[p].id for p in support),
        demanded,
    )


def check_witness(
    board: Board,
    request: Request,
    witness: Witness,
    rules: tuple[EligibilityRule, ...] = (),
) -> bool:
    """Machine-check an infeasibility witness against its instance.

    Valid iff the witness pins are exactly the pins eligible for some witness
    kind (under the same rules) and the request demands more occurrences of
    those kinds than there are such pins.
    """
    problem = _Problem(board, request, rules)
    for kind in witness.kinds:
        if kind not in problem.elig:
            return False
    support = sorted({p for k in witness.kinds for p in problem.elig[k]})
    support_ids = tuple(board.pins[p].id for p in support)
    demanded = sum(1 for k in request.canonical if k in set(witness.kinds))
    return (
        support_ids == witness.pins
        and demanded == witness.demanded
        and demanded > len(witness.pins)
    )


def _prepare(
    board: Board, request: Request, options: SolveOptions
) -> tuple[_Problem, Infeasible | None]:
    if 0 < request.length == len(board):
        warnings.warn(
            "request length equals the board's pin count; "
            "an assignment would leave no pin free",
            AllPinsUsedWarning,
            stacklevel=3,
        )
    problem = _Problem(board, request, options.rules)
    counts = Counter(problem.slots)
    for kind in sorted(counts):
        if not problem.elig[kind]:
            witness = Witness((kind,), (), counts[kind])
            return problem, Infeasible(
                REASON_KIND_UNSUPPORTED,
                f"no pin offers an eligible {kind} entry",
                witness,
            )
    if not _matchable(problem, problem.slots, set()):
        witness = _hall_witness(problem)
        return problem, Infeasible(
            REASON_PIGEONHOLE,
            f"{witness.demanded} slots of kinds {{{', '.join(witness.kinds)}}} "
            f"compete for {len(witness.pins)} eligible pins",
            witness,
        )
    return problem, None


def _iter_bindings(problem: _Problem, distinct_sets: bool) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of valid pin-index tuples in lexicographic order.

    With distinct_sets, runs of equal-kind slots are forced onto strictly
    increasing pin indices, so each (kind -> pin set) split appears once, in
    its smallest arrangement.

    Pruning: a per-kind remaining-supply check at every node, plus a residual
    matching (Hall) check whenever some kind's supply is exactly tight.
    """
    slots = problem.slots
    length = len(slots)
    if length == 0:
        yield ()
        return
    need = Counter(slots)
    avail = {kind: len(problem.elig[kind]) for kind in need}
    pin_kinds: dict[int, list[str]] = {}
    for kind in need:
        for p in problem.elig[kind]:
            pin_kinds.setdefault(p, []).append(kind)

    chosen: list[int] = []
    used: set[int] = set()

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == length:
            yield tuple(chosen)
            return
        if any(avail[k] < n for k, n in need.items() if n):
            return
        if any(n and avail[k] == n for k, n in need.items()):
            if not _matchable(problem, slots[i:], used):
                return
        kind = slots[i]
        floor = chosen[-1] if distinct_sets and i > 0 and slots[i - 1] == kind else -1
        need[kind] -= 1
        for p in problem.elig[kind]:
            if p <= floor or p in used:
                continue
            used.add(p)
            chosen.append(p)
            for k in pin_kinds[p]:
                avail[k] -= 1
            yield from rec(i + 1)
            for k in pin_kinds[p]:
                avail[k] += 1
            chosen.pop()
            used.remove(p)
        need[kind] += 1

    yield from rec(0)


def _iter_representatives(problem: _Problem) -> Iterator[tuple[int, ...]]:
    """Smallest binding per distinct used-pin set, in lexicographic order."""
    seen: set[frozenset[int]] = set()
    for chosen in _iter_bindings(problem, distinct_sets=True):
        key = frozenset(chosen)
        if key not in seen:
            seen.add(key)
            yield chosen


def find_feasible(
    board: Board, request: Request, options: SolveOptions | None = None
) -> SolveOutcome:
    """Return the lexicographically smallest valid assignment, or Infeasible.

    Deterministic: slot order is the canonical request order and pins are
    tried in declaration order, so reruns and slot permutations of the same
    request give the same answer.
    """
    options = options or SolveOptions()
    problem, infeasible = _prepare(board, request, options)
    if infeasible is not None:
        return infeasible
    slots = problem.slots
    chosen: list[int] = []
    used: set[int] = set()
    for i, kind in enumerate(slots):
        for p in problem.elig[kind]:
            if p in used:
                continue
            if _matchable(problem, slots[i + 1 :], used | {p}):
                chosen.append(p)
                used.add(p)
                break
    return problem.assignment(tuple(chosen))


def iter_assignments(
    board: Board, request: Request, options: SolveOptions | None = None
) -> Iterator[Assignment]:
    """Stream all solutions under the chosen semantics, lexicographically."""
    options = options or SolveOptions()
    problem, infeasible = _prepare(board, request, options)
    if infeasible is not None:
        return
    if options.semantics is Semantics.LABELED:
        source = _iter_bindings(problem, distinct_sets=False)
    else:
        source = _iter_representatives(problem)
    for chosen in source:
        yield problem.assignment(chosen)


def enumerate_all(
    board: Board, request: Request, options: SolveOptions | None = None
) -> list[Assignment]:
    """Materialize all solutions under the chosen semantics.

    Empty list iff the request is infeasible. Raises EnumerationLimitError
    instead of materializing more than options.enumeration_cap solutions;
    use iter_assignments to stream larger spaces.
    """
    options = options or SolveOptions()
    out: list[Assignment] = []
    for assignment in iter_assignments(board, request, options):
        if len(out) >= options.enumeration_cap:
            raise EnumerationLimitError(options.enumeration_cap)
        out.append(assignment)
    return out


def _min_cost_total(
    problem: _Problem, kinds: tuple[str, ...], candidates: list[int]
) -> int | None:
    """Exact minimum total cost of matching every slot to a distinct pin.

    Shortest-augmenting-path assignment with potentials over the implicit
    matrix a[slot][pin] = cost(pin) where eligible, else a huge sentinel.
    Returns None when no all-slots matching exists among the candidates.
    """
    n_rows = len(kinds)
    n_cols = len(candidates)
    if n_rows == 0:
        return 0
    if n_rows > n_cols:
        return None
    elig_sets = [set(problem.elig[k]) for k in kinds]
    # Saturability pre-check keeps the sentinel weights off every shortest
    # path below, so the potentials stay within real cost magnitudes.
    if not _matchable(problem, kinds, set(range(len(problem.costs))) - set(candidates)):
        return None

    def weight(row: int, col: int) -> int:
        p = candidates[col]
        return problem.costs[p] if p in elig_sets[row] else _COST_INF

    u = [0] * (n_rows + 1)
    v = [0] * (n_cols + 1)
    match_row = [0] * (n_cols + 1)  # 1-based row matched to each column
    way = [0] * (n_cols + 1)
    for i in range(1, n_rows + 1):
        match_row[0] = i
        j0 = 0
        minv = [_COST_INF * 4] * (n_cols + 1)
        visited = [False] * (n_cols + 1)
        while True:
            visited[j0] = True
            i0 = match_row[j0]
            delta = None
            j1 = -1
            for j in range(1, n_cols + 1):
                if visited[j]:
                    continue
                cur = weight(i0 - 1, j - 1) - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if j1 == -1:
                return None
            for j in range(n_cols + 1):
                if visited[j]:
                    u[match_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_row[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match_row[j0] = match_row[j1]
            j0 = j1
    total = 0
    for j in range(1, n_cols + 1):
        if match_row[j]:
            w = weight(match_row[j] - 1, j - 1)
            if w >= _COST_INF:
                return None
            total += w
    return total


def _best_by_matching(problem: _Problem) -> Assignment:
    all_pins = list(range(len(problem.board.pins)))
    slots = problem.slots
    total = _min_cost_total(problem, slots, all_pins)
    if total is None:
        raise AssertionError("feasible instance has no min-cost matching")
    chosen: list[int] = []
    used: set[int] = set()
    spent = 0
    for i, kind in enumerate(slots):
        for p in problem.elig[kind]:
            if p in used:
                continue
            rest = [q for q in all_pins if q not in used and q != p]
            residual = _min_cost_total(problem, slots[i + 1 :], rest)
            if residual is not None and spent + problem.costs[p] + residual == total:
                chosen.append(p)
                used.add(p)
                spent += problem.costs[p]
                break
    if len(chosen) != len(slots):
        raise AssertionError("min-cost reconstruction failed to bind every slot")
    return problem.assignment(tuple(chosen))


def _first_within_budget(problem: _Problem, budget: int) -> tuple[int, ...] | None:
    """Lexicographically smallest binding with total cost <= budget, if any."""
    slots = problem.slots
    length = len(slots)
    chosen: list[int] = []
    used: set[int] = set()

    def cheapest_completion(exclude: int, remaining: int) -> int:
        free = sorted(
            problem.costs[q]
            for q in range(len(problem.costs))
            if q not in used and q != exclude
        )
        return sum(free[:remaining])

    def rec(i: int, spent: int) -> tuple[int, ...] | None:
        if i == length:
            return tuple(chosen)
        for p in problem.elig[slots[i]]:
            if p in used:
                continue
            bound = spent + problem.costs[p] + cheapest_completion(p, length - i - 1)
            if bound > budget:
                continue
            if not _matchable(problem, slots[i + 1 :], used | {p}):
                continue
            used.add(p)
            chosen.append(p)
            result = rec(i + 1, spent + problem.costs[p])
            if result is not None:
                return result
            chosen.pop()
            used.remove(p)
        return None

    return rec(0, 0)


def _best_by_threshold(problem: _Problem) -> Assignment:
    length = len(problem.slots)
    pc_min = min(p.cost for p in problem.board.pins)
    pc_max = max(p.cost for p in problem.board.pins)
    for bound in range(length * pc_min, length * pc_max + 1):
        chosen = _first_within_budget(problem, bound)
        if chosen is not None:
            return problem.assignment(chosen)
    raise AssertionError("feasible instance has no solution within the cost range")


def _best_by_enumeration(problem: _Problem) -> Assignment:
    best: tuple[int, tuple[int, ...]] | None = None
    for chosen in _iter_representatives(problem):
        key = (sum(problem.costs[p] for p in chosen), chosen)
        if best is None or key < best:
            best = key
    if best is None:
        raise AssertionError("feasible instance enumerated no solutions")
    return problem.assignment(best[1])


def find_best(
    board: Board, request: Request, options: SolveOptions | None = None
) -> SolveOutcome:
    """Return a minimum-total-cost assignment, ties broken lexicographically.

    All strategies return the identical assignment. MIN_COST_MATCHING solves
    the weighted bipartite assignment exactly; COST_THRESHOLD probes cost
    bounds upward from length * min pin cost until one is satisfiable;
    ENUMERATE_MIN scans every distinct pin set.
    """
    options = options or SolveOptions()
    problem, infeasible = _prepare(board, request, options)
    if infeasible is not None:
        return infeasible
    if not problem.slots:
        return problem.assignment(())
    if options.strategy is BestStrategy.COST_THRESHOLD:
        return _best_by_threshold(problem)
    if options.strategy is BestStrategy.ENUMERATE_MIN:
        return _best_by_enumeration(problem)
    return _best_by_matching(problem)


def assignment_cost(board: Board, assignment: Assignment) -> int:
    """Sum of pin costs over the assignment's used pins (each charged once)."""
    return sum(board.pin(pin_id).cost for pin_id in sorted(assignment.used_pins))
