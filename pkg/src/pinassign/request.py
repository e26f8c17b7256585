"""Desired configurations: multisets of function kinds to be served by pins.

A request lists the kinds the board must serve, one slot per kind occurrence
("analog, analog, icu" asks for two analog-capable pins and one ICU-capable
pin, all distinct). Slot order as entered is preserved, but all solving is
defined over the canonical form: the same multiset sorted by kind name.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .board import Board, canonical_kind


class RequestParseError(ValueError):
    """Request string is malformed."""


@dataclass(frozen=True)
class Request:
    """A multiset of requested function kinds."""

    slots: tuple[str, ...]

    @property
    def canonical(self) -> tuple[str, ...]:
        """The same multiset, sorted by kind name (duplicates preserved)."""
        return tuple(sorted(self.slots))

    @property
    def length(self) -> int:
        return len(self.slots)

    def multiplicities(self) -> Counter:
        return Counter(self.slots)


@dataclass(frozen=True)
class Rejection:
    """Why a request cannot possibly be served, from a necessary-condition check."""

    reason: str


def parse_request(text: str) -> Request:
    """Parse a comma-separated list of kind tokens into a Request.

    Whitespace around tokens is ignored. The empty (or blank) string is the
    empty request. Raises RequestParseError on empty tokens between commas or
    tokens outside the kind grammar.
    """
    if not text.strip():
        return Request(())
    slots = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise RequestParseError(f"empty kind token in request {text!r}")
        try:
            slots.append(canonical_kind(token))
        except ValueError as exc:
            raise RequestParseError(str(exc)) from None
    return Request(tuple(slots))


def canonicalize(request: Request) -> Request:
    """Sort the request's slots into canonical order. Idempotent."""
    return Request(request.canonical)


def quick_reject(board: Board, request: Request) -> Rejection | None:
    """Cheap necessary-condition filter ahead of the full solve.

    Returns a Rejection when the request is provably unservable: more slots
    than pins, or some kind demanded more times than there are pins offering
    it. Returns None when no such obstruction exists; the solver still has to
    decide feasibility. Never rejects a servable request.
    """
    if request.length > len(board):
        return Rejection(
            f"{request.length} slots requested but board has {len(board)} pins"
        )
    offers: Counter = Counter()
    for pin in board.pins:
        for kind in set(pin.kinds()):
            offers[kind] += 1
    for kind, needed in request.multiplicities().items():
        if offers[kind] < needed:
            if offers[kind] == 0:
                return Rejection(f"no pin offers {kind}")
            return Rejection(
                f"{needed} x {kind} requested but only {offers[kind]} pins offer it"
            )
    return None
