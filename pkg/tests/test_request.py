"""Request parsing, canonicalization, and the quick-reject filter."""

import random

import pytest
from hypothesis import given, strategies as st

from pinassign import (
    Request,
    RequestParseError,
    canonicalize,
    parse_request,
    quick_reject,
)
from pinassign.oracle import brute_force_solve

from conftest import instance_family


def test_parse_two_analogs():
    request = parse_request("analog,analog")
    assert request.length == 2
    assert request.canonical == ("ANALOG", "ANALOG")


def test_parse_empty_string_is_empty_request():
    assert parse_request("").length == 0
    assert parse_request("   ").length == 0


def test_parse_canonicalizes_tokens_and_sorts():
    request = parse_request("serial-tx, analog")
    assert request.slots == ("SERIAL_TX", "ANALOG")
    assert request.canonical == ("ANALOG", "SERIAL_TX")


def test_parse_rejects_empty_token():
    with pytest.raises(RequestParseError, match="empty kind token"):
        parse_request("analog,,icu")
    with pytest.raises(RequestParseError):
        parse_request("analog,")


def test_parse_rejects_bad_token():
    with pytest.raises(RequestParseError):
        parse_request("anal og")


def test_canonicalize_sorts_preserving_duplicates():
    request = Request(("ICU", "ANALOG", "ANALOG"))
    assert canonicalize(request).slots == ("ANALOG", "ANALOG", "ICU")


def test_canonicalize_singleton_fixed_point():
    request = Request(("ANALOG",))
    assert canonicalize(request) == request


_kind_lists = st.lists(
    st.from_regex(r"[A-Z][A-Z0-9_]{0,6}", fullmatch=True), max_size=8
)


@given(_kind_lists)
def test_canonicalize_idempotent_and_multiset_preserving(kinds):
    request = Request(tuple(kinds))
    once = canonicalize(request)
    assert canonicalize(once) == once
    assert sorted(once.slots) == sorted(request.slots)


def test_quick_reject_absent_kind(two_pin_board):
    rejection = quick_reject(two_pin_board, parse_request("can-tx"))
    assert rejection is not None
    assert "CAN_TX" in rejection.reason


def test_quick_reject_pigeonhole(two_pin_board):
    rejection = quick_reject(two_pin_board, parse_request("analog,analog,analog"))
    assert rejection is not None


def test_quick_reject_passes_feasible(two_pin_board):
    assert quick_reject(two_pin_board, parse_request("analog,analog")) is None


def test_quick_reject_length_over_pins(two_pin_board):
    rejection = quick_reject(two_pin_board, parse_request("analog,icu,icu"))
    assert rejection is not None
    assert "3 slots" in rejection.reason


def test_quick_reject_never_rejects_solvable():
    # Soundness against the exhaustive oracle on a seeded family.
    for board, request in instance_family(seed=20240, count=120):
        if quick_reject(board, request) is not None:
            result = brute_force_solve(board, request)
            assert result.labeled_count == 0, (board, request)
