import math

import pytest
from hypothesis import given, strategies as st

from chatmon import diagnostics
from chatmon.events import (
    ArityMismatch,
    Cmp,
    Event,
    EventTypeDecl,
    Lit,
    MalformedEvent,
    Var,
    instantiate,
    match,
    pattern_vars,
)


class TestMatch:
    def test_flat_containment_with_extra_keys(self):
        pattern = {"sender": Lit("user"), "receiver": Lit("bot")}
        event = {"sender": "user", "receiver": "bot", "text": "hi"}
        assert match(pattern, event, {}) == {}

    def test_empty_pattern_matches_any_map(self):
        assert match({}, {"anything": 1}, {}) == {}
        assert match({}, {}, {}) == {}

    def test_nested_var_binding(self):
        pattern = {"slots": {"horizontal": Var("x"), "vertical": Var("y")}}
        event = {
            "intent": {"name": "add_object"},
            "slots": {"horizontal": 3, "vertical": 5},
        }
        assert match(pattern, event, {}) == {"x": 3, "y": 5}

    def test_confidence_constraint_below_threshold(self):
        pattern = {"nlu": {"confidence": Cmp(">=", 0.6)}}
        assert match(pattern, {"nlu": {"confidence": 0.59}}, {}) is None
        assert match(pattern, {"nlu": {"confidence": 0.6}}, {}) == {}

    def test_missing_key_fails(self):
        assert match({"a": Lit(1)}, {"b": 1}, {}) is None

    def test_bound_var_must_agree(self):
        pattern = {"n": Var("x")}
        assert match(pattern, {"n": 3}, {"x": 3}) == {"x": 3}
        assert match(pattern, {"n": 4}, {"x": 3}) is None

    def test_repeated_var_must_unify(self):
        pattern = {"a": Var("x"), "b": Var("x")}
        assert match(pattern, {"a": 1, "b": 1}, {}) == {"x": 1}
        assert match(pattern, {"a": 1, "b": 2}, {}) is None

    def test_wildcard_matches_anything_without_binding(self):
        pattern = {"slots": Var("_")}
        assert match(pattern, {"slots": {"deep": [1, 2]}}, {}) == {}

    def test_list_patterns_exact_length(self):
        assert match([Lit(1), Var("x")], [1, 2], {}) == {"x": 2}
        assert match([Lit(1)], [1, 2], {}) is None
        assert match([Lit(1), Lit(2)], [1], {}) is None

    def test_var_does_not_bind_structures(self):
        assert match({"a": Var("x")}, {"a": {"nested": 1}}, {}) is None

    def test_bool_is_not_a_number(self):
        assert match({"a": Lit(1)}, {"a": True}, {}) is None
        assert match({"a": Lit(True)}, {"a": True}, {}) == {}
        before = diagnostics.snapshot().get(diagnostics.CONSTRAINT_ON_NON_NUMERIC, 0)
        assert match({"a": Cmp(">", 0)}, {"a": True}, {}) is None
        after = diagnostics.snapshot()[diagnostics.CONSTRAINT_ON_NON_NUMERIC]
        assert after == before + 1

    def test_constraint_on_non_numeric_counts_diagnostic(self):
        before = diagnostics.snapshot().get(diagnostics.CONSTRAINT_ON_NON_NUMERIC, 0)
        assert match({"a": Cmp("<", 5)}, {"a": "text"}, {}) is None
        assert (
            diagnostics.snapshot()[diagnostics.CONSTRAINT_ON_NON_NUMERIC] == before + 1
        )

    def test_input_bindings_never_mutated(self):
        bindings = {"x": 1}
        match({"a": Var("y")}, {"a": 2}, bindings)
        match({"a": Var("x")}, {"a": 9}, bindings)
        assert bindings == {"x": 1}

    def test_int_float_equality(self):
        assert match({"a": Lit(3)}, {"a": 3.0}, {}) == {}


class TestEvent:
    def test_root_must_be_map(self):
        with pytest.raises(MalformedEvent):
            Event(["not", "a", "map"])

    def test_nan_rejected(self):
        with pytest.raises(MalformedEvent):
            Event({"value": math.nan})
        with pytest.raises(MalformedEvent):
            Event({"nested": {"deep": [1.0, math.nan]}})

    def test_empty_keys_rejected(self):
        with pytest.raises(MalformedEvent):
            Event({"": 1})


class TestInstantiate:
    DECL = EventTypeDecl(
        "add_object",
        ("x", "y"),
        {
            "intent": {"name": Lit("add_object")},
            "slots": {"horizontal": Var("x"), "vertical": Var("y")},
        },
    )

    def test_scalar_args(self):
        pattern = instantiate(self.DECL, (3, 5))
        assert pattern["slots"]["horizontal"] == Lit(3)
        assert pattern["slots"]["vertical"] == Lit(5)

    def test_zero_params(self):
        decl = EventTypeDecl("msg", (), {"sender": Lit("user")})
        assert instantiate(decl, ()) == decl.pattern

    def test_var_arg_stays_a_var(self):
        pattern = instantiate(self.DECL, (Var("x"), 5))
        assert pattern["slots"]["horizontal"] == Var("x")
        assert pattern["slots"]["vertical"] == Lit(5)

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            instantiate(self.DECL, (3,))

    def test_pattern_vars(self):
        assert pattern_vars(self.DECL.pattern) == {"x", "y"}
        assert pattern_vars({"a": Var("_")}) == set()


# -- property-based checks ----------------------------------------------------

scalars = st.one_of(
    st.integers(min_value=-9, max_value=9),
    st.sampled_from(["red", "green", "blue"]),
    st.booleans(),
)
flat_maps = st.dictionaries(
    st.sampled_from(list("abcde")), scalars, min_size=0, max_size=5
)


def contains(pattern_map: dict, event_map: dict) -> bool:
    """Independent statement of flat set containment."""
    return all(k in event_map and event_map[k] == v for k, v in pattern_map.items())


def _bool_safe_eq(a, b):
    if isinstance(a, bool) != isinstance(b, bool):
        return False
    return a == b


@given(flat_maps, flat_maps)
def test_flat_literal_match_is_containment(pattern_map, event_map):
    pattern = {k: Lit(v) for k, v in pattern_map.items()}
    expected = all(
        k in event_map and _bool_safe_eq(event_map[k], v)
        for k, v in pattern_map.items()
    )
    assert (match(pattern, event_map, {}) is not None) == expected


@given(flat_maps, flat_maps, st.sampled_from(list("vwxyz")), scalars)
def test_match_monotone_in_pattern_specificity(base, event_map, key, value):
    # P' adds a key P does not constrain (pattern containment, not overwrite).
    wider = dict(base)
    wider[key] = value
    pattern_wide = {k: Lit(v) for k, v in wider.items()}
    pattern_base = {k: Lit(v) for k, v in base.items()}
    if match(pattern_wide, event_map, {}) is not None:
        assert match(pattern_base, event_map, {}) is not None


@given(flat_maps)
def test_match_idempotent_under_resulting_bindings(event_map):
    pattern = {k: Var(f"v_{k}") for k in event_map}
    bindings = match(pattern, event_map, {})
    assert bindings is not None
    assert match(pattern, event_map, bindings) == bindings
