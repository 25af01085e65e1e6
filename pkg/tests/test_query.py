import pytest

from bww.errors import UnknownClass, UnknownState, UnknownThing
from bww.query import FUNCTIONS, QueryError, evaluate, format_value, parse_query


def value(model, text):
    return format_value(evaluate(model, text).value)


def test_parse_query_shapes():
    fn, args = parse_query("kind?({kid1, kid2}, {Underaged})")
    assert fn == "kind?"
    assert args == [("set", ("kid1", "kid2")), ("set", ("Underaged",))]
    assert parse_query("fromState!(b:<x, y>)")[1] == [("event", "b", "x", "y")]
    assert parse_query("isIn?(b, on, 12)")[1] == [("id", "b"), ("id", "on"), ("nat", 12)]


@pytest.mark.parametrize("expr,expected", [
    ("possesses?(book1, Title)", "true"),
    ("possesses?(null, Title)", "false"),
    ("isIn?(book1, issued, 7)", "true"),
    ("isIn?(book1, claimed, 7)", "false"),
    ("event?(book1, onTheRack, issued)", "true"),
    ("event?(book1, onTheRack, claimed)", "false"),
    ("fromState!(<issued, claimed>)", "issued"),
    ("toState!(<issued, claimed>)", "claimed"),
    ("composableEvent?(<issued, claimed>, <claimed, issued>)", "true"),
    ("composableEvent?(book1:<issued, claimed>, <claimed, issued>)", "false"),
    ("process?(<issued, claimed>, <claimed, issued>)", "true"),
    ("process?(Recall)", "true"),
    ("process?(<issued, claimed>, <missing, issued>)", "false"),
    ("complexProperty?(Title)", "false"),
    ("composite?(book1)", "false"),
    ("precedes?(Title, Title)", "true"),
    ("precedes?(Title, ISBN)", "false"),
])
def test_library_queries(library, expr, expected):
    assert value(library, expr) == expected


@pytest.mark.parametrize("expr,expected", [
    ("memberof_c?(UniversityStudent, s1)", "true"),
    ("memberof_c?(UniversityStudent, kid1)", "false"),
    ("memberof_k?(ChildLabor, kid1)", "true"),
    ("class?({s1, s2}, Enrolled)", "true"),
    ("class?({s1}, Enrolled)", "false"),
    ("class?({}, Unknownish)", None),
    ("kind?({kid1}, {Underaged, WorksFor})", "true"),
    ("characteristicProp_c?(UniversityStudent, Enrolled)", "true"),
    ("characteristicProp_k?(ChildLabor, {Underaged, WorksFor})", "true"),
    ("partof?(pc, hardDisk)", "true"),
    ("partof?(person1, vehicle1)", "false"),
    ("composite?(pc)", "true"),
])
def test_collection_queries(collections_model, expr, expected):
    if expected is None:
        with pytest.raises(Exception):
            evaluate(collections_model, expr)
    else:
        assert value(collections_model, expr) == expected


def test_precedes_trace(precedence):
    res = evaluate(precedence, "precedes?(BeingPerson, HostelResident)")
    assert res.value is True
    assert len(res.trace) == 3


@pytest.mark.parametrize("expr,error", [
    ("nope?(x)", QueryError),
    ("possesses?(book1)", QueryError),
    ("possesses?(book1, Title", QueryError),
    ("possesses?(book1, 3)", QueryError),
    ("possesses?(book2, Title)", UnknownThing),
    ("isIn?(book1, lost, 3)", UnknownState),
    ("memberof_c?(Nope, book1)", UnknownClass),
    ("fromState!(<a, a>)", QueryError),
    ("possesses?(book1, Title) trailing", QueryError),
    ("possesses?(book1, $)", QueryError),
])
def test_query_errors(library, expr, error):
    with pytest.raises(error):
        evaluate(library, expr)


def test_function_table_covers_all_supplementary_functions():
    expected = {"possesses?", "precedes?", "isIn?", "event?", "composableEvent?", "process?",
                "complexProperty?", "composite?", "partof?", "memberof_c?", "class?", "kind?",
                "characteristicProp_c?", "characteristicProp_k?", "fromState!", "toState!"}
    assert expected <= set(FUNCTIONS)
