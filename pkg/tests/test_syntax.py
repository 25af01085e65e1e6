import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bww.errors import LexError, ParseError, ResolveError
from bww.syntax import detokenize, parse, print_model, resolve, tokenize
from bww.syntax import ast
from bww.syntax.lexer import KEYWORDS, TokenKind, same_tokens

from .conftest import FIXTURES, MODELS


def kinds(tokens):
    return [(t.kind.value, t.lexeme) for t in tokens if t.kind is not TokenKind.EOF]


# -- lexer --

def test_tokenize_thing_line():
    assert kinds(tokenize("thing Book;")) == [
        ("keyword", "thing"), ("identifier", "Book"), ("punctuation", ";")]


def test_tokenize_history_line_has_eight_tokens():
    toks = kinds(tokenize("history b1 { issued @ 5; }"))
    assert len(toks) == 8
    assert ("natural", "5") in toks


def test_tokenize_rejects_dollar():
    with pytest.raises(LexError) as info:
        tokenize("state$x", "f.bww")
    assert info.value.char == "$"
    span = info.value.span
    assert (span.start_line, span.start_col) == (1, 6)


def test_comments_and_arrow():
    toks = kinds(tokenize("precedes A -> B; // trailing\n// whole line\n"))
    assert toks == [("keyword", "precedes"), ("identifier", "A"), ("punctuation", "->"),
                    ("identifier", "B"), ("punctuation", ";")]


def test_spans_are_one_based_and_track_lines():
    toks = tokenize("model M {\n  thing Book;\n}")
    book = [t for t in toks if t.lexeme == "Book"][0]
    assert (book.span.start_line, book.span.start_col, book.span.end_col) == (2, 9, 12)


token_text = st.one_of(
    st.sampled_from(sorted(KEYWORDS)),
    st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,6}", fullmatch=True),
    st.integers(0, 10**6).map(str),
    st.sampled_from(["->", "{", "}", "(", ")", ";", ",", "=", "&", ":", "@", "<", ">"]),
)


@given(st.lists(token_text, max_size=30))
def test_detokenize_then_tokenize_is_identity(words):
    toks = tokenize(" ".join(words))
    assert same_tokens(tokenize(detokenize(toks)), toks)


# -- parser --

def test_four_things_has_four_things():
    tree = parse(tokenize((MODELS / "four_things.bww").read_text()))
    assert sum(isinstance(d, ast.ThingDecl) for d in tree.decls) == 4


def test_truncated_precedes_expects_identifier():
    with pytest.raises(ParseError) as info:
        parse(tokenize("model M { precedes A -> ; }"))
    assert info.value.expected == ("identifier",)
    assert info.value.found == "';'"
    assert len(info.value.diagnostics) == 1


def test_two_errors_reported_in_one_run():
    src = (FIXTURES / "two_errors.bww").read_text()
    with pytest.raises(ParseError) as info:
        parse(tokenize(src, "two_errors.bww"))
    lines = [d.span.start_line for d in info.value.diagnostics]
    assert lines == [2, 3]


def test_recovery_skips_broken_history_block():
    src = "model M { history b { x @ ; y @ 2; } thing ; property P; }"
    with pytest.raises(ParseError) as info:
        parse(tokenize(src))
    assert len(info.value.diagnostics) == 2


def test_missing_binding_flag():
    with pytest.raises(ParseError) as info:
        parse(tokenize("model M { mutual property W(a, b); }"))
    assert "'binding' or 'nonbinding'" in info.value.diagnostics[0].message


def test_conjunction_needs_two_conjuncts():
    with pytest.raises(ParseError):
        parse(tokenize("model M { property C = A; }"))


def test_diagnostic_spans_inside_file():
    src = "model M {\n  thing ;\n  precedes A -> ;\n  schema S of (A);\n}\n"
    with pytest.raises(ParseError) as info:
        parse(tokenize(src))
    n_lines = src.count("\n") + 1
    for d in info.value.diagnostics:
        assert 1 <= d.span.start_line <= d.span.end_line <= n_lines
        line = src.split("\n")[d.span.start_line - 1]
        assert 1 <= d.span.start_col <= len(line) + 1


# -- printer round trip --

names = st.from_regex(r"[a-z][A-Za-z0-9_]{0,5}", fullmatch=True).filter(
    lambda s: s not in KEYWORDS).map(ast.Name)
name_lists = st.lists(names, min_size=1, max_size=4).map(tuple)

decls = st.one_of(
    st.builds(ast.PropertyDecl, names, st.one_of(st.just(()), st.lists(names, min_size=2, max_size=4).map(tuple))),
    st.builds(ast.MutualPropertyDecl, names, name_lists, st.booleans()),
    st.builds(ast.ThingDecl, names, st.one_of(st.just(()), name_lists), st.one_of(st.just(()), name_lists)),
    st.builds(ast.StatesDecl, names, name_lists),
    st.builds(ast.SchemaDecl, names, names, name_lists),
    st.builds(ast.ClassDecl, names, names, st.one_of(st.none(), st.just(()), name_lists)),
    st.builds(ast.KindDecl, names, name_lists, st.one_of(st.none(), st.just(()), name_lists)),
    st.builds(ast.PrecedesDecl, names, names),
    st.builds(ast.HistoryDecl, names, st.lists(
        st.builds(ast.ObservationNode, names, st.integers(0, 99)), min_size=1, max_size=4).map(tuple)),
    st.builds(ast.ProcessDecl, names, names, st.lists(
        st.builds(ast.PairNode, names, names), min_size=1, max_size=3).map(tuple)),
)
models = st.builds(ast.ModelDecl, names, st.lists(decls, max_size=8).map(tuple))


@settings(max_examples=200)
@given(models)
def test_print_parse_round_trip(tree):
    assert parse(tokenize(print_model(tree))) == tree


def test_round_trip_shipped_models():
    for path in sorted(MODELS.glob("*.bww")):
        tree = parse(tokenize(path.read_text()))
        assert parse(tokenize(print_model(tree))) == tree, path.name


# -- resolver --

def _resolve(body):
    return resolve(parse(tokenize(f"model M {{ {body} }}")))


def test_unknown_property_in_schema():
    with pytest.raises(ResolveError) as info:
        _resolve("thing Book possesses Title; property Title; schema S of Book(Author);")
    assert [d.code for d in info.value.diagnostics] == ["R1"]
    assert info.value.diagnostics[0].subject == "Author"


def test_duplicate_thing():
    with pytest.raises(ResolveError) as info:
        _resolve("thing Book; thing Book;")
    assert [d.code for d in info.value.diagnostics] == ["R2"]


def test_null_is_reserved():
    with pytest.raises(ResolveError) as info:
        _resolve("thing null;")
    assert [d.code for d in info.value.diagnostics] == ["R3"]


def test_null_resolves_as_reference():
    resolved = _resolve("property P; thing a possesses P parts null;")
    assert resolved.things[0].parts[0].text == "null"


def test_forward_references_resolve():
    resolved = _resolve("thing a possesses P; property P;")
    assert [d.name.text for d in resolved.properties] == ["P"]


def test_same_state_name_on_two_things_is_fine():
    _resolve("thing a; thing b; states of a: on, off; states of b: on;")


def test_duplicate_state_of_one_thing():
    with pytest.raises(ResolveError) as info:
        _resolve("thing a; states of a: on; states of a: on;")
    assert [d.code for d in info.value.diagnostics] == ["R2"]


def test_all_resolve_errors_collected_in_order():
    with pytest.raises(ResolveError) as info:
        resolve(parse(tokenize((FIXTURES / "unresolved.bww").read_text(), "u.bww")))
    assert [d.code for d in info.value.diagnostics] == ["R2", "R1", "R3"]
