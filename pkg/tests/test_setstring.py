import pytest
from hypothesis import given
from hypothesis import strategies as st

from setpmatch.setstring import (
    Alphabet,
    Bijection,
    DuplicateTokenWarning,
    ParseError,
    SetString,
    apply_bijection,
    parse_setstring,
    read_setstrings,
    serialize_setstring,
)

from conftest import S1_DOC, S2_DOC, ss


def test_parse_simple():
    s = parse_setstring("b\n-\na\n")
    assert s.positions == (frozenset({1}), frozenset(), frozenset({2}))
    assert len(s) == 3 and s.size == 2
    assert s.alphabet.tokens == ("b", "a")


def test_parse_paper_string():
    s = parse_setstring(S1_DOC)
    a, b = s.alphabet.id("a"), s.alphabet.id("b")
    assert len(s) == 13 and s.size == 5
    assert s[1] == {b} and s[4] == {a} and s[7] == {a, b} and s[12] == {a}


def test_parse_empty_and_bytes():
    s = parse_setstring(b"")
    assert len(s) == 0 and s.size == 0
    assert parse_setstring(b"x y\n") == parse_setstring("x y")


def test_comments_and_no_trailing_newline():
    s = parse_setstring("# header\na\n# mid\n-\nb")
    assert len(s) == 3


def test_duplicates_are_dropped_with_warning():
    with pytest.warns(DuplicateTokenWarning, match="2 duplicate"):
        s = parse_setstring("a a\nb b c\n")
    assert s.size == 3


@pytest.mark.parametrize(
    "doc,lineno",
    [
        ("a\n\nb\n", 2),
        ("a  b\n", 1),
        ("a\nb \n", 2),
        ("a - b\n", 1),
        ("a #b\n", 1),
        ("a\tb\n", 1),
        ("x" * 300 + "\n", 1),
    ],
)
def test_malformed_lines_report_line_number(doc, lineno):
    with pytest.raises(ParseError) as exc:
        parse_setstring(doc)
    assert exc.value.lineno == lineno


def test_shared_alphabet_and_normalization():
    alpha, (p, t) = read_setstrings(["z\ny\n", "y x\n"])
    assert alpha.tokens == ("z", "y", "x")
    alpha, _ = read_setstrings(["z\ny\n", "y x\n"], normalize=True)
    assert alpha.tokens == ("x", "y", "z")
    assert p.alphabet is t.alphabet


def test_serialize():
    a = Alphabet(["b"])
    assert serialize_setstring(ss({1}, ()), a) == "b\n-\n"
    assert serialize_setstring(ss(), a) == ""
    s1 = parse_setstring(S1_DOC)
    assert serialize_setstring(s1) == S1_DOC


def test_apply_bijection_paper_example():
    _, (s1, s2) = read_setstrings([S1_DOC, S2_DOC])
    al = s1.alphabet
    pi = Bijection({al.id("a"): al.id("d"), al.id("b"): al.id("c")})
    img = apply_bijection(s1, pi)
    # agrees with S2 everywhere except the last position: no renaming works
    assert img.positions[:12] == s2.positions[:12]
    assert img[12] == {al.id("d")} and s2[12] == {al.id("c")}


def test_apply_bijection_identity_and_swap():
    s = ss({1, 2}, (), {2})
    assert apply_bijection(s, Bijection.identity([1, 2])) == s
    assert apply_bijection(ss({1, 2}), Bijection({1: 2, 2: 1})) == ss({1, 2})


def test_apply_bijection_outside_domain():
    with pytest.raises(ValueError):
        apply_bijection(ss({1, 3}), Bijection({1: 2}))


def test_bijection_rejects_non_injective():
    with pytest.raises(ValueError):
        Bijection({1: 2, 3: 2})


def test_setstring_rejects_unknown_id():
    with pytest.raises(ValueError):
        SetString.from_sets([{5}], Alphabet(["a"]))


tokens = st.text(alphabet="abcxyz019_", min_size=1, max_size=4)
documents = st.lists(st.lists(tokens, max_size=4, unique=True), max_size=12)


@given(documents)
def test_round_trip(rows):
    doc = "".join((" ".join(r) if r else "-") + "\n" for r in rows)
    s = parse_setstring(doc)
    back = parse_setstring(serialize_setstring(s))
    assert back == s
    assert back.alphabet.tokens == s.alphabet.tokens


set_strings = st.lists(st.frozensets(st.integers(1, 6), max_size=4), max_size=15).map(
    lambda xs: SetString(tuple(xs))
)


@given(set_strings, st.permutations(range(1, 7)))
def test_bijection_preserves_shape_and_inverts(s, perm):
    pi = Bijection(dict(zip(range(1, 7), perm)))
    img = apply_bijection(s, pi)
    assert len(img) == len(s)
    assert [len(x) for x in img] == [len(x) for x in s]
    assert apply_bijection(img, pi.inverse()) == s
