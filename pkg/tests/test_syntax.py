import pytest
from hypothesis import given, settings, strategies as st

from tightclosure.errors import NameClash, ParseError, UnresolvedName
from tightclosure.syntax import (IdealDecl, RingDecl, TaskDecl, parse_poly, parse_script,
                                 render_script, tokenize)

FERMAT = "ring R = char 7 vars x,y,z relations x^3+y^3-z^3; ideal I = x, y; task tc-hull R I bound 3;"


def test_fermat_smoke():
    script = parse_script(FERMAT)
    kinds = [type(d) for d in script.declarations]
    assert kinds == [RingDecl, IdealDecl, TaskDecl]
    assert script.tasks[0].opts == {"bound": 3}
    assert script.ring("R").char == 7


def test_hyphen_is_minus_inside_polynomials():
    script = parse_script("ring T = char 5 vars a,b,c,d relations b*c-a*d; task dimension T;")
    assert parse_poly("b*c-a*d", ("a", "b", "c", "d")) == dict(script.ring("T").relations[0])
    assert [t.text for t in tokenize("tc-hull c-a")] == ["tc-hull", "c", "-", "a", ""]


def test_errors():
    with pytest.raises(UnresolvedName) as exc:
        parse_script("ring R = char 5 vars x; ideal I = x, w;")
    assert exc.value.line == 1
    with pytest.raises(NameClash):
        parse_script("ring R = char 5 vars x; ideal R = x;")
    with pytest.raises(ParseError):
        parse_script("ring R = char 6 vars x;")
    with pytest.raises(ParseError):
        parse_script("ring R = char 5 vars x,y; element f = 2 x;")
    with pytest.raises(ParseError) as exc:
        parse_script("ring R = char 5 vars x;\ntask frobnicate R;")
    assert exc.value.line == 2 and "tc-hull" in exc.value.expected
    with pytest.raises(ParseError):
        parse_script("ring R = char 5 vars x; element f = x^;")


def test_crlf_and_comments():
    text = "# header\r\nring R = char 5 vars x, y;\r\nelement f = (x+y)^2; # trailing\r\n"
    script = parse_script(text)
    assert dict(script.lookup("f").poly) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}


def test_integer_ring_and_weights():
    script = parse_script("ring C = char Z vars a,b weights 2,3 relations b^2-a^3 domain; task a-invariant C;")
    r = script.ring("C")
    assert r.char is None and r.weights == (2, 3) and r.domain


names = st.sampled_from(["x", "y", "z"])
terms = st.tuples(st.integers(-9, 9).filter(bool), st.lists(st.tuples(names, st.integers(1, 4)), max_size=3))


def _poly_text(ts):
    out = []
    for c, fs in ts:
        mono = "*".join(f"{v}^{e}" for v, e in fs)
        out.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(f"({t})" for t in out) or "0"


@settings(max_examples=60, deadline=None)
@given(st.lists(terms, min_size=1, max_size=4), st.lists(st.lists(terms, min_size=1, max_size=3), max_size=3),
       st.sampled_from(["5", "7", "Z"]), st.booleans(), st.integers(1, 6))
def test_round_trip(rel, gens, char, domain, bound):
    text = f"ring R = char {char} vars x, y, z relations {_poly_text(rel)}"
    text += " domain;\n" if domain else ";\n"
    for i, g in enumerate(gens):
        text += f"element e{i} = {_poly_text(g)};\n"
    text += "ideal I = x, y;\n"
    text += f"task tc-hull R I bound {bound};\n"
    try:
        first = parse_script(text)
    except ParseError:
        return  # e.g. a relation that cancels to zero
    second = parse_script(render_script(first))
    assert second.declarations == first.declarations
    assert render_script(second) == render_script(first)
