import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spcalc.category import FiniteCategory, validate_category
from spcalc.config import Bounds
from spcalc.dsl import Workspace, load_workspace, parse_workspace, print_workspace, tokenize
from spcalc.errors import ParseError, ValidationError
from spcalc.generators import random_category, random_presheaf
from spcalc.presheaf import SmallPresheaf

HERE = os.path.dirname(__file__)
WORKSPACES = os.path.join(HERE, "..", "workspaces")

ARROW_WS = """
base V = FinSet;
category A over V {
  objects 0, 1;
  arrow f : 0 -> 1;
}
presheaf Y0 on A = Y(0);
"""


def test_minimal_workspace_parses():
    ws = parse_workspace(ARROW_WS)
    k = ws.category("A")
    assert validate_category(k).ok
    assert len(ws.presheaves["Y0"].value(0)) == 1
    assert [n for _, n in ws.order] == ["V", "A", "Y0"]


@pytest.mark.parametrize("name", ["arrow.cat", "z2.cat"])
def test_shipped_workspaces_round_trip(name):
    ws = load_workspace(os.path.join(WORKSPACES, name))
    again = parse_workspace(print_workspace(ws))
    assert again.structure() == ws.structure()


def test_unknown_identifier_is_named():
    with pytest.raises(ParseError) as e:
        parse_workspace("category A over FinSet { objects 0; }\npresheaf P on B = Y(0);")
    assert "B" in str(e.value)
    assert e.value.line == 2


def test_syntax_error_reports_position_and_expectation():
    with pytest.raises(ParseError) as e:
        parse_workspace("category A over FinSet {\n  objects 0\n}")
    assert e.value.line == 3
    assert "expected" in str(e.value)


def test_broken_composition_is_a_validation_error():
    text = """
    category M over FinSet {
      objects s;
      arrow x : s -> s;
      arrow y : s -> s;
      compose x x = y;
      compose x y = x;
      compose y x = y;
      compose y y = y;
    }
    """
    with pytest.raises(ValidationError) as e:
        parse_workspace(text)
    assert "associativity" in str(e.value)


def test_duplicate_names_and_bad_monoidal():
    with pytest.raises(ValidationError):
        parse_workspace("category A over FinSet { objects 0; }\ncategory A over FinSet { objects 1; }")
    with pytest.raises(ValidationError):
        parse_workspace("category D over FinSet { objects 0, 1, 2; }\n"
                        "monoidal m on D { 0 * 0 = 1; 0 * 1 = 2; 1 * 0 = 0; 1 * 1 = 0; }")


def test_builtins_and_bounds():
    ws = parse_workspace("bounds probes=8, depth=2;\ncategory N = DiscreteNat;\ncategory O = op(N);\n"
                         "presheaf T on O = Y(0);\nmonoidal x on N = min;")
    assert ws.bounds == Bounds(probes=8, depth=2)
    assert ws.category("O").opposite() is ws.category("N")
    again = parse_workspace(print_workspace(ws))
    assert again.structure() == ws.structure()


def test_tokenizer_tracks_lines():
    toks = tokenize("a\n  b")
    assert [(t.text, t.line, t.col) for t in toks if t.kind != "eof"] == [("a", 1, 1), ("b", 2, 3)]


# round trip on random inputs


def relabel_category(k, name="K"):
    """Objects 0..n-1, identities id_<a>, other arrows u<i>."""
    objs = list(k.objects())
    lab, homs = {}, {}
    count = 0
    for a in objs:
        for b in objs:
            carrier = list(k.hom(a, b).carrier)
            if a == b:
                # the parser lists the identity first
                carrier.sort(key=lambda u: u != k.identity(a))
            for u in carrier:
                if a == b and u == k.identity(a):
                    lab[(a, b, u)] = f"id_{a}"
                else:
                    lab[(a, b, u)] = f"u{count}"
                    count += 1
                homs.setdefault((a, b), []).append(lab[(a, b, u)])
    comp = {(a, b, c, lab[(b, c, g)], lab[(a, b, f)]): lab[(a, c, h)]
            for (a, b, c, g, f), h in k.composition_table().items()}
    ids = {a: f"id_{a}" for a in objs}
    return FiniteCategory(k.base, objs, homs, comp, ids, name=name), lab


def relabel_presheaf(f, k, lab, name="P"):
    names = {}
    for b in f.support:
        for i, x in enumerate(f.values[b].carrier):
            names[(b, x)] = f"e{b}_{i}"
    values = {b: [names[(b, x)] for x in f.values[b].carrier] for b in f.support}
    action = {(b, b2, lab[(b, b2, u)]): {names[(b2, x)]: names[(b, y)] for x, y in m.items()}
              for (b, b2, u), m in f.action.items()}
    return SmallPresheaf(k, f.support, values, action, name=name)


@settings(max_examples=30)
@given(st.integers(0, 100_000))
def test_round_trip_on_random_workspaces(seed):
    raw = random_category(seed, max_objects=3)
    k, lab = relabel_category(raw)
    ws = Workspace()
    ws.add("category", "K", k)
    ws.add("presheaf", "P", relabel_presheaf(random_presheaf(seed, raw), k, lab))
    text = print_workspace(ws)
    again = parse_workspace(text)
    assert again.structure() == ws.structure()
    assert print_workspace(again) == text
