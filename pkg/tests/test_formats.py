import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from addqmds.constructions import construct_A
from addqmds.finite_field import GF, tower_for
from addqmds.formats import (
    FormatError,
    dumps_code,
    dumps_packing,
    fq_parse,
    fq_str,
    loads_code,
    loads_packing,
    read_code,
    read_packing,
    write_code,
    write_packing,
)

from helpers import dho_q2h2, random_code


def test_gf4_elements_use_colon_digits():
    F = GF.of_order(4)
    assert [fq_str(F, a) for a in range(4)] == ["0:0", "1:0", "0:1", "1:1"]
    assert fq_parse(F, "1:1") == 3
    for bad in ["1", "1:2", "a:0", "1:0:0"]:
        with pytest.raises(FormatError):
            fq_parse(F, bad)


def test_code_file_layout():
    T = tower_for(2, 2)
    from addqmds.code import AdditiveCode

    C = AdditiveCode(T, [[(1, 0), (0, 1)]])
    assert dumps_code(C) == "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=2 r=1\n1,0 0,1\n"


def test_code_over_gf4_header():
    C = random_code(np.random.default_rng(0), q=4, h=2, n=3, r=3)
    text = dumps_code(C)
    assert text.splitlines()[1] == "field p=2 e=2 f=1,1,1 h=2 g=1:0,0:1,1:0"
    assert dumps_code(loads_code(text)) == text


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_code_round_trip(seed):
    C = random_code(np.random.default_rng(seed))
    text = dumps_code(C)
    D = loads_code(text)
    assert dumps_code(D) == text
    assert np.array_equal(D.Gt, C.Gt) and D.tower == C.tower


def test_packing_round_trip(tmp_path):
    L = dho_q2h2()
    P = L.to_packing()
    path = tmp_path / "dho.pkg"
    write_packing(path, P)
    Q, T = read_packing(path)
    assert T is None and Q.blocks == P.blocks
    assert dumps_packing(Q) == path.read_text()


def test_code_file_round_trip(tmp_path):
    P, C = construct_A(2, 2, 3, 1)
    path = tmp_path / "a.aqc"
    write_code(path, C)
    D = read_code(path)
    assert D.same_code(C) and D.min_distance() == C.min_distance()
    write_packing(tmp_path / "a.pkg", P, C.tower)
    Q, T = read_packing(tmp_path / "a.pkg")
    assert T == C.tower and Q.same_multiset(P)


@pytest.mark.parametrize("text", [
    "",
    "aqc v2\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=1 r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1\ncode n=1 r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=1 r=2\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=2 r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=1 r=1\n1,0,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=1 r=1\n0,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,0,1\ncode n=1 r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=3 g=1,1,1\ncode n=1 r=1\n1,0\n",
    "aqc v1\nfield p=4 e=1 f=0,1 h=2 g=1,1,1\ncode n=1 r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=x r=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\ncode n=1\n1,0\n",
    "aqc v1\nfield p=2 e=1 f=0,1 h=2 g=1,1,1\nblob n=1 r=1\n1,0\n",
])
def test_malformed_code_files(text):
    with pytest.raises(FormatError):
        loads_code(text)


@pytest.mark.parametrize("text", [
    "pkg v1\nfield p=2 e=1 f=0,1\npacking r=2 blocks=2\nblock dim=1\n1 0\n",
    "pkg v1\nfield p=2 e=1 f=0,1\npacking r=2 blocks=1\nblock dim=1\n1 0 0\n",
    "pkg v1\nfield p=2 e=1 f=0,1\npacking r=2 blocks=1\nblock dim=2\n1 0\n1 0\n",
    "pkg v1\nfield p=2 e=1 f=0,1\npacking r=2 blocks=1\nblock dim=1\n1 0\n1 1\n",
    "pkg v1\nfield p=2 e=1 f=0,1\npacking r=2 blocks=1\nblock dim=2\n1 0\n",
])
def test_malformed_packing_files(text):
    with pytest.raises(FormatError):
        loads_packing(text)
