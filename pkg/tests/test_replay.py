import os
import subprocess
import sys

import pytest

from spcalc.errors import UnknownSuite
from spcalc.isbell import dedekind_macneille_fixed_points
from spcalc.presheaf import presheaf_hom
from spcalc.replay import replay_suite


def test_yoneda_suite_passes():
    r = replay_suite("yoneda", 3)
    assert r.ok and r.cases == 200


def test_corrupted_hom_is_caught_and_shrunk():
    def wrong(f, g, budget=None):
        out = list(presheaf_hom(f, g, budget))
        return out + out[:1]  # one spurious transformation whenever there is any

    r = replay_suite("yoneda", 3, engine={"presheaf_hom": wrong})
    assert not r.ok
    first = r.failures[0]
    # greedy shrinking leaves only the object being evaluated
    assert first["presheaf"]["ambient"]["objects"] == [first["object"]]
    assert r.to_json()["verdict"] == "Fail"


def test_corrupted_fixed_points_are_caught_and_shrunk():
    def lossy(k, bounds=None):
        got = dedekind_macneille_fixed_points(k)
        return got[1:] if len(k.objects()) >= 3 else got

    r = replay_suite("dm", 0, engine={"fixed_points": lossy})
    assert not r.ok
    shrunk = [f for f in r.failures if "cuts" in f]
    assert shrunk and all(len(f["poset"]["objects"]) == 3 for f in shrunk)


def test_isbell_is_an_alias_for_dm():
    assert replay_suite("isbell", 1).to_json()["details"] == replay_suite("dm", 1).to_json()["details"]
    assert replay_suite("isbell", 1).suite == "isbell"


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        replay_suite("nope")


def test_payload_does_not_depend_on_hash_seed():
    code = "from spcalc.replay import replay_suite; print(replay_suite('dm', 2).payload())"
    outs = set()
    for hs in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=hs)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.add(res.stdout)
    assert len(outs) == 1
