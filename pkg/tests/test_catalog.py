import json

import pytest

from pseudoperiodic import catalog
from pseudoperiodic import chorizo as chz
from pseudoperiodic.chains import SearchBounds
from pseudoperiodic.cli import selfcheck_entry
from pseudoperiodic.model import load, to_json, validate

NAMES = catalog.builtin_list()


def test_list_contents():
    for name in ("nielsen-f1", "nielsen-f2", "kodaira-II*", "identity-genus2", "amphidrome-genus2",
                 "kodaira-I0*", "kodaira-IV*", "kodaira-III*"):
        assert name in NAMES
    assert NAMES == catalog.builtin_list()


def test_unknown():
    with pytest.raises(KeyError):
        catalog.builtin_get("nope")


def test_nielsen_entry():
    d = catalog.builtin_get("nielsen-f1").data
    assert d.genus == 6 and len(d.bodies) == 5 and len(d.curves) == 5
    assert all(b.genus == 1 for b in d.bodies)
    assert [str(co.screw) for co in d.curve_orbits] == ["-1"]
    assert all(not rev for _, rev in d.action.curve_perm.values())


def test_i0star_entry():
    d = catalog.builtin_get("kodaira-I0*").data
    (bo,) = d.body_orbits
    assert d.genus == 1 and bo.return_order == 2 and [(v.lam, v.sigma) for v in bo.cone_points] == [(2, 1)] * 4


@pytest.mark.parametrize("name", NAMES)
def test_entry_invariants(name):
    e = catalog.builtin_get(name)
    assert validate(e.data).ok
    assert selfcheck_entry(e, SearchBounds()) == []
    ch = chz.build_generalized_quotient(e.data)
    assert chz.euler_balance(ch, e.data.genus)
    assert chz.intersection_form_semidefinite(ch)[0]


def test_export(tmp_path):
    paths = catalog.export(tmp_path)
    assert sorted(p.name for p in paths) == sorted(f"{n}.json" for n in NAMES)
    for p in paths:
        d = load(p)
        assert to_json(d) == to_json(catalog.builtin_get(p.stem).data)
        json.loads(p.read_text())
