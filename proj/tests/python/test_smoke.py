import os

import pytest

import twobundle as tb

DATA = os.environ.get("TWOBUNDLE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_gerbe_tables():
    g = tb.cyclic_gerbe(3)
    assert (g.object_count, g.one_cell_count, g.two_cell_count) == (1, 1, 3)
    assert g.vcomp(2, 2) == 1
    assert g.validate()["ok"]
    assert g.is_strict() and g.is_two_groupoid()


def test_nerve_and_kan():
    assert tb.delooping_cyclic(2).nerve_counts(3) == [1, 2, 4, 8]
    assert tb.cyclic_gerbe(3).kan(4)["kan"]
    monoid = tb.delooping_monoid().kan(3)
    assert not monoid["kan"]
    assert monoid["n"] == 2


def test_classification():
    sphere = tb.simplex_boundary(3)
    assert len(tb.enumerate_bundles(tb.cyclic_gerbe(2), sphere)) == 16
    assert tb.concordance_class_count(tb.cyclic_gerbe(2), sphere) == 2
    assert tb.concordance_class_count(tb.delooping_cyclic(3), tb.circle(3)) == 3
    assert tb.cohomology_dimension(sphere, 2, 2) == 1


def test_files_and_gluing():
    exact = tb.load_bundle(os.path.join(DATA, "gerbe3_exact.bundle"))
    assert exact.validate()["ok"]
    broken = tb.load_bundle(os.path.join(DATA, "gerbe3_broken.bundle"))
    assert broken.validate()["total"] == 1
    north = tb.load_bundle(os.path.join(DATA, "north.bundle"))
    south = tb.load_bundle(os.path.join(DATA, "south.bundle"))
    equator = tb.load_complex(os.path.join(DATA, "equator.cplx"))
    glued = tb.glue(north, south, equator)
    assert glued.validate()["ok"]
    assert glued.base == tb.simplex_boundary(3)
    text = tb.load_two_category(os.path.join(DATA, "gerbe2.2cat")).dumps()
    assert tb.parse_two_category(text).two_cell_count == 2


def test_errors():
    with pytest.raises(tb.Error):
        tb.parse_two_category("{")
    with pytest.raises(tb.Error):
        tb.delooping_monoid().compose(0, 7)


def test_bc_report():
    r = tb.bc_report(1, 1, 2, 1)
    assert r["two_cells"] == 146 and r["ho_two_cells"] == 73
    assert r["hi_identity"] and r["ho_well_defined"]
    assert r["sigma_colax_in_ho"] and not r["sigma_colax_in_2b"]
