import json
import math
import shutil

import numpy as np
import pytest

from spectrex.forbidden import (
    MIN_M,
    NAMES,
    STATED_THRESHOLD,
    TABLES,
    CatalogError,
    catalog_path,
    cycle_entry,
    data_dir,
    get_entry,
    load_catalog,
    min_even_threshold,
    odd_cycle_exclusion,
    reconstruct,
    regenerate_catalog,
    triangle_lower_bound,
)
from spectrex.graph import is_triangle_free
from spectrex.induced import find_induced_c5
from spectrex.spectral import spectrum

# Entries whose bound at the stated threshold is positive under the engine;
# L3 is the known exception (see the decisions ledger).
POSITIVE_AT_258 = [n for n in NAMES if n != "L3"]


def test_tables_shape():
    assert len(TABLES) == 15
    for name, row in TABLES.items():
        assert list(row) == sorted(row, reverse=True)
        assert 7 <= len(row) <= 9


def test_catalog_realizations():
    cat = load_catalog()
    assert set(cat) == set(NAMES)
    for name, entry in cat.items():
        assert entry.realizations
        for g in entry.graphs():
            assert is_triangle_free(g) and find_induced_c5(g) is not None
            assert np.allclose(spectrum(g).values, entry.ref_spectrum, atol=1e-3)


def test_regeneration_matches_stored():
    doc = regenerate_catalog(jobs=1)
    stored = json.loads(catalog_path().read_text())
    assert doc == stored


def test_reconstruct_single_entry():
    gs = reconstruct(get_entry("J1"))
    assert gs and all(g.n == len(TABLES["J1"]) for g in gs)


def test_data_dir_override(tmp_path, monkeypatch):
    shutil.copy(catalog_path(), tmp_path / "catalog.json")
    monkeypatch.setenv("SPECTREX_DATA", str(tmp_path))
    assert data_dir() == tmp_path
    doc = json.loads((tmp_path / "catalog.json").read_text())
    doc["entries"][0]["spectrum"][0] += 0.5
    (tmp_path / "catalog.json").write_text(json.dumps(doc))
    with pytest.raises(CatalogError):
        load_catalog()


def test_get_entry_errors():
    with pytest.raises(CatalogError):
        get_entry("Q9")
    with pytest.raises(ValueError):
        cycle_entry(8)
    assert get_entry("C7").f_negatives == 2


@pytest.mark.parametrize("name", POSITIVE_AT_258)
def test_bound_positive_at_258(name):
    cert = triangle_lower_bound(get_entry(name), 258)
    assert cert.positive and cert.committed_max <= 2 * 258


def test_L3_bound_not_positive():
    cert = triangle_lower_bound(get_entry("L3"), 258)
    assert not cert.positive and cert.lower_bound == pytest.approx(-0.581, abs=1e-3)
    with pytest.raises(CatalogError):
        min_even_threshold(get_entry("L3"), cap=2000)


@pytest.mark.parametrize("name,m", [("H1", 188), ("H3", 162)])
def test_smaller_stated_thresholds(name, m):
    assert triangle_lower_bound(get_entry(name), m).positive
    assert STATED_THRESHOLD[name] == m


def test_H3_variants():
    v = triangle_lower_bound(get_entry("H3"), 162).variants
    assert v["coefficient_2_3"] > 0 and v["with_lambda_L"] >= triangle_lower_bound(get_entry("H3"), 162).lower_bound


@pytest.mark.parametrize("s", [7, 9, 11])
def test_odd_cycles_excluded(s):
    assert odd_cycle_exclusion(s, 258).positive


def test_engine_refuses_small_m():
    cert = triangle_lower_bound(get_entry("J1"), MIN_M - 2)
    assert cert.lower_bound == -math.inf and cert.diagnostics
    with pytest.raises(ValueError):
        triangle_lower_bound(get_entry("J1"), 259)


def test_thresholds_below_stated():
    for name in POSITIVE_AT_258:
        scan = min_even_threshold(get_entry(name))
        assert scan.m_star <= STATED_THRESHOLD[name]
    assert min_even_threshold(cycle_entry(7)).m_star == MIN_M


def test_certificate_serializes():
    d = triangle_lower_bound(get_entry("L3"), 60).to_dict()
    assert d["lower_bound"] is None and d["budget"] == 120
