import math

import numpy as np
import pytest

from sprlab.bases import lacunary_sine_basis, rudin_2d_basis, iid_basis
from sprlab.measures import make_interval_grid, make_product_space, make_square_grid
from sprlab.serialize import (
    dumps,
    fmt_float,
    function_from_csv,
    function_to_csv,
    load_basis,
    measure_from_json,
    measure_to_json,
    save_basis,
    write_report,
)

from conftest import TERNARY


class TestJsonWriter:
    def test_float_precision_round_trips(self):
        import json

        for x in (0.1, 1 / 3, 1e-300, 123456789.123456789, -2.5e17):
            assert json.loads(fmt_float(x)) == x

    def test_rejects_nan_and_inf(self):
        with pytest.raises(ValueError):
            fmt_float(float("nan"))
        with pytest.raises(ValueError):
            fmt_float(float("inf"))

    def test_stable_key_order(self):
        doc = {"b": 1, "a": [1.5, {"z": True, "y": None}]}
        assert dumps(doc) == dumps({"b": 1, "a": [1.5, {"z": True, "y": None}]})
        import json

        assert json.loads(dumps(doc)) == doc

    def test_deterministic_file(self, tmp_path):
        doc = {"x": 0.1, "arr": list(np.linspace(0, 1, 5))}
        write_report(doc, tmp_path / "a.json")
        write_report(doc, tmp_path / "b.json")
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


class TestMeasureJson:
    def test_interval_round_trip(self):
        mu = make_interval_grid(64)
        mu2 = measure_from_json(measure_to_json(mu))
        assert np.array_equal(mu.points, mu2.points)
        assert np.array_equal(mu.weights, mu2.weights)

    def test_square_round_trip(self):
        mu = make_square_grid(8)
        mu2 = measure_from_json(measure_to_json(mu))
        assert np.array_equal(mu.points, mu2.points)

    def test_product_round_trip(self):
        mu = make_product_space([(0.5 + 0.5j, 0.25), (-0.5 - 0.5j, 0.75)], 3)
        mu2 = measure_from_json(measure_to_json(mu))
        assert np.array_equal(mu.points, mu2.points)
        assert np.allclose(mu.weights, mu2.weights)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            measure_from_json({"kind": "nonsense"})


class TestFunctionCsv:
    def test_round_trip(self, tmp_path):
        mu = make_interval_grid(16)
        f = mu.sample(lambda x: np.exp(2j * math.pi * x) + 0.25)
        path = tmp_path / "f.csv"
        function_to_csv(f, path)
        g = function_from_csv(path, mu)
        assert np.array_equal(f.values, g.values)

    def test_header_checked(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError, match="header"):
            function_from_csv(path, make_interval_grid(2))

    def test_row_count_checked(self, tmp_path):
        mu = make_interval_grid(16)
        f = mu.function(np.ones(16))
        path = tmp_path / "f.csv"
        function_to_csv(f, path)
        with pytest.raises(ValueError, match="rows"):
            function_from_csv(path, make_interval_grid(8))

    def test_weight_mismatch_checked(self, tmp_path):
        mu = make_interval_grid(4)
        f = mu.function(np.ones(4))
        path = tmp_path / "f.csv"
        function_to_csv(f, path)
        other = make_product_space([(1, 0.25), (-1, 0.75)], 2)
        with pytest.raises(ValueError, match="weights"):
            function_from_csv(path, other)


class TestBasisManifest:
    @pytest.mark.parametrize(
        "make",
        [
            lambda: lacunary_sine_basis(3, 4, 512),
            lambda: rudin_2d_basis([1, 2, 5], 2, 32),
            lambda: iid_basis(TERNARY, 3),
        ],
    )
    def test_round_trip(self, make, tmp_path):
        basis = make()
        path = tmp_path / "basis.json"
        save_basis(basis, path)
        loaded = load_basis(path)
        assert loaded.field == basis.field
        assert loaded.provenance == basis.provenance
        assert loaded.size == basis.size
        for r1, r2 in zip(basis.elements, loaded.elements):
            assert np.allclose(r1.values, r2.values, atol=1e-16)

    def test_manifest_lists_elements(self, tmp_path):
        basis = lacunary_sine_basis(2, 4, 256)
        save_basis(basis, tmp_path / "b.json")
        assert (tmp_path / "b_r01.csv").exists()
        assert (tmp_path / "b_r02.csv").exists()

    def test_rejects_foreign_json(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text('{"hello": 1}')
        with pytest.raises(ValueError):
            load_basis(p)
