"""
Tests for the dimension and axiom-suite services
"""

import pytest

from beadcalc import config
from beadcalc.algebra import Space
from beadcalc.runlog import RunLog
from services import AxiomSuiteService, DimensionService
from services.axioms import AXIOM_COLUMNS


class TestDimensionService:
    def test_dimension_without_store(self):
        assert DimensionService().dimension(Space.PHI, 2).dimension == 1

    def test_stored_results_are_reused(self, store):
        log = RunLog()
        service = DimensionService(store, log)
        first = service.dimension(Space.PHI, 4)
        second = service.dimension(Space.PHI, 4)
        assert first == second
        assert any(entry["details"] == "reused stored result" for entry in log.entries)
        assert store.lookup_dimension("phi", 4) == first

    def test_window_ignored_outside_lambda(self, store):
        report = DimensionService(store).dimension(Space.PHI, 2, bead_window=3)
        assert report.bead_window == 0

    def test_table_skips_failures(self):
        log = RunLog()
        df = DimensionService(log=log).dimension_table(euler_degrees=(0, 2, config.EULER_BOUND + 1))
        assert list(df["euler_degree"]) == [0, 2]
        assert list(df["dimension"]) == [1, 1]
        assert len(log.errors()) == 1

    def test_well_defined(self):
        service = DimensionService()
        df = service.well_definedness(2, shuffles=2)
        assert len(df) == 4
        assert set(df["variant"]) == {"shuffle", "forest"}
        ok, message = service.check_well_defined(2, shuffles=2)
        assert ok, message


class TestAxiomSuiteService:
    def test_eqlink(self):
        df = AxiomSuiteService().run_eqlink(seed=3, count=8, max_crossings=6)
        assert list(df.columns) == AXIOM_COLUMNS
        assert AxiomSuiteService.all_passed(df), df[df["failed"] > 0].to_dict(orient="records")
        assert {"symmetry", "specialization", "over_under", "sliding", "basepoint", "hopf", "unlink"} <= set(df["axiom"])

    def test_linking(self):
        assert AxiomSuiteService.all_passed(AxiomSuiteService().run_linking(seed=3, count=8))

    def test_antisymmetry(self):
        assert AxiomSuiteService.all_passed(AxiomSuiteService().run_antisymmetry(seed=3, count=2))

    def test_rings(self):
        df = AxiomSuiteService().run_rings(seed=3, count=2, euler_degrees=(2,))
        assert AxiomSuiteService.all_passed(df), df.to_dict(orient="records")

    def test_hair(self):
        assert AxiomSuiteService.all_passed(AxiomSuiteService().run_hair(seed=3, count=2))

    def test_contraction(self):
        df = AxiomSuiteService().run_contraction(seed=3, count=1, euler_degrees=(2,))
        assert AxiomSuiteService.all_passed(df), df.to_dict(orient="records")

    def test_results_are_recorded(self, store):
        log = RunLog()
        service = AxiomSuiteService(store, log)
        df = service.run_suite("linking", seed=1, count=4)
        summary = store.axiom_summary()
        assert set(summary["axiom"]) == set(df["axiom"])
        assert log.entries[-1]["step"] == "linking suite"

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            AxiomSuiteService().run_suite("knots")

    def test_empty_report_is_not_a_pass(self):
        df = AxiomSuiteService().run_eqlink(seed=1, count=2).iloc[0:0]
        assert not AxiomSuiteService.all_passed(df)
