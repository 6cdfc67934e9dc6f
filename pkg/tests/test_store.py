"""
Tests for the SQLite results store
"""

import sqlite3

import pandas as pd
import pytest

from beadcalc.algebra import DimensionReport
from beadcalc.runlog import RunLog
from database import ResultsStore


def make_report(dimension=2, space="phi", euler_degree=4):
    return DimensionReport(space, euler_degree, 0, 0, generators=dimension + 3, relations=5, rank=3,
                           dimension=dimension)


def axiom_frame(failed=0):
    return pd.DataFrame([
        {"suite": "linking", "axiom": "symmetry", "checked": 10, "passed": 10 - failed, "failed": failed,
         "first_failure": ""},
        {"suite": "linking", "axiom": "specialization", "checked": 10, "passed": 10, "failed": 0,
         "first_failure": ""},
    ])


class TestSchema:
    def test_version(self, store):
        assert store.get_schema_version() == 1

    def test_uninitialized_version(self, tmp_path):
        assert ResultsStore(str(tmp_path / "empty.db")).get_schema_version() == 0

    def test_initialize_twice(self, store):
        store.initialize_database()
        assert store.get_schema_version() == 1

    def test_backup(self, store, tmp_path):
        store.record_dimension(make_report())
        target = store.backup_database(str(tmp_path / "copy.db"))
        copy = ResultsStore(target)
        assert copy.lookup_dimension("phi", 4) == make_report()


class TestDimensions:
    def test_record_and_lookup(self, store):
        assert store.lookup_dimension("phi", 4) is None
        store.record_dimension(make_report())
        assert store.lookup_dimension("phi", 4) == make_report()
        assert store.lookup_dimension("phi", 4, bead_window=1) is None

    def test_latest_result_wins(self, store):
        store.record_dimension(make_report(2))
        store.record_dimension(make_report(3))
        assert store.lookup_dimension("phi", 4).dimension == 3
        table = store.dimension_table()
        assert len(table) == 1
        assert table.iloc[0]["dimension"] == 3

    def test_dimension_check_constraint(self, store):
        bad = DimensionReport("phi", 2, 0, 0, generators=2, relations=1, rank=1, dimension=5)
        with pytest.raises(sqlite3.IntegrityError):
            store.record_dimension(bad)


class TestAxiomRuns:
    def test_summary(self, store):
        assert store.record_axiom_report(axiom_frame(), seed=7, count=10) == 2
        store.record_axiom_report(axiom_frame(), seed=8, count=10)
        summary = store.axiom_summary()
        assert list(summary["axiom"]) == ["specialization", "symmetry"]
        assert list(summary["runs"]) == [2, 2]
        assert summary["checked"].sum() == 40

    def test_missing_columns(self, store):
        with pytest.raises(ValueError):
            store.record_axiom_report(pd.DataFrame([{"suite": "linking", "axiom": "symmetry"}]))


class TestIntegrity:
    def test_clean_store(self, store):
        store.record_dimension(make_report())
        report = store.validate_data_integrity()
        assert report["valid"]
        assert report["issues"] == []
        assert report["stats"]["dimension_results"] == 1

    def test_conflicting_dimensions(self, store):
        store.record_dimension(make_report(2))
        store.record_dimension(make_report(3))
        report = store.validate_data_integrity()
        assert not report["valid"]
        assert "phi[e=4" in report["issues"][0]

    def test_axiom_failures_are_reported(self, store):
        store.record_axiom_report(axiom_frame(failed=1))
        report = store.validate_data_integrity()
        assert report["valid"]
        assert report["issues"] == ["Axiom runs with failures: 1"]

    def test_audit_log(self, store):
        log = RunLog()
        log.log_step("phi[e=2]", "SUCCESS", "dimension 1")
        log.log_step("phi[e=9]", "ERROR", "bound")
        assert store.record_log(log.entries) == 2
        assert store.validate_data_integrity()["stats"]["audit_log"] == 2
