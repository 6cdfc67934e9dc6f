"""
Bead Calculus Engine - Results Store Schema
SQLite persistence for computed graded dimensions, axiom-suite runs and the audit trail
"""

import shutil
import sqlite3
from datetime import datetime
from typing import Any, Dict, List, Optional

import pandas as pd

from beadcalc import config
from beadcalc.algebra import DimensionReport

AXIOM_COLUMNS = ["suite", "axiom", "checked", "passed", "failed"]


class ResultsStore:
    """Database of computed results, keyed so that repeated runs can reuse them"""

    def __init__(self, db_path: str = config.STORE_FILE):
        self.db_path = db_path
        self.version = 1  # Database schema version for future migrations

    def get_connection(self):
        """Get database connection with proper settings"""
        conn = sqlite3.connect(self.db_path)
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    def initialize_database(self):
        """Initialize database with complete schema"""
        conn = self.get_connection()
        cursor = conn.cursor()

        self._create_dimension_results_table(cursor)
        self._create_axiom_runs_table(cursor)
        self._create_audit_log_table(cursor)
        self._create_schema_version_table(cursor)
        self._create_indexes(cursor)
        self._create_views(cursor)

        cursor.execute(
            "INSERT OR REPLACE INTO schema_version (version, applied_at, description) VALUES (?, ?, ?)",
            (self.version, datetime.now().isoformat(), "dimension results and axiom runs")
        )
        conn.commit()
        conn.close()

    def _create_dimension_results_table(self, cursor):
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS dimension_results (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                space TEXT NOT NULL,
                euler_degree INTEGER NOT NULL,
                bead_window INTEGER NOT NULL DEFAULT 0,
                legs INTEGER NOT NULL DEFAULT 0,
                generators INTEGER NOT NULL,
                relations INTEGER NOT NULL,
                rank INTEGER NOT NULL,
                dimension INTEGER NOT NULL,
                recorded_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                CHECK (dimension = generators - rank)
            )
        """)

    def _create_axiom_runs_table(self, cursor):
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS axiom_runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                suite TEXT NOT NULL,
                axiom TEXT NOT NULL,
                seed INTEGER,
                count INTEGER,
                checked INTEGER NOT NULL,
                passed INTEGER NOT NULL,
                failed INTEGER NOT NULL,
                recorded_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                CHECK (checked = passed + failed)
            )
        """)

    def _create_audit_log_table(self, cursor):
        """Create audit log for tracking computation steps"""
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS audit_log (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                step TEXT NOT NULL,
                status TEXT NOT NULL,
                details TEXT,
                logged_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        """)

    def _create_schema_version_table(self, cursor):
        cursor.execute("""
            CREATE TABLE IF NOT EXISTS schema_version (
                version INTEGER PRIMARY KEY,
                applied_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                description TEXT
            )
        """)

    def _create_indexes(self, cursor):
        indexes = [
            "CREATE INDEX IF NOT EXISTS idx_dimension_key ON dimension_results(space, euler_degree, bead_window, legs)",
            "CREATE INDEX IF NOT EXISTS idx_axiom_suite ON axiom_runs(suite, axiom)",
            "CREATE INDEX IF NOT EXISTS idx_audit_status ON audit_log(status)",
        ]
        for index_sql in indexes:
            cursor.execute(index_sql)

    def _create_views(self, cursor):
        # Latest result per graded piece
        cursor.execute("""
            CREATE VIEW IF NOT EXISTS v_dimension_table AS
            SELECT
                d.space,
                d.euler_degree,
                d.bead_window,
                d.legs,
                d.generators,
                d.relations,
                d.rank,
                d.dimension,
                d.recorded_at
            FROM dimension_results d
            JOIN (
                SELECT MAX(id) as id
                FROM dimension_results
                GROUP BY space, euler_degree, bead_window, legs
            ) latest ON d.id = latest.id
            ORDER BY d.space, d.euler_degree, d.bead_window, d.legs
        """)

        cursor.execute("""
            CREATE VIEW IF NOT EXISTS v_axiom_summary AS
            SELECT
                suite,
                axiom,
                COUNT(*) as runs,
                SUM(checked) as checked,
                SUM(passed) as passed,
                SUM(failed) as failed,
                MAX(recorded_at) as last_run
            FROM axiom_runs
            GROUP BY suite, axiom
            ORDER BY suite, axiom
        """)

    # Dimensions

    def record_dimension(self, report: DimensionReport) -> int:
        conn = self.get_connection()
        cursor = conn.cursor()
        try:
            cursor.execute("""
                INSERT INTO dimension_results
                    (space, euler_degree, bead_window, legs, generators, relations, rank, dimension)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?)
            """, (report.space, report.euler_degree, report.bead_window, report.legs,
                  report.generators, report.relations, report.rank, report.dimension))
            conn.commit()
            return cursor.lastrowid
        finally:
            conn.close()

    def lookup_dimension(self, space: str, euler_degree: int, bead_window: int = 0,
                         legs: int = 0) -> Optional[DimensionReport]:
        """Most recent stored result for one graded piece, or None"""
        conn = self.get_connection()
        cursor = conn.cursor()
        try:
            cursor.execute("""
                SELECT space, euler_degree, bead_window, legs, generators, relations, rank, dimension
                FROM dimension_results
                WHERE space = ? AND euler_degree = ? AND bead_window = ? AND legs = ?
                ORDER BY id DESC LIMIT 1
            """, (space, euler_degree, bead_window, legs))
            row = cursor.fetchone()
        finally:
            conn.close()
        return DimensionReport(*row) if row else None

    def dimension_table(self) -> pd.DataFrame:
        conn = self.get_connection()
        try:
            return pd.read_sql_query("SELECT * FROM v_dimension_table", conn)
        finally:
            conn.close()

    # Axiom runs

    def record_axiom_report(self, df: pd.DataFrame, seed: Optional[int] = None,
                            count: Optional[int] = None) -> int:
        """Store one row per axiom of a suite report table"""
        missing = [column for column in AXIOM_COLUMNS if column not in df.columns]
        if missing:
            raise ValueError(f"axiom report is missing columns: {', '.join(missing)}")
        rows = [(row.suite, row.axiom, seed, count, int(row.checked), int(row.passed), int(row.failed))
                for row in df[AXIOM_COLUMNS].itertuples(index=False)]
        conn = self.get_connection()
        try:
            conn.executemany("""
                INSERT INTO axiom_runs (suite, axiom, seed, count, checked, passed, failed)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            """, rows)
            conn.commit()
        finally:
            conn.close()
        return len(rows)

    def axiom_summary(self) -> pd.DataFrame:
        conn = self.get_connection()
        try:
            return pd.read_sql_query("SELECT * FROM v_axiom_summary", conn)
        finally:
            conn.close()

    # Audit trail

    def record_log(self, entries: List[Dict[str, str]]) -> int:
        conn = self.get_connection()
        try:
            conn.executemany(
                "INSERT INTO audit_log (step, status, details, logged_at) VALUES (?, ?, ?, ?)",
                [(entry["step"], entry["status"], entry.get("details", ""), entry.get("timestamp"))
                 for entry in entries]
            )
            conn.commit()
        finally:
            conn.close()
        return len(entries)

    def get_schema_version(self) -> int:
        """Get current database schema version"""
        conn = self.get_connection()
        cursor = conn.cursor()

        try:
            cursor.execute("SELECT MAX(version) FROM schema_version")
            result = cursor.fetchone()
            return result[0] if result[0] else 0
        except sqlite3.OperationalError:
            return 0
        finally:
            conn.close()

    def backup_database(self, backup_path: Optional[str] = None) -> str:
        """Create a backup of the database"""
        if not backup_path:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            backup_path = f"beadcalc_results_backup_{timestamp}.db"
        shutil.copy2(self.db_path, backup_path)
        return backup_path

    def validate_data_integrity(self) -> Dict[str, Any]:
        """Validate database integrity and return report"""
        conn = self.get_connection()

        integrity_report = {
            "valid": True,
            "issues": [],
            "stats": {}
        }

        try:
            cursor = conn.cursor()

            # The same graded piece must never have been recorded with two dimensions
            cursor.execute("""
                SELECT space, euler_degree, bead_window, legs, COUNT(DISTINCT dimension)
                FROM dimension_results
                GROUP BY space, euler_degree, bead_window, legs
                HAVING COUNT(DISTINCT dimension) > 1
            """)
            for space, euler_degree, bead_window, legs, _ in cursor.fetchall():
                integrity_report["valid"] = False
                integrity_report["issues"].append(
                    f"Conflicting dimensions for {space}[e={euler_degree}, w={bead_window}, legs={legs}]")

            cursor.execute("SELECT COUNT(*) FROM axiom_runs WHERE failed > 0")
            failing = cursor.fetchone()[0]
            if failing:
                integrity_report["issues"].append(f"Axiom runs with failures: {failing}")

            stats_queries = {
                "dimension_results": "SELECT COUNT(*) FROM dimension_results",
                "axiom_runs": "SELECT COUNT(*) FROM axiom_runs",
                "audit_log": "SELECT COUNT(*) FROM audit_log",
            }
            for stat_name, query in stats_queries.items():
                cursor.execute(query)
                integrity_report["stats"][stat_name] = cursor.fetchone()[0]

        except Exception as e:
            integrity_report["valid"] = False
            integrity_report["issues"].append(f"Database error: {str(e)}")
        finally:
            conn.close()

        return integrity_report


if __name__ == "__main__":
    store = ResultsStore()
    store.initialize_database()

    report = store.validate_data_integrity()
    print(f"Results store integrity: {'✅ Valid' if report['valid'] else '❌ Issues found'}")
    for issue in report["issues"]:
        print(f"  ⚠️ {issue}")

    print("\nStore Statistics:")
    for stat, value in report["stats"].items():
        print(f"  {stat}: {value}")
