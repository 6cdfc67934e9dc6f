"""
Bead Calculus Engine - Dimension Service
Graded dimensions of the diagram quotients, cached in the results store
"""

from typing import Iterable, Optional, Tuple

import pandas as pd

from beadcalc import config
from beadcalc.algebra import DimensionReport, Space, graded_dimension_report
from beadcalc.errors import BeadcalcError
from beadcalc.runlog import RunLog
from database import ResultsStore

DIMENSION_COLUMNS = ["space", "euler_degree", "bead_window", "legs", "generators", "relations", "rank", "dimension"]


class DimensionService:
    """Computes graded dimensions, reusing stored results when a store is attached"""

    def __init__(self, store: Optional[ResultsStore] = None, log: Optional[RunLog] = None):
        self.store = store
        self.log = log or RunLog()

    def dimension(self, space: Space, euler_degree: int, bead_window: int = 0, legs: int = 0,
                  use_store: bool = True) -> DimensionReport:
        space = Space(space)
        if space != Space.LAMBDA:
            bead_window = 0
        if self.store is not None and use_store:
            cached = self.store.lookup_dimension(space.value, euler_degree, bead_window, legs)
            if cached is not None:
                self.log.log_step(f"{space.value}[e={euler_degree}]", "INFO", "reused stored result")
                return cached
        report = graded_dimension_report(euler_degree, bead_window, space, legs, log=self.log)
        if self.store is not None:
            self.store.record_dimension(report)
        return report

    def dimension_table(self, spaces: Iterable[Space] = (Space.PHI,), euler_degrees: Iterable[int] = (0, 1, 2, 3, 4),
                        bead_window: int = 0, legs: Iterable[int] = (0,)) -> pd.DataFrame:
        """One row per graded piece; pieces that raise are logged and skipped"""
        rows = []
        for space in spaces:
            for euler_degree in euler_degrees:
                for leg_count in legs:
                    try:
                        report = self.dimension(space, euler_degree, bead_window, leg_count)
                    except BeadcalcError as e:
                        self.log.log_step(f"{Space(space).value}[e={euler_degree}]", "ERROR", str(e))
                        continue
                    rows.append(report.to_dict())
        return pd.DataFrame(rows, columns=DIMENSION_COLUMNS)

    def well_definedness(self, euler_degree: int, space: Space = Space.PHI, bead_window: int = 0,
                         shuffles: int = 5, seed: int = config.DEFAULT_SEED) -> pd.DataFrame:
        """Dimension under shuffled generator orders and randomly chosen spanning forests"""
        rows = []
        for trial in range(shuffles):
            for label, shuffle_seed, tree_seed in (("shuffle", seed + trial, None),
                                                   ("forest", None, seed + trial)):
                report = graded_dimension_report(euler_degree, bead_window, space, shuffle_seed=shuffle_seed,
                                                 tree_seed=tree_seed, log=self.log)
                rows.append({"trial": trial, "variant": label, "dimension": report.dimension, "rank": report.rank})
        return pd.DataFrame(rows, columns=["trial", "variant", "dimension", "rank"])

    def check_well_defined(self, euler_degree: int, space: Space = Space.PHI,
                           shuffles: int = 5) -> Tuple[bool, str]:
        df = self.well_definedness(euler_degree, space, shuffles=shuffles)
        dimensions = sorted(df["dimension"].unique())
        if len(dimensions) == 1:
            return True, f"dimension {dimensions[0]} across {len(df)} variants"
        return False, f"dimension varies across variants: {dimensions}"
