"""
Bead Calculus Engine - Axiom Suite Service
Seeded property suites for linking numbers, antisymmetry, bead rings, the hair map
and clasper contraction; each suite returns a per-axiom pass/fail table
"""

import random
from typing import Callable, Dict, List, Optional

import pandas as pd

from beadcalc import config
from beadcalc.algebra import Space, normalize, structures
from beadcalc.beadrings import (RingMonomial, edge_ring, edge_to_flag, edge_to_h1, flag_ring, flag_to_edge, flag_to_h1,
                                h1_ring, h1_to_edge, h1_to_flag, normal_form, quotient_rank)
from beadcalc.contraction import (arm_matrix, break_graph, complete_contraction, contraction_sign_audit,
                                  pairing_from_arms, random_scheme)
from beadcalc.eqlink import (connected_sum_split, eq_linking, hopf_link, linking_number, random_diagram,
                             rebase, slide_rebase, split_specs, unlink)
from beadcalc.errors import BeadcalcError
from beadcalc.graphs import euler_degree, flip_vertex, loop_degree, tadpole, tetrahedron, theta, vortex
from beadcalc.hair import augment_beads, edge_weights, hair_images_agree, hair_map, leg_part
from beadcalc.laurent import LaurentMatrix, LaurentPoly, block_negative_inverse
from beadcalc.runlog import RunLog
from database import ResultsStore

AXIOM_COLUMNS = ["suite", "axiom", "checked", "passed", "failed", "first_failure"]
SUITES = ("eqlink", "linking", "antisymmetry", "rings", "hair", "contraction")


class _Tally:
    """Per-axiom counters for one suite"""

    def __init__(self, suite: str):
        self.suite = suite
        self.rows: Dict[str, Dict] = {}

    def check(self, axiom: str, condition: Callable[[], bool], context: str = ""):
        row = self.rows.setdefault(axiom, {"checked": 0, "passed": 0, "failed": 0, "first_failure": ""})
        row["checked"] += 1
        try:
            ok = condition()
            reason = context
        except BeadcalcError as e:
            ok = False
            reason = f"{context}: {e}" if context else str(e)
        if ok:
            row["passed"] += 1
        else:
            row["failed"] += 1
            if not row["first_failure"]:
                row["first_failure"] = reason or "failed"

    def frame(self) -> pd.DataFrame:
        records = [{"suite": self.suite, "axiom": axiom, **row} for axiom, row in self.rows.items()]
        return pd.DataFrame(records, columns=AXIOM_COLUMNS)


def _shifted_equal(a: LaurentPoly, b: LaurentPoly) -> bool:
    """b is a * t^k for some k"""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.shift(b.min_degree() - a.min_degree()) == b


class AxiomSuiteService:
    """Runs the property suites and optionally records the results"""

    def __init__(self, store: Optional[ResultsStore] = None, log: Optional[RunLog] = None):
        self.store = store
        self.log = log or RunLog()

    def _finish(self, tally: _Tally, seed: int, count: int) -> pd.DataFrame:
        df = tally.frame()
        failed = int(df["failed"].sum()) if len(df) else 0
        status = "SUCCESS" if failed == 0 else "ERROR"
        self.log.log_step(f"{tally.suite} suite", status, f"{int(df['checked'].sum()) if len(df) else 0} checks, "
                                                          f"{failed} failed")
        if self.store is not None:
            self.store.record_axiom_report(df, seed=seed, count=count)
        return df

    def run_eqlink(self, seed: int = config.DEFAULT_SEED, count: int = config.DEFAULT_AXIOM_COUNT,
                   max_crossings: int = config.MAX_DIAGRAM_CROSSINGS) -> pd.DataFrame:
        """Symmetry, specialization, over/under independence, sliding, cutting, basepoint and initial condition"""
        rng = random.Random(seed)
        tally = _Tally("eqlink")
        for case in range(count):
            d = random_diagram(rng, max_crossings, flat=(case % 4 == 3))
            context = f"diagram {case}"
            value = eq_linking(d, "A", "B")
            tally.check("symmetry", lambda: eq_linking(d, "B", "A") == value.involute(), context)
            tally.check("specialization", lambda: value.augment() == linking_number(d, "A", "B"), context)
            tally.check("over_under", lambda: eq_linking(d, "A", "B", via="under") == value, context)
            for l in range(-2, 3):
                tally.check("sliding", lambda: eq_linking(slide_rebase(d, "A", l), "A", "B") == value.shift(l),
                            f"{context}, l={l}")
                tally.check("sliding", lambda: eq_linking(slide_rebase(d, "B", l), "A", "B") == value.shift(-l),
                            f"{context}, l={l}")
            for spec in split_specs(d, "A")[:3]:
                def additive():
                    first, second = connected_sum_split(d, "A", spec)
                    return eq_linking(first, "A", "B") + eq_linking(second, "A", "B") == value
                tally.check("cutting", additive, f"{context}, split [{spec.start}, {spec.end})")
            arc = rng.randrange(len(d.components["A"]))
            tally.check("basepoint", lambda: _shifted_equal(value, eq_linking(rebase(d, "A", arc), "A", "B")), context)
            if all(step == 0 for component in d.components.values() for step in component.ray_steps):
                tally.check("initial_condition",
                            lambda: value == LaurentPoly.constant(linking_number(d, "A", "B")), context)
        tally.check("hopf", lambda: eq_linking(hopf_link(), "A", "B") == LaurentPoly.one(), "positive Hopf link")
        tally.check("unlink", lambda: eq_linking(unlink(), "A", "B").is_zero(), "unlink")
        return self._finish(tally, seed, count)

    def run_linking(self, seed: int = config.DEFAULT_SEED, count: int = config.DEFAULT_AXIOM_COUNT) -> pd.DataFrame:
        """Classical linking number: symmetry, cutting, Hopf link and unlink"""
        rng = random.Random(seed)
        tally = _Tally("linking")
        for case in range(count):
            d = random_diagram(rng)
            context = f"diagram {case}"
            lk = linking_number(d, "A", "B")
            tally.check("symmetry", lambda: linking_number(d, "B", "A") == lk, context)
            for spec in split_specs(d, "A")[:2]:
                def additive():
                    first, second = connected_sum_split(d, "A", spec)
                    return linking_number(first, "A", "B") + linking_number(second, "A", "B") == lk
                tally.check("cutting", additive, context)
        tally.check("hopf", lambda: linking_number(hopf_link(), "A", "B") == 1, "positive Hopf link")
        tally.check("hopf_negative", lambda: linking_number(hopf_link(-1), "A", "B") == -1, "negative Hopf link")
        tally.check("unlink", lambda: linking_number(unlink(), "A", "B") == 0, "unlink")
        return self._finish(tally, seed, count)

    def run_antisymmetry(self, seed: int = config.DEFAULT_SEED, count: int = 10) -> pd.DataFrame:
        """A single orientation flip negates normalized elements and contractions; tadpoles vanish"""
        rng = random.Random(seed)
        tally = _Tally("antisymmetry")
        samples = [(theta(), Space.PHI), (tetrahedron(), Space.PHI), (vortex(), Space.STAR)]
        for _ in range(count):
            exponents = [rng.randint(-2, 2) for _ in range(3)]
            samples.append((theta([LaurentPoly.monomial(k) for k in exponents]), Space.LAMBDA))
        for g, space in samples:
            element = normalize([(1, g)], space)
            for vertex in g.trivalent_vertices:
                tally.check("flip_negates", lambda: normalize([(1, flip_vertex(g, vertex.name))], space) == -element,
                            f"{g} at {vertex.name}")
        tally.check("tadpole_vanishes", lambda: normalize([(1, tadpole())], Space.STAR).is_zero(), "tadpole")
        for g, _ in samples:
            if g.is_legless():
                tally.check("contraction_flip", lambda: contraction_sign_audit(break_graph(g), trials=6,
                                                                               seed=seed)["valid"], str(g))
        return self._finish(tally, seed, count)

    def run_rings(self, seed: int = config.DEFAULT_SEED, count: int = 20,
                  euler_degrees=(2, 4)) -> pd.DataFrame:
        """Round trips between the flag, edge and H^1 presentations on normal forms; H^1 rank is the loop degree"""
        rng = random.Random(seed)
        tally = _Tally("rings")
        for euler_deg in euler_degrees:
            for g in structures(euler_deg):
                flags, edges, h1 = flag_ring(g), edge_ring(g), h1_ring(g)
                tally.check("h1_rank", lambda: len(h1.generators) == loop_degree(g), str(g))
                tally.check("edge_rank", lambda: quotient_rank(edges) == loop_degree(g), str(g))
                tally.check("flag_rank", lambda: quotient_rank(flags) == loop_degree(g), str(g))
                for _ in range(count):
                    m_flag = RingMonomial(tuple(rng.randint(-3, 3) for _ in flags.generators))
                    m_edge = RingMonomial(tuple(rng.randint(-3, 3) for _ in edges.generators))
                    m_h1 = RingMonomial(tuple(rng.randint(-3, 3) for _ in h1.generators))
                    tally.check("flag_edge_flag", lambda: normal_form(edge_to_flag(flag_to_edge(m_flag, g), g), flags)
                                == normal_form(m_flag, flags), str(g))
                    tally.check("edge_h1_edge", lambda: normal_form(h1_to_edge(edge_to_h1(m_edge, g), g), edges)
                                == normal_form(m_edge, edges), str(g))
                    tally.check("h1_edge_h1", lambda: edge_to_h1(h1_to_edge(m_h1, g), g) == m_h1, str(g))
                    tally.check("flag_h1_flag", lambda: normal_form(h1_to_flag(flag_to_h1(m_flag, g), g), flags)
                                == normal_form(m_flag, flags), str(g))
        return self._finish(tally, seed, count)

    def run_hair(self, seed: int = config.DEFAULT_SEED, count: int = 5, max_hairs: int = 4) -> pd.DataFrame:
        """
        Zero-hair projection, Euler degree, linearity and bead multiplicativity of the hair map;
        the quotient comparison of holonomy-equivalent beadings stops at two hairs
        """
        rng = random.Random(seed)
        tally = _Tally("hair")
        for case in range(count):
            first = normalize([(1, theta([LaurentPoly.monomial(rng.randint(-2, 2)) for _ in range(3)]))], Space.LAMBDA)
            second = normalize([(1, theta([LaurentPoly.monomial(rng.randint(-2, 2)) for _ in range(3)]))],
                               Space.LAMBDA)
            if first.is_zero() or second.is_zero():
                continue
            truncation = 1 + max_hairs
            context = f"case {case}"
            image = hair_map(first, truncation)
            tally.check("zero_hair", lambda: leg_part(image, 0) == augment_beads(first, image.space), context)
            tally.check("euler_degree", lambda: all(euler_degree(g) == 2 for g, _ in image.items()), context)
            tally.check("linearity", lambda: hair_map(first + second.scale(3), truncation)
                        == image + hair_map(second, truncation).scale(3), context)
            a, b = rng.randint(-3, 3), rng.randint(-3, 3)
            tally.check("bead_multiplicativity",
                        lambda: edge_weights([a + b], 2 * max_hairs) == edge_weights([a, b], 2 * max_hairs),
                        f"{context}, t^{a} * t^{b}")
            joined = theta([LaurentPoly.monomial(a + b), 1, 1])
            split = theta([LaurentPoly.monomial(a), LaurentPoly.monomial(-b), LaurentPoly.monomial(-b)])
            tally.check("holonomy_split", lambda: hair_images_agree(joined, split, min(truncation, 3), 2),
                        f"{context}, t^{a} * t^{b}")
        return self._finish(tally, seed, count)

    def run_contraction(self, seed: int = config.DEFAULT_SEED, count: int = 5,
                        euler_degrees=(2, 4)) -> pd.DataFrame:
        """Symbol identity on broken graphs, the arm matrix inverse and vortex flips"""
        rng = random.Random(seed)
        tally = _Tally("contraction")
        for euler_deg in euler_degrees:
            for g in structures(euler_deg):
                samples = [g] + [g.with_beads({i: LaurentPoly.monomial(rng.randint(-2, 2))
                                               for i in range(len(g.edges))}) for _ in range(count)]
                for sample in samples:
                    def identity():
                        result = complete_contraction(break_graph(sample)).element
                        return result == normalize([(1, sample)], result.space)
                    tally.check("symbol_identity", identity, str(sample))
        for case in range(count):
            scheme = random_scheme(rng, vortex_count=2)
            labels = scheme.leg_labels

            def arms():
                matrix = arm_matrix(scheme)
                inverse = block_negative_inverse(matrix)
                minus_identity = -LaurentMatrix.identity(matrix.rows)
                table = pairing_from_arms(matrix, labels)
                expected = {(x, y): scheme.entry(x, y) for x in labels for y in labels if scheme.entry(x, y) != 0}
                return inverse * matrix == minus_identity and table == expected
            tally.check("arm_inverse", arms, f"scheme {case}")
            tally.check("vortex_flip", lambda: contraction_sign_audit(scheme, trials=4, seed=seed)["valid"],
                        f"scheme {case}")
        return self._finish(tally, seed, count)

    def run_suite(self, suite: str, seed: int = config.DEFAULT_SEED,
                  count: Optional[int] = None) -> pd.DataFrame:
        runners = {
            "eqlink": self.run_eqlink,
            "linking": self.run_linking,
            "antisymmetry": self.run_antisymmetry,
            "rings": self.run_rings,
            "hair": self.run_hair,
            "contraction": self.run_contraction,
        }
        if suite not in runners:
            raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        if count is None:
            return runners[suite](seed=seed)
        return runners[suite](seed=seed, count=count)

    def run_all(self, seed: int = config.DEFAULT_SEED, suites: Optional[List[str]] = None) -> pd.DataFrame:
        frames = [self.run_suite(suite, seed) for suite in (suites or SUITES)]
        return pd.concat(frames, ignore_index=True)

    @staticmethod
    def all_passed(df: pd.DataFrame) -> bool:
        return bool(len(df)) and int(df["failed"].sum()) == 0
