"""The two-ring block group: a group law whose root subgroups carry
non-isomorphic rings when the two rings differ."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .. import kernels
from ..errors import TooLarge
from ..report import VerificationReport
from ..ring import iso_search, parse_ring_spec
from .families import GroupSpec, make_group
from .structure import axiom_report, induced_ring

DEFAULT_R1 = "ram(p=3,e=2,c=1,h=3)"
DEFAULT_R2 = "ram(p=3,e=2,c=2,h=3)"


@dataclass
class CounterexampleResult:
    group: object
    report: VerificationReport
    rings: list = field(default_factory=list)     # induced rings, one per diagonal block
    isomorphic: bool | None = None
    timings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        G = self.group
        return {"group": G.describe(),
                "report": self.report.to_json(),
                "induced_rings": [r.to_json() for r in self.rings],
                "induced_rings_isomorphic": self.isomorphic,
                "passed": self.report.passed}


def _pool(G, rng, size):
    return kernels.as_array([G.random_element(rng) for _ in range(size)])


def _closure(G, rep, samples, rng):
    if G.block == 1:
        els = list(G.elements())
        A = kernels.as_array(els)
        total = len(els) ** 2
        note = f"exhaustive over {len(els)} elements"
    else:
        side = max(2, math.isqrt(samples - 1) + 1)
        A = _pool(G, rng, side)
        total = side * side
        note = f"all products of {side} random elements"
    bad = kernels.closure_count(G, A, A)
    rep.add("counterexample.closure", "the block product is a group law", total,
            [f"{bad} products leave the set"] if bad else [],
            note=f"{note} ({kernels.BACKEND} kernel)")


def _associativity(G, rep, samples, rng):
    pool = _pool(G, rng, 64)
    pick = lambda: pool[[rng.randrange(len(pool)) for _ in range(samples)]]
    X, Y, Z = pick(), pick(), pick()
    left = kernels.matmul_pairs(G, kernels.matmul_pairs(G, X, Y), Z)
    right = kernels.matmul_pairs(G, X, kernels.matmul_pairs(G, Y, Z))
    bad = int((left != right).any(axis=1).sum())
    rep.add("counterexample.associativity", "associativity", samples,
            [f"{bad} triples with (ab)c != a(bc)"] if bad else [],
            note="random triples from 64 random elements")


def counterexample_group(n: int, r1: str = DEFAULT_R1, r2: str = DEFAULT_R2, seed: int = 0,
                         samples: int = 10_000, axioms: bool = True) -> CounterexampleResult:
    """Build the block group for block size n and analyse it.

    Block size 1 is checked exhaustively for closure; block size 2 by
    sampling, plus the rings induced on one root inside each diagonal block
    and an isomorphism search between them.
    """
    if n not in (1, 2):
        raise TooLarge("only block sizes 1 and 2 are within reach")
    rng = random.Random(seed)
    spec = GroupSpec("HeteroBlock", n, parse_ring_spec(r1), None, parse_ring_spec(r2))
    G = make_group(spec)
    rep = VerificationReport()
    timings = {}
    t0 = time.perf_counter()
    _closure(G, rep, samples, rng)
    timings["closure"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    _associativity(G, rep, samples, rng)
    timings["associativity"] = time.perf_counter() - t0
    if axioms:
        t0 = time.perf_counter()
        rep.extend(axiom_report(G, seed=seed))
        timings["axioms"] = time.perf_counter() - t0
    result = CounterexampleResult(G, rep, timings=timings)
    if n >= 2:
        t0 = time.perf_counter()
        a, b = G.block_roots()
        ra, rb = induced_ring(G, a), induced_ring(G, b)
        result.rings = [ra, rb]
        result.isomorphic = iso_search(ra.table, rb.table) is not None
        same_input = iso_search(G.R1, G.R2) is not None
        failures = []
        for r, R in ((ra, G.R1), (rb, G.R2)):
            if not r.ok or iso_search(R, r.table) is None:
                failures.append(f"ring of U_{r.alpha} is not {R.spec.text()}")
        rep.add("counterexample.block_rings", "R_a ~ R_1 and R_b ~ R_2", 2, failures)
        rep.add("counterexample.obstruction", "R_a and R_b isomorphic iff R_1 ~ R_2", 1,
                [] if result.isomorphic == same_input else ["isomorphism status does not match the inputs"],
                note="induced rings isomorphic" if result.isomorphic else "induced rings not isomorphic")
        timings["rings"] = time.perf_counter() - t0
    return result
