"""End-to-end construction with verification and seeded retries."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .assembler import AssemblyReport, Labeling, LabelPartition, assemble
from .decomposer import DecompositionPlan, decompose
from .errors import ConstructionError
from .verifier import Verdict, verify

__all__ = ["LabelResult", "label_graph", "attempt_rng"]

log = logging.getLogger(__name__)


@dataclass
class LabelResult:
    labeling: Labeling
    plan: DecompositionPlan
    partition: LabelPartition
    report: AssemblyReport
    verdict: Verdict
    attempts: int
    failures: list[str] = field(default_factory=list)


def attempt_rng(seed: int, attempt: int) -> np.random.Generator:
    """First attempt uses ``seed`` alone so single runs are easy to replay."""
    return np.random.default_rng(seed if attempt == 0 else [seed, attempt])


def label_graph(g, seed: int = 0, max_retries: int = 5) -> LabelResult:
    """Antimagic labeling of a bipartite graph with minimum degree >= 15.

    Contract violations (:class:`ContractError`) propagate at once. Internal
    construction failures, including a labeling the verifier rejects, are
    retried with fresh randomness up to ``max_retries`` times.
    """
    failures = []
    for attempt in range(max_retries + 1):
        try:
            plan = decompose(g, attempt_rng(seed, attempt))
            lab, plan, part, rep = assemble(plan)
            verdict = verify(g, lab.labels)
            if not verdict.antimagic:
                raise ConstructionError(f"verifier rejected the labeling: {verdict.collisions[:3]}")
        except ConstructionError as ex:
            log.info("attempt %d failed: %s", attempt, ex)
            failures.append(str(ex))
            continue
        return LabelResult(lab, plan, part, rep, verdict, attempt + 1, failures)
    raise ConstructionError(f"no labeling after {max_retries + 1} attempts; last error: {failures[-1]}")
