from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from tapelang import Program, prune

from neurogen.codebase import Codebase
from neurogen.developer import Developer, Proposal
from neurogen.errors import EmptyCodebase, OperatorError
from neurogen.genetic.bandit import BanditState, bandit_update
from neurogen.genetic.operators import OPERATORS, OperatorId, apply_operator

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneticConfig:
    p_ind: float = 0.2
    epsilon: float = 0.2

    def __post_init__(self):
        if not 0.0 <= self.p_ind <= 1.0:
            raise ValueError(f"p_ind must lie in [0, 1], got {self.p_ind}")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")


def propose_with_arm(
    codebase: Codebase, bandit: BanditState, cfg: GeneticConfig, rng: np.random.Generator
) -> tuple[Program, OperatorId, int]:
    """
    Draw two parents by quality, an operator from the bandit, and apply it.

    Returns the child, the operator that produced it and the bandit arm that was drawn. When the parents are
    too short for the drawn operator the child is the pruned first parent and the drawn arm is still returned.
    """
    if not codebase:
        raise EmptyCodebase("genetic proposals need at least one program in the codebase")
    c1 = codebase.sample_quality_weighted(rng)
    c2 = codebase.sample_quality_weighted(rng)
    arm = bandit.select(rng)
    operator = OPERATORS[arm]
    try:
        return apply_operator(operator, c1, c2, cfg.p_ind, rng), operator, arm
    except OperatorError as exc:
        log.debug("%s not applicable (%s); pruning instead", operator, exc)
        return prune(c1), OperatorId.PRUNE, arm


def propose(
    codebase: Codebase, bandit: BanditState, cfg: GeneticConfig, rng: np.random.Generator
) -> tuple[Program, OperatorId]:
    program, operator, _ = propose_with_arm(codebase, bandit, cfg, rng)
    return program, operator


class GeneticDeveloper(Developer):
    kind = "genetic"

    def __init__(self, developer_id: str, config: GeneticConfig | None = None):
        super().__init__(developer_id)
        self.config = config or GeneticConfig()
        self.bandit = BanditState(epsilon=self.config.epsilon, arms=len(OPERATORS))

    def propose(self, codebase: Codebase, rng: np.random.Generator) -> Proposal | None:
        if not codebase:
            return None
        program, operator, arm = propose_with_arm(codebase, self.bandit, self.config, rng)
        return Proposal(program, operator.value, arm)

    def update(self, proposal: Proposal, reward: float, codebase: Codebase) -> None:
        if proposal.arm is not None:
            arm = proposal.arm
        elif proposal.operator is not None:
            arm = OPERATORS.index(OperatorId(proposal.operator))
        else:
            return
        bandit_update(self.bandit, arm, reward)
