from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import numpy as np
import torch

from neurogen.codebase import Codebase
from neurogen.developer import Developer, Proposal
from neurogen.neural.policy import CellKind, ProgramPolicy, sample_program
from neurogen.neural.trainer import Baseline, TrainerConfig, UpdateStats, reinforce_pqt_update

log = logging.getLogger(__name__)


class NeuralDeveloper(Developer):
    """Writes programs from scratch with a recurrent policy and trains it on its own rewards and the best programs."""

    kind = "neural"

    def __init__(
        self,
        developer_id: str,
        hidden_sizes: Sequence[int],
        config: TrainerConfig | None = None,
        *,
        cell: CellKind = "lstm",
        seed: int = 0,
        reward_span: float = 100.0,
    ):
        super().__init__(developer_id)
        self.config = config or TrainerConfig()
        self.policy = ProgramPolicy(hidden_sizes, cell=cell)
        self.policy.reset_parameters(torch.Generator().manual_seed(seed))
        self.optimizer = torch.optim.Adam(self.policy.parameters(), lr=self.config.learning_rate)
        self.baseline = Baseline()
        self.reward_scale = self.config.reward_scale or 0.01 * reward_span
        self.last_update: UpdateStats | None = None

    def propose(self, codebase: Codebase, rng: np.random.Generator) -> Proposal | None:
        program, _ = sample_program(self.policy, rng, self.config.max_program_length)
        return Proposal(program)

    def update(self, proposal: Proposal, reward: float, codebase: Codebase) -> None:
        queue = [program for program, _ in codebase.top_k(self.config.pqt_k, by="quality")]
        shift = max(codebase.max_reward, reward)
        self.last_update = reinforce_pqt_update(
            self.policy,
            self.optimizer,
            proposal.program,
            reward,
            queue,
            self.config,
            self.baseline,
            shift=shift,
            reward_scale=self.reward_scale,
        )

    def save(self, path: Path) -> None:
        torch.save(
            {
                "hidden_sizes": self.policy.hidden_sizes,
                "cell": self.policy.cell,
                "policy": self.policy.state_dict(),
                "optimizer": self.optimizer.state_dict(),
                "baseline": self.baseline.value,
            },
            path,
        )
        log.info("Saved %s checkpoint to %s", self.id, path)

    def load(self, path: Path) -> None:
        checkpoint = torch.load(path, weights_only=True)
        if tuple(checkpoint["hidden_sizes"]) != self.policy.hidden_sizes or checkpoint["cell"] != self.policy.cell:
            raise ValueError(
                f"checkpoint {path} holds a {checkpoint['cell']}{tuple(checkpoint['hidden_sizes'])} policy, "
                f"expected {self.policy.cell}{self.policy.hidden_sizes}"
            )
        self.policy.load_state_dict(checkpoint["policy"])
        self.optimizer.load_state_dict(checkpoint["optimizer"])
        self.baseline.value = checkpoint["baseline"]
