"""Autoregressive token policy: stacked recurrent layers followed by a linear map to symbol logits."""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np
import torch
import torch.nn.functional as F
from torch import nn

from tapelang import ALPHABET, Program

# output symbols: every token plus end-of-program
END_SYMBOL = len(ALPHABET)
SYMBOL_COUNT = len(ALPHABET) + 1
# inputs: the previous token, or a start marker at the first position
START_SYMBOL = len(ALPHABET)
INPUT_SIZE = len(ALPHABET) + 1

_TOKEN_INDEX = {token: idx for idx, token in enumerate(ALPHABET)}

CellKind = Literal["lstm", "gru"]


class ProgramPolicy(nn.Module):
    def __init__(self, hidden_sizes: Sequence[int] = (50, 50), cell: CellKind = "lstm"):
        super().__init__()
        if not hidden_sizes:
            raise ValueError("a policy needs at least one recurrent layer")
        if any(size < 1 for size in hidden_sizes):
            raise ValueError(f"hidden sizes must be positive, got {tuple(hidden_sizes)}")
        layer_cls = {"lstm": nn.LSTM, "gru": nn.GRU}[cell]
        self.hidden_sizes = tuple(int(size) for size in hidden_sizes)
        self.cell = cell

        layers = []
        width = INPUT_SIZE
        for size in self.hidden_sizes:
            layers.append(layer_cls(width, size, batch_first=True))
            width = size
        self.layers = nn.ModuleList(layers)
        self.head = nn.Linear(width, SYMBOL_COUNT)

    def reset_parameters(self, generator: torch.Generator) -> None:
        """Uniform(-1/sqrt(width), 1/sqrt(width)) per layer, drawn from ``generator``."""
        with torch.no_grad():
            for layer, size in zip(self.layers, self.hidden_sizes):
                bound = 1.0 / math.sqrt(size)
                for param in layer.parameters():
                    param.uniform_(-bound, bound, generator=generator)
            bound = 1.0 / math.sqrt(self.head.in_features)
            for param in self.head.parameters():
                param.uniform_(-bound, bound, generator=generator)

    def forward(self, inputs: torch.Tensor, state: list | None = None) -> tuple[torch.Tensor, list]:
        dtype = self.head.weight.dtype
        x = F.one_hot(inputs, INPUT_SIZE).to(dtype)
        states = state if state is not None else [None] * len(self.layers)
        new_states = []
        for layer, layer_state in zip(self.layers, states):
            x, layer_state = layer(x, layer_state)
            new_states.append(layer_state)
        return self.head(x), new_states


def token_indices(program: Program) -> list[int]:
    return [_TOKEN_INDEX[token] for token in program.text]


@torch.no_grad()
def sample_program(policy: ProgramPolicy, rng: np.random.Generator, max_len: int) -> tuple[Program, float]:
    """
    Samples tokens until the end symbol or ``max_len`` tokens, whichever comes first.

    The log-probability covers every sampled symbol, including a sampled end symbol; an end forced by the
    length cap contributes nothing.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    state = None
    previous = START_SYMBOL
    tokens: list[str] = []
    logprob = 0.0
    for _ in range(max_len):
        logits, state = policy(torch.tensor([[previous]]), state)
        log_probs = F.log_softmax(logits[0, -1].double(), dim=-1)
        cumulative = np.cumsum(log_probs.exp().numpy())
        symbol = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
        symbol = min(symbol, SYMBOL_COUNT - 1)
        logprob += float(log_probs[symbol])
        if symbol == END_SYMBOL:
            break
        tokens.append(ALPHABET[symbol])
        previous = symbol
    return Program("".join(tokens)), logprob


def sequence_logprobs(policy: ProgramPolicy, programs: Sequence[Program]) -> tuple[torch.Tensor, torch.Tensor]:
    """
    Teacher-forced log-likelihood of each program (its tokens followed by the end symbol), and the summed
    entropy of the symbol distributions along it. Both are differentiable.
    """
    lengths = [len(program) + 1 for program in programs]
    steps = max(lengths)
    inputs = torch.full((len(programs), steps), START_SYMBOL, dtype=torch.long)
    targets = torch.full((len(programs), steps), END_SYMBOL, dtype=torch.long)
    mask = torch.zeros((len(programs), steps), dtype=torch.bool)
    for row, program in enumerate(programs):
        indices = torch.tensor(token_indices(program), dtype=torch.long)
        size = len(indices)
        if size:
            inputs[row, 1 : size + 1] = indices
            targets[row, :size] = indices
        mask[row, : size + 1] = True

    logits, _ = policy(inputs)
    log_probs = F.log_softmax(logits, dim=-1)
    chosen = log_probs.gather(-1, targets.unsqueeze(-1)).squeeze(-1)
    entropy = -(log_probs.exp() * log_probs).sum(-1)
    zero = torch.zeros((), dtype=log_probs.dtype)
    return torch.where(mask, chosen, zero).sum(1), torch.where(mask, entropy, zero).sum(1)


def program_logprob(policy: ProgramPolicy, program: Program) -> torch.Tensor:
    logprobs, _ = sequence_logprobs(policy, [program])
    return logprobs[0]


def symbol_distribution(policy: ProgramPolicy, prefix: Program) -> torch.Tensor:
    """Probabilities of every symbol at the position right after ``prefix``."""
    with torch.no_grad():
        inputs = torch.tensor([[START_SYMBOL, *token_indices(prefix)]], dtype=torch.long)
        logits, _ = policy(inputs)
        return F.softmax(logits[0, -1].double(), dim=-1)
