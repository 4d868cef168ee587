"""
The seven genetic operators.

Each operator is a distribution over children given parents ``c1`` and ``c2``; mutations ignore ``c2``.
Cut points use 1-based token positions: a cut at ``k`` keeps tokens ``1..k-1`` of the head parent.
"""

from __future__ import annotations

from enum import StrEnum

import numpy as np

from tapelang import ALPHABET, Program, prune

from neurogen.errors import EmptyParent, ParentTooShort

_ALPHABET_ARRAY = np.array(list(ALPHABET))


class OperatorId(StrEnum):
    SHUFFLE = "shuffle"
    UNIFORM_MUTATION = "uniform_mutation"
    ONE_POINT_CX = "one_point_cx"
    TWO_POINT_CX = "two_point_cx"
    UNIFORM_CX = "uniform_cx"
    MESSY_CX = "messy_cx"
    PRUNE = "prune"


OPERATORS: tuple[OperatorId, ...] = tuple(OperatorId)


def _require_nonempty(c1: Program) -> None:
    if len(c1) < 1:
        raise EmptyParent("operator needs a non-empty first parent")


def _common_length(c1: Program, c2: Program, minimum: int) -> int:
    common = min(len(c1), len(c2))
    if common < minimum:
        raise ParentTooShort(f"both parents need at least {minimum} tokens, got {len(c1)} and {len(c2)}")
    return common


# ===== mutation =====
def shuffle_mutation(c1: Program, rng: np.random.Generator) -> Program:
    _require_nonempty(c1)
    return Program("".join(rng.permutation(list(c1.text))))


def uniform_mutation(c1: Program, p_ind: float, rng: np.random.Generator) -> Program:
    _require_nonempty(c1)
    replace = rng.random(len(c1)) < p_ind
    drawn = _ALPHABET_ARRAY[rng.integers(len(ALPHABET), size=len(c1))]
    tokens = np.where(replace, drawn, np.array(list(c1.text)))
    return Program("".join(tokens))


# ===== crossover =====
def one_point_at(c1: Program, c2: Program, k: int) -> Program:
    return c1[: k - 1] + c2[k - 1 :]


def one_point_crossover(c1: Program, c2: Program, rng: np.random.Generator) -> Program:
    common = _common_length(c1, c2, 2)
    k = int(rng.integers(2, common + 1))
    return one_point_at(c1, c2, k)


def two_point_at(c1: Program, c2: Program, k1: int, k2: int) -> Program:
    return c1[: k1 - 1] + c2[k1 - 1 : k2 - 1] + c1[k2 - 1 :]


def two_point_crossover(c1: Program, c2: Program, rng: np.random.Generator) -> Program:
    common = _common_length(c1, c2, 2)
    if common < 3:
        # no room for 2 <= k1 < k2 <= common
        return one_point_crossover(c1, c2, rng)
    k1, k2 = sorted(int(k) for k in rng.choice(np.arange(2, common + 1), size=2, replace=False))
    return two_point_at(c1, c2, k1, k2)


def uniform_crossover_with(c1: Program, c2: Program, take_second: np.ndarray) -> Program:
    tokens = [
        c2.text[idx] if take and idx < len(c2) else token
        for idx, (token, take) in enumerate(zip(c1.text, take_second))
    ]
    return Program("".join(tokens))


def uniform_crossover(c1: Program, c2: Program, p_ind: float, rng: np.random.Generator) -> Program:
    _require_nonempty(c1)
    return uniform_crossover_with(c1, c2, rng.random(len(c1)) < p_ind)


def messy_at(c1: Program, c2: Program, k1: int, k2: int) -> Program:
    return c1[: k1 - 1] + c2[k2 - 1 :]


def messy_crossover(c1: Program, c2: Program, rng: np.random.Generator) -> Program:
    common = _common_length(c1, c2, 2)
    k1, k2 = (int(k) for k in rng.integers(2, common + 1, size=2))
    return messy_at(c1, c2, k1, k2)


def apply_operator(
    operator: OperatorId, c1: Program, c2: Program, p_ind: float, rng: np.random.Generator
) -> Program:
    match operator:
        case OperatorId.SHUFFLE:
            return shuffle_mutation(c1, rng)
        case OperatorId.UNIFORM_MUTATION:
            return uniform_mutation(c1, p_ind, rng)
        case OperatorId.ONE_POINT_CX:
            return one_point_crossover(c1, c2, rng)
        case OperatorId.TWO_POINT_CX:
            return two_point_crossover(c1, c2, rng)
        case OperatorId.UNIFORM_CX:
            return uniform_crossover(c1, c2, p_ind, rng)
        case OperatorId.MESSY_CX:
            return messy_crossover(c1, c2, rng)
        case OperatorId.PRUNE:
            return prune(c1)
    raise ValueError(f"unknown operator {operator!r}")
