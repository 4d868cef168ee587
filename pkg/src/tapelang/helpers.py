__all__ = ("ALPHABET", "LanguageConfig", "MOVES", "TELEPORTS", "CONSTANTS")

# ===== alphabet =====
MOVES = "><"
ARITHMETIC = "+-"
BRACKETS = "[]"
TELEPORTS = "abcde"
CONSTANTS = "01234"
YIELD = "!"

ALPHABET = MOVES + ARITHMETIC + BRACKETS + TELEPORTS + CONSTANTS + YIELD

CELL_MODULUS = 256


# ===== config =====
class LanguageConfig:
    """A configuration object to pass into the tape interpreter."""

    def __init__(self, obs_cell_count=0, tape_len=100, pass_op_budget=5000):
        """
        Configuration object for the tape interpreter.

        :param int obs_cell_count: How many leading cells receive the observation at the start of every pass.
                                   The action is read from the cell right after them.
        :param int tape_len: Number of byte cells on the (wrapping) tape.
        :param int pass_op_budget: The maximum number of operations a single pass may execute before it is
                                   aborted with :class:`~tapelang.exceptions.BudgetExhausted`.
        """
        if tape_len < 1:
            raise ValueError("tape_len must be positive")
        if pass_op_budget < 1:
            raise ValueError("pass_op_budget must be positive")
        if obs_cell_count < 0 or obs_cell_count + 1 > tape_len:
            raise ValueError(f"obs_cell_count {obs_cell_count} does not fit on a tape of {tape_len} cells")

        self.obs_cell_count = obs_cell_count
        self.tape_len = tape_len
        self.pass_op_budget = pass_op_budget

    @property
    def action_cell(self) -> int:
        return self.obs_cell_count

    def __repr__(self):
        return (
            f"LanguageConfig(obs_cell_count={self.obs_cell_count}, tape_len={self.tape_len}, "
            f"pass_op_budget={self.pass_op_budget})"
        )
