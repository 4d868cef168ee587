"""Neural developer: recurrent token policy trained with REINFORCE and Priority Queue Training."""

from . import developer, policy, trainer

__all__ = ["developer", "policy", "trainer"]
