"""
Command handlers package initialization
"""

from commands import count, dt, kac, potential, series
from commands.common import CommandResult, load_quiver

HANDLERS = {
    "kac": kac.run,
    "dt": dt.run,
    "series": series.run,
    "potential": potential.run,
    "count": count.run,
}

__all__ = [
    "HANDLERS",
    "CommandResult",
    "load_quiver",
]
