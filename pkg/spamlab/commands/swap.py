"""
swap: entanglement swapping fidelity with a purified Bell measurement
"""

from ..models import RunConfig, SwapRow
from ..netapps import swap_fidelity
from . import CommandResult


def run_swap(config: RunConfig) -> CommandResult:
    rows = [
        SwapRow(f=params.f, q=params.q, eps=params.eps, m=m, fidelity=swap_fidelity(params, m))
        for params in config.grid()
        for m in config.depth
    ]
    return CommandResult(SwapRow, rows)
