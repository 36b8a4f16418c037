"""
One module per CLI command. Each handler takes a RunConfig and returns a CommandResult.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Type

from pydantic import BaseModel


@dataclass
class CommandResult:
    schema: Type[BaseModel]
    rows: List[BaseModel] = field(default_factory=list)
    flagged: Optional[str] = None
    # set when the command wrote its own artifacts
    written: bool = False
