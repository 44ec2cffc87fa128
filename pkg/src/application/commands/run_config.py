"""RunConfig - Command object for one command-line run"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

COMMANDS = ('cusps', 'scattering', 'eval', 'kernel', 'que', 'portion', 'suite', 't-zero-sweep')
FORMATS = ('json', 'csv')
NEEDS_LEVEL = ('cusps', 'scattering', 'eval', 'kernel', 'que', 't-zero-sweep')


@dataclass(frozen=True)
class RunConfig:
    """
    Command for running one experiment.

    Attributes:
        command: One of COMMANDS
        level: The level N
        sublevel: The trace level M (the portion level for 'portion')
        character: Character selector, "trivial", "index:k" or "conductor:q"
        ts: Spectral parameters T
        tolerance: Target relative error of quadratures
        threads: Worker threads for quadrature cells
        resolution: Gauss nodes per axis on the coarsest quadrature grid
        output: Report path, stdout when None
        format: 'json' or 'csv'
        coset: Coset index j for 'que', None for all cosets
        series: Series selector for 'eval'
        z: Evaluation point for 'eval'
        s: Spectral point for 'eval'
        level_range: Inclusive level range for 'suite'
        include_slow: Whether 'suite' runs the quadrature-heavy checks
    """
    command: str
    level: Optional[int] = None
    sublevel: Optional[int] = None
    character: str = 'trivial'
    ts: Tuple[float, ...] = (1.0,)
    tolerance: float = 1e-6
    threads: int = 1
    resolution: int = 48
    output: Optional[str] = None
    format: str = 'json'
    coset: Optional[int] = None
    series: Optional[str] = None
    z: Optional[complex] = None
    s: Optional[complex] = None
    level_range: Tuple[int, int] = (1, 12)
    include_slow: bool = False

    def validate(self) -> None:
        """
        Validates the run against the command's requirements.

        Raises:
            ValueError: If any validation fails
        """
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValueError(f"Format must be one of {', '.join(FORMATS)}")
        if self.command in NEEDS_LEVEL and (self.level is None or self.level < 1):
            raise ValueError(f"Command {self.command!r} needs a positive level N")
        if self.command == 'portion' and (self.sublevel is None or self.sublevel < 1):
            raise ValueError("Command 'portion' needs a positive level M")
        if self.command != 'portion' and self.sublevel is not None:
            if self.sublevel < 1:
                raise ValueError("M must be positive")
            if self.level is not None and self.level % self.sublevel:
                raise ValueError(f"M={self.sublevel} must divide N={self.level}")
        if not self.ts:
            raise ValueError("At least one T is required")
        if self.command != 't-zero-sweep' and any(t == 0 for t in self.ts):
            raise ValueError("T must be nonzero")
        if self.tolerance <= 0:
            raise ValueError("Tolerance must be positive")
        if self.threads < 1:
            raise ValueError("Thread count must be at least 1")
        if self.resolution < 16:
            raise ValueError("Quadrature resolution must be at least 16")
        if self.coset is not None and self.coset < 0:
            raise ValueError("Coset index must be non-negative")
        if self.command == 'eval':
            if not self.series:
                raise ValueError("Command 'eval' needs a series selector")
            if self.z is None or self.z.imag <= 0:
                raise ValueError("Command 'eval' needs a point z with Im z > 0")
            if self.s is None and self.series != 'G':
                raise ValueError("Command 'eval' needs s")
        low, high = self.level_range
        if low < 1 or high < low:
            raise ValueError("Level range must satisfy 1 <= low <= high")

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the run to a dictionary, echoed in every report header.

        Returns:
            Dictionary with a fixed key order
        """
        return {
            'command': self.command,
            'N': self.level,
            'M': self.sublevel,
            'character': self.character,
            'T': list(self.ts),
            'tolerance': self.tolerance,
            'threads': self.threads,
            'resolution': self.resolution,
            'format': self.format,
            'coset': 'all' if self.coset is None else self.coset,
            'series': self.series,
            'z': None if self.z is None else [self.z.real, self.z.imag],
            's': None if self.s is None else [self.s.real, self.s.imag],
            'level_range': list(self.level_range),
            'include_slow': self.include_slow,
        }
