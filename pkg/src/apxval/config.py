"""Session configuration: every numeric knob in one place.

Values come from CLI flags with an optional key=value file override
(``--config path``); flags given explicitly on the command line win.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import PreconditionError


@dataclass(frozen=True)
class SessionConfig:
    p: int = 3
    precision: Fraction = Fraction(1)
    depth: int = 8
    window: int = 4
    tail_depth: int = 6

    def validated(self) -> "SessionConfig":
        if self.p < 2 or any(self.p % k == 0 for k in range(2, self.p)):
            raise PreconditionError(f"p must be prime, got {self.p}")
        if self.depth < 1 or self.window < 1 or self.tail_depth < 1:
            raise PreconditionError("depth knobs must be positive")
        return self


_FIELDS = {
    "p": int,
    "precision": Fraction,
    "depth": int,
    "window": int,
    "tail_depth": int,
}


def load_config_file(path: str, base: SessionConfig) -> SessionConfig:
    updates = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise PreconditionError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _FIELDS:
                raise PreconditionError(f"{path}:{lineno}: unknown key {key!r}")
            updates[key] = _FIELDS[key](value.strip())
    return replace(base, **updates).validated()
