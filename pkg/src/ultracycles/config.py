"""Resource limits, overridable for a block of code with :func:`use_limits`."""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    pair_cap: int = 200_000
    factor_degree: int = 12
    # internal strategies (Kronecker images, zero-dimensional eliminants) may
    # need more than the public univariate bound
    strategy_factor_degree: int = 64
    saturation_iterations: int = 50
    length_iterations: int = 64
    quantifier_depth: int = 3
    prime_bound: int = 600
    exception_cap: int = 3
    seed: int = 0

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if f.name != "seed" and value <= 0:
                raise ValueError(f"limit {f.name} must be positive, got {value}")

    def replace(self, **changes) -> "Limits":
        return dataclasses.replace(self, **changes)


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("limits", default=Limits())


def current_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def use_limits(limits: Limits | None = None, **changes):
    base = limits if limits is not None else _current.get()
    token = _current.set(base.replace(**changes) if changes else base)
    try:
        yield _current.get()
    finally:
        _current.reset(token)
