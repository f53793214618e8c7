"""Parameter records of the three families."""
from __future__ import annotations

from dataclasses import dataclass

from ..theta import TorusModulus
from ..weierstrass import dks_b


@dataclass(frozen=True)
class DEParams:
    a: float
    b: float
    alpha: float = 0.0
    rho: float = 1.0

    def __post_init__(self):
        if not 1.0 < self.a < self.b:
            raise ValueError(f"need 1 < a < b, got a={self.a}, b={self.b}")
        if self.alpha < 0 or not self.rho > 0:
            raise ValueError("need alpha >= 0 and rho > 0")

    @property
    def vector(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class DCCWParams:
    a: float
    b: float
    c: float
    alpha: float = 0.0

    def __post_init__(self):
        if not 1.0 < self.a < self.b < self.c:
            raise ValueError(f"need 1 < a < b < c, got {self.a}, {self.b}, {self.c}")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")

    @classmethod
    def constrained(cls, a: float, b: float, alpha: float = 0.0) -> "DCCWParams":
        """c = b^2 / a, the equal-growth-rate normalization."""
        return cls(a, b, b * b / a, alpha)

    @property
    def vector(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class DKSParams:
    a: float
    c: float
    tau: complex = 1j
    alpha: float = 0.0

    def __post_init__(self):
        mod = self.tau if isinstance(self.tau, TorusModulus) else TorusModulus(self.tau)
        object.__setattr__(self, "tau", mod.tau)
        if not 0.0 < self.a < 0.5:
            raise ValueError(f"a must lie in (0, 1/2), got {self.a}")
        if not 0.0 < self.c < mod.t / 2:
            raise ValueError(f"c must lie in (0, Im tau / 2), got {self.c}")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")

    @property
    def b(self) -> float:
        return dks_b(self.a, self.alpha)

    @property
    def vector(self):
        return (self.a, self.c)
