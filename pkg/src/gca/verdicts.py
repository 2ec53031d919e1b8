"""Small result types shared by the structural and membership checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .laurent import LaurentPoly


@dataclass
class ValidationReport:
    """Outcome of seed validation; empty violations means the seed is valid."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


@dataclass
class MembershipVerdict:
    """A boolean verdict together with a checkable certificate.

    Which certificate fields are filled depends on the check:

    * upper-bound membership stores ``quotients`` keyed by
      (direction, exponent), with c_{k,j} = quotient * P_k^{|j|} exactly;
    * lower-bound reduction stores ``coefficients`` keyed by standard
      monomial index, each a coefficient in the frozen Laurent subring;
    * negative verdicts carry the first failing direction in ``failing``
      and, where useful, a ``witness`` polynomial (for example a non-unit
      gcd).
    """

    member: bool
    quotients: dict[tuple[int, int], LaurentPoly] | None = None
    coefficients: dict[tuple[int, ...], LaurentPoly] | None = None
    failing: Any = None
    witness: LaurentPoly | None = None
    bound: int | None = None
    exhaustive: bool | None = None
    detail: str = ""
