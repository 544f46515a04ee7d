from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import FieldElem, FieldError, NumberField


@dataclass(frozen=True)
class BinaryForm:
    """F(X, Y) = sum_i a_i X^(n-i) Y^i with coefficients in O_K."""

    field: NumberField
    coeffs: tuple[FieldElem, ...]

    def __post_init__(self):
        if len(self.coeffs) < 3:
            raise FieldError("a binary form needs degree n >= 2")
        if self.coeffs[0].is_zero() and self.coeffs[-1].is_zero():
            raise FieldError("a_0 and a_n cannot both vanish")
        for c in self.coeffs:
            if c.field is not self.field:
                raise FieldError("coefficient outside the base field")
            if not c.has_integral_coords():
                raise FieldError(f"coefficient {c} is not in O_K")

    @classmethod
    def from_coeffs(cls, field: NumberField, coeffs: Sequence) -> "BinaryForm":
        return cls(field, tuple(field(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def a0(self) -> FieldElem:
        return self.coeffs[0]

    @property
    def an(self) -> FieldElem:
        return self.coeffs[-1]

    def __call__(self, x: FieldElem, y: FieldElem) -> FieldElem:
        n = self.degree
        x, y = self.field(x), self.field(y)
        # Horner in X with Y powers accumulated from the top
        acc = self.field.zero
        ypow = self.field.one
        ypows = [ypow]
        for _ in range(n):
            ypow = ypow * y
            ypows.append(ypow)
        for i, c in enumerate(self.coeffs):
            acc = acc * x + c * ypows[i]
        return acc

    def dehomogenized(self) -> list[FieldElem]:
        """F(X, 1) as coefficients lowest degree first."""
        return list(reversed(self.coeffs))

    def __str__(self) -> str:
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "*".join(m for m in (
                "" if n - i == 0 else ("X" if n - i == 1 else f"X^{n - i}"),
                "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")) if m)
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)
