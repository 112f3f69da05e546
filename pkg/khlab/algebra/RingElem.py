from typing import Any

from khlab.datatypes import Constants, Theory


class RingElem:
    """! Element m + nξ of ℤ_u = ℤ[ξ]/(ξ²-1), or of one of its specializations ℤ_e (ξ=1), ℤ_o (ξ=-1), 𝔽₂.

    Specialized elements keep n = 0 and fold the value into m (reduced mod 2 for `mod2`).
    Python integers are arbitrary precision, so no overflow handling is needed.
    """

    __slots__ = ("m", "n", "theory")

    def __init__(self, m: int, n: int = 0, theory: Theory = Constants.UNIFIED):
        self.theory = theory
        match theory.name:
            case "unified":
                self.m, self.n = int(m), int(n)
            case "even":
                self.m, self.n = int(m) + int(n), 0
            case "odd":
                self.m, self.n = int(m) - int(n), 0
            case "mod2":
                self.m, self.n = (int(m) + int(n)) % 2, 0
            case _:
                raise NotImplementedError(f"Unknown theory {theory}")

    @staticmethod
    def one(theory: Theory = Constants.UNIFIED) -> "RingElem":
        return RingElem(1, 0, theory)

    @staticmethod
    def zero(theory: Theory = Constants.UNIFIED) -> "RingElem":
        return RingElem(0, 0, theory)

    @staticmethod
    def xi_power(k: int, theory: Theory = Constants.UNIFIED) -> "RingElem":
        """! ξ^k; ξ² = 1 so only the parity of k matters"""
        return RingElem(0, 1, theory) if k % 2 else RingElem(1, 0, theory)

    def _check(self, other: "RingElem"):
        if self.theory != other.theory:
            raise ValueError(f"Cannot combine {self.theory} and {other.theory} ring elements")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return RingElem(self.m + other.m, self.n + other.n, self.theory)

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-other)

    def __neg__(self) -> "RingElem":
        return RingElem(-self.m, -self.n, self.theory)

    def __mul__(self, other: "RingElem | int") -> "RingElem":
        if isinstance(other, int):
            return RingElem(self.m * other, self.n * other, self.theory)
        self._check(other)
        # (m + nξ)(p + qξ) = (mp + nq) + (mq + np)ξ
        return RingElem(
            self.m * other.m + self.n * other.n,
            self.m * other.n + self.n * other.m,
            self.theory,
        )

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, RingElem) and (self.m, self.n, self.theory) == (other.m, other.n, other.theory)

    def __hash__(self):
        return hash((self.m, self.n, self.theory))

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0

    def specialize(self, theory: Theory) -> "RingElem":
        """! Image under ℤ_u -> ℤ_e, ℤ_o or 𝔽₂; the identity for the unified theory"""
        if self.theory != Constants.UNIFIED and theory != Constants.MOD2:
            if theory != self.theory:
                raise ValueError(f"Cannot specialize a {self.theory} element to {theory}")
            return self
        return RingElem(self.m, self.n, theory)

    def to_int(self) -> int:
        if self.theory == Constants.UNIFIED:
            raise ValueError("Unified ring elements have no integer value")
        return self.m

    def __str__(self):
        if self.theory != Constants.UNIFIED:
            return str(self.m)
        if self.n == 0:
            return str(self.m)
        if self.m == 0:
            return f"{self.n}ξ"
        return f"{self.m}{self.n:+d}ξ"

    def __repr__(self):
        return str(self)

    def __jsonrepr__(self):
        return [self.m, self.n]
