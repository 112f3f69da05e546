from abc import ABCMeta
from typing import Any, TypeAlias


class TagABC(metaclass=ABCMeta):
    """! Abstract Base Class for all name-like tags (theories, coefficient rings)"""

    allowed: tuple[str, ...] = ()

    def __init__(self, name: str):
        if self.allowed and name not in self.allowed:
            raise ValueError(f"{type(self).__name__} {name} not in {self.allowed}")
        self.name = name

    def __eq__(self, other: Any):
        return isinstance(other, type(self)) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __str__(self):
        return self.name

    def __repr__(self):
        return str(self)

    def __lt__(self, other: "TagABC"):
        return self.name < other.name

    def __jsonrepr__(self):
        return self.name


class Theory(TagABC):
    """! Flavour of the Khovanov complex: `even` (ξ=+1), `odd` (ξ=-1), `unified` (ℤ[ξ]/(ξ²-1)) or `mod2`"""

    allowed = ("even", "odd", "unified", "mod2")

    def xi(self) -> int | None:
        """! Value ξ specializes to, None for the unified theory"""
        match self.name:
            case "even":
                return 1
            case "odd":
                return -1
            case "mod2":
                return 1
            case _:
                return None

    @staticmethod
    def parse_user_input(x: "str | Theory") -> "Theory":
        return x if isinstance(x, Theory) else Theory(x.lower())


class Coefficient(TagABC):
    """! Coefficient ring homology is computed over: `Z`, `F2` or `Q`"""

    allowed = ("Z", "F2", "Q")

    def is_field(self) -> bool:
        return self.name != "Z"

    @staticmethod
    def parse_user_input(x: "str | Coefficient") -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        aliases = {"z": "Z", "f2": "F2", "q": "Q", "z2": "F2", "z/2": "F2"}
        return Coefficient(aliases.get(x.lower(), x))


class FaceType(TagABC):
    """! Type of a square of the cube of resolutions: `C` (commutes), `A` (commutes up to ξ) or `XY` (both)"""

    allowed = ("C", "A", "XY")


class Constants:
    """! Store constant objects used throughout khlab (instead of hardcoding them)"""

    EVEN = Theory("even")
    ODD = Theory("odd")
    UNIFIED = Theory("unified")
    MOD2 = Theory("mod2")
    THEORIES = (EVEN, ODD, UNIFIED)

    Z = Coefficient("Z")
    F2 = Coefficient("F2")
    Q = Coefficient("Q")

    # Label of a free loop in PD text
    FREE_LOOP_TOKEN = "U"

    FACE_C = FaceType("C")
    FACE_A = FaceType("A")
    FACE_XY = FaceType("XY")


###### Type aliases ######
CircleId: TypeAlias = int
Monomial: TypeAlias = tuple[int, ...]
VertexInt: TypeAlias = int
# Khovanov generator: cube vertex and monomial of circle ids
Generator: TypeAlias = tuple[int, tuple[int, ...]]
# Doubled generator of the unified ℤ-form: ξ power, vertex, monomial
DoubledGenerator: TypeAlias = tuple[int, int, tuple[int, ...]]
Bigrading: TypeAlias = tuple[int, int]
