from typing import Any


class Crossing:
    """! One crossing X(a,b,c,d) of a PD code.

    Positions 0..3 run counterclockwise starting at the incoming under-strand, so the under
    strand joins positions 0 and 2 and the over strand joins 1 and 3. The 0-resolution joins
    (0,1) and (2,3), the 1-resolution joins (0,3) and (1,2).
    """

    # Same position pairs for both signs: the 0-resolution is the oriented smoothing of a positive
    # crossing and the 1-resolution that of a negative one.
    ZERO_RESOLUTION = ((0, 1), (2, 3))
    ONE_RESOLUTION = ((0, 3), (1, 2))

    def __init__(self, ends: tuple[int, int, int, int], sign: int | None = None):
        if len(ends) != 4:
            raise ValueError(f"A crossing needs 4 edge labels, got {ends}")
        self.ends: tuple[int, int, int, int] = tuple(int(e) for e in ends)  # type: ignore
        self.sign = sign

    def pairs(self, state: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """! Position pairs joined by the given smoothing (0 or 1)"""
        return Crossing.ONE_RESOLUTION if state else Crossing.ZERO_RESOLUTION

    def arcs(self, state: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """! Edge label pairs joined by the given smoothing"""
        return tuple((self.ends[p], self.ends[q]) for p, q in self.pairs(state))  # type: ignore

    def tail_position(self, state: int, arrow: bool) -> int:
        """! Position lying on the smoothing arc that carries the tail of the surgery arrow.

        `True` puts the 0-resolution tail on arc {0,1}; the clockwise rotation then puts the
        1-resolution tail on arc {0,3}. `False` reverses both.
        """
        if state == 0:
            return 0 if arrow else 2
        return 0 if arrow else 1

    def head_position(self, state: int, arrow: bool) -> int:
        if state == 0:
            return 2 if arrow else 0
        return 1 if arrow else 0

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Crossing) and self.ends == other.ends and self.sign == other.sign

    def __hash__(self):
        return hash((self.ends, self.sign))

    def __str__(self):
        return "X({})".format(",".join(str(e) for e in self.ends))

    def __repr__(self):
        return str(self)

    def __jsonrepr__(self):
        return {"ends": list(self.ends), "sign": self.sign}
