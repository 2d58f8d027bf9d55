from typing import Sequence, Tuple

import numpy


class SimulationResult:
    def __init__(self, row: numpy.ndarray, clamped: Sequence[str] = ()):
        row = numpy.array(row, dtype=float)
        row.setflags(write=False)
        self._row = row
        self._clamped = tuple(clamped)

    @property
    def row(self) -> numpy.ndarray:
        return self._row

    @property
    def clamped(self) -> Tuple[str, ...]:
        return self._clamped

    def __str__(self) -> str:
        return f"{SimulationResult.__name__}: row={self._row.tolist()}, clamped={list(self._clamped)}"

    def __repr__(self) -> str:
        return self.__str__()
