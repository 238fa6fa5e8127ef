"""Exception types raised across the package."""


class CohboundError(Exception):
    """Base class for every computation error the package raises."""


class DimensionMismatch(CohboundError, ValueError):
    pass


class ZeroColumn(CohboundError, ValueError):
    def __init__(self, index):
        super().__init__(f"column {index} has (numerically) zero norm")
        self.index = index


class RankDeficient(CohboundError, ValueError):
    pass


class NotSymmetric(CohboundError, ValueError):
    pass


class ParseError(CohboundError, ValueError):
    def __init__(self, row, col, token):
        where = f"line {row}" if col is None else f"row {row}, col {col}"
        super().__init__(f"cannot parse {token!r} at {where}")
        self.row, self.col, self.token = row, col, token


class RaggedRows(CohboundError, ValueError):
    pass


class NotUnitDiagonal(CohboundError, ValueError):
    pass


class NotUnitary(CohboundError, ValueError):
    def __init__(self, which):
        super().__init__(f"basis {which} is not unitary")
        self.which = which


class CountOutOfRange(CohboundError, ValueError):
    pass


class InvalidDims(CohboundError, ValueError):
    pass


class DuplicateRows(CohboundError, ValueError):
    pass


class UnsupportedSize(CohboundError, ValueError):
    pass


class EmptyAfterSampling(CohboundError, ValueError):
    pass


class SelfLoop(CohboundError, ValueError):
    def __init__(self, line):
        super().__init__(f"self-loop on line {line}")
        self.line = line


class SearchSpaceTooLarge(CohboundError, ValueError):
    pass


class NoSolution(CohboundError, ValueError):
    pass
