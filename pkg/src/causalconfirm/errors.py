"""Exception types. Everything raised for bad input derives from DataError."""


class DataError(ValueError):
    """Input data violates a constraint of the data model."""


class ParseError(DataError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SchemaError(DataError):
    pass


class DuplicateCell(DataError):
    pass


class MissingCell(DataError):
    pass


class InvalidCount(DataError):
    pass


class WeightSumViolation(DataError):
    pass


class RateOutOfRange(DataError):
    pass


class TooManyCauses(DataError):
    pass


class PriorError(DataError):
    """Conflicting or inconsistent prior declarations."""


class MissingGroupPrior(DataError):
    pass


class UnnormalizedDistribution(DataError):
    pass


class DegenerateOutcome(DataError):
    pass


class DegenerateMarginal(DataError):
    pass


class DegeneratePrior(DataError):
    pass


class DegenerateChannel(DataError):
    pass


class ZeroLogicalProbability(DataError):
    pass
