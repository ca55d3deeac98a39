"""Exception types raised by dynorder."""


class DynorderError(Exception):
    """Base class for all library errors."""


class ParseError(DynorderError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class SchemaError(DynorderError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class UnknownOrbit(DynorderError, KeyError):
    def __init__(self, orbit_id: str):
        super().__init__(orbit_id)
        self.orbit_id = orbit_id

    def __str__(self) -> str:
        return f"unknown orbit {self.orbit_id!r}"


class CyclicRelation(DynorderError):
    """The intersection relation contains a cycle, so it is not a partial order."""

    def __init__(self, cycle: list[str]):
        super().__init__("cyclic intersection relation: " + " -> ".join(cycle))
        self.cycle = cycle


class MissingSeparatrixData(DynorderError):
    def __init__(self, orbit_id: str, point: int | None = None):
        where = orbit_id if point is None else f"{orbit_id}[{point}]"
        super().__init__(f"no separatrix record for saddle {where}")
        self.orbit_id = orbit_id
        self.point = point


class NotApplicable(DynorderError):
    """The requested computation does not apply to this input."""


class InconsistentDiagram(DynorderError):
    """The diagram contradicts an identity every realizable system satisfies."""


class IncompleteAnnotations(DynorderError):
    def __init__(self, orbit_id: str, side: str):
        super().__init__(f"missing {side} embedding annotation for saddle {orbit_id!r}")
        self.orbit_id = orbit_id
        self.side = side
