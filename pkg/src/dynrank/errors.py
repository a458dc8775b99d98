"""Exception types raised by graph mutation, stream parsing and verification."""


class GraphError(ValueError):
    """Base class for invalid graph operations."""


class DuplicateEdge(GraphError):
    def __init__(self, i: int, j: int):
        super().__init__(f"edge ({i}, {j}) already present")
        self.edge = (i, j)


class MissingEdge(GraphError):
    def __init__(self, i: int, j: int):
        super().__init__(f"edge ({i}, {j}) not present")
        self.edge = (i, j)


class SelfLoopError(GraphError):
    def __init__(self, i: int):
        super().__init__(f"self-loop ({i}, {i}) rejected")
        self.node = i


class NodeRangeError(GraphError, IndexError):
    def __init__(self, node: int, n: int):
        super().__init__(f"node {node} out of range for n={n}")
        self.node = node
        self.n = n


class InvalidStream(GraphError):
    """An update stream that cannot be applied to the current graph.

    ``index`` is the 0-based position of the offending op, when known.
    """

    def __init__(self, message: str, index: int | None = None):
        if index is not None:
            message = f"op {index}: {message}"
        super().__init__(message)
        self.index = index


class ParseError(ValueError):
    def __init__(self, path: str, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


class DenseCapExceeded(MemoryError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"dense similarity matrix refused for n={n} (cap {cap}); use a column path")
        self.n = n
        self.cap = cap
