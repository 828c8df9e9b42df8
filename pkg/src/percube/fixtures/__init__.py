"""Bundled reference sets in the tuple format."""

from importlib.resources import files

from ..analysis import parse_tuple_format
from ..cube import VertexSet

D13_R4_FILE = "d13_r4_size122.txt"


def fixture_text(name: str) -> str:
    """Raw text of a bundled fixture file."""
    return files(__package__).joinpath(name).read_text(encoding="utf-8")


def d13_r4_size122() -> VertexSet:
    """The bundled 122-vertex set that percolates on Q_13 at threshold 4.

    Its size matches the exact lower bound for (d, r) = (13, 4), so it is
    a minimum percolating set.
    """
    return parse_tuple_format(fixture_text(D13_R4_FILE))
