"""Exact flip distance of triangulations and the vertex-cover reduction.

Instances, scripts and graphs are passed as text in the same formats the
``flipdist`` command line tool reads and writes.
"""

from ._core import (
    FlipdistError,
    cover_script,
    distance,
    eliminate_sharp,
    enumerate,
    figure,
    min_vertex_cover,
    reduce,
    render,
    verify,
)

__all__ = [
    "FlipdistError",
    "cover_script",
    "distance",
    "eliminate_sharp",
    "enumerate",
    "figure",
    "min_vertex_cover",
    "reduce",
    "render",
    "verify",
]
