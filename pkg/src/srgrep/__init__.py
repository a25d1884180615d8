"""Exact unit-vector representations of strongly regular graphs.

Parameter screens, exact rational linear algebra, graph ingestion, ADE root
enumeration, and a stage-by-stage certificate replay showing that no
srg(76, 21, 2, 7) exists.
"""

__version__ = "0.1.0"
