"""Certify the shipped family fixtures and print how the right-hand side
of their facets grows with the graph.

    python3 demos/growth.py
"""

import time

from cutdom.family import certify_fixture, shipped_family
from cutdom.ratmat import format_rational

for fx in shipped_family():
    t0 = time.perf_counter()
    cert = certify_fixture(fx)
    rungs = sorted({w for w in fx.weights if w < 1}, reverse=True)
    print(
        f"{fx.name:>4}  nodes={fx.graph.n:<3} edges={fx.graph.m:<3} "
        f"rhs={cert.min_int_rhs:<4} ({time.perf_counter() - t0:.1f}s)  "
        f"fractional weights: {', '.join(format_rational(w) for w in rungs)}"
    )
