"""Walk through the two smallest graphs whose cut dominant needs a facet
with right-hand side 4, then check that shrinking them loses it.

    python3 demos/witnesses.py
"""

from cutdom import certify_facet, kstar, structural_report
from cutdom.graph import prism, pyramid
from cutdom.minors import is_minor_minimal_non_k

# triangle edges cost 1, the three connecting edges cost 2
WEIGHTS = {
    "prism": (prism(), (1, 1, 1, 1, 1, 1, 2, 2, 2)),
    "pyramid": (pyramid(), (1, 1, 1, 2, 2, 2, 2, 2, 2)),
}

for name, (g, w) in WEIGHTS.items():
    cert = certify_facet(g, w)
    print(f"{name}: {g.n} nodes, {g.m} edges")
    print(f"  minimum cut {cert.lam}, facet: {cert.is_facet}, rank {cert.rank}")
    print(f"  minimum integer form: {cert.min_int_coeffs} >= {cert.min_int_rhs}")
    print(f"  laminar basis: {cert.family.to_json()}")
    report = structural_report(g, w, 2, cert.family)
    print("  structural checks:", ", ".join(k for k, v in report.items() if v))
    print(f"  kstar = {kstar(g)}")
    minimal, steps = is_minor_minimal_non_k(g, 2)
    worst = max(s["kstar"] for s in steps[1:])
    print(f"  minor-minimal: {minimal} (largest kstar after one step: {worst})")
    print()
