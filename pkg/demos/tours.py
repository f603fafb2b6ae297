"""Compare subtour vertices with tours on the three forbidden graphs and a
graph that has none of them.

    python3 demos/tours.py
"""

from cutdom.graph import complete, m1, prism, pyramid
from cutdom.minors import forbidden_minors
from cutdom.polyhedron import gtsp_equals_subtour, subtour_vertices
from cutdom.ratmat import format_rational

for name, g in (("K4", complete(4)), ("prism", prism()), ("pyramid", pyramid()), ("m1", m1())):
    vertices = subtour_vertices(g).vertices
    equal, cex, bad = gtsp_equals_subtour(g, vertices=vertices)
    found = [k for k, v in forbidden_minors(g).items() if v is not None]
    print(f"{name}: {len(vertices)} vertices, {len(bad)} not tours, minors: {found or 'none'}")
    if cex is not None:
        print("  first non-tour vertex:", " ".join(format_rational(q) for q in cex))
