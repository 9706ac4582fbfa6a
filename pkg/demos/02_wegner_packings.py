"""Wegner packings: the disk arrangements with the smallest convex hull.

For every n up to 120 a hexagonal patch of the triangular lattice reaches the
hull-area bound.  The triangle of 10 disks is a lattice packing too, but its
hull is longer than necessary.
"""
from kgonpack import bounds, classify, generate_wegner, hull_metrics
from kgonpack.packing import generate_triangular

for n in (1, 2, 3, 7, 10, 19, 50, 120):
    p = generate_wegner(n)
    h = hull_metrics(p)
    print(f"n={n:3d}  {classify(p).tag}  hull area {h.hull_area:10.6f}  bound {bounds.wegner_bound(n):10.6f}")

tri = generate_triangular(4)
cls = classify(tri)
print(f"\ntriangle of 10: {cls.tag}, centre-hull perimeter {cls.hull_perimeter:.1f}, "
      f"Wegner needs {cls.required_perimeter:.0f}")
