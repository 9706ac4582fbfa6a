"""How close can a k-gon hug n unit disks?

The lower bound splits into two parts: the area of the convex hull of the
best packing (a Wegner packing) plus k regular "caps" left over at the
polygon's corners.  When a construction meets the bound exactly, it is optimal.
"""
import math

from kgonpack import bounds, construct
from kgonpack.constructions import construct_two_disks

print("k-gon bound for a single disk is the regular k-gon:")
for k in (3, 4, 6, 12):
    print(f"  k={k:2d}  bound={bounds.kgon_bound(1, k):.6f}  k tan(pi/k)={k * math.tan(math.pi / k):.6f}")

print("\nCertified constructions (area equals the bound):")
for n, k in [(2, 4), (3, 3), (3, 6), (7, 6), (19, 6), (10, 12)]:
    rep = construct(n, k).report
    print(f"  n={n:2d} k={k:2d}  area={rep.area:.9f}  bound={rep.bound:.9f}  optimal={rep.optimal}")

# odd k for two disks: the half-and-half construction misses the bound
out = construct_two_disks(5)
print(f"\nTwo disks in a pentagon: area {out.report.area:.6f} vs bound {out.report.bound:.6f}"
      f" (6 + sqrt 3 = {6 + math.sqrt(3):.6f})")

print("\nWhere the bound is known to be attained:")
for n, k in [(2, 8), (6, 9), (7, 6), (3, 4), (4, 5)]:
    print(f"  ({n}, {k}) -> {bounds.tightness(n, k)}")
