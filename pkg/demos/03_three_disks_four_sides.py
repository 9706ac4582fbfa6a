"""Three disks in a quadrilateral: the bound is not attained.

The bound for (n, k) = (3, 4) is 10 + sqrt 3.  Cutting a corner off the
tangent triangle of three touching disks yields quadrilaterals no smaller
than (11 + 6 sqrt 3)/sqrt 3, while simply lining the disks up in a 2 x 6
rectangle gives 12.  A numerical search agrees that 12 is the best it finds.
"""
from kgonpack import bounds, solve, theorem6_reference_areas
from kgonpack.optimizer import SolveConfig

r = theorem6_reference_areas()
print(f"disk hull               {r.hull:.9f}")
print(f"triangle with one cut   {r.quad_ABCA:.9f}")
print(f"2 x 6 rectangle         {r.rect_area:.9f}")
print(f"area bound              {bounds.kgon_bound(3, 4):.9f}")

res = solve(3, 4, SolveConfig(restarts=8, seed=0))
print(f"\nsearch (8 restarts): area {res.area:.9f}, gap above bound {res.gap:.6f}")
print("centres:")
for c in res.best.centers:
    print(f"  {c[0]: .6f} {c[1]: .6f}")
