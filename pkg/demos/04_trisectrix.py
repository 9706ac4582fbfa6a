"""Reflecting a tangent point traces a trisectrix.

Take a circle of radius a, a tangent line at T, a point X on that line, and the
second tangent from X touching at R.  Mirroring X through R gives a point X'
whose polar angle is three times the angle of X: the curve r = a sec(theta/3).
"""
import math

from kgonpack.trisectrix import trisectrix_point, trisectrix_residuals

for deg in (0, 10, 20, 30, 45, 60):
    s = trisectrix_point(1.0, math.radians(deg))
    print(f"phi={deg:2d} deg  theta={math.degrees(s.theta):6.2f} deg  r={s.r:.6f}")

print(f"\nlargest |r - sec(theta/3)| over 10^4 samples: {trisectrix_residuals(1.0, 10_000):.2e}")
