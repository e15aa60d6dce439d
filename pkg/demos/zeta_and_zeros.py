"""Dedekind zeta values, the completed functional equation and the first zeros."""
import numpy as np

from zetalab.completed import CriticalGrid, fe_residual, scan_zeros, winding_audit
from zetalab.fields import make_field
from zetalab.lfunctions import dedekind_zeta, ideal_count_zeta, riemann_zeta

print("zeta(2) =", riemann_zeta(2).value.real, " pi^2/6 =", np.pi ** 2 / 6)

for label in ("Q", "Q(i)", "Q(sqrt(-3))", "Q(sqrt(5))"):
    k = make_field(label)
    z = dedekind_zeta(3, k)
    print(f"{k.label:12s} disc {k.discriminant:3d}  zeta_k(3) = {z.value.real:.12f}"
          f"  (err {z.error_estimate:.1e})")

# Euler product side vs a direct count of ideals by norm
for N in (10 ** 3, 10 ** 4, 10 ** 5):
    d = dedekind_zeta(2, "Q(i)").value - ideal_count_zeta(2, "Q(i)", N).value
    print(f"ideal count cutoff {N:6d}: difference {abs(d):.2e}")

worst = max(fe_residual(complex(u, v), "Q(i)")
            for u in np.linspace(-0.5, 1.5, 10) for v in np.linspace(1, 25, 10))
print("worst FE residual for Q(i) on the strip grid:", worst)

zs = scan_zeros("Q", 10, 50, 0.1)
print("zeros of zeta on [10, 50]:", [round(z.ordinate_t, 6) for z in zs])
print("argument-principle count on [0,1]x[10,50]:",
      winding_audit("Q", CriticalGrid((0.0, 1.0), (10.0, 50.0))))
print("first zero of zeta_Q(i):", scan_zeros("Q(i)", 5, 8, 0.1)[0].ordinate_t)
