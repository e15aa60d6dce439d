"""Fourier fixed points, theta inversion, Poisson summation and the Mellin side."""
import numpy as np

from zetalab.harmonic import (LatticeMatrix, eigen_residual, face_sides, gaussian, gaussian_n,
                              hecke_theta_residual, hermite_h2, hermite_k2, mellin,
                              mellin_g, poisson_residual)

xs = np.linspace(0, 3, 31)
G, H2, K2 = gaussian(), hermite_h2(), hermite_k2()
print("G  eigen residual (+1):", eigen_residual(G, 1, xs)[0])
print("H2 eigen residual (-1):", eigen_residual(H2, -1, xs)[0])
r, res = eigen_residual(K2, -1, xs)
print("K2 is not a -1 eigenfunction: max residual", r,
      " residual + 2 pi G =", np.max(np.abs(res + 2 * np.pi * G(xs))))

for a in (0.5, 1.0, 2.0):
    print(f"theta inversion, G, a={a}:", hecke_theta_residual(G, LatticeMatrix([[a]]), 1.0))
print("Poisson summation residual for G:", poisson_residual(G))

for s in (2.0, 0.5 + 3j):
    print(f"Mellin of G at {s}: quadrature {mellin(G, s):.12f} closed {mellin_g(s):.12f}")

for field, om, s in (("Q", G, 2), ("Q", G, 0.5 + 1j), ("Q(i)", gaussian_n(2), 2)):
    d = face_sides(field, om, s)
    print(f"{field:5s} s={s}: lhs {d['lhs']:.10f}  rhs {d['rhs']:.10f}")
