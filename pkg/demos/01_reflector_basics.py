#!/usr/bin/env python3
"""Reflectors as vectors: apply, compose, and why factors are not unique.

A reflector H = I - 2 u u^T is stored as just its unit vector u, so applying
it to anything is O(n) per column. Products of reflectors give arbitrary
orthogonal dictionaries without ever materializing an n-by-n matrix.
"""

import numpy as np

import housedl as hd

g = np.random.default_rng(0)

print("== single reflector ==")
f = hd.make_factor([3.0, 4.0])
print("u =", f.u, " (normalized from (3, 4))")
x = np.array([1.0, 0.0])
print("H x =", hd.apply_factor(f, x))
print("H (H x) =", hd.apply_factor(f, hd.apply_factor(f, x)), " (involution)")

print()
print("== products act like orthogonal matrices ==")
n = 6
V = hd.OrthogonalProduct(tuple(hd.make_factor(g.standard_normal(n)) for _ in range(3)))
Y = g.standard_normal((n, 4))
VY = hd.apply_product(V, Y)
print("norm preserved:", np.linalg.norm(Y), "->", np.linalg.norm(VY))
back = hd.apply_product(V, VY, transpose=True)
print("V^T V Y round trip error:", np.max(np.abs(back - Y)))

D = hd.to_dense(V)
print("dense orthogonality defect:", np.linalg.norm(D.T @ D - np.eye(n)))

print()
print("== factorizations are not unique ==")
u = hd.make_factor(g.standard_normal(n))
u1, u2, u3 = hd.equivalent_product_pair(u.u)
lhs = hd.to_dense(hd.OrthogonalProduct((u, u1)))
rhs = hd.to_dense(hd.OrthogonalProduct((u2, u3)))
print("|| H(u) H(u1) - H(u2) H(u3) ||_F =", np.linalg.norm(lhs - rhs))
print("so dictionary quality is judged on the product V, never on single factors")
