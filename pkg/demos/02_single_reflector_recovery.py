#!/usr/bin/env python3
"""Recovering one reflector from first moments, with a handful of columns.

For Y = H X under the Bernoulli-Uniform model, E[Y_ij] = theta mu (1 - 2 u_i c)
with c = sum(u): row averages of Y identify u up to sign, in closed form, with
O(np) work. Watch the error fall as columns are added.
"""

import numpy as np

import housedl as hd

theta, mu = 0.3, 1.5
n = 1000
model = hd.SparseModel(theta)  # support prob 0.3, values U[1,2], mu = 1.5

print(f"n = {n}, theta = {theta}, mu = {mu}, noiseless")
print()
print("  p    |c_hat - c|   linf(u)    linf(u) alt   code support F1")
for p in (2, 4, 8, 16, 64, 256):
    inst = hd.make_instance(n, p, 1, model, rng=hd.RngSpec(42, p))
    u = inst.V.factors[0]
    c = abs(float(u.u.sum()))

    c_hat = hd.estimate_c(inst.Y, theta, mu)
    res = hd.estimate_u_hx(inst.Y, theta, mu, zeta=0.5)
    alt = hd.estimate_u_hx_alt(inst.Y, theta, mu, zeta=0.5)

    err = hd.linf_error_up_to_sign(u, res.u_hat)
    err_alt = hd.linf_error_up_to_sign(u, alt.u_hat)
    f1 = hd.support_f1(inst.X, res.X_hat)
    print(f"{p:4d}   {abs(c_hat - c):10.4f}   {err:.5f}     {err_alt:.5f}       {f1:.4f}")

print()
print("the two recovery paths agree after normalization:")
inst = hd.make_instance(n, 32, 1, model, rng=hd.RngSpec(7, 0))
a = hd.estimate_u_hx(inst.Y, theta, mu).u_hat.u
b = hd.estimate_u_hx_alt(inst.Y, theta, mu).u_hat.u
if float(a @ b) < 0:
    b = -b
print("max |difference| =", np.max(np.abs(a - b)))

print()
print("with the true dictionary the code is exact after thresholding at 0.5:")
X_hat = hd.recover_x(inst.Y, inst.V, zeta=0.5)
print("support equal:", bool(np.array_equal(X_hat.support_mask(), inst.X.support_mask())),
      " max value error:", np.max(np.abs(X_hat.to_dense() - inst.X.to_dense())))
