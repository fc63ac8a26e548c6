#!/usr/bin/env python3
"""Recovery under additive Gaussian noise at controlled SNR.

The moment identities are unbiased under zero-mean noise, so the estimator
is applied unchanged to noisy observations; accuracy degrades gracefully as
the SNR drops.
"""

import numpy as np

import housedl as hd

theta, mu = 0.3, 1.5
n, p = 1000, 16
model = hd.SparseModel(theta)

print(f"n = {n}, p = {p}, theta = {theta}, 20 trials per SNR level")
print()
print("  SNR (dB)    median linf(u)    measured SNR of one instance")
for snr in (None, 30.0, 20.0, 10.0, 5.0):
    errs = []
    for t in range(20):
        inst = hd.make_instance(n, p, 1, model, snr_db=snr, rng=hd.RngSpec(300 + t, p))
        res = hd.estimate_u_hx(inst.Y, theta, mu)
        errs.append(hd.linf_error_up_to_sign(inst.V.factors[0], res.u_hat))
    signal = hd.apply_product(inst.V, inst.X.to_dense())
    measured = hd.measured_snr_db(signal, inst.Y - signal)
    label = "noiseless" if snr is None else f"{snr:9.0f}"
    shown = "inf" if measured == float("inf") else f"{measured:.2f}"
    print(f"  {label}    {np.median(errs):.5f}           {shown}")

print()
print("the generator scales noise from the realized signal power, so the")
print("measured SNR tracks the request on every instance.")
