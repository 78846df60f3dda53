# The two bath kernels behind the dephasing factor:
#   eta(t)   - the phase shift, saturating at -Gamma*pi/2,
#   gamma(t) - the damping exponent, growing without bound at any T > 0.
#
# Both come from adaptive quadrature over the Ohmic spectral density; the
# closed forms available in limiting cases pin the numerics down.

import matplotlib.pyplot as plt
import numpy as np

from morsedeph import BathParams, eta, gamma

ts = np.logspace(-2, 4, 120)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))

bath = BathParams(coupling=0.01, cutoff=10.0, kT=0.1)
etas = [eta(bath, t) for t in ts]
ax1.semilogx(ts, etas, "k-", label="quadrature")
ax1.semilogx(ts, -bath.coupling * np.arctan(bath.cutoff * ts), "r:",
             lw=2.5, label="-G arctan(wc t)")
ax1.set_xlabel("t")
ax1.set_ylabel("eta(t)")
ax1.legend()
err = max(abs(e + bath.coupling * np.arctan(bath.cutoff * t)) for e, t in zip(etas, ts))
print(f"eta matches its closed form to {err:.2e}")

for kT, style in ((0.01, "b-"), (1.0, "g-"), (100.0, "r-")):
    b = BathParams(coupling=0.01, cutoff=10.0, kT=kT)
    ax2.loglog(ts, [gamma(b, t) for t in ts], style, label=f"kT = {kT}")
bz = BathParams(coupling=0.01, cutoff=10.0, kT=1.0, zero_temperature=True)
g0 = [gamma(bz, t) for t in ts]
ax2.loglog(ts, g0, "k--", label="T = 0")
cf = 0.25 * 0.01 * np.log1p((10.0 * ts) ** 2)
print(f"zero-T gamma matches (G/4)ln(1+wc^2 t^2) to rel {max(abs(np.array(g0)/cf - 1)):.2e}")
b100 = BathParams(coupling=0.01, cutoff=10.0, kT=100.0)
h = 1e-3
slope = (gamma(b100, 100 + h) - gamma(b100, 100 - h)) / (2 * h)
print(f"late-time slope at kT=100: {slope:.5f} vs pi*G*kT/2 = {np.pi*0.01*100/2:.5f}")

ax2.set_xlabel("t")
ax2.set_ylabel("gamma(t)")
ax2.legend()
fig.tight_layout()
fig.savefig("demos_03_kernels.png", dpi=120)
print("wrote demos_03_kernels.png")
