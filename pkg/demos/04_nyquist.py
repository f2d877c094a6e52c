# Nyquist plot of the example circuit and of two variants.
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fracident import example_params
from fracident.spectra import default_grid, impedance

omega = default_grid(400, 1e-3, 1e4)
base = example_params()

fig, ax = plt.subplots(figsize=(6, 5))
for label, p in [
    ("example", base),
    ("alpha1 = 0.6", base.replace(alpha1=0.6)),
    ("alpha2 = 0.3 (flatter tail)", base.replace(alpha2=0.3)),
]:
    z = impedance(p, omega)
    ax.plot(z.real, -z.imag, label=label)

# mark decades along the example curve
marks = 10.0 ** np.arange(-2, 4)
zm = impedance(base, marks)
ax.plot(zm.real, -zm.imag, "k.")
for w, z in zip(marks, zm):
    ax.annotate(f"{w:g}", (z.real, -z.imag), textcoords="offset points", xytext=(4, -10), fontsize=7)

ax.set_xlabel("Re Z (ohm)")
ax.set_ylabel("-Im Z (ohm)")
ax.set_xlim(0, 0.6)
ax.set_ylim(0, 0.6)
ax.set_aspect("equal")
ax.legend()
fig.tight_layout()
fig.savefig("nyquist.png", dpi=150)
print("wrote nyquist.png")
