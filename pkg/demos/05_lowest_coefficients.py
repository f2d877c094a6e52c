# Why the analysis uses the highest-index coefficients.
#
# The two lowest denominator coefficients scale with the tail of the GL
# series, which shrinks as T grows.  Equations built from them are satisfied
# at the true exponents, but also nearly satisfied at wrong ones.
import mpmath
from mpmath import mp

from fracident import example_params
from fracident.experiments import legacy_table, perturbed_legacy_table

mp.dps = 60
params = example_params()
horizons = (10, 20, 50, 100, 200)

print(f"{'T':>5} {'|g0|':>10} {'resid @ truth':>14} {'resid @ alpha1+0.1':>19}")
for true, off in zip(legacy_table(params, horizons), perturbed_legacy_table(params, horizons)):
    print(f"{true.T:>5} {mpmath.nstr(abs(true.g0), 3):>10} "
          f"{mpmath.nstr(abs(true.residual1) / true.scale1, 3):>14} "
          f"{mpmath.nstr(abs(off.residual1) / off.scale1, 3):>19}")
