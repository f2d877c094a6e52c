# Identifiability of the example circuit, step by step.
#
# R_inf = 0.01, R1 = 0.2, C1 = 3, alpha1 = 0.8, C2 = 400, alpha2 = 0.5,
# sampled at Ts = 5e-4 with a GL horizon of T = 100.
import mpmath
from mpmath import mp

from fracident import analyze, exclusion_interval, head_coeffs, model_tf, octic_from_heads
from fracident import example_params

mp.dps = 60
params = example_params()
tf = model_tf(params)

# the top few monic coefficients are all the analysis needs
heads = head_coeffs(tf)
print("d         =", mpmath.nstr(heads.d, 6))
for label, f, g in zip(("2T+1", "2T", "2T-1", "2T-2"), heads.f_heads, heads.g_heads):
    print(f"f_{label:<5}= {mpmath.nstr(f, 6):>12}    g_{label:<5}= {mpmath.nstr(g, 6)}")

# eliminating alpha1 leaves a degree-8 polynomial in alpha2
octic = octic_from_heads(heads)
print("\noctic, highest power first:")
for c in reversed(octic.coeffs):
    print("   ", mpmath.nstr(c, 17))

lo, hi = exclusion_interval(heads)
print(f"\nalpha2 in [{mpmath.nstr(lo, 6)}, {mpmath.nstr(hi, 6)}] would make a gain negative")

report = analyze(tf, params.ts)
print(f"\n{'alpha2':>22} {'alpha1':>22}  status")
for c in report.candidates:
    a1 = "" if c.alpha1 is None else mpmath.nstr(c.alpha1, 15)
    a2 = mpmath.nstr(c.alpha2, 15) if not c.imag else f"{mpmath.nstr(c.alpha2, 6)} +/- {mpmath.nstr(abs(c.imag), 3)}i"
    err = "" if c.max_norm_error is None else f" (max error {mpmath.nstr(c.max_norm_error, 4)})"
    print(f"{a2:>22} {a1:>22}  {c.status.value}{err}")

print("\nverdict:", report.verdict_label)
best = report.accepted[0]
for name, value in best.recovered.as_dict().items():
    print(f"  {name:>9} = {mpmath.nstr(value, 20)}")
