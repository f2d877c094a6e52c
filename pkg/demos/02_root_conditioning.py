# How sensitive are the octic's real roots to its coefficients?
#
# Two of the six real roots sit close to a complex pair, so the polynomial is
# nearly flat there and its derivative is tiny.  Rounding the coefficients to
# 15 decimals moves those two roots by about 1e-10 and a single 1e-14 error
# moves them by more than 1e-9, while the outer roots barely notice.
import mpmath
from mpmath import mp, mpf

from fracident import RealPoly, classify_real_roots, find_roots, head_coeffs, model_tf
from fracident import octic_from_heads, example_params

mp.dps = 60
exact = octic_from_heads(head_coeffs(model_tf(example_params())))
deriv = RealPoly([k * c for k, c in enumerate(exact.coeffs)][1:])

roots = find_roots(exact)
reals = classify_real_roots(roots, mpf("1e-30"))
complex_pair = [r for r in roots if abs(r.imag) > 1e-20]
print("complex pair:", mpmath.nstr(complex_pair[0], 8), "and its conjugate\n")

variants = {
    "double": RealPoly([mpf(float(c)) for c in exact.coeffs]),
    "15 decimals": RealPoly([mpmath.nint(c * 10**15) / 10**15 for c in exact.coeffs]),
}
print(f"{'root':>18} {'p-prime':>10} " + " ".join(f"{'shift, ' + k:>20}" for k in variants))
shifted = {k: classify_real_roots(find_roots(p), mpf("1e-30")) for k, p in variants.items()}
for i, r in enumerate(reals):
    cols = " ".join(f"{mpmath.nstr(abs(shifted[k][i] - r), 3):>20}" for k in variants)
    print(f"{mpmath.nstr(r, 15):>18} {mpmath.nstr(deriv(r), 3):>10} {cols}")

# first-order estimate: |dx| ~ |dp(x)| / |p'(x)|, with |dp| bounded by the
# coefficient error times sum |x^k|
print("\nfirst-order shift bound for a 5e-16 coefficient error:")
for r in reals:
    size = sum(abs(r) ** k for k in range(9))
    print(f"{mpmath.nstr(r, 8):>18} {mpmath.nstr(mpf('5e-16') * size / abs(deriv(r)), 2):>10}")
