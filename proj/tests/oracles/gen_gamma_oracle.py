"""Frozen numeric reference values for the Gamma-derivative ring tests.

G(b, j) = Gamma^(j)(b+1) / Gamma(b+1), and the Laplace transform of
t^s (log t)^k evaluated at x is d^k/ds^k [Gamma(s+1) x^(-s-1)].
Run with mpmath; the output is pasted into test_standard_laplace.cpp and
test_gamma_ring.cpp.
"""
from mpmath import mp, mpf, gamma, diff, log

mp.dps = 40

bases = [(1, 2), (7, 2), (-1, 3), (-7, 3), (5, 7), (-3, 2)]
print("// G(b, j) for j = 1..4")
for a, b in bases:
    z = mpf(a) / b
    vals = [diff(gamma, z + 1, j) / gamma(z + 1) for j in range(1, 5)]
    print("{{%d, %d}, {%s}}," % (a, b, ", ".join(mp.nstr(v, 20) for v in vals)))

cases = [((1, 2), 0, 0), ((1, 2), 1, 0), ((1, 2), 2, 3), ((-1, 3), 2, 0), ((-1, 3), 1, 2),
         ((5, 7), 3, 1), ((1, 2), 2, -2), ((-1, 3), 1, -3), ((5, 7), 2, -1)]
print("// (gamma, k, m, x, value of L(t^(gamma+m) log^k t)(x))")
for (a, b), k, m in cases:
    g = mpf(a) / b
    for x in (mpf(2), mpf(3) / 2):
        v = diff(lambda s: gamma(s + 1) * x ** (-s - 1), g + m, k)
        print("{{%d, %d}, %d, %d, %s, %s}," % (a, b, k, m, mp.nstr(x, 5), mp.nstr(v, 20)))
