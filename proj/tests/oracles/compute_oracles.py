"""High-precision reference values frozen into the C++ unit tests.

Run with: python3 tests/oracles/compute_oracles.py
Independent of the C++ implementation (mpmath at 40 digits).
"""
import mpmath as mp

mp.mp.dps = 40


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 20)}")


show("gamma(0.75)", mp.gamma(0.75))
show("zeta(0.5) via eta series", mp.nsum(lambda n: (-1) ** (n + 1) / mp.sqrt(n), [1, mp.inf]) / (1 - mp.power(2, 0.5)))
show("zeta(0.5) mpmath", mp.zeta(0.5))
show("zeta(3) direct", mp.nsum(lambda n: 1 / n**3, [1, mp.inf]))
show("zeta(0.25)", mp.zeta(0.25))
show("zeta(0.75)", mp.zeta(0.75))
show("digamma(0.5)", mp.digamma(0.5))


def sphere1_quad(s):
    # (1/2pi) int_0^{2pi} (2 sin(t/2))^{-s} dt
    if s == 0:
        return mp.quad(lambda t: -mp.log(2 * mp.sin(t / 2)), [0, mp.pi, 2 * mp.pi]) / (2 * mp.pi)
    return mp.quad(lambda t: (2 * mp.sin(t / 2)) ** (-s), [0, mp.pi, 2 * mp.pi]) / (2 * mp.pi)


def sphere2_quad(s):
    # distance from north pole to point at polar angle t is 2 sin(t/2); area weight sin(t)/2
    if s == 0:
        return mp.quad(lambda t: -mp.log(2 * mp.sin(t / 2)) * mp.sin(t) / 2, [0, mp.pi])
    return mp.quad(lambda t: (2 * mp.sin(t / 2)) ** (-s) * mp.sin(t) / 2, [0, mp.pi])


for s in (0, 0.25, 0.5):
    show(f"I_s(sigma_1) quad s={s}", sphere1_quad(s))
    show(f"I_s(sigma_2) quad s={s}", sphere2_quad(s))


def interval_const_quad(s, x):
    # the equilibrium potential is constant on [-1,1]; evaluate it at x
    cs = 1 / mp.beta(mp.mpf(1) / 2, (mp.mpf(s) + 1) / 2)
    u0 = mp.asin(x)

    def integrand(v):
        d = abs(x - mp.sin(v))
        k = d ** (-s) if s > 0 else -mp.log(d)
        return k * cs * mp.cos(v) ** s

    return mp.quad(integrand, [-mp.pi / 2, u0, mp.pi / 2])


for s in (0, 0.5):
    for x in (0, 0.3):
        show(f"interval constant quad s={s} x={x}", interval_const_quad(s, x))
show("interval constant formula s=0.5",
     mp.sqrt(mp.pi) * mp.gamma(1.25) / (mp.cos(mp.pi / 4) * mp.gamma(0.75)))
show("f(0.5)", mp.mpf(1) / 2 * (mp.mpf(4) / 3) ** 1.5 + (mp.mpf(1) / 3) ** 1.5)
show("circle 2nd-order s=0.5", 2 * mp.zeta(0.5) / mp.sqrt(2 * mp.pi))
show("circle 2nd-order s=1", (mp.euler - mp.log(mp.pi / 2)) / mp.pi)
show("greedy s=1 2nd-order", (mp.euler - mp.log(mp.pi / 2) + mp.log(mp.power(2, mp.mpf(16) / 9) / 3)) / mp.pi)
show("f(2)*2zeta(2)/(2pi)^2", mp.mpf(11) / 9 * 2 * mp.zeta(2) / (2 * mp.pi) ** 2)


def circle_energy(N, s):
    pts = [mp.expj(2 * mp.pi * k / N) for k in range(N)]
    tot = mp.mpf(0)
    for i in range(N):
        for j in range(N):
            if i != j:
                d = abs(pts[i] - pts[j])
                tot += d ** (-s) if s > 0 else -mp.log(d)
    return tot


show("circle energy direct N=8 s=1", circle_energy(8, 1))
show("lemma rhs n=1 s=1", circle_energy(8, 1) / 2 + circle_energy(2, 1))
show("lemma rhs n=1 s=0", circle_energy(8, 0) / 2 + circle_energy(2, 0))
show("circle energy direct N=4 s=1", circle_energy(4, 1))
show("circle energy direct N=5 s=0.5", circle_energy(5, 0.5))


def arcsine_cdf(s, x):
    cs = 1 / mp.beta(mp.mpf(1) / 2, (mp.mpf(s) + 1) / 2)
    return mp.quad(lambda u: cs * mp.cos(u) ** s, [-mp.pi / 2, mp.asin(x)])


for s, x in ((0, 0.5), (0.5, 0.5), (0.5, -0.3), (0.75, 0.9)):
    show(f"interval cdf s={s} x={x}", arcsine_cdf(s, x))

# arc-chord weight on unit circle curve: params 0 and pi -> pi/2
show("arc-chord antipodal", mp.pi / 2)
