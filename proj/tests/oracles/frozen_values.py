"""Brute-force oracle for the frozen expected values used in the unit tests.

Every quantity is evaluated straight from its defining sum with the
dispersion e(k) = |eps^2 |k|^2 - mu| computed in floating point per mode,
i.e. without the integer dot-product identity or the histogram binning used
by the library.  Run with python3; prints the values that the C++ tests pin.
"""
import itertools
import math

MU = 4 * math.pi ** 2 * (3 / (4 * math.pi)) ** (2 / 3)


def system(S, offset=0.5):
    eps = math.sqrt(MU / (4 * math.pi ** 2 * (S + offset)))
    R = math.isqrt(S) + 1
    ball = [n for n in itertools.product(range(-R, R + 1), repeat=3)
            if n[0] ** 2 + n[1] ** 2 + n[2] ** 2 <= S]
    return eps, sorted(ball)


def e(eps, n):
    k2 = (2 * math.pi) ** 2 * (n[0] ** 2 + n[1] ** 2 + n[2] ** 2)
    return abs(eps ** 2 * k2 - MU)


def add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def neg(a):
    return (-a[0], -a[1], -a[2])


def hf_energy(S, v):
    eps, ball = system(S)
    N = len(ball)
    kin = sum(eps ** 2 * (2 * math.pi) ** 2 * (n[0] ** 2 + n[1] ** 2 + n[2] ** 2) for n in ball)
    exch = sum(v.get(sub(k, kp), 0.0) for k in ball for kp in ball)
    return kin + N * v.get((0, 0, 0), 0.0) / 2 - exch / (2 * N)


def c2_terms(S, v, outer=None, power=1):
    eps, ball = system(S)
    inB = set(ball)
    N = len(ball)

    def excited(m):
        if m in inB:
            return False
        return outer is None or m[0] ** 2 + m[1] ** 2 + m[2] ** 2 <= outer

    direct = 0.0
    exchange = 0.0
    for p, vp in v.items():
        for k in ball:
            if not excited(add(k, p)):
                continue
            for kp in ball:
                if not excited(sub(kp, p)):
                    continue
                den = e(eps, add(k, p)) + e(eps, k) + e(eps, sub(kp, p)) + e(eps, kp)
                direct += vp * vp / den ** power
                exchange += vp * v.get(add(sub(p, kp), k), 0.0) / den ** power
    return direct / (2 * N * N), exchange / (2 * N * N)


def i_mu(S, p):
    eps, ball = system(S)
    inB = set(ball)
    s = sum(1.0 / (e(eps, add(k, p)) + e(eps, k)) for k in ball if add(k, p) not in inB)
    return s / len(ball)


def pair(p, g):
    return {p: g, neg(p): g}


if __name__ == "__main__":
    for S in (0, 1, 2, 100):
        print("count_ball", S, len(system(S)[1]))
    star = {n: 0.1 for n in itertools.product(range(-1, 2), repeat=3)
            if sum(x * x for x in n) <= 1}
    print("hf_energy S=1 star(g=0.1) %.17g" % hf_energy(1, star))
    print("hf_energy S=1 zero %.17g" % hf_energy(1, {}))
    v = pair((1, 0, 0), 0.1)
    print("c2 S=1 pair(1,0,0) g=0.1 direct=%.17g exchange=%.17g" % c2_terms(1, v))
    print("J  S=1 pair(1,0,0) g=0.1 direct2=%.17g exchange2=%.17g" % c2_terms(1, v, power=2))
    print("c2 S=1 pair(1,0,0) g=0.1 outer=2 direct=%.17g exchange=%.17g" % c2_terms(1, v, outer=2))
    v2 = pair((1, 1, 0), 0.25)
    v2.update(pair((1, 0, 0), 0.5))
    print("c2 S=2 two-pair direct=%.17g exchange=%.17g" % c2_terms(2, v2))
    print("i_mu S=1 p=(1,0,0) %.17g" % i_mu(1, (1, 0, 0)))
    print("i_mu S=5 p=(2,1,0) %.17g" % i_mu(5, (2, 1, 0)))
    print("i_mu S=2 p=(5,0,0) %.17g" % i_mu(2, (5, 0, 0)))
