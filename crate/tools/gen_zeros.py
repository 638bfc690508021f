#!/usr/bin/env python3
"""Generate a table of zeta-zero ordinates for tests and desk-scale runs.

Low zeros come from mpmath.zetazero; the bulk is located with a vectorised
Riemann-Siegel Z(t) (remainder terms C0..C3) on a fine grid and refined by
bisection. The total count is checked against the known index of the last
zero, and a random sample is checked against mpmath.

usage: gen_zeros.py COUNT OUT.txt
"""
import math
import sys

import mpmath
import numpy as np

LOW = 1000
GRID = 0.02
BISECT = 48


def phi_taylor(order=48):
    mpmath.mp.dps = 60

    def phi(p):
        return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)

    coeffs = mpmath.taylor(phi, mpmath.mpf(1) / 2, order)
    return np.array([float(c) for c in coeffs])


def derivative_polys(coeffs, k_max=9):
    # numpy polynomial in (p - 1/2), ascending coefficients
    polys = [np.polynomial.Polynomial(coeffs)]
    for _ in range(k_max):
        polys.append(polys[-1].deriv())
    return polys


def rs_theta(t):
    return (t / 2) * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3) + 31 / (80640 * t**5)


def make_z(polys):
    pi = np.pi

    def z(t):
        t = np.asarray(t, dtype=np.float64)
        a = np.sqrt(t / (2 * pi))
        n_max = np.floor(a).astype(np.int64)
        p = a - n_max
        th = rs_theta(t)
        out = np.zeros_like(t)
        top = int(n_max.max())
        for n in range(1, top + 1):
            mask = n_max >= n
            out += np.where(mask, np.cos(th - t * math.log(n)) / math.sqrt(n), 0.0)
        out *= 2
        d = [poly(p - 0.5) for poly in polys]
        c0 = d[0]
        c1 = -d[3] / (96 * pi**2)
        c2 = d[2] / (64 * pi**2) + d[6] / (18432 * pi**4)
        c3 = -d[1] / (64 * pi**2) - d[5] / (3840 * pi**4) - d[9] / (5308416 * pi**6)
        w = 1 / a
        rem = c0 + w * (c1 + w * (c2 + w * c3))
        sign = np.where((n_max - 1) % 2 == 0, 1.0, -1.0)
        return out + sign * rem / np.sqrt(a)

    return z


def main():
    count = int(sys.argv[1])
    out_path = sys.argv[2]
    mpmath.mp.dps = 25
    low = [float(mpmath.zetazero(n).imag) for n in range(1, LOW + 1)]
    z = make_z(derivative_polys(phi_taylor()))

    target = float(mpmath.zetazero(count).imag)
    start = (low[-1] + float(mpmath.zetazero(LOW + 1).imag)) / 2
    stop = target + 0.5 * (float(mpmath.zetazero(count + 1).imag) - target)

    roots = []
    chunk = 200000
    lo_t = start
    while lo_t < stop:
        grid = lo_t + GRID * np.arange(chunk + 1)
        grid = grid[grid <= stop + GRID]
        vals = z(grid)
        idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
        a, b = grid[idx], grid[idx + 1]
        fa = vals[idx]
        # a local minimum of |Z| without a sign change may hide a close pair
        mag = np.abs(vals)
        same = (np.sign(vals[:-2]) == np.sign(vals[1:-1])) & (np.sign(vals[1:-1]) == np.sign(vals[2:]))
        dip = np.nonzero(same & (mag[1:-1] < mag[:-2]) & (mag[1:-1] < mag[2:]))[0] + 1
        extra_a, extra_b, extra_f = [], [], []
        for i in dip:
            fine = np.linspace(grid[i - 1], grid[i + 1], 401)
            fv = z(fine)
            j = np.nonzero(np.sign(fv[:-1]) != np.sign(fv[1:]))[0]
            extra_a.extend(fine[j])
            extra_b.extend(fine[j + 1])
            extra_f.extend(fv[j])
        if extra_a:
            print(f"recovered {len(extra_a)} roots near close pairs", file=sys.stderr)
            a = np.concatenate([a, extra_a])
            b = np.concatenate([b, extra_b])
            fa = np.concatenate([fa, extra_f])
        for _ in range(BISECT):
            m = 0.5 * (a + b)
            fm = z(m)
            left = np.sign(fm) == np.sign(fa)
            a = np.where(left, m, a)
            fa = np.where(left, fm, fa)
            b = np.where(left, b, m)
        roots.extend(np.sort(0.5 * (a + b)))
        lo_t = grid[-1]
        print(f"{lo_t:.1f} {len(low) + len(roots)}", file=sys.stderr)

    zeros = low + [r for r in roots if r <= stop]
    if len(zeros) != count:
        sys.exit(f"count mismatch: {len(zeros)} != {count}")

    rng = np.random.default_rng(7)
    worst = 0.0
    for n in sorted(rng.choice(np.arange(LOW + 1, count + 1), 40, replace=False)):
        ref = float(mpmath.zetazero(int(n)).imag)
        worst = max(worst, abs(ref - zeros[n - 1]))
    print(f"max sample deviation vs mpmath: {worst:.3e}", file=sys.stderr)
    if worst > 5e-9:
        sys.exit("sample check failed")

    height = zeros[-1]
    with open(out_path, "w") as fh:
        fh.write(f"# first {count} nontrivial zeta zero ordinates\n")
        fh.write("# generated by tools/gen_zeros.py (mpmath + Riemann-Siegel)\n")
        fh.write(f"# height={height:.9f}\n")
        fh.write("# precision=1e-8\n")
        for g in zeros:
            fh.write(f"{g:.9f}\n")


if __name__ == "__main__":
    main()
