#!/usr/bin/env python3
"""Regenerates data/ks_n128_tw_lambda0.1828.txt.

Walks the modified Kuramoto-Sivashinsky solution set from the trivial state:
  1. k=2 equilibrium branch born at lambda = (A + 4) / 16,
  2. symmetry-breaking branch off it near lambda ~ 0.484,
  3. travelling-wave branch off that near lambda ~ 0.183,
then resolves the wave at lambda = 0.1828 on a 128-point grid.  The residual
conventions (2/3 filter on w*w', Nyquist dropped from d/dx, phase row scaled
by 1/n) mirror src/problems/ks.cpp.  Development-only; needs numpy.
"""
import sys
import numpy as np

A = 8.09
LAMBDA_TARGET = 0.1828


def operators(n):
    k = np.fft.fftfreq(n, 1.0 / n)
    eye = np.eye(n)

    def op(mult):
        return np.real(np.fft.ifft(mult[:, None] * np.fft.fft(eye, axis=0), axis=0))

    k1 = 1j * k
    k1[n // 2] = 0
    return op(k1), op(-(k**2)), op(k**4), op((np.abs(k) < n / 3.0).astype(float))


class Ks:
    def __init__(self, n, wref):
        self.n = n
        self.d1, self.d2, self.d4, self.filt = operators(n)
        self.wref = wref
        self.dref = self.d1 @ wref

    def residual(self, z):
        n = self.n
        w, c, lam = z[:n], z[n], z[n + 1]
        wx = self.d1 @ w
        r = -c * wx + self.filt @ (w * wx) + self.d2 @ w + lam * (self.d4 @ w) - A * np.sin(w)
        return np.concatenate([r, [np.dot(w - self.wref, self.dref) / n]])

    def jacobian(self, z):
        n = self.n
        w, c, lam = z[:n], z[n], z[n + 1]
        wx = self.d1 @ w
        jw = (-c * self.d1 + self.filt @ (np.diag(wx) + np.diag(w) @ self.d1) + self.d2
              + lam * self.d4 - A * np.diag(np.cos(w)))
        jac = np.zeros((n + 1, n + 2))
        jac[:n, :n] = jw
        jac[:n, n] = -wx
        jac[:n, n + 1] = self.d4 @ w
        jac[n, :n] = self.dref / n
        return jac


def newton(p, z, t, zb, h, tol=1e-8):
    for _ in range(30):
        r = p.residual(z)
        g = t @ (z - zb) - h
        if np.linalg.norm(r) < tol and abs(g) < 1e-10:
            return z, True
        d = np.linalg.solve(np.vstack([p.jacobian(z), t]), -np.concatenate([r, [g]]))
        z = z + d
        if not np.all(np.isfinite(z)) or np.linalg.norm(d) > 1e3:
            return z, False
    return z, np.linalg.norm(p.residual(z)) < tol


def trace(p, z, t, h, stop, hmax=0.3, max_steps=2000):
    """Pseudo-arclength until stop(prev, next) fires; returns (prev, next, tangent)."""
    for _ in range(max_steps):
        while True:
            zn, ok = newton(p, z + h * t, t, z, h)
            if ok:
                break
            h /= 2
            if h < 1e-9:
                raise RuntimeError("step underflow while tracing")
        tn = (zn - z) / np.linalg.norm(zn - z)
        if stop(z, zn):
            return z, zn, t
        z, t, h = zn, tn, min(1.5 * h, hmax)
    raise RuntimeError("branch point not reached")


def branch_point(p, a, b, t):
    n = p.n

    def sign(z):
        return np.linalg.slogdet(np.vstack([p.jacobian(z), t]))[0]

    sa, lo, hi = sign(a), 0.0, 1.0
    seg = b - a
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        zm, _ = newton(p, a + mid * seg, t, a, mid * (t @ seg))
        lo, hi = (mid, hi) if sign(zm) == sa else (lo, mid)
    # second kernel direction, orthogonal to the branch tangent
    _, _, vt = np.linalg.svd(p.jacobian(zm))
    cands = [v - (v @ t) * t for v in vt[-2:]]
    phi = max(cands, key=np.linalg.norm)
    return zm, phi / np.linalg.norm(phi)


def main(out_path):
    n = 64
    x = 2 * np.pi * np.arange(n) / n
    p = Ks(n, np.sin(2 * x))
    e_lam = np.zeros(n + 2)
    e_lam[n + 1] = 1.0

    lam0 = (A + 4.0) / 16.0 - 0.01
    z = np.concatenate([0.5 * np.sin(2 * x), [0.0, lam0]])
    z, _ = newton(p, z, e_lam, z, 0.0)
    z2, _ = newton(p, z - 0.002 * e_lam, e_lam, z, -0.002)
    t = (z2 - z) / np.linalg.norm(z2 - z)

    a, b, t = trace(p, z, t, 0.05, lambda u, v: u[n + 1] > 0.486 >= v[n + 1])
    zb, phi = branch_point(p, a, b, t)
    a, b, t = trace(p, zb, phi, 0.05, lambda u, v: u[n + 1] > 0.1816 >= v[n + 1])
    zb, phi = branch_point(p, a, b, t)
    print(f"travelling-wave branch point at lambda = {zb[n + 1]:.6f}", file=sys.stderr)
    a, b, t = trace(p, zb, phi, 0.05, lambda u, v: v[n + 1] < LAMBDA_TARGET)

    # spectral interpolation onto 128 points, then pin lambda exactly
    n2 = 128
    coeff = np.fft.rfft(b[:n]) / n
    pad = np.zeros(n2 // 2 + 1, complex)
    pad[: n // 2] = coeff[: n // 2]
    w = np.fft.irfft(pad * n2, n2)
    p2 = Ks(n2, w)
    e2 = np.zeros(n2 + 2)
    e2[n2 + 1] = 1.0
    z = np.concatenate([w, [b[n], LAMBDA_TARGET]])
    z, ok = newton(p2, z, e2, z, 0.0)
    if not ok:
        raise RuntimeError("final Newton solve failed")
    # template = converged profile (phase row vanishes identically)
    p2 = Ks(n2, z[:n2].copy())
    print(f"c = {z[n2]:.6g}, |F| = {np.linalg.norm(p2.residual(z)):.3e}", file=sys.stderr)
    with open(out_path, "w") as fh:
        fh.write(" ".join(f"{v:.17g}" for v in z) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/ks_n128_tw_lambda0.1828.txt")
