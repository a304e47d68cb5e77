"""Pure numpy versions of the pair kernels, used when the extension is unavailable."""
import math

import numpy as np

_BLOCK = 512


def variance_pair_sum(w, pxx, pyy, pzz, kz, d):
    w = np.ascontiguousarray(w, dtype=float)
    kz = np.ascontiguousarray(kz, dtype=float)
    pxx, pyy, pzz = (np.ascontiguousarray(a, dtype=float) for a in (pxx, pyy, pzz))
    s = np.sin(kz * d)
    c = np.cos(kz * d)
    ks, kc = kz * s, kz * c
    rows = np.empty(w.size)
    for a in range(0, w.size, _BLOCK):
        b = min(a + _BLOCK, w.size)
        ds = kc[a:b, None] * s[None, :] + s[a:b, None] * kc[None, :]
        dc = ks[a:b, None] * c[None, :] + c[a:b, None] * ks[None, :]
        pt = pxx[a:b, None] * pxx[None, :] + pyy[a:b, None] * pyy[None, :]
        term = pt * ds * ds + pzz[a:b, None] * pzz[None, :] * dc * dc
        rows[a:b] = w[a:b] * (term @ w)
    return math.fsum(rows)


def variance_pair_terms(pxx1, pyy1, pzz1, kz1, pxx2, pyy2, pzz2, kz2, d):
    s1, c1 = np.sin(kz1 * d), np.cos(kz1 * d)
    s2, c2 = np.sin(kz2 * d), np.cos(kz2 * d)
    ds = kz1 * c1 * s2 + kz2 * s1 * c2
    dc = kz1 * s1 * c2 + kz2 * c1 * s2
    return (pxx1 * pxx2 + pyy1 * pyy2) * ds * ds + pzz1 * pzz2 * dc * dc
