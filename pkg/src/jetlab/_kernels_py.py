"""Pure-Python (numpy) twin of the compiled ``_kernels`` extension."""

import numpy as np

_CHUNK = 1 << 16


def _eval_polys(exps, coeffs, offsets, points, p):
    mask = np.ones(points.shape[0], dtype=bool)
    for j in range(len(offsets) - 1):
        acc = np.zeros(points.shape[0], dtype=np.int64)
        for t in range(offsets[j], offsets[j + 1]):
            val = np.full(points.shape[0], coeffs[t], dtype=np.int64)
            for v in np.nonzero(exps[t])[0]:
                col = points[:, v]
                for _ in range(int(exps[t, v])):
                    val = val * col % p
            acc += val
        mask &= acc % p == 0
    return mask


def common_zeros(exps, coeffs, offsets, points, p):
    """``mask[k] == 1`` iff every compiled polynomial vanishes mod ``p`` at ``points[k]``."""
    points = np.asarray(points, dtype=np.int64)
    if points.shape[0] == 0:
        return np.ones(0, dtype=np.uint8)
    return _eval_polys(np.asarray(exps), np.asarray(coeffs), np.asarray(offsets), points, p).astype(np.uint8)


def grid_zeros(exps, coeffs, offsets, nvars, p):
    """Flat base-``p`` indices (first variable most significant) of all common zeros."""
    total = p**nvars
    exps, coeffs, offsets = np.asarray(exps), np.asarray(coeffs), np.asarray(offsets)
    weights = p ** np.arange(nvars - 1, -1, -1, dtype=np.int64)
    hits = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        points = (idx[:, None] // weights[None, :]) % p
        hits.append(idx[_eval_polys(exps, coeffs, offsets, points, p)])
    return np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)
