"""Slow, direct reference implementations used to check the vectorized code.

Everything here works on plain Python lists with explicit loops so that it
shares no code path with the library.
"""

import cmath
import math


def to_rows(img):
    return [[int(v) for v in row] for row in img.pixels.tolist()]


def direct_dft2(rows):
    """Double-sum DFT, rows indexed by x/u and columns by y/v."""
    h = len(rows)
    w = len(rows[0])
    out = [[0j] * w for _ in range(h)]
    for u in range(h):
        for v in range(w):
            acc = 0j
            for x in range(h):
                for y in range(w):
                    acc += rows[x][y] * cmath.exp(-2j * math.pi * (u * x / h + v * y / w))
            out[u][v] = acc
    return out


def brute_local_std(rows, m):
    h = len(rows)
    w = len(rows[0])
    half = m // 2
    out = [[0.0] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            vals = []
            for dy in range(-half, half + 1):
                for dx in range(-half, half + 1):
                    yy = min(max(y + dy, 0), h - 1)
                    xx = min(max(x + dx, 0), w - 1)
                    vals.append(float(rows[yy][xx]))
            mu = math.fsum(vals) / len(vals)
            out[y][x] = math.sqrt(math.fsum((v - mu) ** 2 for v in vals) / len(vals))
    return out


def selection_rank_desc(values):
    """Repeatedly pick the largest remaining value, lowest index on ties."""
    remaining = list(range(len(values)))
    order = []
    while remaining:
        best = remaining[0]
        for i in remaining[1:]:
            if values[i] > values[best]:
                best = i
        order.append(best)
        remaining.remove(best)
    return order


def pearson(xs, ys):
    n = len(xs)
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = math.fsum((a - mx) ** 2 for a in xs)
    syy = math.fsum((b - my) ** 2 for b in ys)
    if sxx == 0 or syy == 0:
        return 0.0
    return sxy / math.sqrt(sxx * syy)


def list_pairs(rows, direction):
    h = len(rows)
    w = len(rows[0])
    step = {"horizontal": (0, 1), "vertical": (1, 0), "diagonal": (1, 1)}[direction]
    pairs = []
    for y in range(h):
        for x in range(w):
            yy, xx = y + step[0], x + step[1]
            if yy < h and xx < w:
                pairs.append((rows[y][x], rows[yy][xx]))
    return pairs


def brute_adjacent(rows, direction):
    pairs = list_pairs(rows, direction)
    return pearson([float(a) for a, _ in pairs], [float(b) for _, b in pairs])


def brute_glcm_correlation(rows, levels=8, offset=(0, 1)):
    h = len(rows)
    w = len(rows[0])
    dy, dx = offset
    counts = {}
    total = 0
    for y in range(h):
        for x in range(w):
            yy, xx = y + dy, x + dx
            if 0 <= yy < h and 0 <= xx < w:
                a = min(rows[y][x] * levels // 256, levels - 1)
                b = min(rows[yy][xx] * levels // 256, levels - 1)
                for key in ((a, b), (b, a)):
                    counts[key] = counts.get(key, 0) + 1
                total += 2
    p = {k: c / total for k, c in counts.items()}
    mu_i = math.fsum(i * v for (i, _), v in p.items())
    mu_j = math.fsum(j * v for (_, j), v in p.items())
    var_i = math.fsum((i - mu_i) ** 2 * v for (i, _), v in p.items())
    var_j = math.fsum((j - mu_j) ** 2 * v for (_, j), v in p.items())
    if var_i == 0 or var_j == 0:
        return 0.0
    cov = math.fsum((i - mu_i) * (j - mu_j) * v for (i, j), v in p.items())
    return cov / math.sqrt(var_i * var_j)


def brute_corr2(rows_a, rows_b):
    xs = [float(v) for row in rows_a for v in row]
    ys = [float(v) for row in rows_b for v in row]
    return pearson(xs, ys)
