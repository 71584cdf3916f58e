"""Independent naive reference implementations used as test oracles.

Everything here is deliberately brute force (python loops, explicit
formula transcriptions, exhaustive enumeration) and shares no code with
the library paths it checks.
"""

from __future__ import annotations

import cmath
import itertools
import math

import numpy as np


# ---------------------------------------------------------------------------
# quantization / GLCM / Haralick


def oracle_quantize(img, levels):
    h, w = img.shape
    out = np.zeros((h, w), dtype=int)
    for r in range(h):
        for c in range(w):
            out[r, c] = (int(img[r, c]) * levels) // 256
    return out


def oracle_glcm(values, levels, dx, dy):
    """Normalized symmetric co-occurrence matrix via explicit pair listing."""
    h, w = values.shape
    counts = np.zeros((levels, levels), dtype=float)
    for r in range(h):
        for c in range(w):
            rr, cc = r + dy, c + dx
            if 0 <= rr < h and 0 <= cc < w:
                a, b = int(values[r, c]), int(values[rr, cc])
                counts[a, b] += 1
                counts[b, a] += 1
    return counts / counts.sum()


def oracle_haralick_stats(p):
    """The 13 Haralick statistics transcribed term by term (0-based levels)."""
    n = p.shape[0]
    px = [sum(p[i][j] for j in range(n)) for i in range(n)]
    py = [sum(p[i][j] for i in range(n)) for j in range(n)]
    mu_x = sum(i * px[i] for i in range(n))
    mu_y = sum(j * py[j] for j in range(n))
    sd_x = math.sqrt(sum((i - mu_x) ** 2 * px[i] for i in range(n)))
    sd_y = math.sqrt(sum((j - mu_y) ** 2 * py[j] for j in range(n)))

    p_sum = [0.0] * (2 * n - 1)
    p_diff = [0.0] * n
    for i in range(n):
        for j in range(n):
            p_sum[i + j] += p[i][j]
            p_diff[abs(i - j)] += p[i][j]

    def nlog(x):
        return math.log(x) if x > 0 else 0.0

    asm = sum(p[i][j] ** 2 for i in range(n) for j in range(n))
    contrast = sum(k * k * p_diff[k] for k in range(n))
    if sd_x > 0 and sd_y > 0:
        corr = (sum(i * j * p[i][j] for i in range(n) for j in range(n))
                - mu_x * mu_y) / (sd_x * sd_y)
    else:
        corr = 0.0
    ssq = sum((i - mu_x) ** 2 * p[i][j] for i in range(n) for j in range(n))
    idm = sum(p[i][j] / (1 + (i - j) ** 2) for i in range(n) for j in range(n))
    sum_avg = sum(k * p_sum[k] for k in range(2 * n - 1))
    sum_var = sum((k - sum_avg) ** 2 * p_sum[k] for k in range(2 * n - 1))
    sum_ent = -sum(p_sum[k] * nlog(p_sum[k]) for k in range(2 * n - 1))
    ent = -sum(p[i][j] * nlog(p[i][j]) for i in range(n) for j in range(n))
    mu_d = sum(k * p_diff[k] for k in range(n))
    diff_var = sum((k - mu_d) ** 2 * p_diff[k] for k in range(n))
    diff_ent = -sum(p_diff[k] * nlog(p_diff[k]) for k in range(n))

    hx = -sum(px[i] * nlog(px[i]) for i in range(n))
    hy = -sum(py[j] * nlog(py[j]) for j in range(n))
    hxy1 = -sum(p[i][j] * nlog(px[i] * py[j])
                for i in range(n) for j in range(n) if px[i] * py[j] > 0)
    hxy2 = -sum(px[i] * py[j] * nlog(px[i] * py[j])
                for i in range(n) for j in range(n) if px[i] * py[j] > 0)
    imc1 = (ent - hxy1) / max(hx, hy) if max(hx, hy) > 0 else 0.0
    imc2 = math.sqrt(max(0.0, 1.0 - math.exp(-2.0 * (hxy2 - ent))))

    return [asm, contrast, corr, ssq, idm, sum_avg, sum_var, sum_ent, ent,
            diff_var, diff_ent, imc1, imc2]


def oracle_haralick_features(img, levels=32):
    q = oracle_quantize(img, levels)
    dirs = [(1, 0), (1, 1), (0, 1), (-1, 1)]
    per_dir = [oracle_haralick_stats(oracle_glcm(q, levels, dx, dy))
               for dx, dy in dirs]
    return [sum(col) / len(dirs) for col in zip(*per_dir)]


# ---------------------------------------------------------------------------
# first-order statistics (sorting / counting based)


def oracle_percentile(sorted_vals, q):
    pos = q / 100.0 * (len(sorted_vals) - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, len(sorted_vals) - 1)
    frac = pos - lo
    return sorted_vals[lo] + frac * (sorted_vals[hi] - sorted_vals[lo])


def oracle_fos_features(img):
    vals = sorted(float(v) for v in img.ravel())
    n = len(vals)
    mean = sum(vals) / n
    var = sum((v - mean) ** 2 for v in vals) / n
    sd = math.sqrt(var)
    median = oracle_percentile(vals, 50)

    counts = {}
    for v in img.ravel():
        counts[int(v)] = counts.get(int(v), 0) + 1
    mode = min(k for k in counts if counts[k] == max(counts.values()))

    if sd > 0:
        skew = sum(((v - mean) / sd) ** 3 for v in vals) / n
        kurt = sum(((v - mean) / sd) ** 4 for v in vals) / n
    else:
        skew = kurt = 0.0
    energy = sum(v * v for v in vals)
    entropy = -sum((c / n) * math.log(c / n) for c in counts.values())
    lo, hi = vals[0], vals[-1]
    cov = sd / mean if mean != 0 else 0.0

    return [mean, var, median, float(mode), skew, kurt, energy, entropy,
            lo, hi, cov,
            oracle_percentile(vals, 10), oracle_percentile(vals, 25),
            oracle_percentile(vals, 75), oracle_percentile(vals, 90),
            hi - lo]


# ---------------------------------------------------------------------------
# Fourier power spectrum (naive O(M^2 N^2) DFT) and binning


def oracle_power_spectrum(img):
    """Centered power spectrum by direct DFT summation; DC kept."""
    h, w = img.shape
    power = np.zeros((h, w))
    for v in range(h):
        for u in range(w):
            acc = 0.0 + 0.0j
            for y in range(h):
                for x in range(w):
                    acc += float(img[y, x]) * cmath.exp(
                        -2j * cmath.pi * (u * x / w + v * y / h))
            power[v, u] = acc.real ** 2 + acc.imag ** 2
    # shift DC to the center cell
    return np.roll(np.roll(power, h // 2, axis=0), w // 2, axis=1)


def oracle_fps_bins(power, n_radial=9, n_angular=8):
    """Ring/sector sums by direct row-major loop over the given spectrum."""
    h, w = power.shape
    cy, cx = h // 2, w // 2
    dmax = 0.0
    for r in range(h):
        for c in range(w):
            dmax = max(dmax, math.hypot(r - cy, c - cx))
    radial = [0.0] * n_radial
    angular = [0.0] * n_angular
    for r in range(h):
        for c in range(w):
            if r == cy and c == cx:
                continue
            dy, dx = r - cy, c - cx
            rad = math.hypot(dy, dx) / dmax
            ri = min(n_radial - 1, int(math.ceil(rad * n_radial)) - 1)
            radial[ri] += power[r, c]
            theta = math.atan2(dy, dx)
            if theta < 0:
                theta += math.pi
            if theta >= math.pi:
                theta -= math.pi
            ai = min(n_angular - 1, int(theta // (math.pi / n_angular)))
            angular[ai] += power[r, c]
    return radial + angular


# ---------------------------------------------------------------------------
# GLRLM via explicit run enumeration


def oracle_runs(values, direction):
    """List of (level, length) maximal runs along the given direction."""
    h, w = values.shape
    if direction == 0:
        lines = [[values[r, c] for c in range(w)] for r in range(h)]
    elif direction == 90:
        lines = [[values[r, c] for r in range(h)] for c in range(w)]
    elif direction == 45:
        starts = [(r, 0) for r in range(h)] + [(h - 1, c) for c in range(1, w)]
        lines = []
        for r0, c0 in starts:
            line, r, c = [], r0, c0
            while 0 <= r < h and 0 <= c < w:
                line.append(values[r, c])
                r, c = r - 1, c + 1
            lines.append(line)
    elif direction == 135:
        starts = [(r, 0) for r in range(h)] + [(0, c) for c in range(1, w)]
        lines = []
        for r0, c0 in starts:
            line, r, c = [], r0, c0
            while 0 <= r < h and 0 <= c < w:
                line.append(values[r, c])
                r, c = r + 1, c + 1
            lines.append(line)
    else:
        raise ValueError(direction)

    runs = []
    for line in lines:
        i = 0
        while i < len(line):
            j = i
            while j < len(line) and line[j] == line[i]:
                j += 1
            runs.append((int(line[i]), j - i))
            i = j
    return runs


def oracle_glrlm_stats(runs, levels, n_pixels):
    """Table-transcribed run statistics; i and j are 1-based."""
    total = len(runs)
    sre = sum(1.0 / (j * j) for _, j in runs) / total
    lre = sum(float(j * j) for _, j in runs) / total
    by_level = {}
    by_len = {}
    for lev, j in runs:
        by_level[lev] = by_level.get(lev, 0) + 1
        by_len[j] = by_len.get(j, 0) + 1
    gln = sum(v * v for v in by_level.values()) / total
    rln = sum(v * v for v in by_len.values()) / total
    rp = total / n_pixels
    lglre = sum(1.0 / ((lev + 1) ** 2) for lev, _ in runs) / total
    hglre = sum(float((lev + 1) ** 2) for lev, _ in runs) / total
    srlgle = sum(1.0 / ((lev + 1) ** 2 * j * j) for lev, j in runs) / total
    srhgle = sum((lev + 1) ** 2 / (j * j) for lev, j in runs) / total
    lrlgle = sum(j * j / ((lev + 1) ** 2) for lev, j in runs) / total
    lrhgle = sum(float((lev + 1) ** 2 * j * j) for lev, j in runs) / total
    return [sre, lre, gln, rln, rp, lglre, hglre, srlgle, srhgle,
            lrlgle, lrhgle]


def oracle_glrlm_features(img, levels=32):
    q = oracle_quantize(img, levels)
    per_dir = [oracle_glrlm_stats(oracle_runs(q, d), levels, q.size)
               for d in (0, 45, 90, 135)]
    return [sum(col) / 4 for col in zip(*per_dir)]


# ---------------------------------------------------------------------------
# LBP per-pixel reference


def oracle_lbp_histogram(img, radius, points):
    h, w = img.shape
    m = int(math.ceil(radius))
    bins = [0] * (points + 2)
    offs = []
    for k in range(points):
        ang = 2.0 * math.pi * k / points
        oy = radius * math.sin(ang)
        ox = radius * math.cos(ang)
        offs.append((int(math.floor(oy)), int(math.floor(ox)),
                     oy - math.floor(oy), ox - math.floor(ox)))
    for r in range(m, h - m):
        for c in range(m, w - m):
            center = float(img[r, c])
            bits = []
            for dy0, dx0, ty, tx in offs:
                y0, x0 = r + dy0, c + dx0
                y1, x1 = min(y0 + 1, h - 1), min(x0 + 1, w - 1)
                v = ((float(img[y0, x0]) - center) * (1 - ty) * (1 - tx)
                     + (float(img[y0, x1]) - center) * (1 - ty) * tx
                     + (float(img[y1, x0]) - center) * ty * (1 - tx)
                     + (float(img[y1, x1]) - center) * ty * tx)
                bits.append(1 if v >= 0 else 0)
            trans = sum(bits[k] != bits[k - 1] for k in range(points))
            if trans <= 2:
                bins[sum(bits)] += 1
            else:
                bins[points + 1] += 1
    total = sum(bins)
    return [b / total for b in bins]


def oracle_lbp_features(img):
    out = []
    for radius, points in ((1, 8), (2, 16), (3, 24)):
        hist = oracle_lbp_histogram(img, radius, points)
        out.append(sum(b * b for b in hist))
        out.append(-sum(b * math.log(b) for b in hist if b > 0))
    return out


# ---------------------------------------------------------------------------
# expected mutual information by exhaustive permutation


def oracle_mi_from_labels(u, v):
    n = len(u)
    joint = {}
    cu = {}
    cv = {}
    for a, b in zip(u, v):
        joint[(a, b)] = joint.get((a, b), 0) + 1
        cu[a] = cu.get(a, 0) + 1
        cv[b] = cv.get(b, 0) + 1
    mi = 0.0
    for (a, b), c in joint.items():
        mi += (c / n) * math.log(n * c / (cu[a] * cv[b]))
    return mi


def oracle_expected_mi(u, v):
    """Average MI over all n! orderings of v (n <= 8 feasible)."""
    total = 0.0
    count = 0
    for perm in itertools.permutations(v):
        total += oracle_mi_from_labels(u, perm)
        count += 1
    return total / count


# ---------------------------------------------------------------------------
# finite differences


def central_difference(f, params, h=1e-5):
    """Gradient of scalar f(params) by central differences, elementwise."""
    grad = np.zeros_like(params, dtype=float)
    flat = params.ravel()
    gflat = grad.ravel()
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + h
        fp = f()
        flat[i] = orig - h
        fm = f()
        flat[i] = orig
        gflat[i] = (fp - fm) / (2 * h)
    return grad
