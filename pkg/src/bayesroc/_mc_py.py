"""Pure-Python simulation kernels (fallback when the extension is absent).

The random stream is counter-based so that trial tallies are independent
of how trials are partitioned across workers:

    u64(seed, c) = mix64((seed + c * GAMMA) mod 2^64)

where mix64 is the SplitMix64 finalizer and trial i draws at counters
(i << 32) + 0, 1, 2, ...  Every trial owns a disjoint counter block, so a
worker can regenerate any trial's draws from (seed, trial index) alone.
The compiled kernel in ``_mc.pyx`` implements the identical arithmetic;
results are required to match bit for bit, which the test suite checks.

Draw budget per trial: counter 0 decides target presence, counters 1+
feed the amplitude draw (one uniform for a Rayleigh variate, a
rejection-sampled uniform pair per normal pair for a Rician one).
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53_INV = 2.0 ** -53

# Model tags shared with the compiled kernel.
KIND_RAYLEIGH_RICIAN = 0
KIND_GAUSSIAN = 1


def u64(seed: int, counter: int) -> int:
    z = (seed + counter * GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def uniform(seed: int, counter: int) -> float:
    """Uniform in [0, 1) with 53 random bits."""
    return (u64(seed, counter) >> 11) * _TWO53_INV


def _polar_pair(seed: int, base: int, j: int):
    """Standard normal pair by the polar rejection method.

    Returns (z1, z2, next_draw_index); consumes a variable number of
    uniform pairs from the trial's own counter block.
    """
    while True:
        u1 = uniform(seed, base + j)
        u2 = uniform(seed, base + j + 1)
        j += 2
        v1 = 2.0 * u1 - 1.0
        v2 = 2.0 * u2 - 1.0
        s = v1 * v1 + v2 * v2
        if 0.0 < s < 1.0:
            break
    f = math.sqrt(-2.0 * math.log(s) / s)
    return v1 * f, v2 * f, j


def simulate_block(
    seed: int,
    start: int,
    count: int,
    prior: float,
    kind: int,
    param: float,
    threshold: float,
):
    """Tally trials [start, start+count) into the four confusion cells.

    Returns (true_positives, false_positives, missed, true_negatives).
    """
    tp = fp = md = tn = 0
    for i in range(start, start + count):
        base = (i << 32) & MASK64
        present = uniform(seed, base) < prior
        if kind == KIND_RAYLEIGH_RICIAN:
            if present:
                z1, z2, _ = _polar_pair(seed, base, 1)
                a = param + z1
                amp = math.sqrt(a * a + z2 * z2)
            else:
                amp = math.sqrt(-2.0 * math.log(1.0 - uniform(seed, base + 1)))
        else:
            z1, _, _ = _polar_pair(seed, base, 1)
            amp = param + z1 if present else z1
        positive = amp > threshold
        if present:
            if positive:
                tp += 1
            else:
                md += 1
        else:
            if positive:
                fp += 1
            else:
                tn += 1
    return tp, fp, md, tn


def sequence_block(
    seed: int,
    start: int,
    count: int,
    prior: float,
    kind: int,
    param: float,
    threshold: float,
    looks: int,
):
    """Episodes [start, start+count), each one presence draw + `looks` tests.

    Returns two lists indexed by the number of positive looks:
    episode counts and target-present counts.
    """
    episodes = [0] * (looks + 1)
    present_counts = [0] * (looks + 1)
    for i in range(start, start + count):
        base = (i << 32) & MASK64
        present = uniform(seed, base) < prior
        j = 1
        n_pos = 0
        for _ in range(looks):
            if kind == KIND_RAYLEIGH_RICIAN:
                if present:
                    z1, z2, j = _polar_pair(seed, base, j)
                    a = param + z1
                    amp = math.sqrt(a * a + z2 * z2)
                else:
                    amp = math.sqrt(-2.0 * math.log(1.0 - uniform(seed, base + j)))
                    j += 1
            else:
                z1, _, j = _polar_pair(seed, base, j)
                amp = param + z1 if present else z1
            if amp > threshold:
                n_pos += 1
        episodes[n_pos] += 1
        if present:
            present_counts[n_pos] += 1
    return episodes, present_counts


def abstract_sequence_block(
    seed: int,
    start: int,
    count: int,
    prior: float,
    pd: float,
    pfa: float,
    looks: int,
):
    """Like sequence_block but each look is a direct Bernoulli(pd | pfa) test.

    Exercises the belief arithmetic alone, with no amplitude model in the
    loop.
    """
    episodes = [0] * (looks + 1)
    present_counts = [0] * (looks + 1)
    for i in range(start, start + count):
        base = (i << 32) & MASK64
        present = uniform(seed, base) < prior
        rate = pd if present else pfa
        n_pos = 0
        for k in range(looks):
            if uniform(seed, base + 1 + k) < rate:
                n_pos += 1
        episodes[n_pos] += 1
        if present:
            present_counts[n_pos] += 1
    return episodes, present_counts
