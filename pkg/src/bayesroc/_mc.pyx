# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels.

Same counter-based stream as the pure-Python fallback in ``_mc_py``:
u64(seed, c) = mix64(seed + c * GAMMA) with trial i drawing at counters
(i << 32) + j.  The arithmetic below is kept operation-for-operation
identical to the fallback so both backends produce bit-identical tallies;
do not reorder float expressions here without mirroring ``_mc_py``.
"""

from libc.math cimport log, sqrt
from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    #include <stdint.h>
    """
    ctypedef unsigned long long uint64_t

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t MIX2 = 0x94D049BB133111EBULL
cdef double TWO53_INV = 2.0 ** -53

KIND_RAYLEIGH_RICIAN = 0
KIND_GAUSSIAN = 1


cdef inline uint64_t _u64(uint64_t seed, uint64_t counter) nogil:
    cdef uint64_t z = seed + counter * GAMMA
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t seed, uint64_t counter) nogil:
    return <double>(_u64(seed, counter) >> 11) * TWO53_INV


cdef inline uint64_t _polar_pair(uint64_t seed, uint64_t base, uint64_t j,
                                 double *z1, double *z2) nogil:
    cdef double u1, u2, v1, v2, s, f
    while True:
        u1 = _uniform(seed, base + j)
        u2 = _uniform(seed, base + j + 1)
        j += 2
        v1 = 2.0 * u1 - 1.0
        v2 = 2.0 * u2 - 1.0
        s = v1 * v1 + v2 * v2
        if 0.0 < s < 1.0:
            break
    f = sqrt(-2.0 * log(s) / s)
    z1[0] = v1 * f
    z2[0] = v2 * f
    return j


def u64(seed, counter):
    return _u64(<uint64_t>seed, <uint64_t>counter)


def uniform(seed, counter):
    return _uniform(<uint64_t>seed, <uint64_t>counter)


def simulate_block(seed, start, count, double prior, int kind, double param,
                   double threshold):
    """Tally trials [start, start+count) into the four confusion cells."""
    cdef uint64_t seed_c = <uint64_t>seed
    cdef uint64_t start_c = <uint64_t>start
    cdef uint64_t count_c = <uint64_t>count
    cdef long long tp = 0, fp = 0, md = 0, tn = 0
    cdef uint64_t i, base
    cdef double amp, a, z1, z2
    cdef bint present, positive
    with nogil:
        for i in range(start_c, start_c + count_c):
            base = i << 32
            present = _uniform(seed_c, base) < prior
            if kind == 0:
                if present:
                    _polar_pair(seed_c, base, 1, &z1, &z2)
                    a = param + z1
                    amp = sqrt(a * a + z2 * z2)
                else:
                    amp = sqrt(-2.0 * log(1.0 - _uniform(seed_c, base + 1)))
            else:
                _polar_pair(seed_c, base, 1, &z1, &z2)
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


def sequence_block(seed, start, count, double prior, int kind, double param,
                   double threshold, int looks):
    """Episode tallies grouped by positive-look count."""
    cdef uint64_t seed_c = <uint64_t>seed
    cdef uint64_t start_c = <uint64_t>start
    cdef uint64_t count_c = <uint64_t>count
    cdef long long *episodes = <long long *>calloc(looks + 1, sizeof(long long))
    cdef long long *present_counts = <long long *>calloc(looks + 1, sizeof(long long))
    if episodes == NULL or present_counts == NULL:
        free(episodes)
        free(present_counts)
        raise MemoryError()
    cdef uint64_t i, base, j
    cdef double amp, a, z1, z2
    cdef bint present
    cdef int k, n_pos
    try:
        with nogil:
            for i in range(start_c, start_c + count_c):
                base = i << 32
                present = _uniform(seed_c, base) < prior
                j = 1
                n_pos = 0
                for k in range(looks):
                    if kind == 0:
                        if present:
                            j = _polar_pair(seed_c, base, j, &z1, &z2)
                            a = param + z1
                            amp = sqrt(a * a + z2 * z2)
                        else:
                            amp = sqrt(-2.0 * log(1.0 - _uniform(seed_c, base + j)))
                            j += 1
                    else:
                        j = _polar_pair(seed_c, base, j, &z1, &z2)
                        amp = param + z1 if present else z1
                    if amp > threshold:
                        n_pos += 1
                episodes[n_pos] += 1
                if present:
                    present_counts[n_pos] += 1
        return (
            [episodes[k] for k in range(looks + 1)],
            [present_counts[k] for k in range(looks + 1)],
        )
    finally:
        free(episodes)
        free(present_counts)


def abstract_sequence_block(seed, start, count, double prior, double pd,
                            double pfa, int looks):
    """Bernoulli-look episode tallies (no amplitude model in the loop)."""
    cdef uint64_t seed_c = <uint64_t>seed
    cdef uint64_t start_c = <uint64_t>start
    cdef uint64_t count_c = <uint64_t>count
    cdef long long *episodes = <long long *>calloc(looks + 1, sizeof(long long))
    cdef long long *present_counts = <long long *>calloc(looks + 1, sizeof(long long))
    if episodes == NULL or present_counts == NULL:
        free(episodes)
        free(present_counts)
        raise MemoryError()
    cdef uint64_t i, base
    cdef double rate
    cdef bint present
    cdef int k, n_pos
    try:
        with nogil:
            for i in range(start_c, start_c + count_c):
                base = i << 32
                present = _uniform(seed_c, base) < prior
                rate = pd if present else pfa
                n_pos = 0
                for k in range(looks):
                    if _uniform(seed_c, base + 1 + <uint64_t>k) < rate:
                        n_pos += 1
                episodes[n_pos] += 1
                if present:
                    present_counts[n_pos] += 1
        return (
            [episodes[k] for k in range(looks + 1)],
            [present_counts[k] for k in range(looks + 1)],
        )
    finally:
        free(episodes)
        free(present_counts)
