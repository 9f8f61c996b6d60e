# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled amplitude-update kernels.

Mirrors _kernels_py exactly (same signatures and semantics); see that
module for the conventions. Loops run over bit-strided index pairs so a
call touches each amplitude once.
"""


def apply_1q(double complex[::1] amps, double complex[:, :] m, Py_ssize_t q):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t step = (<Py_ssize_t>1) << q
    cdef Py_ssize_t mask = step - 1
    cdef double complex m00 = m[0, 0], m01 = m[0, 1], m10 = m[1, 0], m11 = m[1, 1]
    cdef Py_ssize_t g, i0, i1
    cdef double complex a, b
    for g in range(half):
        i0 = ((g >> q) << (q + 1)) | (g & mask)
        i1 = i0 | step
        a = amps[i0]
        b = amps[i1]
        amps[i0] = m00 * a + m01 * b
        amps[i1] = m10 * a + m11 * b


cdef inline Py_ssize_t _insert_zero_bit(Py_ssize_t x, Py_ssize_t pos) nogil:
    return ((x >> pos) << (pos + 1)) | (x & (((<Py_ssize_t>1) << pos) - 1))


def apply_2q(double complex[::1] amps, double complex[:, :] m, Py_ssize_t qa, Py_ssize_t qb):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef Py_ssize_t lo = qa if qa < qb else qb
    cdef Py_ssize_t hi = qa ^ qb ^ lo
    cdef Py_ssize_t sa = (<Py_ssize_t>1) << qa
    cdef Py_ssize_t sb = (<Py_ssize_t>1) << qb
    cdef double complex m00 = m[0, 0], m01 = m[0, 1], m02 = m[0, 2], m03 = m[0, 3]
    cdef double complex m10 = m[1, 0], m11 = m[1, 1], m12 = m[1, 2], m13 = m[1, 3]
    cdef double complex m20 = m[2, 0], m21 = m[2, 1], m22 = m[2, 2], m23 = m[2, 3]
    cdef double complex m30 = m[3, 0], m31 = m[3, 1], m32 = m[3, 2], m33 = m[3, 3]
    cdef Py_ssize_t g, base, i0, i1, i2, i3
    cdef double complex x0, x1, x2, x3
    for g in range(quarter):
        base = _insert_zero_bit(_insert_zero_bit(g, lo), hi)
        i0 = base
        i1 = base | sa
        i2 = base | sb
        i3 = base | sa | sb
        x0 = amps[i0]
        x1 = amps[i1]
        x2 = amps[i2]
        x3 = amps[i3]
        amps[i0] = m00 * x0 + m01 * x1 + m02 * x2 + m03 * x3
        amps[i1] = m10 * x0 + m11 * x1 + m12 * x2 + m13 * x3
        amps[i2] = m20 * x0 + m21 * x1 + m22 * x2 + m23 * x3
        amps[i3] = m30 * x0 + m31 * x1 + m32 * x2 + m33 * x3


def apply_cx(double complex[::1] amps, Py_ssize_t control, Py_ssize_t target):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef Py_ssize_t lo = control if control < target else target
    cdef Py_ssize_t hi = control ^ target ^ lo
    cdef Py_ssize_t sc = (<Py_ssize_t>1) << control
    cdef Py_ssize_t st = (<Py_ssize_t>1) << target
    cdef Py_ssize_t g, i1, i3
    cdef double complex tmp
    for g in range(quarter):
        i1 = _insert_zero_bit(_insert_zero_bit(g, lo), hi) | sc
        i3 = i1 | st
        tmp = amps[i1]
        amps[i1] = amps[i3]
        amps[i3] = tmp


def apply_cz(double complex[::1] amps, Py_ssize_t qa, Py_ssize_t qb):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef Py_ssize_t lo = qa if qa < qb else qb
    cdef Py_ssize_t hi = qa ^ qb ^ lo
    cdef Py_ssize_t sa = (<Py_ssize_t>1) << qa
    cdef Py_ssize_t sb = (<Py_ssize_t>1) << qb
    cdef Py_ssize_t g, i3
    for g in range(quarter):
        i3 = _insert_zero_bit(_insert_zero_bit(g, lo), hi) | sa | sb
        amps[i3] = -amps[i3]


def apply_swap(double complex[::1] amps, Py_ssize_t qa, Py_ssize_t qb):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef Py_ssize_t lo = qa if qa < qb else qb
    cdef Py_ssize_t hi = qa ^ qb ^ lo
    cdef Py_ssize_t sa = (<Py_ssize_t>1) << qa
    cdef Py_ssize_t sb = (<Py_ssize_t>1) << qb
    cdef Py_ssize_t g, base, i1, i2
    cdef double complex tmp
    for g in range(quarter):
        base = _insert_zero_bit(_insert_zero_bit(g, lo), hi)
        i1 = base | sa
        i2 = base | sb
        tmp = amps[i1]
        amps[i1] = amps[i2]
        amps[i2] = tmp
