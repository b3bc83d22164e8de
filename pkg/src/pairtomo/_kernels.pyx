# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``_kernels_py``.

Same functions, same semantics; the Python module is the reference.  Kept to
plain C loops over fixed-size (4x4) arrays so the per-call overhead that
dominates the pure-NumPy versions disappears.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log, log2, sin, sqrt

cnp.import_array()

DEF PROB_FLOOR = 1e-15

# strictly-lower entries of a 4x4 in np.tril_indices(4, -1) order
cdef int _ROW[6]
cdef int _COL[6]
_ROW[0], _COL[0] = 1, 0
_ROW[1], _COL[1] = 2, 0
_ROW[2], _COL[2] = 2, 1
_ROW[3], _COL[3] = 3, 0
_ROW[4], _COL[4] = 3, 1
_ROW[5], _COL[5] = 3, 2


cdef void _rho_from_t(const double[::1] t, double complex[4][4] rho) noexcept:
    cdef double complex T[4][4]
    cdef int i, j, k
    cdef double complex acc
    cdef double tr
    for i in range(4):
        for j in range(4):
            T[i][j] = 0
    for i in range(4):
        T[i][i] = t[i]
    for k in range(6):
        T[_ROW[k]][_COL[k]] = t[4 + k] + 1j * t[10 + k]
    # rho = T T^dag
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc += T[i][k] * T[j][k].conjugate()
            rho[i][j] = acc
    tr = rho[0][0].real + rho[1][1].real + rho[2][2].real + rho[3][3].real
    if tr < 1e-300:
        for i in range(4):
            for j in range(4):
                rho[i][j] = 0.25 if i == j else 0
        return
    for i in range(4):
        for j in range(4):
            rho[i][j] = rho[i][j] / tr


cdef void _probs_from_t(const double[::1] t,
                        const double complex[:, :, ::1] projectors,
                        double* probs) noexcept:
    cdef double complex rho[4][4]
    cdef int k, i, j
    cdef double acc
    _rho_from_t(t, rho)
    for k in range(16):
        acc = 0.0
        for i in range(4):
            for j in range(4):
                acc += (projectors[k, i, j] * rho[j][i]).real
        probs[k] = acc


def cholesky_to_rho(t):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef double complex rho[4][4]
    _rho_from_t(tv, rho)
    out = np.empty((4, 4), dtype=np.complex128)
    cdef int i, j
    for i in range(4):
        for j in range(4):
            out[i, j] = rho[i][j]
    return out


def cholesky_probs(t, projectors):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef double complex[:, :, ::1] pv = np.ascontiguousarray(projectors, dtype=np.complex128)
    cdef double probs[16]
    _probs_from_t(tv, pv, probs)
    out = np.empty(16, dtype=np.float64)
    cdef int k
    for k in range(16):
        out[k] = probs[k]
    return out


def nll_gaussian(t, projectors, target_probs):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef double complex[:, :, ::1] pv = np.ascontiguousarray(projectors, dtype=np.complex128)
    cdef double[::1] tp = np.ascontiguousarray(target_probs, dtype=np.float64)
    cdef double probs[16]
    cdef double acc = 0.0, d
    cdef int k
    _probs_from_t(tv, pv, probs)
    for k in range(16):
        d = probs[k] - tp[k]
        acc += d * d
    return acc


def nll_poisson(t, projectors, freqs):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef double complex[:, :, ::1] pv = np.ascontiguousarray(projectors, dtype=np.complex128)
    cdef double[::1] fv = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef double probs[16]
    cdef double acc = 0.0, p
    cdef int k
    _probs_from_t(tv, pv, probs)
    for k in range(16):
        p = probs[k]
        if p < PROB_FLOOR:
            p = PROB_FLOOR
        acc += p - fv[k] * log(p)
    return acc


cdef inline double _binary_entropy(double p) noexcept:
    cdef double q = 1.0 - p
    cdef double out = 0.0
    if p < 0.0:
        p = 0.0
    if p > 1.0:
        p = 1.0
    q = 1.0 - p
    if p > 0.0:
        out -= p * log2(p)
    if q > 0.0:
        out -= q * log2(q)
    return out


cdef double _member_average(double theta, double chi, double w0, double w1,
                            double complex d0, double complex d1,
                            double complex mixed) noexcept:
    cdef double ct = cos(theta)
    cdef double st = sin(theta)
    cdef double complex beta = st * (cos(chi) + 1j * sin(chi))
    cdef double sw0 = sqrt(w0)
    cdef double sw1 = sqrt(w1)
    cdef double q0 = ct * ct * w0 + st * st * w1
    cdef double q1 = 1.0 - q0
    cdef double complex a, b, det
    cdef double out = 0.0, absdet2, disc

    a = ct * sw0
    b = beta * sw1
    det = a * a * d0 + b * b * d1 + a * b * mixed
    if q0 > 1e-300:
        absdet2 = det.real * det.real + det.imag * det.imag
        disc = 1.0 - 4.0 * absdet2 / (q0 * q0)
        if disc < 0.0:
            disc = 0.0
        out += q0 * _binary_entropy((1.0 + sqrt(disc)) / 2.0)

    a = beta.conjugate() * sw0
    b = -ct * sw1
    det = a * a * d0 + b * b * d1 + a * b * mixed
    if q1 > 1e-300:
        absdet2 = det.real * det.real + det.imag * det.imag
        disc = 1.0 - 4.0 * absdet2 / (q1 * q1)
        if disc < 0.0:
            disc = 0.0
        out += q1 * _binary_entropy((1.0 + sqrt(disc)) / 2.0)
    return out


cdef void _dets(object psi0, object psi1, double complex* d0,
                double complex* d1, double complex* mixed):
    m0 = np.ascontiguousarray(psi0, dtype=np.complex128).reshape(2, 2)
    m1 = np.ascontiguousarray(psi1, dtype=np.complex128).reshape(2, 2)
    cdef double complex a00 = m0[0, 0], a01 = m0[0, 1], a10 = m0[1, 0], a11 = m0[1, 1]
    cdef double complex b00 = m1[0, 0], b01 = m1[0, 1], b10 = m1[1, 0], b11 = m1[1, 1]
    d0[0] = a00 * a11 - a01 * a10
    d1[0] = b00 * b11 - b01 * b10
    mixed[0] = a00 * b11 + b00 * a11 - a01 * b10 - b01 * a10


def nielsen_average_entanglement(double theta, double chi, weights, psi0, psi1):
    cdef double complex d0, d1, mixed
    cdef double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    _dets(psi0, psi1, &d0, &d1, &mixed)
    return _member_average(theta, chi, wv[0], wv[1], d0, d1, mixed)


def nielsen_average_entanglement_grid(thetas, chis, weights, psi0, psi1):
    cdef double[::1] tv = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] cv = np.ascontiguousarray(chis, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef double complex d0, d1, mixed
    _dets(psi0, psi1, &d0, &d1, &mixed)
    out = np.empty((tv.shape[0], cv.shape[0]), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    cdef double w0 = wv[0], w1 = wv[1]
    for i in range(tv.shape[0]):
        for j in range(cv.shape[0]):
            ov[i, j] = _member_average(tv[i], cv[j], w0, w1, d0, d1, mixed)
    return out
