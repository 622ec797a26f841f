# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled sign-pattern scan for real synthesis matrices.

Mirrors framekit._ubc_pure.scan: enumerate the 2^(m-1) sign patterns with
the first sign pinned to +1 in Gray-code order and keep the signed copy
of T up to date by negating one column per step (an exact operation).
Per pattern the scan matrix M = T*D*Tpinv is rebuilt with dgemm and its
spectral norm taken as the square root of the top eigenvalue of M*M^T
(dsyrk + dsyevd values-only, which benchmarks ahead of a full
small-matrix SVD and, unlike dsyevr with an index range, is robust on
fully degenerate spectra such as the identity).
"""

from libc.math cimport sqrt

import numpy as np

from scipy.linalg.cython_blas cimport dgemm, dscal, dsyrk
from scipy.linalg.cython_lapack cimport dsyevd


def scan(t_in, tp_in):
    """Max over sign patterns of ||T diag(signs) Tpinv||_2, plus the Gray index."""
    t = np.asfortranarray(t_in, dtype=np.float64)
    tp = np.asfortranarray(tp_in, dtype=np.float64)
    cdef double[::1, :] ts = t.copy(order="F")
    cdef double[::1, :] tpv = tp
    cdef int d = ts.shape[0]
    cdef int m = ts.shape[1]
    if tpv.shape[0] != m or tpv.shape[1] != d:
        raise ValueError("pseudo-inverse shape mismatch")
    if not 1 <= m <= 62:
        raise ValueError(f"family size {m} outside enumerable range")

    cdef double[::1, :] scan_m = np.empty((d, d), dtype=np.float64, order="F")
    cdef double[::1, :] gram = np.empty((d, d), dtype=np.float64, order="F")
    cdef double[::1] eigs = np.empty(d, dtype=np.float64)
    cdef int[::1] isuppz = np.empty(max(2 * d, 2), dtype=np.intc)

    cdef int info = 0
    cdef int one = 1
    cdef int found = 0
    cdef double alpha = 1.0
    cdef double beta = 0.0
    cdef double minus_one = -1.0
    cdef double zero = 0.0
    cdef double dummy_z = 0.0  # eigenvectors are not referenced when jobz='N'

    # workspace query for dsyevr, jobz='N', range='I' with il=iu=d (largest)
    cdef double wkopt = 0.0
    cdef int iwkopt = 0
    cdef int lwork = -1
    cdef int liwork = -1
    dsyevr("N", "I", "U", &d, &gram[0, 0], &d, &zero, &zero, &d, &d, &zero,
           &found, &eigs[0], &dummy_z, &one, &isuppz[0],
           &wkopt, &lwork, &iwkopt, &liwork, &info)
    if info != 0:
        raise RuntimeError(f"dsyevr workspace query failed (info={info})")
    lwork = <int> wkopt
    liwork = iwkopt
    cdef double[::1] work = np.empty(lwork, dtype=np.float64)
    cdef int[::1] iwork = np.empty(liwork, dtype=np.intc)

    cdef unsigned long long total = 1ULL << (m - 1)
    cdef unsigned long long k, kk
    cdef unsigned long long best_k = 0
    cdef double best = -1.0
    cdef int col

    with nogil:
        for k in range(total):
            if k > 0:
                # Gray codes of k-1 and k differ in bit ctz(k); bit b drives sign b+1
                kk = k
                col = 1
                while not (kk & 1ULL):
                    kk >>= 1ULL
                    col += 1
                dscal(&d, &minus_one, &ts[0, col], &one)
            dgemm("N", "N", &d, &d, &m, &alpha, &ts[0, 0], &d,
                  &tpv[0, 0], &m, &beta, &scan_m[0, 0], &d)
            dsyrk("U", "N", &d, &d, &alpha, &scan_m[0, 0], &d, &beta, &gram[0, 0], &d)
            dsyevr("N", "I", "U", &d, &gram[0, 0], &d, &zero, &zero, &d, &d, &zero,
                   &found, &eigs[0], &dummy_z, &one, &isuppz[0],
                   &work[0], &lwork, &iwork[0], &liwork, &info)
            if info != 0:
                break
            if eigs[0] > best:
                best = eigs[0]
                best_k = k
    if info != 0:
        raise RuntimeError(f"dsyevr failed (info={info})")
    return sqrt(best) if best > 0.0 else 0.0, best_k


def gray_index_to_signs(k, m):
    """Expand a Gray index from scan() into the full +-1 pattern."""
    code = int(k) ^ (int(k) >> 1)
    signs = np.ones(m)
    for b in range(m - 1):
        if (code >> b) & 1:
            signs[b + 1] = -1.0
    return signs
