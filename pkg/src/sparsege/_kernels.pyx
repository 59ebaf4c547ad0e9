# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`sparsege._kernels_py`; identical signatures and results."""


def lincomb(list xc, list xv, Py_ssize_t i0, list yc, list yv, Py_ssize_t j0, a, b):
    cdef list cols = []
    cdef list vals = []
    cdef Py_ssize_t nx = len(xc), ny = len(yc)
    cdef Py_ssize_t i = i0, j = j0
    cdef Py_ssize_t ci, cj
    cdef bint unit = a == 1
    while i < nx and j < ny:
        ci = xc[i]
        cj = yc[j]
        if ci < cj:
            cols.append(xc[i])
            vals.append(xv[i] if unit else a * xv[i])
            i += 1
        elif cj < ci:
            cols.append(yc[j])
            vals.append(b * yv[j])
            j += 1
        else:
            v = (xv[i] if unit else a * xv[i]) + b * yv[j]
            if v != 0:
                cols.append(xc[i])
                vals.append(v)
            i += 1
            j += 1
    while i < nx:
        cols.append(xc[i])
        vals.append(xv[i] if unit else a * xv[i])
        i += 1
    while j < ny:
        cols.append(yc[j])
        vals.append(b * yv[j])
        j += 1
    return cols, vals


def lincomb_f64(list xc, list xv, Py_ssize_t i0, list yc, list yv, Py_ssize_t j0,
                double a, double b, double eps):
    cdef list cols = []
    cdef list vals = []
    cdef Py_ssize_t nx = len(xc), ny = len(yc)
    cdef Py_ssize_t i = i0, j = j0
    cdef Py_ssize_t ci, cj, c
    cdef double v
    while i < nx and j < ny:
        ci = xc[i]
        cj = yc[j]
        if ci < cj:
            v = a * <double>xv[i]
            i += 1
            c = ci
        elif cj < ci:
            v = b * <double>yv[j]
            j += 1
            c = cj
        else:
            v = a * <double>xv[i] + b * <double>yv[j]
            i += 1
            j += 1
            c = ci
        if v > eps or v < -eps:
            cols.append(c)
            vals.append(v)
    while i < nx:
        v = a * <double>xv[i]
        if v > eps or v < -eps:
            cols.append(xc[i])
            vals.append(v)
        i += 1
    while j < ny:
        v = b * <double>yv[j]
        if v > eps or v < -eps:
            cols.append(yc[j])
            vals.append(v)
        j += 1
    return cols, vals
