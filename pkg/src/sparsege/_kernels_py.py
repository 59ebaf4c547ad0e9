"""Pure-Python sparse row merge kernels.

Rows are passed as parallel ``cols``/``vals`` lists; ``i0``/``j0`` are the
positions at which the merge starts in each operand.  The Cython module
``sparsege._kernels`` exposes the same functions with the same signatures.
"""


def lincomb(xc, xv, i0, yc, yv, j0, a, b):
    """Return ``a*x[i0:] + b*y[j0:]`` as ``(cols, vals)``, dropping exact zeros.

    ``a`` and ``b`` must be nonzero.  ``a == 1`` skips the multiplication on
    the ``x`` side.
    """
    cols = []
    vals = []
    nx = len(xc)
    ny = len(yc)
    i = i0
    j = j0
    unit = a == 1
    while i < nx and j < ny:
        ci = xc[i]
        cj = yc[j]
        if ci < cj:
            v = xv[i] if unit else a * xv[i]
            cols.append(ci)
            vals.append(v)
            i += 1
        elif cj < ci:
            cols.append(cj)
            vals.append(b * yv[j])
            j += 1
        else:
            v = (xv[i] if unit else a * xv[i]) + b * yv[j]
            if v != 0:
                cols.append(ci)
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


def lincomb_f64(xc, xv, i0, yc, yv, j0, a, b, eps):
    """Floating-point ``a*x[i0:] + b*y[j0:]``; entries with ``|v| <= eps`` are dropped."""
    cols = []
    vals = []
    nx = len(xc)
    ny = len(yc)
    i = i0
    j = j0
    while i < nx and j < ny:
        ci = xc[i]
        cj = yc[j]
        if ci < cj:
            v = a * xv[i]
            i += 1
            c = ci
        elif cj < ci:
            v = b * yv[j]
            j += 1
            c = cj
        else:
            v = a * xv[i] + b * yv[j]
            i += 1
            j += 1
            c = ci
        if abs(v) > eps:
            cols.append(c)
            vals.append(v)
    while i < nx:
        v = a * xv[i]
        if abs(v) > eps:
            cols.append(xc[i])
            vals.append(v)
        i += 1
    while j < ny:
        v = b * yv[j]
        if abs(v) > eps:
            cols.append(yc[j])
            vals.append(v)
        j += 1
    return cols, vals
