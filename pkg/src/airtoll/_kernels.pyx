# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: per-slot greedy fill and source-receptor apply."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def greedy_fill(cnp.int64_t[:, ::1] order, double[::1] caps, double[::1] demand):
    """Fill each slot's demand into sites in the given per-slot order.

    order[t] lists site indices cheapest first, caps[i] is site i's
    per-slot capacity, demand[t] the load to place in slot t. Returns the
    (slots, sites) allocation; unplaced residual stays unserved for the
    caller to detect.
    """
    cdef Py_ssize_t T = order.shape[0]
    cdef Py_ssize_t N = order.shape[1]
    if caps.shape[0] != N:
        raise ValueError("caps length does not match order width")
    if demand.shape[0] != T:
        raise ValueError("demand length does not match order height")
    out = np.zeros((T, N))
    cdef double[:, ::1] w = out
    cdef Py_ssize_t t, j, i
    cdef double remaining, cap, take
    for t in range(T):
        remaining = demand[t]
        for j in range(N):
            if remaining <= 0.0:
                break
            i = order[t, j]
            cap = caps[i]
            take = remaining if remaining < cap else cap
            w[t, i] = take
            remaining -= take
    return out


def sr_apply(double[:, :, ::1] coeff, double[:, ::1] emissions):
    """Contract a (receptor, source, species) operator with (source, species) emissions."""
    cdef Py_ssize_t R = coeff.shape[0]
    cdef Py_ssize_t J = coeff.shape[1]
    cdef Py_ssize_t S = coeff.shape[2]
    if emissions.shape[0] != J or emissions.shape[1] != S:
        raise ValueError("emissions shape does not match coefficients")
    out = np.zeros((R, S))
    cdef double[:, ::1] acc = out
    cdef Py_ssize_t r, j, s
    for r in range(R):
        for j in range(J):
            for s in range(S):
                acc[r, s] += coeff[r, j, s] * emissions[j, s]
    return out
