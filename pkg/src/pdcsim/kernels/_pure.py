"""Pure-Python dispersion kernels (numpy for arrays, plain math for scalars).

Canonical Sellmeier form used throughout, wavelength in micrometers:

    n^2(wl) = A + sum_j B[j] / (wl^2 - C[j]) + D * wl^2

Published ratio terms B*wl^2/(wl^2 - C) are folded into this form at load
time (B*wl^2/(wl^2-C) = B + B*C/(wl^2-C)).

The compiled twin in ``_core.pyx`` exposes the same signatures; either
backend may be selected at import (see ``pdcsim.kernels``).  Scalar
variants avoid numpy overhead inside bracketing root-finders.
"""

import numpy as np

BACKEND = "pure"


def n2_scalar(A, B, C, D, wl):
    wl2 = wl * wl
    acc = A + D * wl2
    for j in range(len(B)):
        acc += B[j] / (wl2 - C[j])
    return acc


def dn2_dwl_scalar(A, B, C, D, wl):
    wl2 = wl * wl
    acc = 2.0 * D * wl
    for j in range(len(B)):
        d = wl2 - C[j]
        acc -= 2.0 * wl * B[j] / (d * d)
    return acc


def index_scalar(A, B, C, D, wl):
    return n2_scalar(A, B, C, D, wl) ** 0.5


def group_index_scalar(A, B, C, D, wl):
    """Group index n_g = n - wl * dn/dwl at wl (um)."""
    n = index_scalar(A, B, C, D, wl)
    return n - wl * dn2_dwl_scalar(A, B, C, D, wl) / (2.0 * n)


def angle_index_scalar(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl):
    """Index-ellipse interpolation 1/n^2 = cos^2/na^2 + sin^2/nb^2."""
    na2 = n2_scalar(Aa, Ba, Ca, Da, wl)
    nb2 = n2_scalar(Ab, Bb, Cb, Db, wl)
    cth = np.cos(theta)
    sth = np.sin(theta)
    return (cth * cth / na2 + sth * sth / nb2) ** -0.5


def angle_group_index_scalar(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl):
    """Group index of the angle-tuned index at fixed propagation angle."""
    na2 = n2_scalar(Aa, Ba, Ca, Da, wl)
    nb2 = n2_scalar(Ab, Bb, Cb, Db, wl)
    dna2 = dn2_dwl_scalar(Aa, Ba, Ca, Da, wl)
    dnb2 = dn2_dwl_scalar(Ab, Bb, Cb, Db, wl)
    cth2 = np.cos(theta) ** 2
    sth2 = np.sin(theta) ** 2
    n = (cth2 / na2 + sth2 / nb2) ** -0.5
    # dn/dwl = n^3 * (cos^2 * (dna2/dwl)/(2 na^4) + sin^2 * (dnb2/dwl)/(2 nb^4))
    dn = n**3 * (cth2 * dna2 / (2.0 * na2 * na2) + sth2 * dnb2 / (2.0 * nb2 * nb2))
    return n - wl * dn


def n2_array(A, B, C, D, wl):
    wl2 = wl * wl
    acc = A + D * wl2
    for j in range(len(B)):
        acc = acc + B[j] / (wl2 - C[j])
    return acc


def dn2_dwl_array(A, B, C, D, wl):
    wl2 = wl * wl
    acc = 2.0 * D * wl
    for j in range(len(B)):
        d = wl2 - C[j]
        acc = acc - 2.0 * wl * B[j] / (d * d)
    return acc


def index_array(A, B, C, D, wl):
    return np.sqrt(n2_array(A, B, C, D, wl))


def group_index_array(A, B, C, D, wl):
    n = index_array(A, B, C, D, wl)
    return n - wl * dn2_dwl_array(A, B, C, D, wl) / (2.0 * n)


def angle_index_array(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl):
    na2 = n2_array(Aa, Ba, Ca, Da, wl)
    nb2 = n2_array(Ab, Bb, Cb, Db, wl)
    cth = np.cos(theta)
    sth = np.sin(theta)
    return 1.0 / np.sqrt(cth * cth / na2 + sth * sth / nb2)


def angle_group_index_array(Aa, Ba, Ca, Da, Ab, Bb, Cb, Db, theta, wl):
    na2 = n2_array(Aa, Ba, Ca, Da, wl)
    nb2 = n2_array(Ab, Bb, Cb, Db, wl)
    dna2 = dn2_dwl_array(Aa, Ba, Ca, Da, wl)
    dnb2 = dn2_dwl_array(Ab, Bb, Cb, Db, wl)
    cth2 = np.cos(theta) ** 2
    sth2 = np.sin(theta) ** 2
    n = 1.0 / np.sqrt(cth2 / na2 + sth2 / nb2)
    dn = n**3 * (cth2 * dna2 / (2.0 * na2 * na2) + sth2 * dnb2 / (2.0 * nb2 * nb2))
    return n - wl * dn
