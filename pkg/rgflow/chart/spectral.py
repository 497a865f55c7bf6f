"""Fourier content of periodic grid data, computed with pyFFTW."""

import numpy as np
from pyfftw.builders import fft


def periodic_spectrum(values: np.ndarray, axis: int = 0) -> np.ndarray:
    """Normalized discrete Fourier coefficients F[k] / N along a periodic axis.

    Args:
        values (numpy.ndarray): samples, real or complex, the periodic axis of length N.
        axis (int): the periodic axis.

    Returns:
        complex numpy.ndarray: coefficients with the same shape as `values`.
    """
    values = np.ascontiguousarray(values, dtype=complex)
    plan = fft(a=values, axis=axis, planner_effort='FFTW_ESTIMATE')
    return plan() / values.shape[axis]


def mode_amplitude(values: np.ndarray, mode: int, axis: int = 0) -> np.ndarray:
    """Amplitude A of the A cos(mode x) content of periodic samples along an axis.

    Args:
        values (numpy.ndarray): real samples, the periodic axis of length N.
        mode (int): integer wavenumber, 0 < mode < N/2.
        axis (int): the periodic axis.

    Returns:
        numpy.ndarray: 2 Re(F[mode]) / N with the periodic axis removed.
    """
    n = np.shape(values)[axis]
    if not 0 < mode < n / 2:
        raise ValueError(f'Mode {mode} is not resolved by {n} points.')
    return 2.0 * np.take(periodic_spectrum(values, axis), mode, axis=axis).real
