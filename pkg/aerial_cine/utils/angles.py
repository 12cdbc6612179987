"""Angle helpers on the azimuth circle. All angles in degrees."""

import numpy as np


def normalize_deg(angle):
    """Map into [0, 360). Works on scalars and arrays."""
    wrapped = np.mod(angle, 360.0)
    # np.mod can return 360.0 for tiny negative inputs
    wrapped = np.where(wrapped >= 360.0, 0.0, wrapped)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def wrap180(angle):
    """Map into (-180, 180]."""
    wrapped = 180.0 - np.mod(180.0 - np.asarray(angle, dtype=float), 360.0)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def wrap90(angle):
    """Map into [-90, 90] modulo 180."""
    wrapped = np.mod(np.asarray(angle, dtype=float) + 90.0, 180.0) - 90.0
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def angular_distance(a, b):
    """Shortest unsigned distance between two azimuths, in [0, 180]."""
    return np.abs(wrap180(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
