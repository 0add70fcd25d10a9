"""Numerical laboratory for uniformly rotating vortex patches."""

import json as _json

from ._vpatch import *  # noqa: F401,F403
from . import _vpatch as _core

__version__ = _core.library_version()


def classify(contour, alpha=None, samples=10000):
    """Geometric class membership report as a dict."""
    if alpha is None:
        alpha = _core.critical_alpha()
    return _json.loads(_core.classify_json(contour, alpha, samples))


def phi_sign_probe(field, interior, exterior, eps_strict=1e-10):
    return _json.loads(_core.phi_sign_probe_json(field, interior, exterior, eps_strict))


def g_monotonicity_probe(field, offsets):
    return _json.loads(_core.g_monotonicity_probe_json(field, offsets))


def normal_derivative_bound_probe(field, offsets, tol=1e-9):
    return _json.loads(_core.normal_derivative_bound_probe_json(field, offsets, tol))


def moving_plane_probe(field, lambdas, grid_n=100):
    return _json.loads(_core.moving_plane_probe_json(field, lambdas, grid_n))


def half_omega_identity_probe(field, tol=1e-8):
    return _json.loads(_core.half_omega_identity_probe_json(field, tol))


def laplacian_dichotomy_probe(field, samples=400, h=1e-3, tol=1e-5):
    return _json.loads(_core.laplacian_dichotomy_probe_json(field, samples, h, tol))
