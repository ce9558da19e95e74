"""Function-style access to the curvature of a Walker metric.

Each call builds (or reuses) a Geometry; pass ``geometry`` to share one.
"""

from .components import geometry_of


def _geo(metric, geometry):
    return geometry or geometry_of(metric)


def christoffel(metric, geometry=None):
    return _geo(metric, geometry).christoffel


def riemann(metric, geometry=None):
    return _geo(metric, geometry).riemann


def ricci(metric, geometry=None):
    return _geo(metric, geometry).ricci


def scalar(metric, geometry=None):
    return _geo(metric, geometry).scalar


def weyl(metric, geometry=None):
    return _geo(metric, geometry).weyl


def nabla_R(metric, geometry=None):
    return _geo(metric, geometry).nabla_R


def nabla2_R(metric, geometry=None):
    return _geo(metric, geometry).nabla2_R


def shift_v(metric, f):
    return metric.shift_v(f)


def is_ppwave(metric):
    return metric.is_ppwave()
