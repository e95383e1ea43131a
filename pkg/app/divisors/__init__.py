"""Symmetric divisor classes and F-curve intersections"""