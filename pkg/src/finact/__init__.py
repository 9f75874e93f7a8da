"""Finite actions workbench: carriers, groups, actions, preaffine geometry,
action fields, deformation measures, and ternary Malcev structures."""

__version__ = "0.1.0"
