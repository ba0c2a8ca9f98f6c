"""Symmetry-reduced exhaustive search"""
