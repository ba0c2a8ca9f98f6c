"""Multisets, validity and extremal constructions"""
