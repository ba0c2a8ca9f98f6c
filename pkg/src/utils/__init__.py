"""Utility functions for the sumset toolkit"""
