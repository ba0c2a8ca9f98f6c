"""Exact subset-sum sets as dense bit vectors"""
