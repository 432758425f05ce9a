"""
Test suite for quiverdt
"""
