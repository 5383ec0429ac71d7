"""
Test suite for Streetflow.
""" 