"""
Tests module for oplog.

This module contains unit tests for the oplog library and command line.
"""
