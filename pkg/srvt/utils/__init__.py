"""Utility functions for the SRVT package"""
