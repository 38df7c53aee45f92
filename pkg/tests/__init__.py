"""
Tests package for ssbh-transport
"""
