"""
Configuration package for the PF theory toolkit
"""
