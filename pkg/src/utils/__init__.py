"""Utility modules for the walk proximity toolkit"""
