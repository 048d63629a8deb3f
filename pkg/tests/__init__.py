"""Unit tests for tricomi-airfoil"""
