"""Leftmost-occurrence index: core lookup tables, nonperiodic and periodic
parts, and the dispatching facade."""
