"""Construction and verification tools for d-dimensional color codes."""
