"""White-Miller quartics, bitangent ideals and Lüroth quartic detection."""

__version__ = "0.1.0"
