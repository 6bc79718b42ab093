"""mk3-orbits: orbit engine for Markoff-type K3 surfaces."""

__version__ = "0.1.0"
