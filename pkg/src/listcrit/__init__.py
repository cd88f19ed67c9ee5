"""List-colouring criticality toolkit for plane graphs."""

__version__ = "0.1.0"
