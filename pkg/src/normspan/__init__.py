"""Executable finite equivariant combinatorics: indexing systems, free operads
of formal norms, free normed categories and incomplete span categories."""

__version__ = "0.1.0"
