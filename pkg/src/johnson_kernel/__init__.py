"""Exact integer certificates for infinite generation of the top homology of the Johnson kernel."""
