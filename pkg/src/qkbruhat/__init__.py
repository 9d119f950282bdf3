"""
Verification and exploration engine for the quantum k-Bruhat order on
S_n[q] and its operator monoid: operator actions, truncated posets,
brute-force equivalence decisions over provably sufficient flattened
domains, minimal-relation mining, and theorem-family verification.
"""

__version__ = "0.1.0"
