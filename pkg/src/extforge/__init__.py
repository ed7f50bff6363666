"""extforge: exact Ext charts, spectral-sequence bookkeeping and
characteristic-class identities at desk scale."""

__version__ = "0.1.0"
