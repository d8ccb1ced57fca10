"""English -> Hindi cross-language retrieval with transliteration-based query refinement."""

__version__ = "0.1.0"
