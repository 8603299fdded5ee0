"""Black box groups over finite fields: oracles, morphisms, and constructed automorphisms."""

__version__ = "0.1.0"
