"""Du Val del Pezzo surfaces over small finite fields: exact models and checks."""

__version__ = "0.1.0"
