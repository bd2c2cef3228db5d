"""Link-complex obstructions to embeddability, made executable."""

__version__ = "0.1.0"
