"""homesim: deterministic smart-home IoT simulation and labeled dataset toolkit."""

__version__ = "0.1.0"

ENGINE_VERSION = __version__
