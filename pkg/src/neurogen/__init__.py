from importlib import metadata

# Prefer package metadata so the reported version matches the installed wheel.
try:
    __version__ = metadata.version("neurogen")
except metadata.PackageNotFoundError:
    __version__ = "0.0.0+unknown"

__all__ = ["__version__"]
