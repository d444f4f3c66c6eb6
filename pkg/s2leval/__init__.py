"""s2leval - Speech-to-LaTeX normalization, scoring and corpus tooling."""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("s2leval-cli")
except PackageNotFoundError:
    # Package not installed, use fallback for development
    __version__ = "0.0.0+dev"
