"""Wall-crossing toolkit for small crepant resolutions of toric CY3 singularities."""

__version__ = "0.1.0"
