"""HTTP face of the package; see :mod:`steadystat.service.app`."""

from .app import app, create_app

__all__ = ["app", "create_app"]
