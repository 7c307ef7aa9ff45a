"""Provable exceptional-prime bounds for weight-2 newforms of level s*t^n."""

__version__ = "0.1.0"
