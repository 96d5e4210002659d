"""Crowd-solicitation targeting: response-likelihood models, interval
recommendation, a seeded platform simulator, and an operator service."""

__version__ = "0.1.0"
