"""Desk-scale news platform: feed ingestion, search, topic spidering, REST API."""

__version__ = "0.1.0"
