"""semcurate: schema-driven semantic data curation with snapshot provenance."""

__version__ = "0.1.0"
