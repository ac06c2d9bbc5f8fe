"""
Service configuration.

Defaults can be overridden through ``SEMSPACE_*`` environment variables and,
on top of those, command-line flags.
"""

import os
from dataclasses import dataclass, field, replace
from typing import Tuple

from .ontology import FORMATS
from .space import DEFAULT_MAX_LEASE_MS, DEFAULT_REAPER_INTERVAL_MS, MetaModel

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8765
DEFAULT_MAX_PAYLOAD_BYTES = 64 * 1024 * 1024


def parse_listen(value):
    """
    Split a listen address into ``(host, port)``.

    >>> parse_listen("0.0.0.0:8080")
    ('0.0.0.0', 8080)
    >>> parse_listen("[::1]:9000")
    ('::1', 9000)
    >>> parse_listen(":7000")
    ('127.0.0.1', 7000)
    """
    host, sep, port = value.rpartition(":")
    if not sep:
        raise ValueError("listen address must be host:port, got {0!r}".format(value))
    if host.startswith("[") and host.endswith("]"):
        host = host[1:-1]
    try:
        port = int(port)
    except ValueError:
        raise ValueError("invalid port in {0!r}".format(value)) from None
    return host or DEFAULT_HOST, port


@dataclass(frozen=True)
class OntologySource:
    path: str
    format: str = "pairs"
    model: MetaModel = MetaModel.RDFS

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError("unknown ontology format {0!r}".format(self.format))
        object.__setattr__(self, "model", MetaModel.parse(self.model))


@dataclass(frozen=True)
class ServiceConfig:
    host: str = DEFAULT_HOST
    port: int = DEFAULT_PORT
    max_lease_ms: int = DEFAULT_MAX_LEASE_MS
    max_payload_bytes: int = DEFAULT_MAX_PAYLOAD_BYTES
    reaper_interval_ms: int = DEFAULT_REAPER_INTERVAL_MS
    ontologies: Tuple[OntologySource, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 0 <= self.port <= 65535:
            raise ValueError("port {0} out of range".format(self.port))
        if self.max_payload_bytes < 1:
            raise ValueError("max_payload_bytes must be at least 1")
        if self.max_lease_ms < 1:
            raise ValueError("max_lease_ms must be at least 1")
        if self.reaper_interval_ms < 1:
            raise ValueError("reaper_interval_ms must be at least 1")

    @property
    def listen(self):
        if ":" in self.host:
            return "[{0}]:{1}".format(self.host, self.port)
        return "{0}:{1}".format(self.host, self.port)

    @classmethod
    def from_env(cls, environ=None, **overrides):
        environ = os.environ if environ is None else environ
        values = {}
        if environ.get("SEMSPACE_LISTEN"):
            values["host"], values["port"] = parse_listen(environ["SEMSPACE_LISTEN"])
        for name in ("max_lease_ms", "max_payload_bytes", "reaper_interval_ms"):
            raw = environ.get("SEMSPACE_" + name.upper())
            if raw:
                values[name] = int(raw)
        config = cls(**values)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(config, **overrides) if overrides else config
