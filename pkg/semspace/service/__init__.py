"""
HTTP wire service for the semantic space.
"""

import socket
from logging import getLogger

import uvicorn

from ..errors import BindFailure
from .app import body_limit, create_app, preload

logger = getLogger("semspace.service")


def _bind(host, port):
    family = socket.AF_INET6 if ":" in host else socket.AF_INET
    sock = socket.socket(family, socket.SOCK_STREAM)
    try:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        sock.bind((host, port))
    except OSError as exc:
        sock.close()
        raise BindFailure("{0}:{1}".format(host, port), exc) from exc
    return sock


def serve(config, log_level="info"):
    """
    Serve ``config`` until SIGINT/SIGTERM.

    The socket is bound before uvicorn starts so an unusable address surfaces
    as BindFailure instead of a server exit. Shutdown drains in-flight
    requests.
    """
    app = create_app(config)
    sock = _bind(config.host, config.port)
    server = uvicorn.Server(uvicorn.Config(app, log_level=log_level, lifespan="on"))
    logger.info("Listening on %s", config.listen)
    try:
        server.run(sockets=[sock])
    finally:
        sock.close()


__all__ = ["body_limit", "create_app", "preload", "serve"]
