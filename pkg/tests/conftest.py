"""Shared fixtures: a live HTTP server for thin-client tests."""

import socket
import threading
import time

import pytest


@pytest.fixture(scope="session")
def live_server_url():
    """Run the real HTTP service on an ephemeral local port."""
    import uvicorn

    from steadystat.service import create_app

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    sock.close()

    config = uvicorn.Config(
        create_app(), host="127.0.0.1", port=port, log_level="error"
    )
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    for _ in range(400):
        if server.started:
            break
        time.sleep(0.025)
    else:
        pytest.fail("service did not start within 10 s")

    yield f"http://127.0.0.1:{port}"

    server.should_exit = True
    thread.join(timeout=5)
