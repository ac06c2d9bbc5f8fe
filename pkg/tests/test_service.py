# -*- coding: utf-8 -*-

"""Test the HTTP wire service."""

import base64
import random
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from semspace.config import ServiceConfig
from semspace.ontology import swing_fragment
from semspace.service import body_limit, create_app
from semspace.space import SemanticQuery, Space, SyntacticQuery

from .utils import COMMUNITY, ORGANISMS, FakeClock, swing

WIRE_CODES = {"MALFORMED_REQUEST", "MODEL_NOT_LOADED", "UNKNOWN_CONCEPT",
              "FLOOR_OUT_OF_RANGE", "INVALID_LEASE", "PAYLOAD_TOO_LARGE", "INTERNAL"}


def b64(data):
    return base64.b64encode(data).decode("ascii")


@pytest.fixture()
def client(space):
    app = create_app(ServiceConfig(max_payload_bytes=4096), space=space)
    with TestClient(app) as client:
        yield client


@pytest.fixture()
def empty_client():
    with TestClient(create_app(ServiceConfig())) as client:
        yield client


def write(client, concept="Frog", payload=b"x", lease_ms=60000, model="RDFS"):
    return client.post("/v1/write", json={
        "model": model, "concept": swing(concept),
        "payload_b64": b64(payload), "lease_ms": lease_ms})


def assert_error(response, status, code):
    assert response.status_code == status, response.text
    body = response.json()
    assert body["code"] == code
    assert body["code"] in WIRE_CODES
    assert isinstance(body["message"], str) and body["message"]


def test_health(empty_client):
    response = empty_client.get("/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_ontology_upload(empty_client):
    response = empty_client.post("/v1/ontology", json={
        "model": "WSML", "format": "pairs", "data": swing_fragment()})
    assert response.status_code == 200
    assert response.json() == {"concepts": 21}
    response = empty_client.get("/v1/sdice", params={
        "model": "WSML", "c1": swing("Frog"), "c2": swing("Animal")})
    assert response.json()["degree"] == pytest.approx(4 / 7, abs=1e-12)


def test_ontology_upload_ntriples(empty_client, filepath):
    with open(filepath("swing.nt"), encoding="utf-8") as f:
        data = f.read()
    response = empty_client.post("/v1/ontology", json={
        "model": "RDFS", "format": "ntriples", "data": data})
    assert response.json() == {"concepts": 22}


@pytest.mark.parametrize("data,fragment", [
    ("A B\nC\n", "line 2"),
    ("A B\nB A\n", "cycle"),
    ("Aa R\nBB R\n", "collision"),
])
def test_ontology_upload_errors(empty_client, data, fragment):
    response = empty_client.post("/v1/ontology", json={"model": "RDFS", "data": data})
    assert_error(response, 400, "MALFORMED_REQUEST")
    assert fragment in response.json()["message"]


def test_write_read_take_cycle(client):
    response = write(client, payload=b"\x00\x01frog")
    assert response.status_code == 200
    body = response.json()
    assert body["id"] == 1
    assert body["granted_lease_ms"] == 60000
    assert isinstance(body["expires_at_ms"], int)

    response = client.post("/v1/read", json={"model": "RDFS", "concept": swing("Frog"), "floor": 1.0})
    (item,) = response.json()["results"]
    assert item["id"] == 1
    assert item["degree"] == 1.0
    assert base64.b64decode(item["payload_b64"]) == b"\x00\x01frog"

    response = client.post("/v1/read_by_id", json={"identifier": item["identifier"]})
    assert response.json()["results"] == [item]

    response = client.post("/v1/take", json={"model": "RDFS", "concept": swing("Frog")})
    assert response.json()["results"] == [item]

    response = client.post("/v1/read", json={"model": "RDFS", "concept": swing("Frog"), "floor": 0.0})
    assert response.json() == {"results": []}


def test_worked_read_over_the_wire(client):
    for name in ORGANISMS:
        assert write(client, name, payload=b"\x00" * 1024).status_code == 200
    response = client.post("/v1/read", json={"model": "RDFS", "concept": swing("Frog"), "floor": 0.5})
    concepts = [r["concept"] for r in response.json()["results"]]
    assert len(concepts) == 9
    assert concepts[0] == swing("Frog")


def test_stats(client):
    write(client)
    write(client, "Bird")
    client.post("/v1/take", json={"model": "RDFS", "concept": swing("Bird")})
    assert client.get("/v1/stats").json() == {
        "live_entries": 1,
        "entries_per_model": {"RDFS": 1},
        "total_writes": 2,
        "total_reads": 0,
        "total_takes": 1,
        "taken_total": 1,
        "expired_total": 0,
    }


def test_parallel_writes(client):
    with ThreadPoolExecutor(max_workers=2) as pool:
        responses = list(pool.map(lambda name: write(client, name), ["Frog", "Bird"]))
    assert [r.status_code for r in responses] == [200, 200]
    assert client.get("/v1/stats").json()["live_entries"] == 2


def test_error_codes(client):
    assert_error(client.post("/v1/read", json={
        "model": "RDFS", "concept": swing("Frog"), "floor": 1.5}), 400, "FLOOR_OUT_OF_RANGE")
    assert_error(write(client, "Nope"), 404, "UNKNOWN_CONCEPT")
    assert_error(write(client, model="WSML"), 409, "MODEL_NOT_LOADED")
    assert_error(write(client, lease_ms=0), 400, "INVALID_LEASE")
    assert_error(write(client, payload=b"x" * 4097), 413, "PAYLOAD_TOO_LARGE")
    assert_error(client.get("/v1/sdice", params={
        "model": "RDFS", "c1": swing("Frog"), "c2": "a:Nope"}), 404, "UNKNOWN_CONCEPT")


def test_payload_limit_is_inclusive(client):
    assert write(client, payload=b"x" * 4096).status_code == 200


def test_oversized_request_bodies_are_rejected(client, space):
    data = "a:Child a:Parent\n" * (body_limit(4096) // 16 + 1)
    response = client.post("/v1/ontology", json={"model": "WSML", "format": "pairs", "data": data})
    assert_error(response, 413, "PAYLOAD_TOO_LARGE")
    assert [m.value for m in space.models()] == ["RDFS"]

    response = client.post("/v1/ontology", json={"model": "WSML", "format": "pairs",
                                                 "data": "a:Child a:Parent\n"})
    assert response.status_code == 200
    assert response.json() == {"concepts": 2}


@pytest.mark.parametrize("request_kwargs", [
    {"content": b"{not json"},
    {"content": b"[]"},
    {"json": {}},
    {"json": {"model": "RDFS", "concept": 5, "payload_b64": "eA==", "lease_ms": 10}},
    {"json": {"model": "OWL", "concept": "a:Frog", "payload_b64": "eA==", "lease_ms": 10}},
    {"json": {"model": "RDFS", "concept": "a:Frog", "payload_b64": "not base64!", "lease_ms": 10}},
    {"json": {"model": "RDFS", "concept": "a:Frog", "payload_b64": "eA==", "lease_ms": 10,
              "extra": 1}},
])
def test_malformed_write(client, request_kwargs):
    response = client.post("/v1/write", headers={"content-type": "application/json"},
                           **request_kwargs)
    assert_error(response, 400, "MALFORMED_REQUEST")


def test_unknown_route_and_method(client):
    assert_error(client.get("/v1/nothing"), 404, "MALFORMED_REQUEST")
    assert_error(client.get("/v1/write"), 405, "MALFORMED_REQUEST")


def test_fuzzed_bodies_never_fail_internally(client):
    rng = random.Random(7)
    alphabet = b'{}[]":,0123456789abcdefRDFS\\ \n'
    for _ in range(200):
        body = bytes(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        for path in ("/v1/write", "/v1/read", "/v1/take", "/v1/read_by_id", "/v1/ontology"):
            response = client.post(path, content=body,
                                   headers={"content-type": "application/json"})
            assert 400 <= response.status_code < 500, (path, body)
            assert response.json()["code"] in WIRE_CODES


def test_empty_identifier(client):
    assert_error(client.post("/v1/read_by_id", json={"identifier": ""}), 400, "MALFORMED_REQUEST")


def _script(seed, steps=50):
    """A seeded sequence of space operations."""
    rng = random.Random(seed)
    names = ORGANISMS + COMMUNITY
    script = []
    for _ in range(steps):
        kind = rng.choice(("write", "write", "write", "read", "take", "expire", "read_by_id"))
        concept = swing(rng.choice(names))
        if kind == "write":
            script.append(("write", concept, rng.randbytes(rng.randint(0, 256)),
                           rng.choice((20, 100, 60000))))
        elif kind == "read":
            script.append(("read", concept, rng.choice((0.0, 0.3, 0.5, 0.75, 1.0))))
        elif kind == "take":
            script.append(("take", concept))
        elif kind == "expire":
            script.append(("expire", rng.choice((10, 50, 200))))
        else:
            script.append(("read_by_id", "entry-{0:016x}".format(rng.randint(1, 20))))
    return script


def _result_tuples(items):
    return [(r["id"], r["concept"], r["degree"], base64.b64decode(r["payload_b64"]),
             r["identifier"]) for r in items]


def _direct(space, clock, script):
    out = []
    for step in script:
        if step[0] == "write":
            entry_id, lease = space.write(step[2], "RDFS", step[1], step[3])
            out.append((entry_id, lease.granted_ms, lease.expires_at))
        elif step[0] == "read":
            results = space.read(SemanticQuery("RDFS", step[1], step[2]))
            out.append([(r.id, r.concept, r.degree, r.payload, r.identifier) for r in results])
        elif step[0] == "take":
            results = space.take("RDFS", step[1])
            out.append([(r.id, r.concept, r.degree, r.payload, r.identifier) for r in results])
        elif step[0] == "expire":
            clock.advance(step[1])
            space.expire()
            out.append(None)
        else:
            results = space.read_by_id(SyntacticQuery(step[1]))
            out.append([(r.id, r.concept, r.degree, r.payload, r.identifier) for r in results])
    return out


def _wire(client, clock, script):
    out = []
    for step in script:
        if step[0] == "write":
            body = client.post("/v1/write", json={
                "model": "RDFS", "concept": step[1], "payload_b64": b64(step[2]),
                "lease_ms": step[3]}).json()
            out.append((body["id"], body["granted_lease_ms"], body["expires_at_ms"]))
        elif step[0] == "read":
            body = client.post("/v1/read", json={
                "model": "RDFS", "concept": step[1], "floor": step[2]}).json()
            out.append(_result_tuples(body["results"]))
        elif step[0] == "take":
            body = client.post("/v1/take", json={"model": "RDFS", "concept": step[1]}).json()
            out.append(_result_tuples(body["results"]))
        elif step[0] == "expire":
            clock.advance(step[1])
            client.app.state.space.expire()
            out.append(None)
        else:
            body = client.post("/v1/read_by_id", json={"identifier": step[1]}).json()
            out.append(_result_tuples(body["results"]))
    return out


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_wire_transparency(swing_index, seed):
    script = _script(seed)
    assert len(script) == 50

    direct_clock = FakeClock()
    direct = Space(clock=direct_clock)
    direct.load_model("RDFS", swing_index)
    expected = _direct(direct, direct_clock, script)

    wire_clock = FakeClock()
    served = Space(clock=wire_clock)
    served.load_model("RDFS", swing_index)
    with TestClient(create_app(ServiceConfig(), space=served)) as client:
        actual = _wire(client, wire_clock, script)

    assert actual == expected
    assert served.stats() == direct.stats()
