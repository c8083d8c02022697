"""HTTP service endpoints: payload shapes, error mapping, and consistency
with the library routines they wrap."""

from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from graphlik import __version__
from graphlik.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def frac(obj) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_compute_complete_graph(client):
    r = client.post("/compute", json={"graph": {"graph6": "C~"}})
    assert r.status_code == 200
    body = r.json()
    assert body["graph6"] == "C~"
    assert body["order"] == 4 and body["edge_count"] == 6
    assert frac(body["likelihood"]) == Fraction(1, 24)
    assert body["likelihood_decimal"].startswith("0.0416666666")
    assert body["aut"] == 24
    assert body["paths"] == 1  # 4!/|Aut|
    assert frac(body["bounds"]["lower"]) <= Fraction(1, 24) <= frac(body["bounds"]["upper"])


def test_compute_accepts_edge_lists_and_canonicalizes(client):
    edges = {"order": 4, "edges": [[0, 1], [0, 2], [1, 2], [2, 3]]}
    r = client.post("/compute", json={"graph": {"edges": edges}})
    assert r.status_code == 200
    body = r.json()
    assert frac(body["likelihood"]) == Fraction(13, 72)
    assert body["aut"] == 2
    assert body["paths"] == 12
    # the reported graph6 is the canonical representative, reusable as input
    again = client.post("/compute", json={"graph": {"graph6": body["graph6"]}})
    assert frac(again.json()["likelihood"]) == Fraction(13, 72)


def test_compute_rejects_malformed_graph6_as_400(client):
    r = client.post("/compute", json={"graph": {"graph6": "!!"}})
    assert r.status_code == 400
    assert "printable range" in r.json()["detail"]


def test_compute_rejects_ambiguous_graph_input_as_422(client):
    r = client.post(
        "/compute",
        json={"graph": {"graph6": "C~", "edges": {"order": 1, "edges": []}}},
    )
    assert r.status_code == 422  # pydantic validation: exactly one of graph6/edges


def test_compute_limit_maps_to_422(client):
    r = client.post(
        "/compute", json={"graph": {"graph6": "C~"}, "dp_limit": 3}
    )
    assert r.status_code == 422
    assert "dp limit = 3" in r.json()["detail"]


def test_paths_with_tree(client):
    r = client.post("/paths", json={"graph": {"graph6": "BW"}, "tree": True})
    assert r.status_code == 200
    body = r.json()
    assert body["count"] == 3
    assert frac(body["total"]) == Fraction(1, 3)
    orderings = [tuple(p["ordering"]) for p in body["paths"]]
    assert orderings == [(0, 1, 2), (0, 2, 1), (2, 0, 1)]
    tree = body["tree"]
    assert tree["order"] == 0 and tree["graph6"] is None
    assert tree["leaves"] == 3
    assert len(tree["children"]) == 1


def test_paths_without_tree_omits_it(client):
    r = client.post("/paths", json={"graph": {"graph6": "BW"}})
    assert r.json()["tree"] is None


def test_bounds_endpoint(client):
    r = client.post("/bounds", json={"graph": {"graph6": "Bw"}})
    body = r.json()
    assert body["aut"] == 6
    assert frac(body["lower"]) == Fraction(1, 12)
    assert frac(body["upper"]) == Fraction(1, 6)


def test_family_with_closed_form(client):
    r = client.post("/family", json={"kind": "star", "order": 5})
    body = r.json()
    assert frac(body["closed_form"]) == Fraction(17, 1440)
    assert frac(body["dp"]) == Fraction(17, 1440)
    assert body["agree"] is True


def test_family_cycle_uses_the_deletion_relation(client):
    r = client.post("/family", json={"kind": "cycle", "order": 5})
    body = r.json()
    assert frac(body["closed_form"]) == Fraction(1, 270)
    assert body["agree"] is True


def test_family_path_has_no_closed_form(client):
    r = client.post("/family", json={"kind": "path", "order": 4})
    body = r.json()
    assert body["closed_form"] is None
    assert body["agree"] is None
    assert frac(body["dp"]) == Fraction(1, 9)


def test_family_rejects_bad_kind_as_400(client):
    r = client.post("/family", json={"kind": "banana", "order": 4})
    assert r.status_code == 400


def test_simulate_deterministic_and_compared(client):
    req = {
        "graph": {"graph6": "A_"},
        "samples": 5000,
        "seed": 7,
        "compare": True,
    }
    r1 = client.post("/simulate", json=req)
    r2 = client.post("/simulate", json=req)
    assert r1.status_code == 200
    assert r1.json() == r2.json()
    body = r1.json()
    assert body["samples"] == 5000 and body["seed"] == 7
    assert 0 < body["hits"] < 5000
    assert frac(body["exact"]) == Fraction(1, 2)
    assert body["z"] is not None


def test_simulate_without_compare_omits_exact(client):
    r = client.post(
        "/simulate", json={"graph": {"graph6": "A_"}, "samples": 100, "seed": 1}
    )
    body = r.json()
    assert body["exact"] is None and body["z"] is None


def test_census_order_4(client):
    r = client.post("/census", json={"order": 4})
    body = r.json()
    assert body["classes"] == 11
    assert frac(body["total"]) == 1
    assert len(body["rows"]) == 11
    first = body["rows"][0]
    assert first["graph6"] == "C?" and frac(first["likelihood"]) == Fraction(1, 24)


def test_census_over_limit_maps_to_422(client):
    r = client.post("/census", json={"order": 12})
    assert r.status_code == 422
    assert "census limit" in r.json()["detail"]


def test_verify_named_suites(client):
    r = client.post("/verify", json={"suites": ["golden", "oracle"], "max_order": 4})
    body = r.json()
    assert body["passed"] is True
    assert [c["name"] for c in body["checks"]] == ["golden", "oracle"]
    assert all(c["passed"] for c in body["checks"])


def test_verify_unknown_suite_is_400(client):
    r = client.post("/verify", json={"suites": ["nonsense"]})
    assert r.status_code == 400
    assert "unknown suites" in r.json()["detail"]
