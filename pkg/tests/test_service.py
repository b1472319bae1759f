"""HTTP session facade: lifecycle, actions, atomicity, persistence."""

import json

import pytest
from fastapi.testclient import TestClient

from wagefloor import simulator as sim
from wagefloor.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(tmp_path / "sessions")
    with TestClient(app) as c:
        yield c


def create_hungary(client) -> str:
    resp = client.post("/api/v1/sessions", json={"preset": "hungary"})
    assert resp.status_code == 201
    return resp.json()["id"]


# ---------------------------------------------------------------------------
# create
# ---------------------------------------------------------------------------

def test_create_preset_snapshot(client):
    resp = client.post("/api/v1/sessions", json={"preset": "hungary"})
    assert resp.status_code == 201
    body = resp.json()
    assert body["snapshot"]["t"] == 0
    assert body["snapshot"]["w_min"] == pytest.approx(0.406, abs=1e-9)
    assert len(body["id"]) >= 16


def test_create_distinct_ids(client):
    a = create_hungary(client)
    b = create_hungary(client)
    assert a != b


def test_create_invalid_config_is_422(client):
    payload = sim.config_to_payload(sim.hungary_scenario())
    payload["steps"] = 0
    resp = client.post("/api/v1/sessions", json={"config": payload})
    assert resp.status_code == 422
    body = resp.json()
    assert body["error"] == "invalid payload"
    assert isinstance(body["detail"], list) and body["detail"]


def test_create_unknown_preset_and_ambiguous(client):
    assert client.post("/api/v1/sessions",
                       json={"preset": "mars"}).status_code == 422
    assert client.post("/api/v1/sessions", json={}).status_code == 422
    both = {"preset": "hungary",
            "config": sim.config_to_payload(sim.hungary_scenario())}
    assert client.post("/api/v1/sessions", json=both).status_code == 422


# ---------------------------------------------------------------------------
# actions
# ---------------------------------------------------------------------------

def test_action_then_advance_hits_ratio(client):
    sid = create_hungary(client)
    assert client.post(f"/api/v1/sessions/{sid}/action",
                       json={"ratio": 0.45}).status_code == 204
    resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 1})
    assert resp.status_code == 200
    assert resp.json()["records"][0]["w_min"] == pytest.approx(0.45, rel=1e-12)


def test_action_overwrite_last_wins(client):
    sid = create_hungary(client)
    client.post(f"/api/v1/sessions/{sid}/action", json={"ratio": 0.55})
    client.post(f"/api/v1/sessions/{sid}/action", json={"ratio": 0.48})
    resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 1})
    assert resp.json()["records"][0]["w_min"] == pytest.approx(0.48, rel=1e-12)


def test_action_validation(client):
    sid = create_hungary(client)
    url = f"/api/v1/sessions/{sid}/action"
    assert client.post(url, json={"ratio": -0.1}).status_code == 422
    assert client.post(url, json={}).status_code == 422
    assert client.post(url, json={"ratio": 0.4, "floor": 9.0}).status_code == 422
    assert client.post("/api/v1/sessions/nope/action",
                       json={"ratio": 0.4}).status_code == 404


def test_floor_below_minimum_fails_at_advance(client):
    sid = create_hungary(client)
    before = client.get(f"/api/v1/sessions/{sid}/history").json()
    client.post(f"/api/v1/sessions/{sid}/action", json={"floor": 0.5})
    resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 1})
    assert resp.status_code == 422
    after = client.get(f"/api/v1/sessions/{sid}/history").json()
    assert after == before


# ---------------------------------------------------------------------------
# advance
# ---------------------------------------------------------------------------

def test_advance_grows_history(client):
    sid = create_hungary(client)
    resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 5})
    assert len(resp.json()["records"]) == 5
    history = client.get(f"/api/v1/sessions/{sid}/history").json()
    assert len(history["rows"]) == 6          # t=0 snapshot plus five steps


def test_advance_validation(client):
    sid = create_hungary(client)
    url = f"/api/v1/sessions/{sid}/advance"
    assert client.post(url, json={"n": 0}).status_code == 422
    assert client.post(url, json={"n": "three"}).status_code == 422
    assert client.post("/api/v1/sessions/nope/advance",
                       json={"n": 1}).status_code == 404


def test_advance_atomic_on_mid_failure(client):
    """A failing step inside a multi-step advance leaves no partial rows."""
    payload = sim.config_to_payload(sim.hungary_scenario())
    payload["compression"]["ceiling_ratio"] = 0.65
    payload["rule"] = {"kind": "gdpc-indexed", "target": 0.62}
    # growth shrinks the gap to the ceiling until compress rejects the floor
    payload["real_growth_rate"] = 0.0
    payload["inflation_rate"] = 0.0
    resp = client.post("/api/v1/sessions", json={"config": payload})
    sid = resp.json()["id"]
    before = client.get(f"/api/v1/sessions/{sid}/history").json()
    # first step lifts the floor to 0.62, near the 0.65 ceiling; asking for a
    # manual floor above the ceiling then fails mid-advance
    client.post(f"/api/v1/sessions/{sid}/action", json={"ratio": 0.66})
    resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 3})
    assert resp.status_code == 409
    assert resp.json()["detail"]["step"] == 1
    assert client.get(f"/api/v1/sessions/{sid}/history").json() == before


def test_replay_determinism(client):
    actions = [{"ratio": 0.45}, {"ratio": 0.52}, {"ratio": 0.58}]

    def drive():
        sid = create_hungary(client)
        for action in actions:
            client.post(f"/api/v1/sessions/{sid}/action", json=action)
            client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 2})
        return client.get(f"/api/v1/sessions/{sid}/history").json()

    assert json.dumps(drive()) == json.dumps(drive())


# ---------------------------------------------------------------------------
# history and session views
# ---------------------------------------------------------------------------

def test_history_metric_filter(client):
    sid = create_hungary(client)
    client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 2})
    resp = client.get(f"/api/v1/sessions/{sid}/history",
                      params={"metrics": "w_min,gini_proxy"})
    body = resp.json()
    assert body["columns"] == ["t", "w_min", "gini_proxy"]
    assert all(len(row) == 3 for row in body["rows"])


def test_history_unknown_metric(client):
    sid = create_hungary(client)
    resp = client.get(f"/api/v1/sessions/{sid}/history",
                      params={"metrics": "w_min,vibes"})
    assert resp.status_code == 422
    assert "vibes" in json.dumps(resp.json())


def test_history_empty_session_single_snapshot(client):
    sid = create_hungary(client)
    body = client.get(f"/api/v1/sessions/{sid}/history").json()
    assert len(body["rows"]) == 1
    assert body["rows"][0][0] == 0


def test_get_session_view(client):
    sid = create_hungary(client)
    client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 1})
    body = client.get(f"/api/v1/sessions/{sid}").json()
    assert body["t"] == 1
    assert body["latest"]["t"] == 1
    assert body["config"]["rule"]["kind"] == "manual"


# ---------------------------------------------------------------------------
# delete
# ---------------------------------------------------------------------------

def test_delete_lifecycle(client):
    a = create_hungary(client)
    b = create_hungary(client)
    assert client.delete(f"/api/v1/sessions/{a}").status_code == 204
    assert client.get(f"/api/v1/sessions/{a}").status_code == 404
    assert client.delete(f"/api/v1/sessions/{a}").status_code == 404
    assert client.get(f"/api/v1/sessions/{b}").status_code == 200


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def test_restart_recovers_sessions_byte_equal(tmp_path):
    data_dir = tmp_path / "sessions"
    with TestClient(create_app(data_dir)) as client:
        sid = create_hungary(client)
        client.post(f"/api/v1/sessions/{sid}/action", json={"ratio": 0.5})
        client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 3})
        client.post(f"/api/v1/sessions/{sid}/action", json={"floor": 260.0})
        before_history = client.get(f"/api/v1/sessions/{sid}/history").json()
        before_view = client.get(f"/api/v1/sessions/{sid}").json()

    with TestClient(create_app(data_dir)) as client:
        after_history = client.get(f"/api/v1/sessions/{sid}/history").json()
        after_view = client.get(f"/api/v1/sessions/{sid}").json()
        assert json.dumps(after_history) == json.dumps(before_history)
        assert after_view["config"] == before_view["config"]
        # the un-consumed pending action survived the restart
        resp = client.post(f"/api/v1/sessions/{sid}/advance", json={"n": 1})
        assert resp.json()["records"][0]["nominal_min"] == pytest.approx(260.0)


def test_restart_after_delete_stays_deleted(tmp_path):
    data_dir = tmp_path / "sessions"
    with TestClient(create_app(data_dir)) as client:
        sid = create_hungary(client)
        client.delete(f"/api/v1/sessions/{sid}")
    with TestClient(create_app(data_dir)) as client:
        assert client.get(f"/api/v1/sessions/{sid}").status_code == 404
