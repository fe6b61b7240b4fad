import io
import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

import varioscope as vs
from varioscope.dataio import save_dataset
from varioscope.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(max_workers=2))


@pytest.fixture(scope="module")
def csv_bytes():
    coords = vs.uniform_coords(200, 1000, seed=50)
    ds = vs.simulated_dataset(vs.FieldSpec(vs.ExpParams(0.5, 1.5, 100), coords, seed=51))
    buf = io.StringIO()
    import tempfile, os

    with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as fh:
        path = fh.name
    save_dataset(ds, path)
    data = open(path, "rb").read()
    os.unlink(path)
    return data


@pytest.fixture(scope="module")
def session_id(client, csv_bytes):
    resp = client.post("/datasets", files={"file": ("field.csv", csv_bytes)})
    assert resp.status_code == 200
    body = resp.json()
    assert body["n"] == 200
    assert body["missingness"]["n_missing_outcome"] == 0
    return body["session_id"]


def test_unknown_session_404(client):
    assert client.get("/datasets/nope/distance-info").status_code == 404
    assert client.get("/jobs/nope").status_code == 404


def test_bad_upload_400(client):
    resp = client.post("/datasets", files={"file": ("bad.csv", b"x,y\n1,2\n")})
    assert resp.status_code == 400


def test_distance_info(client, session_id):
    resp = client.get(f"/datasets/{session_id}/distance-info")
    assert resp.status_code == 200
    body = resp.json()
    assert body["summary"]["min"] <= body["summary"]["median"] <= body["summary"]["max"]
    assert sum(b["count"] for b in body["histogram"]) == 200 * 199 // 2


def test_variogram_sweep_two_rows(client, session_id):
    resp = client.post(
        f"/datasets/{session_id}/variograms",
        json={"max_dists": [600], "nbins_list": [12, 13]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["table"]["rows"]) == 2
    assert len(body["models"]) == 2
    assert body["models"][0]["curve"] is not None


def test_variogram_replay_identical(client, session_id):
    req = {"max_dists": [800, 600], "nbins_list": [10]}
    b1 = client.post(f"/datasets/{session_id}/variograms", json=req).json()
    b2 = client.post(f"/datasets/{session_id}/variograms", json=req).json()
    assert b1["table"] == b2["table"]
    assert b1["models"] == b2["models"]


def test_regression_creates_residual_session(client):
    rng = np.random.default_rng(1)
    n = 100
    x1 = rng.normal(size=n)
    lines = ["x,y,outcome,x1"]
    xs, ys = rng.uniform(0, 500, n), rng.uniform(0, 500, n)
    out = 1.0 + 2.0 * x1 + rng.normal(size=n)
    for i in range(n):
        lines.append(f"{xs[i]},{ys[i]},{out[i]},{x1[i]}")
    data = "\n".join(lines).encode()
    sid = client.post("/datasets", files={"file": ("d.csv", data)}).json()["session_id"]
    resp = client.post(
        f"/datasets/{sid}/regressions",
        json={"response": "outcome", "predictors": ["x1"]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["summary"]["coefficients"]["x1"] == pytest.approx(2.0, abs=0.5)
    rid = body["residual_session_id"]
    # residual session is itself sweepable
    resp2 = client.post(
        f"/datasets/{rid}/variograms", json={"max_dists": [400], "nbins_list": [8]}
    )
    assert resp2.status_code == 200


def test_bootstrap_before_sweep_409(client, csv_bytes):
    sid = client.post("/datasets", files={"file": ("f.csv", csv_bytes)}).json()[
        "session_id"
    ]
    resp = client.post(
        f"/datasets/{sid}/bootstrap", json={"model_index": 1, "B": 2, "seed": 0}
    )
    assert resp.status_code == 409


def _wait_for_job(client, job_id, timeout=60.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        body = client.get(f"/jobs/{job_id}").json()
        if body["state"] in ("done", "failed"):
            return body
        time.sleep(0.05)
    raise AssertionError("job did not finish in time")


def test_bootstrap_job_lifecycle_and_determinism(client, session_id):
    job_ids = []
    for _ in range(2):
        resp = client.post(
            f"/datasets/{session_id}/bootstrap",
            json={"model_index": 1, "B": 10, "threshold_factor": 3, "seed": 42},
        )
        assert resp.status_code == 200
        job_ids.append(resp.json()["job_id"])
    results = [_wait_for_job(client, jid) for jid in job_ids]
    for body in results:
        assert body["state"] == "done"
        assert body["result"]["n_accepted"] == 10
    assert results[0]["result"] == results[1]["result"]
    # polling a finished job twice returns identical payloads
    again = client.get(f"/jobs/{job_ids[0]}").json()
    assert again["result"] == results[0]["result"]


def test_bootstrap_bad_model_index_400(client, session_id):
    resp = client.post(
        f"/datasets/{session_id}/bootstrap", json={"model_index": 99, "B": 2}
    )
    assert resp.status_code == 400
