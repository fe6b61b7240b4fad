#!/usr/bin/env python3
"""Capture real service responses as JSON fixtures for the frontend tests.

Runs the FastAPI app in-process against a simulated field, replays the
scripted session (upload -> sweep [1000, 800, 600] x nbins 13 -> two
bootstrap jobs) and freezes every response under frontend/fixtures/.
"""

import json
import time
from pathlib import Path

from fastapi.testclient import TestClient

import varioscope as vs
from varioscope.dataio import save_dataset
from varioscope.service import create_app

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def dump(name, payload):
    (OUT / f"{name}.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote fixtures/{name}.json")


def main():
    OUT.mkdir(exist_ok=True)
    coords = vs.uniform_coords(300, 2000, seed=7)
    ds = vs.simulated_dataset(vs.FieldSpec(vs.ExpParams(1.0, 2.0, 200.0), coords, seed=8))
    csv_path = OUT / "field.csv"
    save_dataset(ds, csv_path)

    client = TestClient(create_app(max_workers=2))

    upload = client.post(
        "/datasets", files={"file": ("field.csv", csv_path.read_bytes())}
    ).json()
    dump("upload", upload)
    sid = upload["session_id"]

    dump("distance_info", client.get(f"/datasets/{sid}/distance-info").json())

    sweep = client.post(
        f"/datasets/{sid}/variograms",
        json={"max_dists": [1000, 800, 600], "nbins_list": [13]},
    ).json()
    dump("sweep", sweep)

    jobs = {}
    for model_index in (1, 2):
        launch = client.post(
            f"/datasets/{sid}/bootstrap",
            json={"model_index": model_index, "B": 20, "threshold_factor": 3, "seed": 11},
        ).json()
        dump(f"bootstrap_launch_{model_index}", launch)
        job_id = launch["job_id"]
        while True:
            body = client.get(f"/jobs/{job_id}").json()
            if body["state"] in ("done", "failed"):
                break
            time.sleep(0.05)
        assert body["state"] == "done", body
        jobs[model_index] = body
        dump(f"job_done_{model_index}", body)

    queued = dict(jobs[1], state="running", result=None)
    queued["progress"] = {"accepted": 3, "discarded": 1}
    dump("job_running", queued)


if __name__ == "__main__":
    main()
