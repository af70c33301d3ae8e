"""Regenerate the frontend's golden fixtures.

Starts the real HTTP service on a scratch document, captures the layout
document exactly as served, then freezes 1,000 seeded sample points with the
engine's hit-test verdicts. The frontend test replays the points against its
client-side hit-test; any divergence between the two implementations fails.

Usage: python3 scripts/make_golden.py
"""

import json
import math
import random
import tempfile
import threading
import urllib.request
from pathlib import Path

from cheesecake import (
    Cheesecake,
    Contact,
    compute_layout,
    hit_test,
    layout_to_doc,
    canonical_json_bytes,
    serialize,
    viewport_config,
)
from cheesecake.service import make_server

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"

WIDTH, HEIGHT = 640.0, 520.0
SECTOR_GAP = 0.08
START_ANGLE = 0.35
POINTS = 1000
SEED = 9021


def build_model() -> Cheesecake:
    model = Cheesecake()
    names = ["Ana", "Bob", "Carmen", "Diego", "Elena", "Fermin", "Gloria", "Hugo"]
    for i, name in enumerate(names):
        model = model.add_contact(Contact(f"c{i + 1}", name))
    bands = [["close"], ["close", "distant"], ["in", "mid", "out"], ["a", "b", "c", "d"]]
    for i, sub in enumerate(bands):
        model = model.create_sector(f"context{i + 1}", sub)
    rng = random.Random(SEED)
    for contact in model.contacts:
        sector = rng.choice(model.sectors)
        model = model.assign(contact.id, sector.id, rng.randrange(sector.depth_count))
    return model


def main() -> None:
    model = build_model()
    with tempfile.TemporaryDirectory() as tmp:
        doc_path = Path(tmp) / "golden.json"
        doc_path.write_bytes(serialize(model))
        server = make_server(doc_path, port=0)
        thread = threading.Thread(
            target=lambda: server.serve_forever(poll_interval=0.02), daemon=True
        )
        thread.start()
        try:
            host, port = server.server_address[:2]
            url = (
                f"http://{host}:{port}/api/layout?width={WIDTH:g}&height={HEIGHT:g}"
                f"&sector_gap={SECTOR_GAP}&start_angle={START_ANGLE}"
            )
            with urllib.request.urlopen(url) as resp:
                served = resp.read()
        finally:
            server.shutdown()
            server.server_close()
            thread.join(timeout=5)

    config = viewport_config(
        WIDTH, HEIGHT, sector_gap=SECTOR_GAP, start_angle=START_ANGLE
    )
    layout = compute_layout(model, config)
    assert served == canonical_json_bytes(layout_to_doc(layout)), "served != computed"

    rng = random.Random(SEED)
    cx, cy = config.center
    points = []
    expected = []
    for _ in range(POINTS):
        r = config.outer_radius * 1.1 * math.sqrt(rng.random())
        theta = rng.uniform(0, 2 * math.pi)
        x = cx + r * math.sin(theta)
        y = cy - r * math.cos(theta)
        result = hit_test(layout, (x, y))
        points.append([x, y])
        verdict = {"kind": result.kind}
        if result.kind == "cell":
            verdict["sector"] = result.sector_id
            verdict["depth"] = result.depth
        expected.append(verdict)

    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    (FIXTURE_DIR / "golden_layout.json").write_bytes(served)
    (FIXTURE_DIR / "golden_hits.json").write_bytes(
        canonical_json_bytes({"points": points, "expected": expected})
    )
    kinds = sorted(v["kind"] for v in expected)
    counts = {k: kinds.count(k) for k in dict.fromkeys(kinds)}
    print(f"wrote {POINTS} golden points to {FIXTURE_DIR}: {counts}")


if __name__ == "__main__":
    main()
