"""The whole pipeline end-to-end, then the same thing over HTTP.

Run:  python3 demos/04_full_pipeline_service.py
"""

import json
import threading
import time

import httpx
import uvicorn

from factpipe import LanguageTag, PipelineConfig, run_pipeline
from factpipe.service import create_app

DOCUMENT = (
    "The harbor handled 4.2 million containers in 2023. "
    "Personally I find cranes beautiful. "
    "The new terminal cost 900 million kroner."
)

report = run_pipeline(DOCUMENT, LanguageTag("en"), config=PipelineConfig())
print(f"claims: {len(report.claims)}, verdicts: {len(report.verdicts)}")
for verdict in report.verdicts:
    print(f"  {verdict.label.value:10s} {verdict.claim.text}")
print(f"stage timings (ms): {report.timings}")

# The canonical serialization is byte-stable under stub providers: the same
# document always produces the same bytes (timings are excluded from it).
again = run_pipeline(DOCUMENT, LanguageTag("en"), config=PipelineConfig())
print(f"byte-identical rerun: {report.canonical_json() == again.canonical_json()}")

# Same pipeline behind REST, as the editor frontend consumes it.
app = create_app(PipelineConfig())
server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error"))
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.01)
port = server.servers[0].sockets[0].getsockname()[1]
base = f"http://127.0.0.1:{port}/api/v1"

print(f"\nserving on {base}")
print("health:", httpx.get(f"{base}/health").json()["status"])

resp = httpx.post(f"{base}/factcheck", json={"document": DOCUMENT, "language": "en"})
body = resp.json()
print(f"POST /factcheck -> {resp.status_code}, {len(body['verdicts'])} verdicts")

resp = httpx.post(
    f"{base}/verify",
    json={"claim": "The terminal cost 900 million kroner.", "language": "en"},
)
verdict = resp.json()
print(f"POST /verify -> {verdict['label']} "
      f"({verdict['support_votes']}-{verdict['refute_votes']})")
print("first evidence item:")
print(json.dumps(verdict["evidence"][0], indent=2)[:400])

server.should_exit = True
thread.join(timeout=5)
