"""Latency benchmarks against a running inference service.

Measures wall-clock time of POST /api/networks/{id}/infer requests, either
sequentially (single mode) or from concurrent simulated users (load mode),
and reports mean / median / p95 in milliseconds both as a human-readable
table and as machine-readable JSON.

Requests run over keep-alive connections via the thin stdlib HTTP client,
so the numbers reflect the service rather than client-framework overhead.
Every connection issues one untimed warmup request first; connection setup
is never billed to the first measured request.
"""

from __future__ import annotations

import http.client
import json
import statistics
import threading
import time
from dataclasses import dataclass
from typing import Mapping, Sequence
from urllib.parse import urlsplit

import httpx

from .core import SurveyBnError

DEFAULT_TIMEOUT_S = 30.0


class BenchError(SurveyBnError):
    """The service could not be reached or answered with an error."""


@dataclass(frozen=True)
class BenchReport:
    """Latency summary of one benchmark run."""

    mode: str
    url: str
    model_id: str
    users: int
    requests: int
    mean_ms: float
    median_ms: float
    p95_ms: float

    def to_document(self) -> dict:
        return {
            "mode": self.mode,
            "url": self.url,
            "model": self.model_id,
            "users": self.users,
            "requests": self.requests,
            "mean_ms": round(self.mean_ms, 3),
            "median_ms": round(self.median_ms, 3),
            "p95_ms": round(self.p95_ms, 3),
        }

    def to_table(self) -> str:
        rows = [
            ("mode", self.mode),
            ("url", self.url),
            ("model", self.model_id),
            ("users", str(self.users)),
            ("requests", str(self.requests)),
            ("mean", f"{self.mean_ms:.3f} ms"),
            ("median", f"{self.median_ms:.3f} ms"),
            ("p95", f"{self.p95_ms:.3f} ms"),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _percentile(sorted_ms: Sequence[float], q: float) -> float:
    """Linear-interpolation percentile on pre-sorted data."""
    if len(sorted_ms) == 1:
        return sorted_ms[0]
    pos = (len(sorted_ms) - 1) * q
    lo = int(pos)
    hi = min(lo + 1, len(sorted_ms) - 1)
    return sorted_ms[lo] + (sorted_ms[hi] - sorted_ms[lo]) * (pos - lo)


def _summarize(mode: str, url: str, model_id: str, users: int, latencies_ms: Sequence[float]) -> BenchReport:
    ordered = sorted(latencies_ms)
    return BenchReport(
        mode=mode,
        url=url,
        model_id=model_id,
        users=users,
        requests=len(ordered),
        mean_ms=statistics.fmean(ordered),
        median_ms=statistics.median(ordered),
        p95_ms=_percentile(ordered, 0.95),
    )


def pick_model(base_url: str) -> str:
    """First model id listed by the service."""
    try:
        response = httpx.get(f"{base_url}/api/networks", timeout=DEFAULT_TIMEOUT_S)
    except httpx.HTTPError as exc:
        raise BenchError(f"cannot reach {base_url}: {exc}") from exc
    if response.status_code != 200:
        raise BenchError(f"GET /api/networks answered {response.status_code}")
    listing = response.json()
    if not listing:
        raise BenchError(f"{base_url} serves no models")
    return listing[0]["id"]


def _connect(base_url: str) -> http.client.HTTPConnection:
    parts = urlsplit(base_url)
    if parts.scheme == "http":
        cls = http.client.HTTPConnection
    elif parts.scheme == "https":
        cls = http.client.HTTPSConnection
    else:
        raise BenchError(f"unsupported url scheme in {base_url!r}")
    if parts.hostname is None:
        raise BenchError(f"no host in {base_url!r}")
    return cls(parts.hostname, parts.port, timeout=DEFAULT_TIMEOUT_S)


def _run_requests(
    conn: http.client.HTTPConnection, url: str, body: bytes, count: int, sink: list[float]
) -> None:
    headers = {"Content-Type": "application/json"}
    path = urlsplit(url).path
    # request 0 is the untimed warmup that opens the connection
    for i in range(count + 1):
        start = time.perf_counter()
        conn.request("POST", path, body, headers)
        response = conn.getresponse()
        payload = response.read()
        elapsed = (time.perf_counter() - start) * 1000.0
        if response.status != 200:
            raise BenchError(
                f"{url} answered {response.status}: {payload[:200].decode('utf-8', errors='replace')}"
            )
        if i > 0:
            sink.append(elapsed)


def bench_single(
    base_url: str,
    model_id: str,
    evidence: Mapping[str, int] | None = None,
    requests: int = 1000,
) -> BenchReport:
    """Sequential latency over one keep-alive connection, as one user sees it."""
    if requests < 1:
        raise BenchError(f"request count must be >= 1, got {requests}")
    url = f"{base_url}/api/networks/{model_id}/infer"
    body = json.dumps({"evidence": dict(evidence or {})}).encode("utf-8")
    latencies: list[float] = []
    conn = _connect(base_url)
    try:
        _run_requests(conn, url, body, requests, latencies)
    except (OSError, http.client.HTTPException) as exc:
        raise BenchError(f"cannot reach {url}: {exc}") from exc
    finally:
        conn.close()
    return _summarize("single", base_url, model_id, 1, latencies)


def bench_load(
    base_url: str,
    model_id: str,
    evidence: Mapping[str, int] | None = None,
    users: int = 50,
    requests: int = 1000,
) -> BenchReport:
    """Concurrent latency: ``users`` workers splitting ``requests`` evenly."""
    if users < 1:
        raise BenchError(f"user count must be >= 1, got {users}")
    if requests < 1:
        raise BenchError(f"request count must be >= 1, got {requests}")
    url = f"{base_url}/api/networks/{model_id}/infer"
    body = json.dumps({"evidence": dict(evidence or {})}).encode("utf-8")
    per_user = -(-requests // users)  # ceil division

    sinks: list[list[float]] = [[] for _ in range(users)]
    failures: list[BaseException] = []

    def worker(index: int) -> None:
        try:
            conn = _connect(base_url)
            try:
                _run_requests(conn, url, body, per_user, sinks[index])
            finally:
                conn.close()
        except BaseException as exc:  # surfaced after join
            failures.append(exc)

    threads = [threading.Thread(target=worker, args=(i,)) for i in range(users)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    if failures:
        first = failures[0]
        if isinstance(first, BenchError):
            raise first
        raise BenchError(f"cannot reach {url}: {first}") from first
    latencies = [ms for sink in sinks for ms in sink]
    return _summarize("load", base_url, model_id, users, latencies)
