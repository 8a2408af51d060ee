"""Session-keeping HTTP service.

Lets an operator (or the browser console) accumulate sequential
measurements against a persistent belief and read back the trajectory,
and serves ROC curves with numbers bit-identical to the library and CLI.

Endpoints (JSON bodies, UTF-8):

    POST /sessions                      create a session
    GET  /sessions/{id}                 full trajectory
    POST /sessions/{id}/measurements    append one look
    GET  /roc?snr=&prior=&points=       PPV-enhanced curve
    GET  /healthz

Persistence is an append-only log per session (one JSON record per line)
plus an append-only index; the in-memory state is always derived by
replaying the log, never trusted from elsewhere, and every append is
flushed and fsynced before the request is acknowledged.  Per-session
writes are serialized under a lock; writers must present the revision
they believe the session is at and get 409 on a stale value.

Errors carry {"code": ..., "message": ...}.  No authentication: this is
a desk-scale tool.  Configure the bind address and storage directory via
flags or the BAYESROC_ADDR / BAYESROC_DATA_DIR environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional, Tuple
from urllib.parse import parse_qs, urlparse

from .bayes import (
    BeliefState,
    DetectorCharacteristic,
    IndeterminateUpdate,
    MeasurementOutcome,
    apply_look,
    probability,
)
from .roc import roc_curve
from .signal import RayleighRician

__all__ = ["ApiError", "SessionStore", "make_server", "main"]


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


def _resolve_detector(obj: dict, required: bool) -> Tuple[Optional[DetectorCharacteristic], Optional[dict]]:
    """Resolve a detector spec: explicit (pd, pfa) or model-derived (snr, threshold).

    Returns (detector, source-echo).  Model-derived specs are resolved to
    concrete rates immediately so the persisted log stays self-contained.
    """
    has_det = isinstance(obj.get("detector"), dict)
    has_model = isinstance(obj.get("model"), dict)
    if has_det and has_model:
        raise _bad_request("give either 'detector' or 'model', not both")
    if not has_det and not has_model:
        if required:
            raise _bad_request("a 'detector' {pd, pfa} or 'model' {snr, threshold} is required")
        return None, None
    try:
        if has_det:
            spec = obj["detector"]
            det = DetectorCharacteristic(float(spec["pd"]), float(spec["pfa"]))
            return det, None
        spec = obj["model"]
        model = RayleighRician(float(spec["snr"]))
        threshold = float(spec["threshold"])
        det = DetectorCharacteristic(model.pd(threshold), model.pfa(threshold))
        return det, {"snr": model.snr, "threshold": threshold}
    except KeyError as exc:
        raise _bad_request(f"detector spec is missing {exc.args[0]!r}")
    except (TypeError, ValueError) as exc:
        raise ApiError(422, "unresolvable_detector", str(exc))


def _parse_outcome(value) -> MeasurementOutcome:
    if value == "positive":
        return MeasurementOutcome.POSITIVE
    if value == "negative":
        return MeasurementOutcome.NEGATIVE
    raise _bad_request("outcome must be 'positive' or 'negative'")


@dataclass
class _Session:
    id: str
    created_at: str
    prior: float
    detector: DetectorCharacteristic
    source: Optional[dict]
    path: Path
    belief: BeliefState
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def summary(self, with_looks: bool = False) -> dict:
        out = {
            "id": self.id,
            "created_at": self.created_at,
            "prior": self.prior,
            "detector": {"pd": self.detector.pd, "pfa": self.detector.pfa},
            "source": self.source,
            "revision": self.revision,
            "current": self.belief.current,
        }
        if with_looks:
            out["looks"] = [
                {
                    "outcome": rec.outcome.value,
                    "detector": {"pd": rec.detector.pd, "pfa": rec.detector.pfa},
                    "posterior": rec.posterior_after,
                }
                for rec in self.belief.looks
            ]
        return out


def _append_record(path: Path, record: dict) -> None:
    # Append-before-acknowledge: the line is on disk before the caller
    # builds a response.
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


class SessionStore:
    """Sessions backed by append-only logs under one directory."""

    def __init__(self, data_dir):
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._index_path = self._dir / "index.log"
        self._lock = threading.Lock()
        self._sessions: dict[str, _Session] = {}
        self._load()

    # -- persistence ------------------------------------------------------

    def _load(self) -> None:
        if not self._index_path.exists():
            return
        with open(self._index_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                sid = json.loads(line)["id"]
                session = self._replay(self._dir / f"{sid}.jsonl")
                self._sessions[session.id] = session

    def _replay(self, path: Path) -> _Session:
        """Rebuild a session purely from its log; state is never stored."""
        with open(path, encoding="utf-8") as fh:
            header = json.loads(fh.readline())
            if header.get("type") != "session":
                raise ValueError(f"{path}: first record is not a session header")
            det = DetectorCharacteristic(**header["detector"])
            session = _Session(
                id=header["id"],
                created_at=header["created_at"],
                prior=header["prior"],
                detector=det,
                source=header.get("source"),
                path=path,
                belief=BeliefState(header["prior"]),
            )
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                look_det = DetectorCharacteristic(**rec["detector"])
                session.belief = apply_look(
                    session.belief, _parse_outcome(rec["outcome"]), look_det
                )
                session.revision += 1
                if session.belief.current != rec["posterior"]:
                    raise ValueError(
                        f"{path}: replayed posterior {session.belief.current!r} does not "
                        f"match logged {rec['posterior']!r} at revision {session.revision}"
                    )
        return session

    # -- operations -------------------------------------------------------

    def create_session(self, body: dict) -> dict:
        try:
            prior = probability(body["prior"])
        except KeyError:
            raise _bad_request("'prior' is required")
        except (TypeError, ValueError) as exc:
            raise _bad_request(str(exc))
        detector, source = _resolve_detector(body, required=True)
        sid = uuid.uuid4().hex
        created_at = datetime.now(timezone.utc).isoformat()
        session = _Session(
            id=sid,
            created_at=created_at,
            prior=prior,
            detector=detector,
            source=source,
            path=self._dir / f"{sid}.jsonl",
            belief=BeliefState(prior),
        )
        with self._lock:
            _append_record(
                session.path,
                {
                    "type": "session",
                    "id": sid,
                    "created_at": created_at,
                    "prior": prior,
                    "detector": {"pd": detector.pd, "pfa": detector.pfa},
                    "source": source,
                },
            )
            _append_record(self._index_path, {"id": sid, "created_at": created_at})
            self._sessions[sid] = session
        return session.summary()

    def _get(self, sid: str) -> _Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {sid!r}")
        return session

    def get_session(self, sid: str) -> dict:
        return self._get(sid).summary(with_looks=True)

    def post_measurement(self, sid: str, body: dict) -> dict:
        session = self._get(sid)
        outcome = _parse_outcome(body.get("outcome"))
        override, _ = _resolve_detector(body, required=False)
        det = override if override is not None else session.detector
        if "expected_revision" not in body:
            raise _bad_request("'expected_revision' is required")
        try:
            expected = int(body["expected_revision"])
        except (TypeError, ValueError):
            raise _bad_request("'expected_revision' must be an integer")

        with session.lock:
            if expected != session.revision:
                raise ApiError(
                    409,
                    "revision_mismatch",
                    f"expected_revision {expected} but session is at {session.revision}",
                )
            try:
                belief = apply_look(session.belief, outcome, det)
            except IndeterminateUpdate as exc:
                raise ApiError(422, "indeterminate_update", str(exc))
            _append_record(
                session.path,
                {
                    "type": "measurement",
                    "revision": session.revision + 1,
                    "outcome": outcome.value,
                    "detector": {"pd": det.pd, "pfa": det.pfa},
                    "posterior": belief.current,
                },
            )
            session.belief = belief
            session.revision += 1
            return session.summary()


# -- HTTP layer -------------------------------------------------------------

_SESSION_PATH = re.compile(r"^/sessions/([0-9a-f]{32})$")
_MEASUREMENT_PATH = re.compile(r"^/sessions/([0-9a-f]{32})/measurements$")


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore  # set by make_server

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _send_json(self, status: int, payload) -> None:
        body = (json.dumps(payload) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_obj(self, err: ApiError) -> None:
        self._send_json(err.status, {"code": err.code, "message": err.message})

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise _bad_request("request body is required")
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            raise _bad_request("body must be UTF-8 JSON")
        if not isinstance(body, dict):
            raise _bad_request("body must be a JSON object")
        return body

    def do_GET(self):
        try:
            url = urlparse(self.path)
            if url.path == "/healthz":
                self._send_json(200, {"status": "ok"})
                return
            match = _SESSION_PATH.match(url.path)
            if match:
                self._send_json(200, self.store.get_session(match.group(1)))
                return
            if url.path == "/roc":
                self._send_json(200, self._roc(parse_qs(url.query)))
                return
            raise ApiError(404, "not_found", f"no route for GET {url.path}")
        except ApiError as err:
            self._send_error_obj(err)

    def do_POST(self):
        try:
            url = urlparse(self.path)
            if url.path == "/sessions":
                self._send_json(201, self.store.create_session(self._read_body()))
                return
            match = _MEASUREMENT_PATH.match(url.path)
            if match:
                self._send_json(
                    200, self.store.post_measurement(match.group(1), self._read_body())
                )
                return
            raise ApiError(404, "not_found", f"no route for POST {url.path}")
        except ApiError as err:
            self._send_error_obj(err)

    def _roc(self, query: dict) -> list:
        def one(name, default=None):
            values = query.get(name)
            if not values:
                if default is None:
                    raise _bad_request(f"query parameter {name!r} is required")
                return default
            return values[0]

        try:
            snr = float(one("snr"))
            prior = float(one("prior", "0.5"))
            points = int(one("points", "200"))
            curve = roc_curve(RayleighRician(snr), prior, points)
        except ApiError:
            raise
        except (TypeError, ValueError) as exc:
            raise _bad_request(str(exc))
        return curve.to_json_obj()


def make_server(host: str, port: int, store: SessionStore) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"store": store})
    return ThreadingHTTPServer((host, port), handler)


def main(argv=None) -> int:
    default_addr = os.environ.get("BAYESROC_ADDR", "127.0.0.1:8750")
    default_dir = os.environ.get("BAYESROC_DATA_DIR", "./bayesroc-sessions")
    parser = argparse.ArgumentParser(
        prog="bayesroc-service", description="Session-keeping detection service."
    )
    parser.add_argument("--addr", default=default_addr, help="host:port to bind (port 0 picks a free one)")
    parser.add_argument("--data-dir", default=default_dir, help="directory for session logs")
    args = parser.parse_args(argv)

    host, _, port_text = args.addr.rpartition(":")
    if not host or not port_text.isdigit():
        parser.error(f"--addr must be host:port, got {args.addr!r}")
    store = SessionStore(args.data_dir)
    server = make_server(host, int(port_text), store)
    bound = server.server_address
    print(f"listening on http://{bound[0]}:{bound[1]} data={args.data_dir}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
