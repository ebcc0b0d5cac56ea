"""File-backed interactive decision sessions.

One JSON document per session under the data directory; writes are
atomic (temp file + rename) and per-session mutation is serialised with
an in-process lock, so concurrent requests always observe a consistent
snapshot and sessions survive process restarts.
"""

from __future__ import annotations

import os
import secrets
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import json

from .jsonio import canonical_json, solve_result
from .model import (
    BwmError,
    OutOfScaleError,
    NotDominantError,
    validate_bwm,
    validate_comparison_value,
)


class SessionError(BwmError):
    status = 400
    code = "bad_request"


class SessionNotFoundError(SessionError):
    status = 404
    code = "unknown_session"


class InvalidEntryError(SessionError):
    status = 422
    code = "invalid_entry"


class ConflictError(SessionError):
    status = 409
    code = "conflict"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class SessionStore:
    """CRUD over session documents with eager recomputation on update."""

    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._locks: Dict[str, threading.RLock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, sid: str) -> threading.RLock:
        with self._locks_guard:
            return self._locks.setdefault(sid, threading.RLock())

    def _path(self, sid: str) -> Path:
        if not sid.isalnum():
            raise SessionNotFoundError(f"no session {sid!r}")
        return self.data_dir / f"{sid}.json"

    def _load(self, sid: str) -> Dict[str, Any]:
        path = self._path(sid)
        if not path.exists():
            raise SessionNotFoundError(f"no session {sid!r}")
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)

    def _save(self, doc: Dict[str, Any]) -> None:
        path = self._path(doc["id"])
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(doc))
        os.replace(tmp, path)

    def create(self, n: int, best: Optional[int] = None, worst: Optional[int] = None) -> Dict[str, Any]:
        try:
            n = int(n)
        except (TypeError, ValueError):
            raise InvalidEntryError(f"n must be an integer, got {n!r}")
        if n < 3:
            raise InvalidEntryError(f"need at least 3 alternatives, got n={n}")
        if (best is None) != (worst is None):
            raise ConflictError("best and worst must be chosen together")
        if best is not None:
            self._check_extremes(n, best, worst)
        doc = {
            "id": secrets.token_hex(8),
            "created": _now(),
            "updated": _now(),
            "n": n,
            "best": best,
            "worst": worst,
            "best_to_others": {},
            "others_to_worst": {},
            "best_to_worst": None,
            "state": "selecting-extremes" if best is None else "comparing",
            "result": None,
        }
        self._save(doc)
        return doc

    @staticmethod
    def _check_extremes(n: int, best, worst) -> None:
        if not isinstance(best, int) or not isinstance(worst, int):
            raise InvalidEntryError("best and worst must be integers")
        if not (1 <= best <= n and 1 <= worst <= n):
            raise ConflictError(f"best={best}, worst={worst} out of range 1..{n}")
        if best == worst:
            raise ConflictError("best and worst must differ")

    def get(self, sid: str) -> Dict[str, Any]:
        with self._lock(sid):
            return self._load(sid)

    def update_comparisons(self, sid: str, payload: Mapping[str, Any]) -> Dict[str, Any]:
        """Merge new judgments (and possibly the extremes) into the session."""
        with self._lock(sid):
            doc = self._load(sid)
            if "best" in payload or "worst" in payload:
                self._apply_extremes(doc, payload)
            if doc["best"] is None:
                if any(k in payload for k in ("best_to_others", "others_to_worst", "best_to_worst")):
                    raise ConflictError("choose best and worst before entering comparisons")
            self._apply_entries(doc, payload)
            self._refresh(doc)
            self._save(doc)
            return doc

    def reset(self, sid: str, payload: Mapping[str, Any]) -> Dict[str, Any]:
        """Clear named comparisons (or all of them) for re-elicitation."""
        with self._lock(sid):
            doc = self._load(sid)
            if payload.get("all"):
                doc["best_to_others"] = {}
                doc["others_to_worst"] = {}
                doc["best_to_worst"] = None
            for field in ("best_to_others", "others_to_worst"):
                for j in payload.get(field, []) or []:
                    doc[field].pop(str(int(j)), None)
            if payload.get("best_to_worst"):
                doc["best_to_worst"] = None
            self._refresh(doc)
            self._save(doc)
            return doc

    def _apply_extremes(self, doc: Dict[str, Any], payload: Mapping[str, Any]) -> None:
        best = payload.get("best", doc["best"])
        worst = payload.get("worst", doc["worst"])
        self._check_extremes(doc["n"], best, worst)
        changed = (doc["best"] is not None and best != doc["best"]) or (
            doc["worst"] is not None and worst != doc["worst"]
        )
        has_entries = doc["best_to_others"] or doc["others_to_worst"] or doc["best_to_worst"]
        if changed and has_entries:
            raise ConflictError("cannot change best/worst while comparisons exist; reset first")
        doc["best"], doc["worst"] = best, worst

    def _apply_entries(self, doc: Dict[str, Any], payload: Mapping[str, Any]) -> None:
        n, best, worst = doc["n"], doc["best"], doc["worst"]

        def check_value(raw) -> str:
            try:
                v = validate_comparison_value(raw)
            except OutOfScaleError as exc:
                raise InvalidEntryError(str(exc)) from exc
            if v <= 1:
                raise InvalidEntryError(f"judgment {v} must exceed 1 (dominance convention)")
            return raw if isinstance(raw, str) else str(raw)

        for field, excluded in (("best_to_others", best), ("others_to_worst", worst)):
            updates = payload.get(field) or {}
            if not isinstance(updates, Mapping):
                raise InvalidEntryError(f"{field} must be an object of j -> value")
            for j_raw, raw in updates.items():
                try:
                    j = int(j_raw)
                except (TypeError, ValueError):
                    raise InvalidEntryError(f"{field} key {j_raw!r} is not an alternative index")
                if not (1 <= j <= n):
                    raise ConflictError(f"alternative {j} out of range 1..{n}")
                if j == best or j == worst:
                    raise ConflictError(
                        f"{field}[{j}] clashes with the best/worst choice; "
                        "use best_to_worst for the shared cell"
                    )
                doc[field][str(j)] = check_value(raw)
        if "best_to_worst" in payload and payload["best_to_worst"] is not None:
            doc["best_to_worst"] = check_value(payload["best_to_worst"])

    def _refresh(self, doc: Dict[str, Any]) -> None:
        """Recompute state and (eagerly) the result after any mutation."""
        doc["updated"] = _now()
        if doc["best"] is None:
            doc["state"] = "selecting-extremes"
            doc["result"] = None
            return
        middles = [j for j in range(1, doc["n"] + 1) if j not in (doc["best"], doc["worst"])]
        complete = (
            doc["best_to_worst"] is not None
            and all(str(j) in doc["best_to_others"] for j in middles)
            and all(str(j) in doc["others_to_worst"] for j in middles)
        )
        if not complete:
            doc["state"] = "comparing"
            doc["result"] = None
            return
        try:
            inst = validate_bwm(
                n=doc["n"],
                best=doc["best"],
                worst=doc["worst"],
                best_to_others={int(j): v for j, v in doc["best_to_others"].items()},
                others_to_worst={int(j): v for j, v in doc["others_to_worst"].items()},
                best_to_worst=doc["best_to_worst"],
            )
        except (OutOfScaleError, NotDominantError) as exc:
            raise InvalidEntryError(str(exc)) from exc
        doc["result"] = solve_result(inst)
        doc["state"] = "solved"

    def missing(self, doc: Dict[str, Any]) -> Dict[str, Any]:
        """Which of the 2n-3 judgments are still absent."""
        if doc["best"] is None:
            return {"extremes": True}
        middles = [j for j in range(1, doc["n"] + 1) if j not in (doc["best"], doc["worst"])]
        return {
            "best_to_others": [j for j in middles if str(j) not in doc["best_to_others"]],
            "others_to_worst": [j for j in middles if str(j) not in doc["others_to_worst"]],
            "best_to_worst": doc["best_to_worst"] is None,
        }
