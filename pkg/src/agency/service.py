"""HTTP session service: step-by-step steering with live posterior readouts.

Sessions are held in memory and expire after 30 idle minutes. Requests for
the same session are serialized by a per-session lock; undo recomputes the
scorer state from the remaining action prefix, which keeps it exactly equal
to a fresh replay.
"""
from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .gridworld import Action, GridMap, MapError, parse_map, replay
from .maps import default_map
from .planner import DEFAULT_GAMMA
from .switch_mixture import N_EPS_DEFAULT
from .verdict import TrajectoryScorer, assess, combine

SESSION_TTL_SECONDS = 30 * 60

_ACTION_BY_CHAR = {a.char: a for a in Action}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


class CreateSessionBody(BaseModel):
    map: str | None = None
    switching: bool = False
    gamma: float = DEFAULT_GAMMA
    n_eps: int = N_EPS_DEFAULT


class StepBody(BaseModel):
    action: str


@dataclass
class Session:
    id: str
    grid: GridMap
    switching: bool
    gamma: float
    n_eps: int
    scorer: TrajectoryScorer
    actions: list[Action] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    touched: float = field(default_factory=time.monotonic)

    def fresh_scorer(self) -> TrajectoryScorer:
        return TrajectoryScorer(
            self.grid, switching=self.switching, gamma=self.gamma, n_eps=self.n_eps
        )

    def state_payload(self) -> dict:
        s = self.scorer
        dev, agt = s.device.nll, s.nll_agt
        _, post_agt = combine(dev, agt)
        return {
            "t": s.t,
            "position": list(s.pos),
            "observation": s.faced.name.lower(),
            "last_action": s.last_action.char,
            "nll_dev": dev,
            "nll_agt": agt,
            "posterior_agt": post_agt,
            "posterior_dev": 1.0 - post_agt,
            "goal_posteriors": {
                c.name.lower(): p for c, p in s.goal_posteriors().items()
            },
        }

    def descriptor(self) -> dict:
        grid = self.grid
        return {
            "id": self.id,
            "rows": grid.rows,
            "cols": grid.cols,
            "cells": [
                [grid.cells[r][c].name.lower() for c in range(grid.cols)]
                for r in range(grid.rows)
            ],
            "start": list(grid.start),
            "goals": {
                color.name.lower(): list(pos) for color, pos in grid.goals
            },
            "switching": self.switching,
            "state": self.state_payload(),
        }


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, session: Session) -> None:
        with self._lock:
            self._expire()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._expire()
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        session.touched = time.monotonic()
        return session

    def delete(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise ApiError(404, "unknown_session", f"no session {session_id!r}")
            del self._sessions[session_id]

    def _expire(self) -> None:
        cutoff = time.monotonic() - SESSION_TTL_SECONDS
        stale = [sid for sid, s in self._sessions.items() if s.touched < cutoff]
        for sid in stale:
            del self._sessions[sid]


def _parse_action(char: str) -> Action:
    action = _ACTION_BY_CHAR.get(char.strip().upper())
    if action is None:
        raise ApiError(400, "bad_action", f"action must be one of U,D,L,R, got {char!r}")
    return action


def create_app(grid: GridMap | None = None, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="agency", docs_url=None, redoc_url=None)
    default_grid = grid or default_map()
    store = SessionStore()
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.post("/api/session")
    def create_session(body: CreateSessionBody | None = None):
        body = body or CreateSessionBody()
        if body.map:
            try:
                session_grid = parse_map(body.map)
            except MapError as exc:
                raise ApiError(400, "bad_map", str(exc))
        else:
            session_grid = default_grid
        try:
            scorer = TrajectoryScorer(
                session_grid, switching=body.switching, gamma=body.gamma, n_eps=body.n_eps
            )
        except ValueError as exc:  # no balloons, bad gamma, bad grid size
            raise ApiError(400, "bad_map", str(exc))
        session = Session(
            id=uuid.uuid4().hex,
            grid=session_grid,
            switching=body.switching,
            gamma=body.gamma,
            n_eps=body.n_eps,
            scorer=scorer,
        )
        store.create(session)
        return session.descriptor()

    @app.post("/api/session/{session_id}/step")
    def step_session(session_id: str, body: StepBody):
        session = store.get(session_id)
        action = _parse_action(body.action)
        with session.lock:
            session.scorer.step(action)
            session.actions.append(action)
            return session.state_payload()

    @app.post("/api/session/{session_id}/undo")
    def undo(session_id: str):
        session = store.get(session_id)
        with session.lock:
            if not session.actions:
                raise ApiError(409, "empty_history", "nothing to undo")
            session.actions.pop()
            session.scorer = session.fresh_scorer()
            for action in session.actions:
                session.scorer.step(action)
            return session.state_payload()

    @app.post("/api/session/{session_id}/reset")
    def reset(session_id: str):
        session = store.get(session_id)
        with session.lock:
            session.actions.clear()
            session.scorer = session.fresh_scorer()
            return session.state_payload()

    @app.get("/api/session/{session_id}/report")
    def report(session_id: str):
        session = store.get(session_id)
        with session.lock:
            traj = replay(session.grid, session.actions)
            rep = assess(
                traj,
                switching=session.switching,
                gamma=session.gamma,
                n_eps=session.n_eps,
            )
            return json.loads(rep.to_json())

    @app.delete("/api/session/{session_id}")
    def delete_session(session_id: str):
        store.delete(session_id)
        return {"deleted": session_id}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
