"""HTTP JSON facade over a simulated deployment.

One engagement session per service instance. Reads never mutate state;
mutations (mode changes, engagements, clock ticks) are serialized
through a single lock. Simulation time advances only via POST
/api/tick, which also generates new agent posts and delivers pending
responses, so operator sessions are fully deterministic.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .corpus import PostRecord
from .errors import SolicitError
from .features import (
    ACTIVITY_NAMES,
    READINESS_NAMES,
    RESPONSIVENESS_NAMES,
    FeatureConfig,
    extract_features,
)
from .recommend import Constraints, map_interval, rank_candidates, select_interval_train
from .simulator import (
    PopulationBundle,
    _TextSampler,
    _load_vocabulary,
    _social_weight,
    true_response_probability,
)

MODES = ("manual", "auto", "mixed")
DEFAULT_RULES = ("airport", "terminal", "gate", "station", "flight", "boarding")


@dataclass
class ServiceConfig:
    rules: tuple[str, ...] = DEFAULT_RULES
    mode: str = "manual"
    response_window: int = 48 * 3600
    question_template: str = "@{screen_name} quick question: how long is the wait at the {place} right now?"
    auto_batch: int = 5
    recommend_constraints: Constraints = field(default_factory=Constraints)
    seed: int = 42


@dataclass
class Engagement:
    user_id: str
    screen_name: str
    question: str
    sent_at: int
    status: str  # pending | responded | no_response
    response_due: int | None = None
    response_at: int | None = None
    response_text: str | None = None

    def as_dict(self):
        return {
            "user_id": self.user_id,
            "screen_name": self.screen_name,
            "question": self.question,
            "sent_at": self.sent_at,
            "status": self.status,
            "response_at": self.response_at if self.status == "responded" else None,
            "response_text": self.response_text if self.status == "responded" else None,
        }


class EngagementSession:
    """Mutable deployment state behind the endpoints."""

    def __init__(self, population: PopulationBundle, model, feature_config: FeatureConfig,
                 config: ServiceConfig):
        self.population = population
        self.corpus = population.corpus
        self.model = model
        self.fc = feature_config
        self.config = config
        self.mode = config.mode
        if self.mode not in MODES:
            raise SolicitError(f"invalid mode {self.mode!r}")
        self.clock = population.config.horizon
        self.rng = np.random.default_rng([config.seed, 0xC0FFEE])
        self.sampler = _TextSampler(*_load_vocabulary(population.config))
        self.lock = threading.Lock()
        self.engagements: list[Engagement] = []
        self.engaged_ids: set[str] = set()
        self.mode_log: list[dict] = [{"mode": self.mode, "at": self.clock}]
        self.pending_recommendation: list[str] = []
        self._post_seq = 0
        self._score_cache: tuple[int, list] | None = None

        self._train_rows = []
        self._train_labels = []
        self._train_ids = []
        for s in self.corpus.solicitations:
            fv = extract_features(self.corpus.user(s.target_user), self.corpus, s.sent_at, self.fc)
            self._train_rows.append(fv.as_row())
            self._train_labels.append(int(s.responded))
            self._train_ids.append(s.target_user)
        self.feature_groups = self._group_names()

    # -- feature display groups ------------------------------------------

    def _group_names(self):
        groups = {}
        for name in RESPONSIVENESS_NAMES:
            groups[name] = "responsiveness"
        groups["CountSocialWords"] = "profile"
        for name in self.fc.lexicon.category_names:
            groups[name] = "personality"
        for name in self.fc.coefficients.trait_names:
            groups[name] = "personality"
        for name in ACTIVITY_NAMES:
            groups[name] = "activity"
        for name in READINESS_NAMES:
            groups[name] = "readiness"
        return groups

    # -- candidate scoring -------------------------------------------------

    def matching_posts(self, since=None):
        """Posts whose text matches any keyword rule."""
        rules = tuple(r.lower() for r in self.config.rules)
        out = []
        for post in self.corpus.posts.values():
            if since is not None and post.timestamp <= since:
                continue
            if post.timestamp > self.clock:
                continue
            text = post.text.lower()
            if any(rule in text for rule in rules):
                out.append(post)
        out.sort(key=lambda p: (p.timestamp, p.post_id))
        return out

    def scored_candidates(self):
        """Rule-matched authors ranked by predicted response probability."""
        if self._score_cache and self._score_cache[0] == self.clock:
            return self._score_cache[1]
        posts = self.matching_posts()
        latest_match: dict[str, PostRecord] = {}
        for post in posts:
            latest_match[post.author_id] = post
        ids = sorted(latest_match)
        if not ids:
            self._score_cache = (self.clock, [])
            return []
        rows = [
            extract_features(self.corpus.user(uid), self.corpus, self.clock, self.fc).as_row()
            for uid in ids
        ]
        ranked = rank_candidates(self.model, np.asarray(rows), ids)
        entries = []
        for rank, e in enumerate(ranked, start=1):
            user = self.corpus.user(e.candidate_id)
            post = latest_match[e.candidate_id]
            entries.append(
                {
                    "user_id": e.candidate_id,
                    "screen_name": user.screen_name,
                    "probability": e.probability,
                    "rank": rank,
                    "engaged": e.candidate_id in self.engaged_ids,
                    "matched_post": {
                        "post_id": post.post_id,
                        "text": post.text,
                        "timestamp": post.timestamp,
                    },
                }
            )
        self._score_cache = (self.clock, entries)
        return entries

    def user_profile(self, user_id):
        user = self.corpus.user(user_id)
        fv = extract_features(user, self.corpus, self.clock, self.fc)
        prob = float(self.model.predict_proba(fv.as_row().reshape(1, -1))[0, 1])
        rank = None
        for entry in self.scored_candidates():
            if entry["user_id"] == user_id:
                rank = entry["rank"]
                break
        recent = [
            {"post_id": p.post_id, "text": p.text, "timestamp": p.timestamp,
             "is_retweet": p.is_retweet}
            for p in self.corpus.timeline(user_id)[-10:]
            if p.timestamp <= self.clock
        ]
        features = [
            {
                "name": name,
                "value": None if bool(fv.missing_mask[i]) else float(fv.values[i]),
                "masked": bool(fv.missing_mask[i]),
                "group": self.feature_groups[name],
            }
            for i, name in enumerate(fv.names)
        ]
        return {
            "user_id": user_id,
            "screen_name": user.screen_name,
            "profile_text": user.profile_text,
            "recent_posts": recent,
            "features": features,
            "probability": prob,
            "rank": rank,
        }

    # -- recommendation ----------------------------------------------------

    def recommend_now(self, constraints: Constraints):
        ranked_train = rank_candidates(
            self.model, np.asarray(self._train_rows), self._train_ids, labels=self._train_labels
        )
        i_r, j_r, rate = select_interval_train(ranked_train, constraints)
        candidates = self.scored_candidates()
        open_candidates = [c for c in candidates if not c["engaged"]]
        if not open_candidates:
            raise SolicitError("no unengaged candidates available")
        i_s, j_s = map_interval(i_r, j_r, len(ranked_train), len(open_candidates))
        selected = open_candidates[i_s - 1 : j_s]
        self.pending_recommendation = [c["user_id"] for c in selected]
        return {
            "train_interval": [i_r, j_r],
            "train_rate": rate,
            "test_interval": [i_s, j_s],
            "selected_ids": [c["user_id"] for c in selected],
            "constraints": {
                "min_fraction": constraints.min_fraction,
                "min_length": constraints.min_length,
                "top_exclusion_fraction": constraints.top_exclusion_fraction,
            },
            "selected": selected,
        }

    # -- engagement + simulation ------------------------------------------

    def engage(self, user_id, question):
        user = self.corpus.user(user_id)  # KeyError -> 404 upstream
        agent = self.population.agent(user_id)
        eng = Engagement(
            user_id=user_id,
            screen_name=user.screen_name,
            question=question,
            sent_at=self.clock,
            status="pending",
        )
        p = true_response_probability(
            agent, self.clock, self.corpus.timeline(user_id), self.population.config.response_model
        )
        if self.rng.random() < p:
            delay = int(self.rng.exponential(agent.latency_scale)) + 1
            eng.response_due = self.clock + delay
        self.engagements.append(eng)
        self.engaged_ids.add(user_id)
        return eng

    def auto_question(self, screen_name):
        places = ("airport", "terminal", "gate", "station")
        place = places[int(self.rng.integers(0, len(places)))]
        return self.config.question_template.format(screen_name=screen_name, place=place)

    def tick(self, seconds):
        t0 = self.clock
        t1 = t0 + seconds
        new_posts = self._generate_posts(t0, t1)
        self.clock = t1
        delivered = self._deliver_responses()
        auto_engaged = []
        if self.mode == "auto":
            try:
                rec = self.recommend_now(self.config.recommend_constraints)
            except SolicitError:
                rec = None
            if rec:
                for uid in rec["selected_ids"][: self.config.auto_batch]:
                    if uid not in self.engaged_ids:
                        user = self.corpus.user(uid)
                        self.engage(uid, self.auto_question(user.screen_name))
                        auto_engaged.append(uid)
        elif self.mode == "mixed":
            try:
                self.recommend_now(self.config.recommend_constraints)
            except SolicitError:
                self.pending_recommendation = []
        return {
            "now": self.clock,
            "new_posts": new_posts,
            "responses_delivered": delivered,
            "auto_engaged": auto_engaged,
        }

    def _generate_posts(self, t0, t1):
        """Extend agent timelines over (t0, t1] with the population's
        posting process (hourly inhomogeneous Poisson)."""
        count = 0
        for agent in self.population.agents:
            sw = _social_weight(agent.sociability)
            stamps = []
            hour = (t0 // 3600) * 3600
            while hour < t1:
                lo, hi = max(t0, hour), min(t1, hour + 3600)
                if hi > lo:
                    day = hour // 86400
                    dow = int((day + 3) % 7)
                    h = int((hour % 86400) // 3600)
                    rate = (
                        agent.activity_rate
                        * 7.0
                        * agent.weekday_weights[dow]
                        * agent.diurnal_weights[h]
                        * (hi - lo)
                        / 3600.0
                    )
                    n = int(self.rng.poisson(rate))
                    for _ in range(n):
                        stamps.append(lo + int(self.rng.random() * (hi - lo)))
                hour += 3600
            if not stamps:
                continue
            stamps.sort()
            texts = self.sampler.post_texts(self.rng, len(stamps), sw)
            retweets = self.rng.random(len(stamps)) < agent.retweet_propensity
            for k, ts in enumerate(stamps):
                self._post_seq += 1
                post = PostRecord(
                    post_id=f"live{self._post_seq:07d}",
                    author_id=agent.agent_id,
                    timestamp=int(ts),
                    text=texts[k],
                    is_retweet=bool(retweets[k]),
                    in_reply_to_post=None,
                    mentions=(),
                )
                self.corpus.posts[post.post_id] = post
                self.corpus.timelines[agent.agent_id].append(post)
                count += 1
        if count:
            self.corpus._index = None  # interaction index is stale
        return count

    def _deliver_responses(self):
        delivered = 0
        for eng in self.engagements:
            if eng.status != "pending":
                continue
            if eng.response_due is not None and eng.response_due <= self.clock:
                eng.status = "responded"
                eng.response_at = eng.response_due
                eng.response_text = (
                    "about " + str(int(self.rng.integers(5, 60))) + " minutes"
                )
                delivered += 1
            elif eng.response_due is None and self.clock - eng.sent_at >= self.config.response_window:
                eng.status = "no_response"
        return delivered

    def report(self):
        sent = len(self.engagements)
        responded = sum(1 for e in self.engagements if e.status == "responded")
        pending = sum(1 for e in self.engagements if e.status == "pending")
        return {
            "mode": self.mode,
            "now": self.clock,
            "sent": sent,
            "responded": responded,
            "pending": pending,
            "no_response": sent - responded - pending,
            "response_rate": responded / sent if sent else 0.0,
            "mode_log": self.mode_log,
        }


def _error(status, message):
    return JSONResponse(status_code=status, content={"error": message})


def create_app(session: EngagementSession) -> FastAPI:
    app = FastAPI(title="solicit operator service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.session = session

    @app.get("/api/stream")
    def stream(since: int | None = None):
        posts = session.matching_posts(since=since)
        recent = posts[-100:]
        return {
            "now": session.clock,
            "posts": [
                {
                    "post_id": p.post_id,
                    "author_id": p.author_id,
                    "screen_name": session.corpus.user(p.author_id).screen_name,
                    "text": p.text,
                    "timestamp": p.timestamp,
                }
                for p in recent
            ],
        }

    @app.get("/api/candidates")
    def candidates():
        return {"now": session.clock, "candidates": session.scored_candidates()}

    @app.get("/api/users/{user_id}")
    def user_profile(user_id: str):
        try:
            return session.user_profile(user_id)
        except KeyError:
            return _error(404, f"unknown user {user_id!r}")

    @app.post("/api/recommend")
    async def recommend_endpoint(request: Request):
        body = await request.json()
        constraints = Constraints(
            min_fraction=float(body.get("min_fraction", 0.05)),
            min_length=int(body.get("min_length", 1)),
        )
        with session.lock:
            try:
                return session.recommend_now(constraints)
            except SolicitError as exc:
                return _error(409, str(exc))

    @app.post("/api/engage")
    async def engage(request: Request):
        body = await request.json()
        user_id = body.get("user_id")
        question = body.get("question")
        if not user_id or not question:
            return _error(400, "user_id and question are required")
        with session.lock:
            if session.mode == "auto":
                return _error(409, "operator sends are disabled in auto mode")
            if user_id in session.engaged_ids:
                return _error(409, f"user {user_id!r} was already engaged in this session")
            try:
                eng = session.engage(user_id, question)
            except KeyError:
                return _error(404, f"unknown user {user_id!r}")
            return eng.as_dict()

    @app.get("/api/engagements")
    def engagements():
        return {"engagements": [e.as_dict() for e in session.engagements]}

    @app.post("/api/mode")
    async def set_mode(request: Request):
        body = await request.json()
        mode = body.get("mode")
        if mode not in MODES:
            return _error(400, f"mode must be one of {MODES}")
        with session.lock:
            session.mode = mode
            session.mode_log.append({"mode": mode, "at": session.clock})
        return {"mode": mode}

    @app.post("/api/tick")
    async def tick(request: Request):
        body = await request.json()
        seconds = body.get("seconds")
        if not isinstance(seconds, (int, float)) or seconds <= 0 or not math.isfinite(seconds):
            return _error(400, "seconds must be a positive number")
        with session.lock:
            return session.tick(int(seconds))

    @app.get("/api/report")
    def report():
        return session.report()

    return app
