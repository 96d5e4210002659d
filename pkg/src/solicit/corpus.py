"""Data model for users, posts, and solicitation outcomes.

Corpora are loaded from newline-delimited JSON files and are immutable
afterwards, so they can be shared freely across workers. All timestamps
are UTC integer seconds; day/hour bucketing downstream is UTC as well.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import IntegrityError, ParseError


@dataclass(frozen=True)
class UserRecord:
    user_id: str
    screen_name: str
    profile_text: str
    account_created_at: int


@dataclass(frozen=True)
class PostRecord:
    post_id: str
    author_id: str
    timestamp: int
    text: str
    is_retweet: bool
    in_reply_to_post: str | None
    mentions: tuple[str, ...]


@dataclass(frozen=True)
class SolicitationRecord:
    target_user: str
    question_text: str
    sent_at: int
    responded: bool
    response_at: int | None
    response_text: str | None


@dataclass(frozen=True)
class InteractionSummary:
    """Per-user question/response history.

    A question post counts as answered at most once, matched to the
    user's earliest reply, so response counts never exceed question
    counts and each latency pairs with exactly one question.
    """

    direct_questions_received: int = 0
    responses_to_direct: int = 0
    response_latencies: tuple[int, ...] = ()
    indirect_questions_exposed: int = 0
    responses_to_indirect: int = 0


class PostClass(Enum):
    DIRECT_QUESTION = "direct_question"
    INDIRECT_QUESTION = "indirect_question"
    NOT_QUESTION = "not_question"


@dataclass
class Corpus:
    users: dict[str, UserRecord]
    posts: dict[str, PostRecord]
    timelines: dict[str, list[PostRecord]] = field(default_factory=dict)
    solicitations: list[SolicitationRecord] = field(default_factory=list)
    exposures: dict[str, list[str]] = field(default_factory=dict)
    _index: "_InteractionIndex | None" = field(default=None, repr=False, compare=False)

    def timeline(self, user_id: str) -> list[PostRecord]:
        return self.timelines.get(user_id, [])

    def user(self, user_id: str) -> UserRecord:
        return self.users[user_id]

    def interaction_index(self) -> "_InteractionIndex":
        if self._index is None:
            self._index = _InteractionIndex(self)
        return self._index


def _iter_jsonl(path):
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(path, lineno, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise ParseError(path, lineno, "expected a JSON object")
            yield lineno, obj


def _require(obj, key, path, lineno):
    if key not in obj:
        raise ParseError(path, lineno, f"missing field {key!r}")
    return obj[key]


def load_corpus(users_path, posts_path, solicitations_path=None, exposures_path=None) -> Corpus:
    """Load a corpus from JSONL files, indexing by user_id and post_id.

    Raises ParseError with the offending line number for malformed rows
    and IntegrityError for duplicate or dangling identifiers.
    """
    users: dict[str, UserRecord] = {}
    for lineno, obj in _iter_jsonl(users_path):
        user = UserRecord(
            user_id=str(_require(obj, "user_id", users_path, lineno)),
            screen_name=str(_require(obj, "screen_name", users_path, lineno)),
            profile_text=str(obj.get("profile_text") or ""),
            account_created_at=int(_require(obj, "account_created_at", users_path, lineno)),
        )
        if not user.screen_name:
            raise ParseError(users_path, lineno, "screen_name must be non-empty")
        if user.user_id in users:
            raise IntegrityError(f"duplicate user_id {user.user_id!r}")
        users[user.user_id] = user

    posts: dict[str, PostRecord] = {}
    for lineno, obj in _iter_jsonl(posts_path):
        raw_mentions = obj.get("mentions") or []
        if not isinstance(raw_mentions, list):
            raise ParseError(posts_path, lineno, "mentions must be an array")
        post = PostRecord(
            post_id=str(_require(obj, "post_id", posts_path, lineno)),
            author_id=str(_require(obj, "author_id", posts_path, lineno)),
            timestamp=int(_require(obj, "timestamp", posts_path, lineno)),
            text=str(_require(obj, "text", posts_path, lineno)),
            is_retweet=bool(obj.get("is_retweet", False)),
            in_reply_to_post=(
                str(obj["in_reply_to_post"]) if obj.get("in_reply_to_post") is not None else None
            ),
            mentions=tuple(str(m) for m in raw_mentions),
        )
        if post.timestamp <= 0:
            raise ParseError(posts_path, lineno, "timestamp must be positive")
        if post.post_id in posts:
            raise IntegrityError(f"duplicate post_id {post.post_id!r}")
        if post.author_id not in users:
            raise IntegrityError(
                f"post {post.post_id!r} references unknown author {post.author_id!r}"
            )
        posts[post.post_id] = post

    for post in posts.values():
        ref = post.in_reply_to_post
        if ref is not None and ref in posts and posts[ref].timestamp > post.timestamp:
            raise IntegrityError(
                f"reply {post.post_id!r} precedes the post it answers ({ref!r})"
            )

    timelines: dict[str, list[PostRecord]] = {uid: [] for uid in users}
    for post in posts.values():
        timelines[post.author_id].append(post)
    for uid in timelines:
        timelines[uid].sort(key=lambda p: (p.timestamp, p.post_id))

    solicitations: list[SolicitationRecord] = []
    if solicitations_path is not None:
        for lineno, obj in _iter_jsonl(solicitations_path):
            rec = SolicitationRecord(
                target_user=str(_require(obj, "target_user", solicitations_path, lineno)),
                question_text=str(_require(obj, "question_text", solicitations_path, lineno)),
                sent_at=int(_require(obj, "sent_at", solicitations_path, lineno)),
                responded=bool(_require(obj, "responded", solicitations_path, lineno)),
                response_at=(
                    int(obj["response_at"]) if obj.get("response_at") is not None else None
                ),
                response_text=(
                    str(obj["response_text"]) if obj.get("response_text") is not None else None
                ),
            )
            if rec.responded != (rec.response_at is not None):
                raise ParseError(
                    solicitations_path, lineno, "responded must be true iff response_at is set"
                )
            if rec.response_at is not None and rec.response_at < rec.sent_at:
                raise ParseError(solicitations_path, lineno, "response_at precedes sent_at")
            if rec.target_user not in users:
                raise IntegrityError(
                    f"solicitation targets unknown user {rec.target_user!r}"
                )
            solicitations.append(rec)

    exposures: dict[str, list[str]] = {}
    if exposures_path is not None:
        for lineno, obj in _iter_jsonl(exposures_path):
            uid = str(_require(obj, "user_id", exposures_path, lineno))
            ids = _require(obj, "exposed_post_ids", exposures_path, lineno)
            if not isinstance(ids, list):
                raise ParseError(exposures_path, lineno, "exposed_post_ids must be an array")
            if uid not in users:
                raise IntegrityError(f"exposure row for unknown user {uid!r}")
            exposures[uid] = [str(pid) for pid in ids]

    return Corpus(
        users=users,
        posts=posts,
        timelines=timelines,
        solicitations=solicitations,
        exposures=exposures,
    )


def build_corpus(users, posts, solicitations=(), exposures=None) -> Corpus:
    """Assemble a corpus from in-memory records (same checks as load_corpus)."""
    user_map: dict[str, UserRecord] = {}
    for user in users:
        if user.user_id in user_map:
            raise IntegrityError(f"duplicate user_id {user.user_id!r}")
        user_map[user.user_id] = user
    post_map: dict[str, PostRecord] = {}
    for post in posts:
        if post.post_id in post_map:
            raise IntegrityError(f"duplicate post_id {post.post_id!r}")
        if post.author_id not in user_map:
            raise IntegrityError(
                f"post {post.post_id!r} references unknown author {post.author_id!r}"
            )
        post_map[post.post_id] = post
    timelines: dict[str, list[PostRecord]] = {uid: [] for uid in user_map}
    for post in post_map.values():
        timelines[post.author_id].append(post)
    for uid in timelines:
        timelines[uid].sort(key=lambda p: (p.timestamp, p.post_id))
    return Corpus(
        users=user_map,
        posts=post_map,
        timelines=timelines,
        solicitations=list(solicitations),
        exposures=dict(exposures or {}),
    )


def classify_post(post: PostRecord, subject: UserRecord) -> PostClass:
    """Partition a post relative to a subject user.

    A post is a question iff its text contains '?'. A question is direct
    when it mentions the subject (by id or by @screen_name), indirect
    otherwise.
    """
    if "?" not in post.text:
        return PostClass.NOT_QUESTION
    if subject.user_id in post.mentions:
        return PostClass.DIRECT_QUESTION
    if ("@" + subject.screen_name.lower()) in post.text.lower():
        return PostClass.DIRECT_QUESTION
    return PostClass.INDIRECT_QUESTION


_AT_TOKEN_RE = re.compile(r"@(\w+)")


class _InteractionIndex:
    """Per-corpus question/reply indexes so interaction summaries stay
    O(own history) instead of O(corpus) per user.

    Built once, read-only afterwards; semantics match classify_post
    (substring @screen_name matching included, via token prefixes for
    word-character screen names and a direct scan for the rest).
    """

    def __init__(self, corpus: Corpus):
        by_screen: dict[str, list[UserRecord]] = {}
        odd_names: list[UserRecord] = []
        for user in corpus.users.values():
            name = user.screen_name.lower()
            if re.fullmatch(r"\w+", name):
                by_screen.setdefault(name, []).append(user)
            else:
                odd_names.append(user)

        self.question_posts: list[PostRecord] = []
        self.direct_targets: dict[str, set[str]] = {}  # post_id -> user ids
        self.direct_by_user: dict[str, set[str]] = {uid: set() for uid in corpus.users}
        for post in corpus.posts.values():
            if "?" not in post.text:
                continue
            self.question_posts.append(post)
            targets = {uid for uid in post.mentions if uid in corpus.users}
            lowered = post.text.lower()
            for token in _AT_TOKEN_RE.findall(lowered):
                for k in range(1, len(token) + 1):
                    for user in by_screen.get(token[:k], ()):
                        targets.add(user.user_id)
            for user in odd_names:
                if "@" + user.screen_name.lower() in lowered:
                    targets.add(user.user_id)
            self.direct_targets[post.post_id] = targets
            for uid in targets:
                if uid != post.author_id:
                    self.direct_by_user[uid].add(post.post_id)

        self.replied_to: dict[str, set[str]] = {uid: set() for uid in corpus.users}
        self.replied_by: dict[str, set[str]] = {uid: set() for uid in corpus.users}
        for post in corpus.posts.values():
            ref = post.in_reply_to_post
            if ref is not None and ref in corpus.posts:
                parent_author = corpus.posts[ref].author_id
                self.replied_to[post.author_id].add(parent_author)
                self.replied_by[parent_author].add(post.author_id)


def _neighborhood(corpus: Corpus, user_id: str) -> set[str]:
    """Authors the user has replied to, plus authors who replied to the user."""
    index = corpus.interaction_index()
    neighbors = set(index.replied_to[user_id]) | set(index.replied_by[user_id])
    neighbors.discard(user_id)
    return neighbors


def derive_interactions(corpus: Corpus, user: UserRecord) -> InteractionSummary:
    """Summarize direct/indirect questions received and the user's replies."""
    uid = user.user_id
    index = corpus.interaction_index()
    direct_ids = index.direct_by_user[uid]

    if uid in corpus.exposures:
        exposed_ids = {
            pid
            for pid in corpus.exposures[uid]
            if pid in corpus.posts
            and corpus.posts[pid].author_id != uid
            and classify_post(corpus.posts[pid], user) is PostClass.INDIRECT_QUESTION
        }
    else:
        neighbors = _neighborhood(corpus, uid)
        exposed_ids = {
            post.post_id
            for post in index.question_posts
            if post.author_id in neighbors and uid not in index.direct_targets[post.post_id]
        }

    # Earliest reply per question; timelines are already time-sorted.
    direct_replies: dict[str, int] = {}
    indirect_replied: set[str] = set()
    for post in corpus.timeline(uid):
        ref = post.in_reply_to_post
        if ref is None:
            continue
        if ref in direct_ids and ref not in direct_replies:
            direct_replies[ref] = post.timestamp - corpus.posts[ref].timestamp
        if ref in exposed_ids:
            indirect_replied.add(ref)

    latencies = tuple(
        direct_replies[qid]
        for qid in sorted(direct_replies, key=lambda q: corpus.posts[q].timestamp)
    )
    return InteractionSummary(
        direct_questions_received=len(direct_ids),
        responses_to_direct=len(direct_replies),
        response_latencies=latencies,
        indirect_questions_exposed=len(exposed_ids),
        responses_to_indirect=len(indirect_replied),
    )
