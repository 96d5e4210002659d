import pytest

from solicit.corpus import (
    PostClass,
    build_corpus,
    classify_post,
    derive_interactions,
    load_corpus,
)
from solicit.errors import IntegrityError, ParseError

from conftest import post, user, write_jsonl


USERS = [
    {"user_id": "bob", "screen_name": "bob", "profile_text": "", "account_created_at": 10},
    {"user_id": "alice", "screen_name": "alice", "profile_text": "hi", "account_created_at": 20},
]
POSTS = [
    {"post_id": "p1", "author_id": "bob", "timestamp": 100, "text": "a", "is_retweet": False,
     "in_reply_to_post": None, "mentions": []},
    {"post_id": "p2", "author_id": "bob", "timestamp": 200, "text": "b", "is_retweet": False,
     "in_reply_to_post": None, "mentions": []},
    {"post_id": "p3", "author_id": "bob", "timestamp": 150, "text": "c", "is_retweet": True,
     "in_reply_to_post": None, "mentions": []},
    {"post_id": "p4", "author_id": "alice", "timestamp": 120, "text": "d", "is_retweet": False,
     "in_reply_to_post": None, "mentions": []},
    {"post_id": "p5", "author_id": "alice", "timestamp": 90, "text": "e", "is_retweet": False,
     "in_reply_to_post": None, "mentions": ["bob"]},
]


def _load(tmp_path, users=USERS, posts=POSTS, solicitations=None):
    up = write_jsonl(tmp_path / "users.jsonl", users)
    pp = write_jsonl(tmp_path / "posts.jsonl", posts)
    sp = None
    if solicitations is not None:
        sp = write_jsonl(tmp_path / "solicitations.jsonl", solicitations)
    return load_corpus(up, pp, sp)


class TestLoadCorpus:
    def test_timeline_lengths(self, tmp_path):
        corpus = _load(tmp_path)
        assert len(corpus.timeline("bob")) == 3
        assert len(corpus.timeline("alice")) == 2
        assert len(corpus.solicitations) == 0

    def test_timelines_sorted(self, tmp_path):
        corpus = _load(tmp_path)
        for uid in corpus.users:
            stamps = [p.timestamp for p in corpus.timeline(uid)]
            assert stamps == sorted(stamps)

    def test_duplicate_post_id_rejected(self, tmp_path):
        posts = POSTS + [dict(POSTS[0])]
        with pytest.raises(IntegrityError, match="p1"):
            _load(tmp_path, posts=posts)

    def test_duplicate_user_id_rejected(self, tmp_path):
        with pytest.raises(IntegrityError, match="bob"):
            _load(tmp_path, users=USERS + [USERS[0]])

    def test_dangling_author_rejected(self, tmp_path):
        bad = dict(POSTS[0], post_id="px", author_id="ghost")
        with pytest.raises(IntegrityError, match="ghost"):
            _load(tmp_path, posts=POSTS + [bad])

    def test_malformed_line_reports_line_number(self, tmp_path):
        up = write_jsonl(tmp_path / "users.jsonl", USERS)
        pp = tmp_path / "posts.jsonl"
        pp.write_text('{"post_id": "p1"\n')
        with pytest.raises(ParseError, match="1"):
            load_corpus(up, pp)

    def test_solicitation_consistency_enforced(self, tmp_path):
        sol = [{"target_user": "bob", "question_text": "q", "sent_at": 500,
                "responded": True, "response_at": None, "response_text": None}]
        with pytest.raises(ParseError, match="responded"):
            _load(tmp_path, solicitations=sol)

    def test_solicitations_loaded(self, tmp_path):
        sol = [{"target_user": "bob", "question_text": "q", "sent_at": 500,
                "responded": True, "response_at": 600, "response_text": "30 min"}]
        corpus = _load(tmp_path, solicitations=sol)
        assert corpus.solicitations[0].response_at == 600


class TestClassifyPost:
    def test_direct_by_screen_name(self):
        bob = user("bob", "bob")
        p = post("q", "alice", 10, "@bob how long is the line?")
        assert classify_post(p, bob) is PostClass.DIRECT_QUESTION

    def test_direct_by_mention_list(self):
        bob = user("bob", "bob")
        p = post("q", "alice", 10, "how long is the line?", mentions=("bob",))
        assert classify_post(p, bob) is PostClass.DIRECT_QUESTION

    def test_indirect(self):
        bob = user("bob", "bob")
        p = post("q", "alice", 10, "anyone know the wait at JFK?")
        assert classify_post(p, bob) is PostClass.INDIRECT_QUESTION

    def test_not_question(self):
        bob = user("bob", "bob")
        assert classify_post(post("q", "alice", 10, "boarding now!"), bob) is PostClass.NOT_QUESTION

    def test_partition_exactly_one_class(self):
        bob = user("bob", "bob")
        texts = ["@bob ok?", "ok?", "ok", "@bob ok", "", "? @bob"]
        for text in texts:
            classes = [classify_post(post("q", "alice", 10, text), bob)]
            assert len(classes) == 1 and classes[0] in PostClass


def _interaction_corpus():
    """bob receives 6 direct questions, answers q1..q3 with latencies 120/240/240,
    and is exposed to 4 indirect questions, answering one."""
    users = [user("bob", "bob"), user("alice", "alice"), user("carol", "carol")]
    posts = []
    for k in range(6):
        posts.append(post(f"q{k}", "alice", 1000 + 10_000 * k,
                          f"@bob question {k}?", mentions=("bob",)))
    for k, latency in enumerate((120, 240, 240)):
        posts.append(post(f"r{k}", "bob", 1000 + 10_000 * k + latency, "answer", reply_to=f"q{k}"))
    for k in range(4):
        posts.append(post(f"iq{k}", "carol", 2000 + 5_000 * k, f"anybody around {k}?"))
    posts.append(post("ir0", "bob", 2100, "i am", reply_to="iq0"))
    exposures = {"bob": [f"iq{k}" for k in range(4)]}
    return build_corpus(users, posts, exposures=exposures)


class TestDeriveInteractions:
    def test_counts_and_latencies(self):
        corpus = _interaction_corpus()
        summary = derive_interactions(corpus, corpus.user("bob"))
        assert summary.direct_questions_received == 6
        assert summary.responses_to_direct == 3
        assert summary.response_latencies == (120, 240, 240)
        assert summary.indirect_questions_exposed == 4
        assert summary.responses_to_indirect == 1

    def test_empty_history(self, tiny_corpus):
        summary = derive_interactions(tiny_corpus, tiny_corpus.user("alice"))
        assert summary == type(summary)()

    def test_pure_repeated_calls(self):
        corpus = _interaction_corpus()
        bob = corpus.user("bob")
        assert derive_interactions(corpus, bob) == derive_interactions(corpus, bob)

    def test_latencies_rejoin_questions(self):
        corpus = _interaction_corpus()
        summary = derive_interactions(corpus, corpus.user("bob"))
        by_reply = {}
        for p in corpus.timeline("bob"):
            if p.in_reply_to_post and p.in_reply_to_post in corpus.posts:
                q = corpus.posts[p.in_reply_to_post]
                if "?" in q.text and "bob" in q.mentions:
                    by_reply[q.post_id] = p.timestamp - q.timestamp
        assert sorted(by_reply.values()) == sorted(summary.response_latencies)

    def test_invariant_bounds(self):
        corpus = _interaction_corpus()
        s = derive_interactions(corpus, corpus.user("bob"))
        assert s.responses_to_direct <= s.direct_questions_received
        assert s.responses_to_indirect <= s.indirect_questions_exposed
        assert len(s.response_latencies) == s.responses_to_direct
        assert all(lat >= 0 for lat in s.response_latencies)

    def test_neighborhood_exposure_without_exposure_list(self):
        # carol replied to bob once, so carol is in bob's neighborhood;
        # her mention-free questions count as indirect exposure for bob.
        users = [user("bob", "bob"), user("carol", "carol")]
        posts = [
            post("b1", "bob", 100, "hello"),
            post("c1", "carol", 200, "hi back", reply_to="b1"),
            post("c2", "carol", 300, "anyone know the gate?"),
            post("c3", "carol", 400, "what time is it?"),
        ]
        corpus = build_corpus(users, posts)
        summary = derive_interactions(corpus, corpus.user("bob"))
        assert summary.indirect_questions_exposed == 2

    def test_double_reply_counts_one_question(self):
        users = [user("bob", "bob"), user("alice", "alice")]
        posts = [
            post("q0", "alice", 100, "@bob you there?", mentions=("bob",)),
            post("r0", "bob", 160, "yes", reply_to="q0"),
            post("r1", "bob", 220, "still yes", reply_to="q0"),
        ]
        corpus = build_corpus(users, posts)
        summary = derive_interactions(corpus, corpus.user("bob"))
        assert summary.responses_to_direct == 1
        assert summary.response_latencies == (60,)
