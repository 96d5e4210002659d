import json

import pytest

from solicit.corpus import PostRecord, UserRecord, build_corpus
from solicit.features import FeatureConfig
from solicit.lexicon import (
    default_coefficients_path,
    default_lexicon_path,
    load_coefficients,
    load_lexicon,
)


@pytest.fixture(scope="session")
def full_lexicon():
    return load_lexicon(default_lexicon_path())


@pytest.fixture(scope="session")
def full_coefficients(full_lexicon):
    return load_coefficients(default_coefficients_path(), full_lexicon)


@pytest.fixture(scope="session")
def full_feature_config(full_lexicon, full_coefficients):
    return FeatureConfig(lexicon=full_lexicon, coefficients=full_coefficients)


def user(uid, screen=None, profile="", created=1000):
    return UserRecord(
        user_id=uid, screen_name=screen or uid, profile_text=profile, account_created_at=created
    )


def post(pid, author, ts, text="hello world", retweet=False, reply_to=None, mentions=()):
    return PostRecord(
        post_id=pid,
        author_id=author,
        timestamp=ts,
        text=text,
        is_retweet=retweet,
        in_reply_to_post=reply_to,
        mentions=tuple(mentions),
    )


@pytest.fixture
def tiny_corpus():
    users = [user("bob", "bob"), user("alice", "alice")]
    posts = [
        post("p1", "bob", 100, "boarding now"),
        post("p2", "bob", 200, "coffee time"),
        post("p3", "bob", 300, "at the gate"),
        post("p4", "alice", 150, "@bob how long is the line?", mentions=("bob",)),
        post("p5", "alice", 400, "lovely day"),
    ]
    return build_corpus(users, posts)


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return path
