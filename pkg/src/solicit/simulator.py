"""Seeded synthetic social-platform populations with latent traits.

Agents carry latent willingness/readiness traits drawn through a
Gaussian copula, post according to an inhomogeneous Poisson process
shaped by per-agent weekday/diurnal weights, receive injected peer
questions (answered with trait-dependent probability and exponential
latency), and respond to solicitations according to a documented
ground-truth probability model. Everything is reproducible from the
configuration seed; generated corpora use the standard JSONL formats.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .corpus import Corpus, PostRecord, SolicitationRecord, UserRecord, build_corpus
from .errors import ConfigurationError
from .features import SECONDS_PER_DAY, FeatureConfig, extract_features
from .lexicon import (
    default_coefficients_path,
    default_lexicon_path,
    default_vocabulary_path,
    load_coefficients,
    load_lexicon,
)
from .model import CostConfig, assign_weights, make_model
from .recommend import (
    Constraints,
    baseline_binary,
    baseline_topk,
    evaluate_selection,
    rank_candidates,
    recommend,
)

DIRECT_QUESTION_TEMPLATES = (
    "@{name} how long is the wait at the {place} right now?",
    "@{name} you were at the {place} today, is the line long?",
    "@{name} quick question, how busy is the {place}?",
    "@{name} is the {place} crowded at the moment?",
)
INDIRECT_QUESTION_TEMPLATES = (
    "anyone know how long the wait at the {place} is?",
    "is the {place} busy right now, anybody there?",
    "does anyone have an idea how crowded the {place} gets?",
)
REPLY_TEMPLATES = (
    "about {minutes} minutes when i went through",
    "took me around {minutes} minutes",
    "not too bad, maybe {minutes} minutes",
    "pretty long, easily {minutes} minutes",
)
PLACES = ("airport", "terminal", "gate", "station")
SOCIAL_CATEGORIES = ("social", "communication", "friends")


@dataclass(frozen=True)
class ResponseModel:
    """Ground-truth probability that an agent answers a solicitation.

    p = sigmoid(base + willingness_gain * w
                + recency_gain * exp(-inactivity / recency_tau) * a
                + diurnal_gain * diurnal_weight(hour) * a)
    """

    base: float = -2.2
    willingness_gain: float = 3.5
    recency_gain: float = 1.2
    diurnal_gain: float = 1.0
    recency_tau: float = 6 * 3600.0


@dataclass(frozen=True)
class AgentSpec:
    agent_id: str
    activity_rate: float
    diurnal_weights: tuple[float, ...]
    weekday_weights: tuple[float, ...]
    responsiveness: float
    latency_scale: float
    retweet_propensity: float
    sociability: float
    willingness: float
    readiness_sensitivity: float

    def as_dict(self):
        doc = asdict(self)
        doc["diurnal_weights"] = list(self.diurnal_weights)
        doc["weekday_weights"] = list(self.weekday_weights)
        return doc


@dataclass
class SimConfig:
    population_size: int = 200
    days: int = 14
    seed: int = 42
    mean_posts_per_day: float = 4.0
    corr_willingness_responsiveness: float = 0.92
    corr_willingness_sociability: float = 0.35
    corr_willingness_readiness: float = 0.0
    question_rate_per_day: float = 0.8
    exposure_rate_per_day: float = 0.2
    indirect_response_factor: float = 0.3
    question_budget: int | None = None
    vocabulary_path: str | None = None
    start_time: int = 19675 * SECONDS_PER_DAY  # a UTC day boundary
    response_model: ResponseModel = field(default_factory=ResponseModel)

    def digest(self) -> str:
        doc = asdict(self)
        doc["vocabulary_path"] = str(self.vocabulary_path) if self.vocabulary_path else None
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]

    @property
    def horizon(self) -> int:
        return self.start_time + self.days * SECONDS_PER_DAY


@dataclass
class PopulationBundle:
    config: SimConfig
    corpus: Corpus
    agents: list[AgentSpec]
    paths: dict[str, str] | None = None

    def agent(self, agent_id: str) -> AgentSpec:
        return self._by_id[agent_id]

    def __post_init__(self):
        self._by_id = {a.agent_id: a for a in self.agents}


def _copula_cholesky(config: SimConfig) -> np.ndarray:
    """Latent-normal correlation over (willingness, responsiveness,
    sociability, readiness sensitivity)."""
    for name in (
        "corr_willingness_responsiveness",
        "corr_willingness_sociability",
        "corr_willingness_readiness",
    ):
        v = getattr(config, name)
        if not -1.0 <= v <= 1.0:
            raise ConfigurationError(f"{name} must lie in [-1, 1], got {v}")
    cov = np.eye(4)
    cov[0, 1] = cov[1, 0] = config.corr_willingness_responsiveness
    cov[0, 2] = cov[2, 0] = config.corr_willingness_sociability
    cov[0, 3] = cov[3, 0] = config.corr_willingness_readiness
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as exc:
        raise ConfigurationError(
            "trait correlation matrix is not positive semidefinite"
        ) from exc


def _phi(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.vectorize(math.erf)(z / math.sqrt(2.0)))


def _load_vocabulary(config: SimConfig):
    path = config.vocabulary_path or default_vocabulary_path()
    with open(path, "r", encoding="utf-8") as fh:
        vocab = json.load(fh)
    social, general = [], []
    for category, words in vocab.items():
        (social if category in SOCIAL_CATEGORIES else general).extend(words)
    if not social or not general:
        raise ConfigurationError("vocabulary must provide social and non-social words")
    return social, general


def draw_agents(config: SimConfig, rng: np.random.Generator) -> list[AgentSpec]:
    """Draw every agent's traits: copula-linked latents, independent rest."""
    n = config.population_size
    chol = _copula_cholesky(config)
    z = rng.standard_normal((n, 4)) @ chol.T
    u = _phi(z)
    # right-skewed willingness: most strangers are unlikely to answer
    willingness = u[:, 0] ** 3
    responsiveness = 0.05 + 0.90 * u[:, 1]
    sociability = u[:, 2]
    readiness = 2.0 * u[:, 3]

    lam = config.mean_posts_per_day * np.exp(rng.normal(-0.02, 0.2, size=n))
    retweet = rng.beta(2.0, 6.0, size=n)
    latency = np.exp(rng.normal(math.log(1200.0), 0.5, size=n))

    base_diurnal = np.array([0.2] * 7 + [1.0] * 16 + [0.2], dtype=np.float64)
    agents = []
    for i in range(n):
        diurnal = rng.dirichlet(base_diurnal * 12.0)
        weekday = rng.dirichlet(np.full(7, 40.0))
        agents.append(
            AgentSpec(
                agent_id=f"u{i:05d}",
                activity_rate=float(lam[i]),
                diurnal_weights=tuple(float(v) for v in diurnal),
                weekday_weights=tuple(float(v) for v in weekday),
                responsiveness=float(responsiveness[i]),
                latency_scale=float(latency[i]),
                retweet_propensity=float(retweet[i]),
                sociability=float(sociability[i]),
                willingness=float(willingness[i]),
                readiness_sensitivity=float(readiness[i]),
            )
        )
    return agents


class _TextSampler:
    def __init__(self, social_words, general_words):
        self.social = np.asarray(social_words, dtype=object)
        self.general = np.asarray(general_words, dtype=object)

    def words(self, rng, count, social_weight):
        soc = rng.random(count) < social_weight
        si = rng.integers(0, len(self.social), size=count)
        gi = rng.integers(0, len(self.general), size=count)
        return list(np.where(soc, self.social[si], self.general[gi]))

    def post_texts(self, rng, n_posts, social_weight):
        """Batch text generation: one rng draw block per agent, not per post."""
        counts = rng.poisson(7.0, size=n_posts) + 2
        words = self.words(rng, int(counts.sum()), social_weight)
        texts = []
        pos = 0
        for c in counts:
            texts.append(" ".join(words[pos : pos + c]))
            pos += c
        return texts


def _social_weight(sociability: float) -> float:
    return 0.08 + 0.35 * sociability


def generate_population(config: SimConfig, out_dir=None) -> PopulationBundle:
    """Draw agents, simulate timelines and interactions, and (optionally)
    write the JSONL corpus files plus agents.jsonl to out_dir."""
    master = np.random.SeedSequence(config.seed)
    trait_ss, post_ss, question_ss, solicit_ss = master.spawn(4)
    agents = draw_agents(config, np.random.default_rng(trait_ss))
    sampler = _TextSampler(*_load_vocabulary(config))

    users = []
    posts = []
    exposures: dict[str, list[str]] = {}
    start = config.start_time
    horizon = config.horizon
    hours = config.days * 24

    day_idx = np.arange(hours) // 24
    hour_idx = np.arange(hours) % 24
    dow = ((start // SECONDS_PER_DAY) + day_idx + 3) % 7
    hour_starts = start + np.arange(hours) * 3600

    post_rngs = [np.random.default_rng(s) for s in post_ss.spawn(len(agents))]
    for i, agent in enumerate(agents):
        rng = post_rngs[i]
        sw = _social_weight(agent.sociability)
        profile = " ".join(sampler.words(rng, 8, 0.10 + 0.5 * agent.sociability))
        users.append(
            UserRecord(
                user_id=agent.agent_id,
                screen_name=f"agent{i:05d}",
                profile_text=profile,
                account_created_at=start - int(rng.integers(100, 1000)) * SECONDS_PER_DAY,
            )
        )

        weekday_w = np.asarray(agent.weekday_weights)[dow]
        diurnal_w = np.asarray(agent.diurnal_weights)[hour_idx]
        intensity = agent.activity_rate * 7.0 * weekday_w * diurnal_w
        counts = rng.poisson(intensity)
        total = int(counts.sum())
        if total:
            stamps = np.sort(
                np.repeat(hour_starts, counts) + (rng.random(total) * 3600.0).astype(np.int64)
            )
            retweets = rng.random(total) < agent.retweet_propensity
            texts = sampler.post_texts(rng, total, sw)
            uid = agent.agent_id
            for k in range(total):
                posts.append(
                    PostRecord(
                        post_id=f"p{i:05d}x{k:05d}",
                        author_id=uid,
                        timestamp=int(stamps[k]),
                        text=texts[k],
                        is_retweet=bool(retweets[k]),
                        in_reply_to_post=None,
                        mentions=(),
                    )
                )

    question_rngs = [np.random.default_rng(s) for s in question_ss.spawn(len(agents))]
    for i, agent in enumerate(agents):
        rng = question_rngs[i]
        screen = f"agent{i:05d}"
        exposures[agent.agent_id] = []

        n_direct = int(rng.poisson(config.question_rate_per_day * config.days))
        for k in range(n_direct):
            q_time = start + int(rng.integers(0, horizon - start))
            author = agents[_other_index(rng, len(agents), i)]
            template = DIRECT_QUESTION_TEMPLATES[int(rng.integers(0, len(DIRECT_QUESTION_TEMPLATES)))]
            place = PLACES[int(rng.integers(0, len(PLACES)))]
            qid = f"q{i:05d}x{k:03d}"
            posts.append(
                PostRecord(
                    post_id=qid,
                    author_id=author.agent_id,
                    timestamp=q_time,
                    text=template.format(name=screen, place=place),
                    is_retweet=False,
                    in_reply_to_post=None,
                    mentions=(agent.agent_id,),
                )
            )
            if rng.random() < agent.responsiveness:
                delay = int(rng.exponential(agent.latency_scale)) + 1
                r_time = q_time + delay
                if r_time < horizon:
                    reply = REPLY_TEMPLATES[int(rng.integers(0, len(REPLY_TEMPLATES)))]
                    posts.append(
                        PostRecord(
                            post_id=f"r{i:05d}x{k:03d}",
                            author_id=agent.agent_id,
                            timestamp=r_time,
                            text=reply.format(minutes=int(rng.integers(5, 60))),
                            is_retweet=False,
                            in_reply_to_post=qid,
                            mentions=(author.agent_id,),
                        )
                    )

        n_indirect = int(rng.poisson(config.exposure_rate_per_day * config.days))
        for k in range(n_indirect):
            q_time = start + int(rng.integers(0, horizon - start))
            author = agents[_other_index(rng, len(agents), i)]
            template = INDIRECT_QUESTION_TEMPLATES[int(rng.integers(0, len(INDIRECT_QUESTION_TEMPLATES)))]
            place = PLACES[int(rng.integers(0, len(PLACES)))]
            qid = f"iq{i:05d}x{k:03d}"
            posts.append(
                PostRecord(
                    post_id=qid,
                    author_id=author.agent_id,
                    timestamp=q_time,
                    text=template.format(place=place),
                    is_retweet=False,
                    in_reply_to_post=None,
                    mentions=(),
                )
            )
            exposures[agent.agent_id].append(qid)
            if rng.random() < agent.responsiveness * config.indirect_response_factor:
                delay = int(rng.exponential(agent.latency_scale)) + 1
                r_time = q_time + delay
                if r_time < horizon:
                    posts.append(
                        PostRecord(
                            post_id=f"ir{i:05d}x{k:03d}",
                            author_id=agent.agent_id,
                            timestamp=r_time,
                            text="i think around " + str(int(rng.integers(5, 60))) + " minutes",
                            is_retweet=False,
                            in_reply_to_post=qid,
                            mentions=(),
                        )
                    )

    corpus = build_corpus(users, posts, exposures=exposures)

    solicit_rng = np.random.default_rng(solicit_ss)
    budget = config.question_budget
    if budget is None:
        budget = config.population_size
    solicitations = []
    span = horizon - start
    for k in range(budget):
        agent = agents[k % len(agents)]
        sent_at = start + int(span * (0.5 + 0.45 * solicit_rng.random()))
        p = true_response_probability(
            agent, sent_at, corpus.timeline(agent.agent_id), config.response_model
        )
        responded = bool(solicit_rng.random() < p)
        response_at = None
        response_text = None
        if responded:
            response_at = sent_at + int(solicit_rng.exponential(agent.latency_scale)) + 1
            response_text = "around " + str(int(solicit_rng.integers(5, 60))) + " minutes"
        solicitations.append(
            SolicitationRecord(
                target_user=agent.agent_id,
                question_text=f"@agent{k % len(agents):05d} how long is the security line?",
                sent_at=sent_at,
                responded=responded,
                response_at=response_at,
                response_text=response_text,
            )
        )
    corpus.solicitations = solicitations

    paths = None
    if out_dir is not None:
        paths = write_population(out_dir, corpus, agents)
    return PopulationBundle(config=config, corpus=corpus, agents=agents, paths=paths)


def _other_index(rng, n, excluded):
    idx = int(rng.integers(0, n - 1))
    return idx + 1 if idx >= excluded else idx


def write_population(out_dir, corpus: Corpus, agents) -> dict[str, str]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "users": out / "users.jsonl",
        "posts": out / "posts.jsonl",
        "solicitations": out / "solicitations.jsonl",
        "exposures": out / "exposures.jsonl",
        "agents": out / "agents.jsonl",
    }
    with paths["users"].open("w", encoding="utf-8") as fh:
        for user in corpus.users.values():
            fh.write(
                json.dumps(
                    {
                        "user_id": user.user_id,
                        "screen_name": user.screen_name,
                        "profile_text": user.profile_text,
                        "account_created_at": user.account_created_at,
                    }
                )
                + "\n"
            )
    with paths["posts"].open("w", encoding="utf-8") as fh:
        for post in sorted(corpus.posts.values(), key=lambda p: (p.timestamp, p.post_id)):
            fh.write(
                json.dumps(
                    {
                        "post_id": post.post_id,
                        "author_id": post.author_id,
                        "timestamp": post.timestamp,
                        "text": post.text,
                        "is_retweet": post.is_retweet,
                        "in_reply_to_post": post.in_reply_to_post,
                        "mentions": list(post.mentions),
                    }
                )
                + "\n"
            )
    with paths["solicitations"].open("w", encoding="utf-8") as fh:
        for rec in corpus.solicitations:
            fh.write(
                json.dumps(
                    {
                        "target_user": rec.target_user,
                        "question_text": rec.question_text,
                        "sent_at": rec.sent_at,
                        "responded": rec.responded,
                        "response_at": rec.response_at,
                        "response_text": rec.response_text,
                    }
                )
                + "\n"
            )
    with paths["exposures"].open("w", encoding="utf-8") as fh:
        for uid in sorted(corpus.exposures):
            fh.write(
                json.dumps({"user_id": uid, "exposed_post_ids": corpus.exposures[uid]}) + "\n"
            )
    with paths["agents"].open("w", encoding="utf-8") as fh:
        for agent in agents:
            fh.write(json.dumps(agent.as_dict()) + "\n")
    return {k: str(v) for k, v in paths.items()}


def true_response_probability(
    agent: AgentSpec, question_time: int, timeline, model: ResponseModel = ResponseModel()
) -> float:
    """Ground-truth solicitation response probability; see ResponseModel."""
    last = None
    for post in reversed(timeline):
        if post.timestamp <= question_time:
            last = post.timestamp
            break
    if last is None:
        recency = 0.0
    else:
        inactivity = max(0, question_time - last)
        recency = math.exp(-inactivity / model.recency_tau)
    hour = (question_time % SECONDS_PER_DAY) // 3600
    z = (
        model.base
        + model.willingness_gain * agent.willingness
        + model.recency_gain * recency * agent.readiness_sensitivity
        + model.diurnal_gain * agent.diurnal_weights[hour] * agent.readiness_sensitivity
    )
    return 1.0 / (1.0 + math.exp(-z))


@dataclass(frozen=True)
class ArmResult:
    name: str
    sent: int
    responded: int
    response_rate: float
    recall: float

    def as_dict(self):
        return asdict(self)


@dataclass
class ExperimentReport:
    seed: int
    config_digest: str
    budget: int
    pool_size: int
    pool_responders: int
    arms: list[ArmResult]

    def as_dict(self):
        return {
            "seed": self.seed,
            "config_digest": self.config_digest,
            "budget": self.budget,
            "pool_size": self.pool_size,
            "pool_responders": self.pool_responders,
            "arms": [a.as_dict() for a in self.arms],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=1, sort_keys=True) + "\n"

    def arm(self, name: str) -> ArmResult:
        for arm in self.arms:
            if arm.name == name:
                return arm
        raise KeyError(name)


def default_feature_config() -> FeatureConfig:
    lex = load_lexicon(default_lexicon_path())
    return FeatureConfig(
        lexicon=lex, coefficients=load_coefficients(default_coefficients_path(), lex)
    )


def prepare_benchmark_features(config: SimConfig, population=None, feature_config=None):
    """Featurize the population's labeled solicitations: (X, y, ids)."""
    population = population or generate_population(config)
    fc = feature_config or default_feature_config()
    corpus = population.corpus
    rows, labels, ids = [], [], []
    for k, s in enumerate(corpus.solicitations):
        fv = extract_features(corpus.user(s.target_user), corpus, s.sent_at, fc)
        rows.append(fv.as_row())
        labels.append(int(s.responded))
        ids.append(f"{s.target_user}#{k}")
    return np.asarray(rows), np.asarray(labels), ids


def cross_validated_selection_rate(
    prepared, seed, cost: CostConfig, min_fraction=0.05, kind="logistic", k=5
) -> float:
    """Held-out response rate of interval selection under k-fold CV.

    Per fold: cost-weighted fit on the training folds, interval selection
    (minimum-size constraint) on the training ranking, percentile mapping
    onto the held-out ranking; rates averaged across folds.
    """
    from .model import stratified_folds

    X, y, ids = prepared
    folds = stratified_folds(y, k, seed=seed)
    rates = []
    for f in range(k):
        tr = folds != f
        te = ~tr
        model = make_model(kind, seed=seed)
        model.fit(X[tr], y[tr], sample_weight=assign_weights(y[tr], cost))
        tr_ids = [ids[i] for i in np.flatnonzero(tr)]
        te_ids = [ids[i] for i in np.flatnonzero(te)]
        selection = recommend(
            model, X[tr], y[tr], tr_ids, X[te], te_ids,
            Constraints(min_fraction=min_fraction, min_length=1),
        )
        labels = {ids[i]: int(y[i]) for i in np.flatnonzero(te)}
        rates.append(evaluate_selection(selection.selected_ids, labels).response_rate)
    return float(np.mean(rates))


def benefit_cost_experiment(
    config: SimConfig,
    ratios=(2.0, 5.0, 10.0),
    min_fraction=0.05,
    kind="logistic",
    population=None,
    feature_config=None,
    screen_features=True,
) -> dict:
    """Benefit/cost sweep on the labeled benchmark.

    Mirrors the original protocol: features are first screened with the
    chi-square significance report, then each ratio is evaluated with
    cross_validated_selection_rate. Returns {ratio: mean held-out rate}.
    """
    from .analysis import significance_report

    fc = feature_config or default_feature_config()
    X, y, ids = prepare_benchmark_features(config, population=population, feature_config=fc)
    if screen_features:
        names = fc.feature_names()
        significant = significance_report(X, y, names).significant_names
        if len(significant) >= 2:
            idx = [names.index(s) for s in significant]
            X = X[:, idx]
    prepared = (X, y, ids)
    return {
        float(ratio): cross_validated_selection_rate(
            prepared, config.seed, CostConfig(benefit=float(ratio), cost=1.0),
            min_fraction=min_fraction, kind=kind,
        )
        for ratio in ratios
    }


def _exact_size_selection(ranked_ids, i_s, j_s, budget):
    """Trim or grow the mapped interval so exactly `budget` ids are chosen."""
    selected = list(ranked_ids[i_s - 1 : j_s])
    if len(selected) > budget:
        return selected[:budget]
    lo, hi = i_s - 1, j_s
    while len(selected) < budget and (lo > 0 or hi < len(ranked_ids)):
        if hi < len(ranked_ids):
            selected.append(ranked_ids[hi])
            hi += 1
        elif lo > 0:
            lo -= 1
            selected.insert(0, ranked_ids[lo])
    return selected


def run_live_experiment(
    config: SimConfig,
    budget: int = 100,
    train_fraction: float = 0.5,
    kind: str = "logistic",
    cost: CostConfig | None = None,
    constraints: Constraints | None = None,
    feature_config: FeatureConfig | None = None,
    population: PopulationBundle | None = None,
) -> ExperimentReport:
    """Engine vs. random/top-k/binary arms over a fresh candidate pool.

    The population is split into a labeled training pool (solicited once,
    outcomes realized from the ground-truth model) and a candidate pool
    shared by all arms; each candidate's counterfactual response draw is
    realized once, so arm comparisons are paired.
    """
    arms = 4
    if budget * arms > config.population_size:
        raise ConfigurationError(
            f"budget {budget} x {arms} arms exceeds population {config.population_size}"
        )
    cost = cost or CostConfig()
    constraints_given = constraints
    if population is None:
        population = generate_population(config)
    corpus, agents = population.corpus, population.agents
    fc = feature_config or FeatureConfig(
        lexicon=load_lexicon(default_lexicon_path()),
        coefficients=load_coefficients(
            default_coefficients_path(), load_lexicon(default_lexicon_path())
        ),
    )

    rng = np.random.default_rng([config.seed, 0x5EED])
    order = rng.permutation(len(agents))
    n_train = int(len(agents) * train_fraction)
    train_agents = [agents[k] for k in order[:n_train]]
    cand_agents = [agents[k] for k in order[n_train:]]
    if budget > len(cand_agents):
        raise ConfigurationError("insufficient candidates for the requested budget")

    start, horizon = config.start_time, config.horizon
    span = horizon - start
    train_rows, train_labels, train_ids = [], [], []
    for agent in train_agents:
        sent_at = start + int(span * (0.5 + 0.45 * rng.random()))
        p = true_response_probability(
            agent, sent_at, corpus.timeline(agent.agent_id), config.response_model
        )
        label = int(rng.random() < p)
        fv = extract_features(corpus.user(agent.agent_id), corpus, sent_at, fc)
        train_rows.append(fv.as_row())
        train_labels.append(label)
        train_ids.append(agent.agent_id)
    train_X = np.asarray(train_rows)
    train_y = np.asarray(train_labels)

    model = make_model(kind, seed=config.seed)
    model.fit(train_X, train_y, sample_weight=assign_weights(train_y, cost))

    t_query = horizon
    cand_rows, cand_ids = [], []
    for agent in cand_agents:
        fv = extract_features(corpus.user(agent.agent_id), corpus, t_query, fc)
        cand_rows.append(fv.as_row())
        cand_ids.append(agent.agent_id)
    cand_X = np.asarray(cand_rows)

    # one counterfactual response realization per candidate
    responders = {}
    for agent in cand_agents:
        p = true_response_probability(
            agent, t_query, corpus.timeline(agent.agent_id), config.response_model
        )
        responders[agent.agent_id] = bool(rng.random() < p)
    total_responders = sum(responders.values())

    m = len(cand_agents)
    constraints = constraints_given or Constraints(min_fraction=budget / m, min_length=1)
    selection = recommend(model, train_X, train_y, train_ids, cand_X, cand_ids, constraints)
    ranked_ids = [e.candidate_id for e in rank_candidates(model, cand_X, cand_ids)]
    engine_ids = _exact_size_selection(
        ranked_ids, selection.test_interval[0], selection.test_interval[1], budget
    )

    random_ids = [cand_ids[k] for k in rng.choice(m, size=budget, replace=False)]
    topk_ids = baseline_topk(model, cand_X, cand_ids, budget)
    binary_ids = baseline_binary(model, cand_X, cand_ids)[:budget]

    def arm_result(name, ids):
        sent = len(ids)
        responded = sum(1 for cid in ids if responders[cid])
        return ArmResult(
            name=name,
            sent=sent,
            responded=responded,
            response_rate=responded / sent if sent else 0.0,
            recall=responded / total_responders if total_responders else 0.0,
        )

    report = ExperimentReport(
        seed=config.seed,
        config_digest=config.digest(),
        budget=budget,
        pool_size=m,
        pool_responders=total_responders,
        arms=[
            arm_result("engine", engine_ids),
            arm_result("random", random_ids),
            arm_result("topk", topk_ids),
            arm_result("binary", binary_ids),
        ],
    )
    return report
