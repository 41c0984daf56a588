"""Evaluation harness: IR metrics, threat fidelity (ABC/ALF), message-level
device realism (M.SIM), dataset quality dimensions, diversity, and ROUGE-L.

All metrics are pure read-only functions over rankings or event logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .catalog import SimulationEvent
from .retrieval import tokenize
from .threats import PHASES, indicator_fires

ABC_PASS_THRESHOLD = 0.60
ALF_PASS_THRESHOLD = 0.50


# ---------------------------------------------------------------------------
# Information-retrieval metrics
# ---------------------------------------------------------------------------

def precision_at_k(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    top = ranking[:k]
    if not top:
        return 0.0
    return sum(1 for d in top if d in relevant) / k


def recall_at_k(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    if k < 1:
        raise ValueError("k must be >= 1")
    if not relevant:
        raise ValueError("recall undefined without relevance judgments")
    return sum(1 for d in ranking[:k] if d in relevant) / len(relevant)


def ndcg_at_k(ranking: Sequence[str], relevant: set[str], k: int) -> float:
    """Binary-gain nDCG with a log2(rank + 1) discount."""
    if k < 1:
        raise ValueError("k must be >= 1")
    dcg = sum(1.0 / math.log2(i + 2)
              for i, d in enumerate(ranking[:k]) if d in relevant)
    ideal_hits = min(k, len(relevant))
    idcg = sum(1.0 / math.log2(i + 2) for i in range(ideal_hits))
    return dcg / idcg if idcg > 0 else 0.0


def reciprocal_rank(ranking: Sequence[str], relevant: set[str]) -> float:
    for i, d in enumerate(ranking):
        if d in relevant:
            return 1.0 / (i + 1)
    return 0.0


def mrr(rankings: Sequence[Sequence[str]], judgments: Sequence[set[str]]) -> float:
    if not rankings:
        raise ValueError("mrr requires at least one query")
    return sum(reciprocal_rank(r, rel) for r, rel in zip(rankings, judgments)) / len(rankings)


def average_precision(ranking: Sequence[str], relevant: set[str]) -> float:
    if not relevant:
        return 0.0
    hits = 0
    total = 0.0
    for i, d in enumerate(ranking):
        if d in relevant:
            hits += 1
            total += hits / (i + 1)
    return total / len(relevant)


def mean_average_precision(rankings: Sequence[Sequence[str]],
                           judgments: Sequence[set[str]]) -> float:
    if not rankings:
        raise ValueError("map requires at least one query")
    return sum(average_precision(r, rel) for r, rel in zip(rankings, judgments)) / len(rankings)


# ---------------------------------------------------------------------------
# Threat fidelity
# ---------------------------------------------------------------------------

@dataclass
class AbcResult:
    matched: int
    total: int
    coverage: float
    passed: bool
    matched_ids: tuple[str, ...]


def abc(events: list[SimulationEvent], indicators: Sequence[dict]) -> AbcResult:
    """Attack behaviour coverage: fraction of expected indicators observed."""
    if not indicators:
        raise ValueError("no expected indicators for this threat type")
    matched = [ind["id"] for ind in indicators if indicator_fires(ind, events)]
    coverage = len(matched) / len(indicators)
    return AbcResult(matched=len(matched), total=len(indicators), coverage=coverage,
                     passed=coverage >= ABC_PASS_THRESHOLD, matched_ids=tuple(matched))


@dataclass
class AlfResult:
    phases_covered: int
    total_phases: int
    coverage: float
    ordering_valid: bool
    passed: bool


def alf(events: list[SimulationEvent]) -> AlfResult:
    """Attack lifecycle fidelity: kill-chain phase coverage and ordering.

    Ordering is valid iff the first occurrence of each covered phase is
    monotone in canonical phase order.
    """
    first_seen: dict[str, float] = {}
    for e in events:
        if e.phase in PHASES and e.phase not in first_seen:
            first_seen[e.phase] = e.timestamp
    covered = [p for p in PHASES if p in first_seen]
    coverage = len(covered) / len(PHASES)
    times = [first_seen[p] for p in covered]
    ordering_valid = all(a <= b for a, b in zip(times, times[1:]))
    return AlfResult(phases_covered=len(covered), total_phases=len(PHASES),
                     coverage=coverage, ordering_valid=ordering_valid,
                     passed=coverage >= ALF_PASS_THRESHOLD and ordering_valid)


# ---------------------------------------------------------------------------
# Device realism (M.SIM)
# ---------------------------------------------------------------------------

@dataclass
class MsimResult:
    field_coverage: float
    type_compat: float
    range_overlap: float
    semantic_sim: float
    combined: float


def msim_combined(field_coverage: float, type_compat: float,
                  range_overlap: float, semantic_sim: float) -> float:
    """Equal-weight mean of the four sub-scores."""
    return (field_coverage + type_compat + range_overlap + semantic_sim) / 4.0


def _interval_jaccard(observed: tuple[float, float], expected: tuple[float, float]) -> float:
    lo = max(observed[0], expected[0])
    hi = min(observed[1], expected[1])
    inter = max(0.0, hi - lo)
    union = max(observed[1], expected[1]) - min(observed[0], expected[0])
    if union <= 0:
        return 1.0 if observed == expected else 0.0
    return inter / union


def _tag_similarity(field_name: str, tags: Sequence[str]) -> float:
    name_tokens = set(tokenize(field_name.replace("_", " ")))
    tag_tokens = set()
    for tag in tags:
        tag_tokens.update(tokenize(tag.replace("_", " ")))
    if not name_tokens or not tag_tokens:
        return 0.0
    return len(name_tokens & tag_tokens) / len(name_tokens | tag_tokens)


def msim(events: list[SimulationEvent], schema: dict[str, dict]) -> MsimResult:
    """Message similarity against a reference schema.

    Schema maps device type -> {"fields": {name: {"type": "number"|"string"|"bool",
    "range": [lo, hi] (numeric only), "tags": [...]}}}. Raises for evaluated
    device types missing from the schema.
    """
    present_types = sorted({e.device_type for e in events})
    missing = [t for t in present_types if t not in schema]
    if missing:
        raise ValueError(f"device types absent from reference schema: {missing}")

    cov_scores, type_scores, range_scores, sem_scores = [], [], [], []
    for dtype in present_types:
        expected = schema[dtype]["fields"]
        if not expected:
            continue
        observed: dict[str, list] = {}
        for e in events:
            if e.device_type != dtype:
                continue
            for k, v in e.payload.items():
                observed.setdefault(k, []).append(v)

        present = [f for f in expected if f in observed]
        cov_scores.append(len(present) / len(expected))

        if present:
            ok = 0
            for f in present:
                want = expected[f].get("type", "number")
                values = observed[f]
                if want == "number":
                    ok += all(isinstance(v, (int, float)) and not isinstance(v, bool)
                              for v in values)
                elif want == "bool":
                    ok += all(isinstance(v, bool) for v in values)
                else:
                    ok += all(isinstance(v, str) for v in values)
            type_scores.append(ok / len(present))

        numeric = [f for f in present if expected[f].get("range")]
        if numeric:
            overlaps = []
            for f in numeric:
                values = [v for v in observed[f] if isinstance(v, (int, float))]
                if not values:
                    overlaps.append(0.0)
                    continue
                overlaps.append(_interval_jaccard((min(values), max(values)),
                                                  tuple(expected[f]["range"])))
            range_scores.append(sum(overlaps) / len(overlaps))

        tagged = [f for f in expected if expected[f].get("tags")]
        if tagged:
            sem_scores.append(sum(_tag_similarity(f, expected[f]["tags"]) for f in tagged)
                              / len(tagged))

    def mean(xs: list[float]) -> float:
        return sum(xs) / len(xs) if xs else 0.0

    fc, tc, ro, ss = mean(cov_scores), mean(type_scores), mean(range_scores), mean(sem_scores)
    return MsimResult(field_coverage=fc, type_compat=tc, range_overlap=ro,
                      semantic_sim=ss, combined=msim_combined(fc, tc, ro, ss))


# ---------------------------------------------------------------------------
# Dataset quality (seven dimensions)
# ---------------------------------------------------------------------------

@dataclass
class QualityProfile:
    scale: int
    feature_count: int
    balance: float
    attack_diversity: float
    temporal_uniformity: float
    source_diversity: float
    taxonomy_depth: float

    def as_row(self) -> dict:
        return {"scale": self.scale, "feature_count": self.feature_count,
                "balance": self.balance, "attack_diversity": self.attack_diversity,
                "temporal_uniformity": self.temporal_uniformity,
                "source_diversity": self.source_diversity,
                "taxonomy_depth": self.taxonomy_depth}


def normalized_entropy(counts: Sequence[int]) -> float:
    counts = [c for c in counts if c > 0]
    n = len(counts)
    if n <= 1:
        return 0.0
    total = sum(counts)
    h = -sum((c / total) * math.log2(c / total) for c in counts)
    return h / math.log2(n)


def gini_coefficient(counts: Sequence[int | float]) -> float:
    """Sorted-counts formula; 0 for uniform, approaching 1 for maximal skew."""
    xs = sorted(counts)
    n = len(xs)
    total = sum(xs)
    if n == 0 or total <= 0:
        return 0.0
    return sum((2 * i - n - 1) * x for i, x in enumerate(xs, start=1)) / (n * total)


def dataset_quality(events: list[SimulationEvent], bucket_s: float = 3600.0) -> QualityProfile:
    if not events:
        raise ValueError("dataset_quality requires a non-empty event log")
    from .runtime import csv_columns  # local import avoids cycle at module load

    n = len(events)
    benign = sum(1 for e in events if e.label and e.label.verdict == "benign")
    attack = n - benign
    balance = 1.0 - abs(benign - attack) / n

    attack_types: dict[str, int] = {}
    for e in events:
        if e.label and e.label.verdict == "attack" and e.label.threat_type:
            attack_types[e.label.threat_type] = attack_types.get(e.label.threat_type, 0) + 1
    attack_diversity = normalized_entropy(list(attack_types.values()))

    t0 = min(e.timestamp for e in events)
    t1 = max(e.timestamp for e in events)
    k = max(1, int(math.ceil((t1 - t0) / bucket_s)) or 1)
    buckets = [0] * k
    for e in events:
        idx = min(k - 1, int((e.timestamp - t0) / bucket_s))
        buckets[idx] += 1
    if k > 1:
        expected = n / k
        chi2 = sum((c - expected) ** 2 / expected for c in buckets)
        temporal_uniformity = max(0.0, 1.0 - chi2 / (n * (k - 1)))
    else:
        temporal_uniformity = 1.0

    sources: dict[str, int] = {}
    for e in events:
        sources[e.device_id] = sources.get(e.device_id, 0) + 1
    source_diversity = normalized_entropy(list(sources.values()))

    max_depth = max((len(e.label.taxonomy_path) for e in events if e.label), default=0)
    return QualityProfile(
        scale=n,
        feature_count=len(csv_columns(events)),
        balance=balance,
        attack_diversity=attack_diversity,
        temporal_uniformity=temporal_uniformity,
        source_diversity=source_diversity,
        taxonomy_depth=max_depth / 7.0,
    )


@dataclass
class DiversityProfile:
    type_entropy: float
    category_entropy: float
    gini: float
    unique_types: int
    unique_categories: int


def diversity_profile(events: list[SimulationEvent]) -> DiversityProfile:
    if not events:
        raise ValueError("diversity_profile requires a non-empty event log")
    types: dict[str, int] = {}
    cats: dict[str, int] = {}
    for e in events:
        types[e.device_type] = types.get(e.device_type, 0) + 1
        cats[e.category] = cats.get(e.category, 0) + 1
    return DiversityProfile(
        type_entropy=normalized_entropy(list(types.values())),
        category_entropy=normalized_entropy(list(cats.values())),
        gini=gini_coefficient(list(types.values())),
        unique_types=len(types),
        unique_categories=len(cats),
    )


# ---------------------------------------------------------------------------
# Text overlap and table normalization
# ---------------------------------------------------------------------------

def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> float:
    """LCS-based F-measure over tokens."""
    cand = tokenize(candidate)
    ref = tokenize(reference)
    lcs = _lcs_length(cand, ref)
    if lcs == 0:
        return 0.0
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    return 2 * precision * recall / (precision + recall)


def min_max_normalize(rows: dict[str, list[Optional[float]]],
                      ) -> tuple[dict[str, list[Optional[float]]], dict[str, bool]]:
    """Per-row min-max scaling to [0,1]; constant rows map to 0 and are flagged.

    None entries (metric unavailable for a column) pass through untouched.
    """
    normalized: dict[str, list[Optional[float]]] = {}
    constant: dict[str, bool] = {}
    for name, values in rows.items():
        present = [v for v in values if v is not None]
        if len(present) < 2:
            raise ValueError(f"row {name} needs at least two values")
        lo, hi = min(present), max(present)
        if hi == lo:
            normalized[name] = [0.0 if v is not None else None for v in values]
            constant[name] = True
        else:
            normalized[name] = [(v - lo) / (hi - lo) if v is not None else None
                                for v in values]
            constant[name] = False
    return normalized, constant
