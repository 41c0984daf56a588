"""Hybrid document retrieval: BM25 keyword ranking, embedding-based semantic
ranking behind a provider contract, and reciprocal rank fusion.

Documents are chunked into overlapping token windows and indexed in both an
inverted keyword index and a vector store. The reference embedding provider
hashes token n-grams into a seeded random projection, so the whole retrieval
path is deterministic and fully offline; real model providers plug in behind
the same contract.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Protocol, Sequence

import numpy as np

INDEX_FORMAT_VERSION = 1

CHUNK_SIZE = 512
CHUNK_OVERLAP = 50

BM25_K1 = 1.2
BM25_B = 0.75

RRF_W_SEM = 0.7
RRF_W_KW = 0.3
RRF_KAPPA = 60.0

ADAPTER_KINDS = ("academic", "threat", "device")

# Keeps technical tokens (CVE ids, protocol names, hyphenated terms) intact.
_TOKEN_RE = re.compile(r"[a-z0-9]+(?:[-_][a-z0-9]+)*")

_CVE_RE = re.compile(r"\bCVE-\d{4}-\d{3,7}\b", re.IGNORECASE)
_TECHNIQUE_RE = re.compile(r"\bT\d{4}(?:\.\d{3})?\b")


class RetrievalError(Exception):
    pass


class ProviderError(RetrievalError):
    """An embedding provider failed; surfaced explicitly, never silently."""


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class EmbeddingProvider(Protocol):
    name: str
    dimension: int

    def embed(self, texts: Sequence[str]) -> np.ndarray: ...


class HashedNgramEmbedding:
    """Deterministic reference provider: seeded random projection of n-grams.

    Each unigram/bigram hashes (with the provider seed) to a fixed Gaussian
    direction; a text embeds as the normalized sum of its n-gram directions.
    """

    def __init__(self, dimension: int = 256, seed: int = 0):
        self.name = f"hashed-ngram-{dimension}d-s{seed}"
        self.dimension = dimension
        self.seed = seed
        self._cache: dict[str, np.ndarray] = {}

    def _direction(self, gram: str) -> np.ndarray:
        cached = self._cache.get(gram)
        if cached is None:
            digest = hashlib.sha256(f"{self.seed}|{gram}".encode("utf-8")).digest()
            rng = np.random.Generator(np.random.Philox(key=int.from_bytes(digest[:16], "little")))
            cached = rng.standard_normal(self.dimension)
            if len(self._cache) < 200_000:
                self._cache[gram] = cached
        return cached

    def embed(self, texts: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dimension))
        for i, text in enumerate(texts):
            tokens = tokenize(text)
            grams = list(tokens) + [f"{a} {b}" for a, b in zip(tokens, tokens[1:])]
            if not grams:
                continue
            vec = np.zeros(self.dimension)
            for g in grams:
                vec += self._direction(g)
            norm = np.linalg.norm(vec)
            if norm > 0:
                vec /= norm
            out[i] = vec
        return out


@dataclass
class KnowledgeChunk:
    chunk_id: str
    doc_id: str
    adapter: str
    tokens: tuple[str, ...]
    metadata: dict

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


@dataclass
class RetrievalResult:
    chunk_id: str
    score: float
    semantic_rank: Optional[int] = None
    keyword_rank: Optional[int] = None


@dataclass(frozen=True)
class FusionConfig:
    w_sem: float = RRF_W_SEM
    w_kw: float = RRF_W_KW
    kappa: float = RRF_KAPPA

    def __post_init__(self):
        if self.w_sem < 0 or self.w_kw < 0 or (self.w_sem == 0 and self.w_kw == 0):
            raise ValueError("fusion weights must be >= 0 and not both zero")
        if self.kappa <= 0:
            raise ValueError("kappa must be > 0")


def chunk_document(doc_id: str, text: str, adapter: str,
                   size: int = CHUNK_SIZE, overlap: int = CHUNK_OVERLAP,
                   metadata: Optional[dict] = None) -> list[KnowledgeChunk]:
    """Sliding token windows with the configured overlap; final partial kept.

    Dropping the first `overlap` tokens of every chunk after the first
    reconstructs the document's token sequence exactly.
    """
    if not (0 <= overlap < size):
        raise ValueError("overlap must satisfy 0 <= overlap < size")
    tokens = tokenize(text)
    if not tokens:
        return []
    stride = size - overlap
    chunks = []
    start = 0
    i = 0
    while start < len(tokens):
        window = tokens[start:start + size]
        chunks.append(KnowledgeChunk(
            chunk_id=f"{doc_id}:{i:04d}", doc_id=doc_id, adapter=adapter,
            tokens=tuple(window), metadata=dict(metadata or {})))
        if start + size >= len(tokens):
            break
        start += stride
        i += 1
    return chunks


def extract_metadata(adapter: str, text: str) -> dict:
    """Adapter-specific field extraction hooks."""
    if adapter == "threat":
        return {"cve_ids": sorted({m.upper() for m in _CVE_RE.findall(text)}),
                "technique_ids": sorted(set(_TECHNIQUE_RE.findall(text)))}
    if adapter == "device":
        toks = set(tokenize(text))
        known = ["wifi", "zigbee", "z-wave", "bluetooth", "ble", "matter",
                 "thread", "mqtt", "http", "coap", "ethernet", "modbus"]
        return {"protocols": sorted(p for p in known if p in toks)}
    return {}


class KnowledgeIndex:
    """Keyword postings + vector store over one corpus of chunks."""

    def __init__(self, provider: EmbeddingProvider):
        self.provider = provider
        self.chunks: list[KnowledgeChunk] = []
        self.vectors = np.zeros((0, provider.dimension))
        self.postings: dict[str, dict[int, int]] = {}
        self.doc_ids: set[str] = set()
        self._ingest_counter = 0

    # -- ingestion ----------------------------------------------------------

    def ingest(self, doc_id: str, text: str, adapter: str) -> int:
        if adapter not in ADAPTER_KINDS:
            raise RetrievalError(f"unknown adapter kind: {adapter}")
        if doc_id in self.doc_ids:
            raise RetrievalError(f"duplicate document id: {doc_id}")
        meta = extract_metadata(adapter, text)
        meta["ingest_order"] = self._ingest_counter
        chunks = chunk_document(doc_id, text, adapter, metadata=meta)
        if not chunks:
            raise RetrievalError(f"document {doc_id} produced no chunks")
        try:
            vectors = self.provider.embed([c.text for c in chunks])
        except Exception as exc:
            raise ProviderError(f"embedding provider {self.provider.name} failed: {exc}") from exc
        if vectors.shape != (len(chunks), self.provider.dimension):
            raise ProviderError(
                f"provider returned shape {vectors.shape}, expected "
                f"({len(chunks)}, {self.provider.dimension})")

        base = len(self.chunks)
        for offset, chunk in enumerate(chunks):
            for term, tf in Counter(chunk.tokens).items():
                self.postings.setdefault(term, {})[base + offset] = tf
        self.chunks.extend(chunks)
        self.vectors = np.vstack([self.vectors, vectors])
        self.doc_ids.add(doc_id)
        self._ingest_counter += 1
        return len(chunks)

    def ingest_file(self, path: Path, adapter: str, doc_id: Optional[str] = None,
                    pdf_extractor=None) -> int:
        path = Path(path)
        suffix = path.suffix.lower()
        if suffix in (".txt", ".md", ".markdown"):
            text = path.read_text(encoding="utf-8")
        elif suffix == ".json":
            text = json.dumps(json.loads(path.read_text(encoding="utf-8")), indent=1)
        elif suffix == ".pdf":
            if pdf_extractor is None:
                raise RetrievalError("PDF ingestion requires a text-extraction pre-processor")
            text = pdf_extractor(path)
        else:
            raise RetrievalError(f"unsupported document format: {suffix or path.name}")
        return self.ingest(doc_id or path.stem, text, adapter)

    # -- ranking ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.chunks)

    def _require_nonempty(self):
        if not self.chunks:
            raise RetrievalError("index is empty")

    def keyword_rank(self, query: str) -> list[tuple[str, float]]:
        """Okapi BM25 scoring, descending; ties broken by chunk id."""
        self._require_nonempty()
        n = len(self.chunks)
        doc_lens = [len(c.tokens) for c in self.chunks]
        avgdl = sum(doc_lens) / n
        scores: dict[int, float] = {}
        for term in tokenize(query):
            plist = self.postings.get(term)
            if not plist:
                continue
            df = len(plist)
            idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
            for idx, tf in plist.items():
                denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * doc_lens[idx] / avgdl)
                scores[idx] = scores.get(idx, 0.0) + idf * tf * (BM25_K1 + 1.0) / denom
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], self.chunks[kv[0]].chunk_id))
        return [(self.chunks[i].chunk_id, s) for i, s in ranked]

    def semantic_rank(self, query: str) -> list[tuple[str, float]]:
        """Cosine similarity against the query embedding, descending."""
        self._require_nonempty()
        try:
            qvec = self.provider.embed([query])[0]
        except Exception as exc:
            raise ProviderError(f"embedding provider {self.provider.name} failed: {exc}") from exc
        qnorm = np.linalg.norm(qvec)
        if qnorm > 0:
            qvec = qvec / qnorm
        norms = np.linalg.norm(self.vectors, axis=1)
        norms[norms == 0] = 1.0
        sims = (self.vectors / norms[:, None]) @ qvec
        order = sorted(range(len(self.chunks)),
                       key=lambda i: (-sims[i], self.chunks[i].chunk_id))
        return [(self.chunks[i].chunk_id, float(sims[i])) for i in order]

    def retrieve(self, query: str, k: int, mode: str = "hybrid",
                 fusion: FusionConfig = FusionConfig()) -> list[RetrievalResult]:
        if k < 1:
            raise ValueError("k must be >= 1")
        self._require_nonempty()
        if mode == "keyword":
            return [RetrievalResult(cid, s, keyword_rank=i + 1)
                    for i, (cid, s) in enumerate(self.keyword_rank(query)[:k])]
        if mode == "semantic":
            return [RetrievalResult(cid, s, semantic_rank=i + 1)
                    for i, (cid, s) in enumerate(self.semantic_rank(query)[:k])]
        if mode == "hybrid":
            return rrf_fuse(self.semantic_rank(query), self.keyword_rank(query), fusion)[:k]
        raise ValueError(f"unknown retrieval mode: {mode}")

    # -- persistence --------------------------------------------------------

    def save(self, index_dir: Path) -> None:
        index_dir = Path(index_dir)
        index_dir.mkdir(parents=True, exist_ok=True)
        meta = {
            "format_version": INDEX_FORMAT_VERSION,
            "provider": {"name": self.provider.name, "dimension": self.provider.dimension},
            "doc_ids": sorted(self.doc_ids),
            "ingest_counter": self._ingest_counter,
        }
        (index_dir / "meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2))
        chunk_rows = [{"chunk_id": c.chunk_id, "doc_id": c.doc_id, "adapter": c.adapter,
                       "tokens": list(c.tokens), "metadata": c.metadata}
                      for c in self.chunks]
        (index_dir / "chunks.json").write_text(json.dumps(chunk_rows, sort_keys=True))
        postings = {term: sorted(d.items()) for term, d in self.postings.items()}
        (index_dir / "postings.json").write_text(json.dumps(postings, sort_keys=True))
        np.save(index_dir / "vectors.npy", self.vectors)

    @classmethod
    def load(cls, index_dir: Path, provider: EmbeddingProvider) -> "KnowledgeIndex":
        index_dir = Path(index_dir)
        meta = json.loads((index_dir / "meta.json").read_text())
        if meta["format_version"] != INDEX_FORMAT_VERSION:
            raise RetrievalError(f"unsupported index format version {meta['format_version']}")
        stored = meta["provider"]
        if stored["name"] != provider.name or stored["dimension"] != provider.dimension:
            raise RetrievalError(
                f"index built with provider {stored['name']} ({stored['dimension']}d), "
                f"got {provider.name} ({provider.dimension}d)")
        index = cls(provider)
        rows = json.loads((index_dir / "chunks.json").read_text())
        index.chunks = [KnowledgeChunk(chunk_id=r["chunk_id"], doc_id=r["doc_id"],
                                       adapter=r["adapter"], tokens=tuple(r["tokens"]),
                                       metadata=r["metadata"])
                        for r in rows]
        index.postings = {term: {int(i): tf for i, tf in pairs}
                          for term, pairs in json.loads((index_dir / "postings.json").read_text()).items()}
        index.vectors = np.load(index_dir / "vectors.npy")
        index.doc_ids = set(meta["doc_ids"])
        index._ingest_counter = meta["ingest_counter"]
        return index


def rrf_fuse(sem_ranking: list[tuple[str, float]], kw_ranking: list[tuple[str, float]],
             config: FusionConfig = FusionConfig()) -> list[RetrievalResult]:
    """Reciprocal rank fusion of two rankings over the same index.

    A document absent from one ranking contributes nothing for that term.
    Output sorted by fused score descending, ties by chunk id.
    """
    sem_rank = {cid: i + 1 for i, (cid, _) in enumerate(sem_ranking)}
    kw_rank = {cid: i + 1 for i, (cid, _) in enumerate(kw_ranking)}
    fused = []
    for cid in sorted(set(sem_rank) | set(kw_rank)):
        score = 0.0
        if cid in sem_rank:
            score += config.w_sem / (config.kappa + sem_rank[cid])
        if cid in kw_rank:
            score += config.w_kw / (config.kappa + kw_rank[cid])
        fused.append(RetrievalResult(chunk_id=cid, score=score,
                                     semantic_rank=sem_rank.get(cid),
                                     keyword_rank=kw_rank.get(cid)))
    fused.sort(key=lambda r: (-r.score, r.chunk_id))
    return fused
