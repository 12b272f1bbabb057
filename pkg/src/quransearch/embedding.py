"""CBOW word2vec with negative sampling, document pooling, and providers.

The model predicts a center word from the mean of its context words'
input vectors, contrasting the true center against K noise words drawn
from the unigram^0.75 distribution. Document vectors are the L2-normalized
mean of token input vectors, so cosine similarity reduces to a dot product
of unit vectors.
"""

import struct
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np
import requests
from scipy.special import expit

from ._binio import Reader, check_magic
from .errors import (
    DomainError,
    EmptyEmbeddingError,
    FormatError,
    NumericError,
    ProviderError,
    TrainError,
)
from .textnorm import NormalizationConfig, preprocess_document

MODEL_MAGIC = b"QSW2V1"


@dataclass
class Vocabulary:
    """Dense token ids ordered by descending frequency (ties: lexicographic)."""

    token_to_id: dict[str, int]
    id_to_token: list[str]
    frequencies: list[int]
    min_count: int

    def __len__(self) -> int:
        return len(self.id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id


@dataclass(frozen=True)
class TrainingConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 15
    initial_lr: float = 0.025
    min_lr: float = 1e-4
    subsample_t: float = 1e-3
    seed: int = 1
    min_count: int = 2

    def __post_init__(self):
        if self.dim < 1 or self.window < 1 or self.negatives < 1:
            raise DomainError("dim, window and negatives must all be >= 1")
        if self.epochs < 0:
            raise DomainError("epochs must be >= 0")
        if not self.initial_lr > self.min_lr >= 0:
            raise DomainError("need initial_lr > min_lr >= 0")


@dataclass
class EmbeddingModel:
    """Trained CBOW model: vocabulary plus input/output matrices (V x dim)."""

    vocab: Vocabulary
    w_in: np.ndarray
    w_out: np.ndarray
    cfg: TrainingConfig
    norm_cfg: NormalizationConfig = field(default_factory=NormalizationConfig)

    @property
    def dim(self) -> int:
        return self.w_in.shape[1]


@dataclass
class CbowGradients:
    """Gradients for the rows touched by one training sample."""

    w_in: dict[int, np.ndarray]
    w_out: dict[int, np.ndarray]


def build_vocabulary(corpus: list[list[str]], min_count: int = 1) -> Vocabulary:
    """Count tokens across the corpus and keep those with freq >= min_count."""
    if not corpus:
        raise TrainError("empty corpus")
    counts = Counter()
    for doc in corpus:
        counts.update(doc)
    kept = [(tok, n) for tok, n in counts.items() if n >= min_count]
    if not kept:
        raise TrainError(f"no token reaches min_count={min_count}")
    kept.sort(key=lambda item: (-item[1], item[0]))
    id_to_token = [tok for tok, _ in kept]
    return Vocabulary(
        token_to_id={tok: i for i, tok in enumerate(id_to_token)},
        id_to_token=id_to_token,
        frequencies=[n for _, n in kept],
        min_count=min_count,
    )


def cbow_loss_and_grad(
    model: EmbeddingModel,
    center_id: int,
    context_ids: list[int],
    negative_ids: list[int],
) -> tuple[float, CbowGradients]:
    """Negative-sampling loss and exact gradients for one sample.

    h is the mean of the context rows of w_in. The loss is
    -log sigmoid(w_out[center] . h) - sum over negatives of
    log sigmoid(-w_out[neg] . h). Duplicate ids accumulate their
    gradient contributions. Computation is in float64 regardless of
    the model's storage dtype.
    """
    if not context_ids:
        raise DomainError("context_ids must be non-empty")
    v = model.w_in.shape[0]
    for i in (center_id, *context_ids, *negative_ids):
        if not 0 <= i < v:
            raise DomainError(f"token id {i} outside vocabulary of size {v}")

    w_in = model.w_in.astype(np.float64, copy=False)
    w_out = model.w_out.astype(np.float64, copy=False)
    ctx = np.asarray(context_ids)
    h = w_in[ctx].mean(axis=0)

    s_center = float(w_out[center_id] @ h)
    s_neg = w_out[np.asarray(negative_ids, dtype=np.intp)] @ h if negative_ids else np.zeros(0)
    # -log sigmoid(x) = log(1 + exp(-x)), computed stably
    loss = float(np.logaddexp(0.0, -s_center) + np.logaddexp(0.0, s_neg).sum())

    g_center = expit(s_center) - 1.0
    g_neg = expit(s_neg)

    grads_out: dict[int, np.ndarray] = {}

    def _add_out(idx: int, coeff: float) -> None:
        if idx in grads_out:
            grads_out[idx] = grads_out[idx] + coeff * h
        else:
            grads_out[idx] = coeff * h

    _add_out(center_id, g_center)
    for nid, g in zip(negative_ids, g_neg):
        _add_out(nid, float(g))

    dh = g_center * w_out[center_id]
    for nid, g in zip(negative_ids, g_neg):
        dh = dh + float(g) * w_out[nid]
    per_context = dh / len(context_ids)

    grads_in: dict[int, np.ndarray] = {}
    for cid in context_ids:
        if cid in grads_in:
            grads_in[cid] = grads_in[cid] + per_context
        else:
            grads_in[cid] = per_context.copy()

    return loss, CbowGradients(w_in=grads_in, w_out=grads_out)


def _draw_negatives(
    rng: np.random.Generator, noise_cum: np.ndarray, k: int, center_id: int
) -> list[int]:
    total = noise_cum[-1]
    negatives: list[int] = []
    while len(negatives) < k:
        drawn = int(np.searchsorted(noise_cum, rng.random() * total, side="right"))
        if drawn != center_id:
            negatives.append(drawn)
    return negatives


def train_cbow(
    corpus: list[list[str]],
    cfg: TrainingConfig,
    norm_cfg: NormalizationConfig | None = None,
    on_epoch: Callable[[int, float], None] | None = None,
) -> EmbeddingModel:
    """Train CBOW by plain SGD, one pass over all center positions per epoch.

    Deterministic for a fixed (corpus, cfg): a single RNG stream drives
    initialization, subsampling, dynamic window widths, and negative draws.
    The learning rate decays linearly from initial_lr to min_lr over all
    scheduled center positions (epochs x corpus tokens), stepped per
    document. Per-pair context width is drawn uniformly from [1, window].
    """
    if norm_cfg is None:
        norm_cfg = NormalizationConfig()
    vocab = build_vocabulary(corpus, cfg.min_count)
    if len(vocab) < 2:
        raise TrainError("vocabulary needs at least two tokens for negative sampling")

    rng = np.random.default_rng(cfg.seed)
    v, dim = len(vocab), cfg.dim
    w_in = (rng.random((v, dim)) - 0.5) / dim
    w_out = np.zeros((v, dim))

    docs = [
        [vocab.token_to_id[t] for t in doc if t in vocab.token_to_id] for doc in corpus
    ]
    total_positions = cfg.epochs * sum(len(d) for d in docs)

    freqs = np.asarray(vocab.frequencies, dtype=np.float64)
    noise_cum = np.cumsum(freqs**0.75)
    keep_p = None
    if cfg.subsample_t > 0:
        ratio = cfg.subsample_t * freqs.sum() / freqs
        keep_p = np.minimum(1.0, np.sqrt(ratio) + ratio)

    lr_span = cfg.initial_lr - cfg.min_lr
    scheduled = 0
    for epoch in range(cfg.epochs):
        epoch_loss = 0.0
        epoch_pairs = 0
        for doc_ids in docs:
            lr = cfg.initial_lr - lr_span * (scheduled / max(1, total_positions))
            lr = max(cfg.min_lr, lr)
            scheduled += len(doc_ids)
            if keep_p is not None:
                kept = [i for i in doc_ids if rng.random() < keep_p[i]]
            else:
                kept = doc_ids
            n = len(kept)
            for pos in range(n):
                center = kept[pos]
                width = int(rng.integers(1, cfg.window + 1))
                context = kept[max(0, pos - width) : pos] + kept[pos + 1 : pos + width + 1]
                if not context:
                    continue
                negatives = _draw_negatives(rng, noise_cum, cfg.negatives, center)

                ctx = np.asarray(context)
                h = w_in[ctx].mean(axis=0)
                out_ids = np.asarray([center, *negatives], dtype=np.intp)
                scores = w_out[out_ids] @ h
                epoch_loss += float(
                    np.logaddexp(0.0, -scores[0]) + np.logaddexp(0.0, scores[1:]).sum()
                )
                epoch_pairs += 1

                g = expit(scores)
                g[0] -= 1.0  # center carries label 1, negatives label 0
                dh = g @ w_out[out_ids]
                np.add.at(w_out, out_ids, -lr * np.outer(g, h))
                np.add.at(w_in, ctx, (-lr / len(context)) * dh)

        mean_loss = epoch_loss / epoch_pairs if epoch_pairs else 0.0
        if not np.isfinite(mean_loss):
            raise NumericError(f"non-finite loss at epoch {epoch}")
        if on_epoch is not None:
            on_epoch(epoch, mean_loss)

    return EmbeddingModel(
        vocab=vocab,
        w_in=w_in.astype(np.float32),
        w_out=w_out.astype(np.float32),
        cfg=cfg,
        norm_cfg=norm_cfg,
    )


def embed_tokens(model: EmbeddingModel, tokens: list[str]) -> np.ndarray:
    """Mean of in-vocabulary input vectors, L2-normalized to a unit float32.

    Out-of-vocabulary tokens are skipped; if nothing remains (or the mean
    is exactly zero) there is no direction to report and the caller gets
    an EmptyEmbeddingError to turn into a "no searchable terms" response.
    """
    ids = [model.vocab.token_to_id[t] for t in tokens if t in model.vocab.token_to_id]
    if not ids:
        raise EmptyEmbeddingError("no in-vocabulary tokens")
    mean = model.w_in[np.asarray(ids)].astype(np.float64).mean(axis=0)
    norm = float(np.linalg.norm(mean))
    if norm == 0.0:
        raise EmptyEmbeddingError("tokens average to the zero vector")
    return (mean / norm).astype(np.float32)


def persist_model(model: EmbeddingModel, path: str | Path) -> None:
    """Write the binary model file (see restore_model for the layout)."""
    v, dim = model.w_in.shape
    with open(path, "wb") as f:
        f.write(MODEL_MAGIC)
        f.write(struct.pack("<II", v, dim))
        f.write(model.norm_cfg.to_bytes())
        for i, token in enumerate(model.vocab.id_to_token):
            raw = token.encode("utf-8")
            f.write(struct.pack("<I", len(raw)))
            f.write(raw)
            f.write(struct.pack("<Q", model.vocab.frequencies[i]))
        f.write(np.ascontiguousarray(model.w_in, dtype="<f4").tobytes())
        f.write(np.ascontiguousarray(model.w_out, dtype="<f4").tobytes())


def restore_model(path: str | Path) -> EmbeddingModel:
    """Read a model file back; matrices round-trip bit-exactly.

    Layout: magic "QSW2V1", u32 V, u32 dim, 6 normalization flag bytes,
    then per token (id order) u32 byte length + UTF-8 bytes + u64 frequency,
    then w_in and w_out as row-major little-endian float32.
    """
    data = Path(path).read_bytes()
    r = Reader(data, str(path))
    check_magic(r, MODEL_MAGIC, "model")
    v, dim = struct.unpack("<II", r.take(8))
    norm_cfg = NormalizationConfig.from_bytes(r.take(6))
    id_to_token: list[str] = []
    frequencies: list[int] = []
    for _ in range(v):
        (length,) = struct.unpack("<I", r.take(4))
        try:
            token = r.take(length).decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"{path}: invalid UTF-8 in vocabulary") from e
        (freq,) = struct.unpack("<Q", r.take(8))
        id_to_token.append(token)
        frequencies.append(freq)
    w_in = np.frombuffer(r.take(4 * v * dim), dtype="<f4").reshape(v, dim).copy()
    w_out = np.frombuffer(r.take(4 * v * dim), dtype="<f4").reshape(v, dim).copy()
    r.done()
    if not (np.isfinite(w_in).all() and np.isfinite(w_out).all()):
        raise FormatError(f"{path}: non-finite matrix entries")
    vocab = Vocabulary(
        token_to_id={tok: i for i, tok in enumerate(id_to_token)},
        id_to_token=id_to_token,
        frequencies=frequencies,
        min_count=1,
    )
    cfg = replace(TrainingConfig(), dim=dim) if dim >= 1 else TrainingConfig()
    return EmbeddingModel(vocab=vocab, w_in=w_in, w_out=w_out, cfg=cfg, norm_cfg=norm_cfg)


class LocalCbowProvider:
    """Embeds text with a locally trained CBOW model."""

    def __init__(self, model: EmbeddingModel, name: str = "cbow"):
        self.model = model
        self.name = name
        self.dim = model.dim
        self.norm_cfg = model.norm_cfg

    def embed(self, text: str) -> np.ndarray:
        tokens = preprocess_document(text, self.model.norm_cfg)
        return embed_tokens(self.model, tokens)


def remote_embed(endpoint: str, text: str, dim: int | None = None, timeout: float = 10.0) -> np.ndarray:
    """POST {"text": ...} to <endpoint>/embed and unit-normalize the reply.

    The server must answer {"vector": [...], "dim": N}; anything else
    (network failure, non-200, wrong dim, non-finite values) raises
    ProviderError.
    """
    url = endpoint.rstrip("/") + "/embed"
    try:
        resp = requests.post(url, json={"text": text}, timeout=timeout)
    except requests.RequestException as e:
        raise ProviderError(f"embedding server unreachable: {e}") from e
    if resp.status_code != 200:
        try:
            message = resp.json().get("error", resp.text)
        except ValueError:
            message = resp.text
        raise ProviderError(f"embedding server returned {resp.status_code}: {message}")
    try:
        body = resp.json()
        vector = np.asarray(body["vector"], dtype=np.float64)
        declared = int(body["dim"])
    except (ValueError, KeyError, TypeError) as e:
        raise ProviderError(f"malformed embedding response: {e}") from e
    if vector.ndim != 1 or vector.size != declared:
        raise ProviderError(
            f"response vector has {vector.size} components, header says {declared}"
        )
    if dim is not None and declared != dim:
        raise ProviderError(f"provider registered with dim={dim}, server sent {declared}")
    if not np.isfinite(vector).all():
        raise ProviderError("response vector contains non-finite values")
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise ProviderError("response vector is zero")
    return (vector / norm).astype(np.float32)


class RemoteProvider:
    """Embedding provider backed by an external embedding server."""

    def __init__(self, endpoint: str, name: str, dim: int, timeout: float = 10.0):
        self.endpoint = endpoint
        self.name = name
        self.dim = dim
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        return remote_embed(self.endpoint, text, dim=self.dim, timeout=self.timeout)
