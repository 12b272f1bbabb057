"""Verse-level semantic search over Qur'an tafsir commentary.

Pipeline: align commentary to verses, train CBOW embeddings on the
commentary corpus, index L2-normalized document vectors, answer free-text
prompts by exact cosine top-k retrieval, and report relevance tallies.
"""

from .corpus import (
    AlignedRow,
    TafsirEntry,
    Verse,
    VerseKey,
    VerseRef,
    align_tafsir_to_verses,
    decode_verse_key,
    encode_verse_key,
    expand_verse_ref,
    export_alignment_table,
    import_alignment_table,
    index_verses,
    load_quran_text,
    load_tafsir_corpus,
    load_topic_index,
    merge_topic_indexes,
    parse_verse_ref,
    save_topic_index,
)
from .embedding import (
    EmbeddingModel,
    LocalCbowProvider,
    RemoteProvider,
    TrainingConfig,
    Vocabulary,
    build_vocabulary,
    cbow_loss_and_grad,
    embed_tokens,
    persist_model,
    remote_embed,
    restore_model,
    train_cbow,
)
from .errors import QuranSearchError
from .evalharness import EvalReport, TopicPrompt, load_topic_prompts, render_report, run_eval
from .index import (
    Hit,
    VectorIndex,
    build_index,
    cosine_similarity,
    persist_index,
    restore_index,
    search_top_k,
)
from .textnorm import NormalizationConfig, normalize_arabic, preprocess_document, tokenize

__version__ = "0.1.0"

__all__ = [
    "AlignedRow",
    "EmbeddingModel",
    "EvalReport",
    "Hit",
    "LocalCbowProvider",
    "NormalizationConfig",
    "QuranSearchError",
    "RemoteProvider",
    "TafsirEntry",
    "TopicPrompt",
    "TrainingConfig",
    "VectorIndex",
    "Verse",
    "VerseKey",
    "VerseRef",
    "Vocabulary",
    "align_tafsir_to_verses",
    "build_index",
    "build_vocabulary",
    "cbow_loss_and_grad",
    "cosine_similarity",
    "decode_verse_key",
    "embed_tokens",
    "encode_verse_key",
    "expand_verse_ref",
    "export_alignment_table",
    "import_alignment_table",
    "index_verses",
    "load_quran_text",
    "load_tafsir_corpus",
    "load_topic_index",
    "load_topic_prompts",
    "merge_topic_indexes",
    "normalize_arabic",
    "parse_verse_ref",
    "persist_index",
    "persist_model",
    "preprocess_document",
    "remote_embed",
    "render_report",
    "restore_index",
    "restore_model",
    "run_eval",
    "save_topic_index",
    "search_top_k",
    "tokenize",
    "train_cbow",
]
