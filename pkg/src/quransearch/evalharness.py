"""Run labeled topic prompts against an index and tally the outcome.

For every (prompt, tafsir) pair the top-1 hit within that tafsir is
compared to the pre-registered gold labels: a hit on a High key counts as
accurate, a hit on a High or Medium key as acceptable. The rendered tables
mirror the per-topic layout "Tafsir | Cosine Similarity | Result | Actual
Relevancy" with scores at two decimals.
"""

import enum
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Verse, VerseKey, index_verses
from .errors import EmptyEmbeddingError, ParseError, QueryError
from .index import VectorIndex, rank_entries


class Relevancy(enum.Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"

    @classmethod
    def parse(cls, token: str) -> "Relevancy":
        for member in cls:
            if token.strip().casefold() == member.value.casefold():
                return member
        raise ParseError(f"unknown relevancy {token!r} (expected High|Medium|Low)")


@dataclass(frozen=True)
class GoldLabel:
    tafsir_id: str
    key: VerseKey
    relevancy: Relevancy


@dataclass
class TopicPrompt:
    topic: str
    prompt_text: str
    gold: list[GoldLabel]


@dataclass
class TopicResult:
    """Top-1 outcome for one (topic, tafsir) pair."""

    topic: str
    tafsir_id: str
    score: float | None
    key: VerseKey | None
    hit_relevancy: Relevancy | None
    accurate: bool
    acceptable: bool
    failed: bool = False  # prompt had no searchable terms


@dataclass
class TafsirTally:
    accurate_count: int = 0
    acceptable_count: int = 0


@dataclass
class EvalReport:
    model_name: str
    prompt_count: int
    per_tafsir: dict[str, TafsirTally] = field(default_factory=dict)
    rows: list[TopicResult] = field(default_factory=list)
    failed_prompts: list[str] = field(default_factory=list)


def load_topic_prompts(path: str | Path) -> list[TopicPrompt]:
    """Parse the tab-separated prompt file, one gold label per line.

    Line format: topic, prompt text, tafsir id, surah:ayah, relevancy.
    Lines of one topic must agree on the prompt text; a repeated
    (topic, tafsir, key) combination is rejected.
    """
    prompts: dict[str, TopicPrompt] = {}
    seen: set[tuple[str, str, int]] = set()
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 5:
                raise ParseError(f"{path}:{lineno}: expected 5 tab-separated fields")
            topic, prompt_text, tafsir_id, key_str, relevancy_str = parts
            topic = topic.strip()
            tafsir_id = tafsir_id.strip()
            if not topic or not tafsir_id:
                raise ParseError(f"{path}:{lineno}: empty topic or tafsir id")
            s_str, sep, a_str = key_str.strip().partition(":")
            if not sep or not s_str.isdigit() or not a_str.isdigit():
                raise ParseError(f"{path}:{lineno}: bad verse key {key_str!r}")
            key = VerseKey(int(s_str), int(a_str))
            relevancy = Relevancy.parse(relevancy_str)
            dedup = (topic, tafsir_id, key.encoded)
            if dedup in seen:
                raise ParseError(
                    f"{path}:{lineno}: duplicate gold row for {topic!r}/{tafsir_id}/{key}"
                )
            seen.add(dedup)
            if topic in prompts:
                if prompts[topic].prompt_text != prompt_text:
                    raise ParseError(
                        f"{path}:{lineno}: topic {topic!r} has conflicting prompt texts"
                    )
            else:
                prompts[topic] = TopicPrompt(topic, prompt_text, [])
            prompts[topic].gold.append(GoldLabel(tafsir_id, key, relevancy))
    return list(prompts.values())


def run_eval(
    prompts: list[TopicPrompt],
    index: VectorIndex,
    provider,
    quran: list[Verse] | dict[int, Verse] | None = None,
) -> EvalReport:
    """Retrieve top-1 per (prompt, tafsir) and tally accurate/acceptable.

    A prompt the provider cannot embed is recorded as not acceptable for
    every tafsir and flagged, but never aborts the run.
    """
    report = EvalReport(model_name=provider.name, prompt_count=len(prompts))
    tafsir_ids = sorted(index.tafsir_ids())
    for tid in tafsir_ids:
        report.per_tafsir[tid] = TafsirTally()

    for prompt in prompts:
        try:
            query_vector = provider.embed(prompt.prompt_text)
        except EmptyEmbeddingError:
            report.failed_prompts.append(prompt.topic)
            for tid in tafsir_ids:
                report.rows.append(
                    TopicResult(
                        topic=prompt.topic,
                        tafsir_id=tid,
                        score=None,
                        key=None,
                        hit_relevancy=None,
                        accurate=False,
                        acceptable=False,
                        failed=True,
                    )
                )
            continue
        gold_by_tafsir: dict[str, dict[int, Relevancy]] = {}
        for label in prompt.gold:
            gold_by_tafsir.setdefault(label.tafsir_id, {})[label.key.encoded] = (
                label.relevancy
            )
        for tid in tafsir_ids:
            top = rank_entries(index, query_vector, k=1, tafsir_filter={tid})
            entry, score = top[0]
            labels = gold_by_tafsir.get(tid, {})
            hit_relevancy = labels.get(entry.key.encoded)
            accurate = hit_relevancy is Relevancy.HIGH
            acceptable = hit_relevancy in (Relevancy.HIGH, Relevancy.MEDIUM)
            tally = report.per_tafsir[tid]
            tally.accurate_count += int(accurate)
            tally.acceptable_count += int(acceptable)
            report.rows.append(
                TopicResult(
                    topic=prompt.topic,
                    tafsir_id=tid,
                    score=score,
                    key=entry.key,
                    hit_relevancy=hit_relevancy,
                    accurate=accurate,
                    acceptable=acceptable,
                )
            )
    return report


_TOPIC_HEADER = ["Tafsir", "Cosine Similarity", "Result", "Actual Relevancy"]
_SUMMARY_HEADER = ["Model", "Tafsir", "Accurate", "Acceptable"]


def _result_cells(row: TopicResult) -> list[str]:
    if row.failed:
        return [row.tafsir_id, "-", "-", "no searchable terms"]
    return [
        row.tafsir_id,
        f"{row.score:.2f}",
        str(row.key),
        row.hit_relevancy.value if row.hit_relevancy else "-",
    ]


def _topics_in_order(report: EvalReport) -> list[str]:
    seen: dict[str, None] = {}
    for row in report.rows:
        seen.setdefault(row.topic, None)
    return list(seen)


def render_report(report: EvalReport, format: str = "text-table") -> str:
    """Render per-topic tables plus the per-model summary.

    "text-table" pads columns for reading; "delimited" emits tab-separated
    rows with explicit topic and header lines for machine consumption.
    """
    if format not in ("text-table", "delimited"):
        raise ValueError(f"unknown report format {format!r}")
    topics = _topics_in_order(report)
    rows_by_topic: dict[str, list[TopicResult]] = {t: [] for t in topics}
    for row in report.rows:
        rows_by_topic[row.topic].append(row)

    if format == "delimited":
        lines = ["\t".join(["Topic"] + _TOPIC_HEADER)]
        for topic in topics:
            for row in rows_by_topic[topic]:
                lines.append("\t".join([topic] + _result_cells(row)))
        lines.append("")
        lines.append("\t".join(_SUMMARY_HEADER))
        for tid, tally in sorted(report.per_tafsir.items()):
            lines.append(
                "\t".join(
                    [
                        report.model_name,
                        tid,
                        str(tally.accurate_count),
                        str(tally.acceptable_count),
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    lines = []
    for topic in topics:
        lines.append(f"Topic: {topic}")
        table = [_TOPIC_HEADER] + [_result_cells(r) for r in rows_by_topic[topic]]
        widths = [max(len(row[i]) for row in table) for i in range(len(_TOPIC_HEADER))]
        for row in table:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        lines.append("")
    lines.append(f"Summary for model {report.model_name}")
    table = [_SUMMARY_HEADER[1:]] + [
        [tid, str(t.accurate_count), str(t.acceptable_count)]
        for tid, t in sorted(report.per_tafsir.items())
    ]
    widths = [max(len(row[i]) for row in table) for i in range(3)]
    for row in table:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    if report.failed_prompts:
        lines.append("")
        lines.append("Prompts with no searchable terms: " + ", ".join(report.failed_prompts))
    return "\n".join(lines) + "\n"
