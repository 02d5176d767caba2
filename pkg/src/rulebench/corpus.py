"""Corpus ingestion: text normalization, tokenization and highlight import.

Every offset in this package is a *character* offset into a document's
normalized text. Normalization is Unicode NFC followed by lowercasing;
diacritics are preserved ('métastase' stays distinct from 'metastase').
Tokens are maximal runs of Unicode letters or digits; every other
character is a separator. There is no stemming and no stop-word removal,
so token statistics are exactly reproducible from the text.

Highlights are standoff records: (doc, entity, start, end, text) with
offsets into the normalized text. The import step verifies each record's
stored text against the document so offset drift is caught eagerly.
"""

from __future__ import annotations

import json
import re
import unicodedata
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

_TOKEN_RE = re.compile(r"[^\W_]+")  # Unicode letters/digits, underscore excluded


class CorpusError(Exception):
    """Fatal problem with the corpus directory or the highlight file."""


def normalize_text(text: str) -> str:
    """NFC-normalize then lowercase. Diacritics are kept."""
    return unicodedata.normalize("NFC", text).lower()


def token_spans(text: str) -> list[tuple[int, int]]:
    """(start, end) character span of every token, left to right."""
    return [m.span() for m in _TOKEN_RE.finditer(text)]


def tokens_of(text: str) -> list[str]:
    """Token strings of ``text`` (assumed already normalized)."""
    return _TOKEN_RE.findall(text)


@dataclass
class Document:
    """One corpus file with its normalized text and token index."""

    doc_id: str
    raw_text: str
    norm_text: str
    token_spans: list[tuple[int, int]]

    def __post_init__(self) -> None:
        self._starts = [s for s, _ in self.token_spans]
        self._ends = [e for _, e in self.token_spans]
        self._start_set = frozenset(self._starts)

    @classmethod
    def build(cls, doc_id: str, raw_text: str) -> "Document":
        norm = normalize_text(raw_text)
        return cls(doc_id, raw_text, norm, token_spans(norm))

    def tokens(self) -> list[str]:
        return [self.norm_text[s:e] for s, e in self.token_spans]

    def is_token_start(self, pos: int) -> bool:
        return pos in self._start_set

    def splits_token(self, pos: int) -> bool:
        """True when ``pos`` falls strictly inside a token."""
        i = bisect_right(self._starts, pos) - 1
        return i >= 0 and self._starts[i] < pos < self._ends[i]


def find_occurrences(doc: Document, literal: str, *, whole_word: bool = False) -> list[tuple[int, int]]:
    """Spans where ``literal`` occurs starting at a token boundary.

    Prefix semantics: the occurrence may end mid-token, so 'tumeur' also
    hits 'tumeurs'. With ``whole_word`` the end must not cut a token.
    ``literal`` must already be normalized; a literal that starts with a
    separator character can never sit on a token boundary and yields
    nothing.
    """
    if not literal:
        return []
    text = doc.norm_text
    out: list[tuple[int, int]] = []
    pos = text.find(literal)
    while pos != -1:
        end = pos + len(literal)
        if doc.is_token_start(pos) and not (whole_word and doc.splits_token(end)):
            out.append((pos, end))
        pos = text.find(literal, pos + 1)
    return out


class Corpus:
    """Immutable document set, deterministically ordered by doc_id."""

    def __init__(self, documents: Iterable[Document]):
        docs = sorted(documents, key=lambda d: d.doc_id)
        self._docs: dict[str, Document] = {}
        for d in docs:
            if d.doc_id in self._docs:
                raise CorpusError(f"duplicate doc_id {d.doc_id!r}")
            self._docs[d.doc_id] = d

    @classmethod
    def load(cls, dir_path) -> "Corpus":
        """Read every ``*.txt`` file of a directory as one document each."""
        path = Path(dir_path)
        if not path.is_dir():
            raise CorpusError(f"corpus directory not found: {path}")
        files = sorted(p for p in path.iterdir() if p.is_file() and p.suffix == ".txt")
        if not files:
            raise CorpusError("empty corpus")
        docs = []
        for p in files:
            try:
                raw = p.read_text(encoding="utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(f"file {p.name} is not valid UTF-8: {exc}") from exc
            docs.append(Document.build(p.name, raw))
        return cls(docs)

    @classmethod
    def from_texts(cls, texts: Mapping[str, str]) -> "Corpus":
        """Build a corpus from in-memory texts (tests, embedding callers)."""
        return cls(Document.build(doc_id, raw) for doc_id, raw in texts.items())

    def __iter__(self) -> Iterator[Document]:
        return iter(self._docs.values())

    def __len__(self) -> int:
        return len(self._docs)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def __getitem__(self, doc_id: str) -> Document:
        try:
            return self._docs[doc_id]
        except KeyError:
            raise CorpusError(f"unknown doc_id {doc_id!r}") from None

    def get(self, doc_id: str) -> Optional[Document]:
        return self._docs.get(doc_id)

    @property
    def doc_ids(self) -> list[str]:
        return list(self._docs)


@dataclass(frozen=True)
class HighlightSpan:
    """Expert-marked span of one entity, in normalized-text coordinates."""

    doc_id: str
    entity: str
    start: int
    end: int
    surface: str

    def overlaps(self, start: int, end: int) -> bool:
        return self.start < end and start < self.end


@dataclass(frozen=True)
class EntityCatalog:
    """Entity names with their highlight counts."""

    counts: Mapping[str, int]

    @classmethod
    def of(cls, highlights: Iterable[HighlightSpan]) -> "EntityCatalog":
        return cls(dict(Counter(h.entity for h in highlights)))

    @property
    def entities(self) -> list[str]:
        return sorted(self.counts)

    def count(self, entity: str) -> int:
        return self.counts.get(entity, 0)

    def __contains__(self, entity: str) -> bool:
        return entity in self.counts


@dataclass(frozen=True)
class RejectedRecord:
    line_no: int
    reason: str
    record: str


@dataclass
class ImportResult:
    highlights: list[HighlightSpan]
    catalog: EntityCatalog
    rejected: list[RejectedRecord]

    @property
    def ok(self) -> bool:
        return not self.rejected


def _field(rec: dict, name: str, kind: type):
    value = rec.get(name)
    if type(value) is not kind:
        raise ValueError(f"field {name!r} missing or not {kind.__name__}")
    return value


def import_highlights(file_path, corpus: Corpus) -> ImportResult:
    """Read a JSON-Lines highlight file against a loaded corpus.

    One object per line: {"doc", "entity", "start", "end", "text"} with
    character offsets into the normalized document text. Bad records are
    rejected individually with a reason; good records are kept, so a
    single drifted offset does not kill the whole import.
    """
    path = Path(file_path)
    if not path.is_file():
        raise CorpusError(f"highlight file not found: {path}")

    highlights: list[HighlightSpan] = []
    rejected: list[RejectedRecord] = []
    seen: set[tuple[str, str, int, int]] = set()

    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                if not isinstance(rec, dict):
                    raise ValueError("record is not an object")
                doc_id = _field(rec, "doc", str)
                entity = _field(rec, "entity", str)
                start = _field(rec, "start", int)
                end = _field(rec, "end", int)
                text = _field(rec, "text", str)
            except (json.JSONDecodeError, ValueError) as exc:
                rejected.append(RejectedRecord(line_no, f"invalid record: {exc}", line))
                continue

            doc = corpus.get(doc_id)
            if doc is None:
                rejected.append(RejectedRecord(line_no, f"unknown doc_id {doc_id!r}", line))
                continue
            if not (0 <= start < end <= len(doc.norm_text)):
                rejected.append(RejectedRecord(line_no, "span out of bounds", line))
                continue
            surface = doc.norm_text[start:end]
            if normalize_text(text) != surface:
                rejected.append(
                    RejectedRecord(line_no, f"surface mismatch: expected {surface!r}", line)
                )
                continue
            key = (doc_id, entity, start, end)
            if key in seen:
                rejected.append(RejectedRecord(line_no, "duplicate highlight", line))
                continue
            seen.add(key)
            highlights.append(HighlightSpan(doc_id, entity, start, end, surface))

    return ImportResult(highlights, EntityCatalog.of(highlights), rejected)


def token_window(doc: Document, center: int, n_before: int, n_after: int) -> tuple[str, str]:
    """Up to ``n`` whole tokens of context on each side of an offset.

    Windows are slices of the normalized text (separators included) so
    they read like the original passage. Truncates silently at document
    edges. When ``center`` sits inside a token, the remainder of that
    token is part of the after-window but does not count toward it.
    """
    if not 0 <= center <= len(doc.norm_text):
        raise ValueError(f"center {center} out of bounds for {doc.doc_id!r}")
    if n_before < 0 or n_after < 0:
        raise ValueError("window sizes must be >= 0")

    before = ""
    if n_before:
        i = bisect_right(doc._ends, center)  # tokens ending at or before center
        lo = max(0, i - n_before)
        if i > lo:
            before = doc.norm_text[doc._starts[lo]:center]

    after = ""
    if n_after:
        j = bisect_left(doc._starts, center)  # tokens starting at or after center
        hi = min(len(doc._starts), j + n_after)
        if hi > j:
            after = doc.norm_text[center:doc._ends[hi - 1]]

    return before, after
