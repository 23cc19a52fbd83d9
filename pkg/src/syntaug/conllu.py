"""Reading and writing dependency-annotated sentences in the CoNLL-U format.

Only FORM, UPOS, HEAD, DEPREL and the SpaceAfter flag are interpreted; the
remaining columns are preserved verbatim so that serialization round-trips.
Multiword-token range lines are consumed to set spacing of the covered
tokens, empty-node lines (``n.1``) are dropped and counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, TextIO


class ConlluError(ValueError):
    pass


class ConlluFormatError(ConlluError):
    """Malformed line layout (wrong column count, unparsable index)."""


class ConlluStructureError(ConlluError):
    """Well-formed lines that do not encode a valid single-rooted tree."""


def _misc_with_space_after(misc: str, space_after: bool) -> str:
    parts = [p for p in misc.split("|") if p and p != "_" and p != "SpaceAfter=No"]
    if not space_after:
        parts.append("SpaceAfter=No")
    return "|".join(parts) if parts else "_"


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    upos: str
    head: int
    deprel: str
    space_after: bool = True
    # pass-through columns, kept only for faithful serialization
    lemma: str = "_"
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: str = "_"

    def __post_init__(self):
        if self.index < 1:
            raise ConlluStructureError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ConlluStructureError(f"head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ConlluStructureError(f"token {self.index} is its own head")
        if not self.form:
            raise ConlluStructureError(f"token {self.index} has an empty form")
        # keep MISC consistent with space_after so round-trips are fixpoints
        object.__setattr__(self, "misc", _misc_with_space_after(self.misc, self.space_after))


@dataclass(frozen=True)
class DepSentence:
    tokens: tuple[Token, ...]
    sent_id: str | None = None
    text: str | None = None
    # raw comment lines, kept for faithful re-serialization only
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.tokens)
        indices = [t.index for t in self.tokens]
        if indices != list(range(1, n + 1)):
            raise ConlluStructureError(
                f"sentence {self.sent_id or '?'}: token indices are not 1..{n}: {indices}"
            )
        roots = [t.index for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise ConlluStructureError(
                f"sentence {self.sent_id or '?'}: expected exactly one root, found {len(roots)}"
            )
        heads = {t.index: t.head for t in self.tokens}
        for t in self.tokens:
            if t.head > n:
                raise ConlluStructureError(
                    f"sentence {self.sent_id or '?'}: token {t.index} has out-of-range head {t.head}"
                )
        for t in self.tokens:
            seen = set()
            node = t.index
            while node != 0:
                if node in seen:
                    raise ConlluStructureError(
                        f"sentence {self.sent_id or '?'}: head cycle through token {node}"
                    )
                seen.add(node)
                node = heads[node]

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise ValueError(f"token index {index} out of range 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    @property
    def root_index(self) -> int:
        return next(t.index for t in self.tokens if t.head == 0)


@dataclass
class ParseReport:
    sentences: int = 0
    skipped_sentences: int = 0
    dropped_empty_nodes: int = 0
    # 1-based ordinals of skipped sentence blocks, for realigning parallel files
    skipped_positions: list[int] = field(default_factory=list)

    @property
    def total_blocks(self) -> int:
        return self.sentences + self.skipped_sentences


def _iter_lines(source: str | TextIO | Iterable[str]) -> Iterable[str]:
    if isinstance(source, str):
        return source.splitlines()
    return source


def parse_conllu_with_report(
    source: str | TextIO | Iterable[str], lenient: bool = False
) -> tuple[list[DepSentence], ParseReport]:
    """Parse CoNLL-U text into DepSentences.

    In lenient mode, sentences failing tree validation are skipped and
    counted instead of raising.
    """
    report = ParseReport()
    sentences: list[DepSentence] = []

    comments: list[str] = []
    rows: list[Token] = []
    mwt_end: int | None = None  # last index covered by the pending multiword range
    mwt_space_after = True

    def flush(lineno: int):
        nonlocal comments, rows, mwt_end, mwt_space_after
        if not rows and not comments:
            return
        sent_id = None
        text = None
        for c in comments:
            if c.startswith("# sent_id"):
                _, _, value = c.partition("=")
                sent_id = value.strip()
            elif c.startswith("# text ") or c.startswith("# text="):
                _, _, value = c.partition("=")
                text = value.strip()
        try:
            sentences.append(
                DepSentence(
                    tokens=tuple(rows),
                    sent_id=sent_id,
                    text=text,
                    comments=tuple(comments),
                )
            )
            report.sentences += 1
        except ConlluStructureError:
            if not lenient:
                raise
            report.skipped_sentences += 1
            report.skipped_positions.append(report.total_blocks)
        comments = []
        rows = []
        mwt_end = None
        mwt_space_after = True

    lineno = 0
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluFormatError(
                f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}"
            )
        idx, form, lemma, upos, xpos, feats, head, deprel, deps, misc = cols
        if "." in idx:
            report.dropped_empty_nodes += 1
            continue
        if "-" in idx:
            try:
                start_s, end_s = idx.split("-")
                start, end = int(start_s), int(end_s)
            except ValueError as exc:
                raise ConlluFormatError(f"line {lineno}: bad token range {idx!r}") from exc
            mwt_end = end
            mwt_space_after = "SpaceAfter=No" not in misc
            continue
        try:
            index = int(idx)
        except ValueError as exc:
            raise ConlluFormatError(f"line {lineno}: bad token index {idx!r}") from exc
        try:
            head_i = int(head)
        except ValueError as exc:
            raise ConlluFormatError(f"line {lineno}: bad head {head!r}") from exc

        if mwt_end is not None and index <= mwt_end:
            # tokens inside a multiword surface form are not space-separated
            space_after = mwt_space_after if index == mwt_end else False
            if index == mwt_end:
                mwt_end = None
        else:
            space_after = "SpaceAfter=No" not in misc

        try:
            rows.append(
                Token(
                    index=index,
                    form=form,
                    upos=upos,
                    head=head_i,
                    deprel=deprel,
                    space_after=space_after,
                    lemma=lemma,
                    xpos=xpos,
                    feats=feats,
                    deps=deps,
                    misc=_misc_with_space_after(misc, space_after),
                )
            )
        except ConlluStructureError as exc:
            raise ConlluStructureError(f"line {lineno}: {exc}") from exc
    flush(lineno)
    return sentences, report


def parse_conllu(source: str | TextIO | Iterable[str], lenient: bool = False) -> list[DepSentence]:
    sentences, _ = parse_conllu_with_report(source, lenient=lenient)
    return sentences


def serialize_sentence(sentence: DepSentence) -> str:
    lines = list(sentence.comments)
    if sentence.sent_id is not None and not any(c.startswith("# sent_id") for c in lines):
        lines.insert(0, f"# sent_id = {sentence.sent_id}")
    if sentence.text is not None and not any(c.startswith("# text") for c in lines):
        lines.append(f"# text = {sentence.text}")
    for t in sentence.tokens:
        lines.append(
            "\t".join(
                [
                    str(t.index),
                    t.form,
                    t.lemma,
                    t.upos,
                    t.xpos,
                    t.feats,
                    str(t.head),
                    t.deprel,
                    t.deps,
                    _misc_with_space_after(t.misc, t.space_after),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def serialize_conllu(sentences: Iterable[DepSentence]) -> str:
    """Emit CoNLL-U text; each sentence block is terminated by a blank line."""
    return "".join(serialize_sentence(s) + "\n" for s in sentences)
