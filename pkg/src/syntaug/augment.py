"""Eligibility detection and subject/object subtree swapping across bisentences."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .conllu import DepSentence, Token
from .deptree import (
    DEFAULT_LABELS,
    Relation,
    SubtreeSpan,
    find_relation_heads,
    is_contiguous,
    join_forms,
    sentence_text,
    span_of,
)

log = logging.getLogger(__name__)


class CapacityError(ValueError):
    """Not enough eligible pairs to generate the requested amount."""


@dataclass(frozen=True)
class ParsedBisentence:
    id: str
    source: DepSentence
    target: DepSentence
    subcorpus: str = ""


@dataclass(frozen=True)
class EligiblePair:
    base: ParsedBisentence
    src_subject: SubtreeSpan
    src_object: SubtreeSpan
    tgt_subject: SubtreeSpan
    tgt_object: SubtreeSpan

    def span(self, side: str, relation: Relation) -> SubtreeSpan:
        name = ("src_" if side == "source" else "tgt_") + relation.value
        return getattr(self, name)


@dataclass(frozen=True)
class SpanEdit:
    """Where a swap happened on one side, enough to undo it."""

    start: int  # 0-based position of the replaced span in the token sequence
    removed_forms: tuple[str, ...]
    inserted_count: int


@dataclass(frozen=True)
class Provenance:
    recipient_id: str
    donor_id: str
    strategy: Relation
    seed: int | None
    source_edit: SpanEdit
    target_edit: SpanEdit


@dataclass(frozen=True)
class AugmentedPair:
    source_text: str
    target_text: str
    source_tokens: tuple[str, ...]
    target_tokens: tuple[str, ...]
    provenance: Provenance
    flags: tuple[str, ...] = ()


def ineligibility_reasons(
    pair: ParsedBisentence,
    labels: dict[Relation, frozenset[str]] | None = None,
) -> list[str]:
    """Machine-readable reasons this pair cannot be used for swapping; empty if eligible."""
    labels = labels or DEFAULT_LABELS
    reasons: list[str] = []
    spans: dict[tuple[str, Relation], SubtreeSpan] = {}
    for side, sentence in (("source", pair.source), ("target", pair.target)):
        for relation in (Relation.SUBJECT, Relation.OBJECT):
            heads = find_relation_heads(sentence, relation, labels[relation])
            rel = relation.value + "s"
            if len(heads) == 0:
                reasons.append(f"zero-{rel}-{side}")
                continue
            if len(heads) > 1:
                reasons.append(f"multiple-{rel}-{side}")
                continue
            span = span_of(sentence, heads[0], relation)
            if not is_contiguous(span):
                reasons.append(f"discontiguous-{relation.value}-{side}")
                continue
            spans[(side, relation)] = span
    for side in ("source", "target"):
        subj = spans.get((side, Relation.SUBJECT))
        obj = spans.get((side, Relation.OBJECT))
        if subj and obj and set(subj.member_indices) & set(obj.member_indices):
            reasons.append(f"overlapping-spans-{side}")
    return reasons


def check_eligibility(
    pair: ParsedBisentence,
    labels: dict[Relation, frozenset[str]] | None = None,
) -> EligiblePair | None:
    if ineligibility_reasons(pair, labels):
        return None
    labels = labels or DEFAULT_LABELS
    spans = {}
    for side, sentence in (("src", pair.source), ("tgt", pair.target)):
        for relation in (Relation.SUBJECT, Relation.OBJECT):
            head = find_relation_heads(sentence, relation, labels[relation])[0]
            spans[f"{side}_{relation.value}"] = span_of(sentence, head, relation)
    return EligiblePair(base=pair, **spans)


def _splice(
    tokens: Sequence[Token],
    span: SubtreeSpan,
    donor_tokens: Sequence[Token],
) -> tuple[tuple[str, ...], str, SpanEdit]:
    start = span.member_indices[0] - 1
    end = span.member_indices[-1]  # exclusive, spans are contiguous
    removed = tokens[start:end]

    inserted: list[tuple[str, bool]] = []
    for pos, tok in enumerate(donor_tokens):
        form = tok.form
        if pos == 0 and start == 0 and form:
            form = form[0].upper() + form[1:]
        # last inserted token inherits the recipient span's trailing spacing
        space = tok.space_after if pos + 1 < len(donor_tokens) else removed[-1].space_after
        inserted.append((form, space))

    pairs = (
        [(t.form, t.space_after) for t in tokens[:start]]
        + inserted
        + [(t.form, t.space_after) for t in tokens[end:]]
    )
    forms = tuple(form for form, _ in pairs)
    edit = SpanEdit(
        start=start,
        removed_forms=tuple(t.form for t in removed),
        inserted_count=len(donor_tokens),
    )
    return forms, join_forms(pairs), edit


def swap(
    recipient: EligiblePair,
    donor: EligiblePair,
    strategy: Relation,
    seed: int | None = None,
) -> AugmentedPair:
    """Replace the recipient's strategy span with the donor's on both sides."""
    if recipient.base.id == donor.base.id:
        raise ValueError("recipient and donor must be distinct bisentences")
    results = {}
    edits = {}
    for side, sentence, donor_sentence in (
        ("source", recipient.base.source, donor.base.source),
        ("target", recipient.base.target, donor.base.target),
    ):
        r_span = recipient.span(side, strategy)
        d_span = donor.span(side, strategy)
        donor_tokens = [donor_sentence.token(i) for i in d_span.member_indices]
        forms, text, edit = _splice(sentence.tokens, r_span, donor_tokens)
        results[side] = (forms, text)
        edits[side] = edit
    return AugmentedPair(
        source_text=results["source"][1],
        target_text=results["target"][1],
        source_tokens=results["source"][0],
        target_tokens=results["target"][0],
        provenance=Provenance(
            recipient_id=recipient.base.id,
            donor_id=donor.base.id,
            strategy=strategy,
            seed=seed,
            source_edit=edits["source"],
            target_edit=edits["target"],
        ),
    )


def undo(aug: AugmentedPair) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Reverse a swap at the token level using the recorded edits."""
    out = []
    for forms, edit in (
        (aug.source_tokens, aug.provenance.source_edit),
        (aug.target_tokens, aug.provenance.target_edit),
    ):
        restored = forms[: edit.start] + edit.removed_forms + forms[edit.start + edit.inserted_count :]
        out.append(restored)
    return out[0], out[1]


def generate(
    eligible: Sequence[EligiblePair],
    count: int,
    strategy: Relation,
    seed: int,
    max_retries: int = 100,
) -> list[AugmentedPair]:
    """Sample (recipient, donor) pairs and swap, deterministically under `seed`.

    Exact duplicates of an original bisentence or of an earlier output are
    resampled; if retries run out the result is short and a warning is logged.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    if len(eligible) < 2:
        raise CapacityError(f"need at least 2 eligible pairs, have {len(eligible)}")

    seen = {(sentence_text(p.base.source), sentence_text(p.base.target)) for p in eligible}
    out: list[AugmentedPair] = []
    shortfall = 0
    for i in range(count):
        # per-output-index substream: results do not depend on scheduling
        rng = random.Random(f"{seed}:{i}")
        produced = None
        for _ in range(max_retries):
            r_idx = rng.randrange(len(eligible))
            d_idx = rng.randrange(len(eligible) - 1)
            if d_idx >= r_idx:
                d_idx += 1
            aug = swap(eligible[r_idx], eligible[d_idx], strategy, seed=seed)
            key = (aug.source_text, aug.target_text)
            if key not in seen:
                seen.add(key)
                produced = aug
                break
        if produced is None:
            shortfall += 1
        else:
            out.append(produced)
    if shortfall:
        log.warning("augmentation shortfall: produced %d of %d requested", len(out), count)
    return out


# small article/pronoun lexicons for the swap diagnostics
ARTICLES = {
    "en": {"definite": {"the"}, "indefinite": {"a", "an"}},
    "hu": {"definite": {"a", "az"}, "indefinite": {"egy"}},
}

PRONOUNS = {
    "en": {"i", "you", "he", "she", "it", "we", "they", "him", "her", "them", "us", "me"},
    "hu": {"én", "te", "ő", "mi", "ti", "ők", "őt", "őket", "engem", "téged", "minket"},
}


def _definiteness(form: str, lang: str) -> str | None:
    lowered = form.lower()
    for kind in ("definite", "indefinite"):
        if lowered in ARTICLES[lang][kind]:
            return kind
    return None


def _pronoun_only(sentence: DepSentence, span: SubtreeSpan, lang: str) -> bool:
    if len(span.member_indices) != 1:
        return False
    tok = sentence.token(span.member_indices[0])
    return tok.upos == "PRON" or tok.form.lower() in PRONOUNS[lang]


def diagnose(
    aug: AugmentedPair,
    recipient: EligiblePair,
    donor: EligiblePair,
    source_lang: str = "en",
    target_lang: str = "hu",
) -> list[str]:
    """Advisory risk flags for a swap; never used as a filter by default."""
    strategy = aug.provenance.strategy
    flags: list[str] = []
    sides = (
        ("source", recipient.base.source, donor.base.source, source_lang),
        ("target", recipient.base.target, donor.base.target, target_lang),
    )
    pronoun_only = {}
    for side, r_sentence, d_sentence, lang in sides:
        r_span = recipient.span(side, strategy)
        d_span = donor.span(side, strategy)
        r_def = _definiteness(r_sentence.token(r_span.member_indices[0]).form, lang)
        d_def = _definiteness(d_sentence.token(d_span.member_indices[0]).form, lang)
        if r_def and d_def and r_def != d_def:
            flags.append(f"definiteness-mismatch-{side}")
        pronoun_only[side] = (
            _pronoun_only(r_sentence, r_span, lang),
            _pronoun_only(d_sentence, d_span, lang),
        )
        if pronoun_only[side][1]:
            flags.append(f"pronoun-only-{side}")
    if strategy is Relation.SUBJECT:
        for side in ("source", "target"):
            r_pron, d_pron = pronoun_only[side]
            if r_pron != d_pron:
                flags.append("subject-person-mismatch")
                break
    return flags
