"""Tree algebra over DepSentence: subtree extraction, relation search,
contiguity testing and surface text reconstruction."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .conllu import DepSentence, Token


class Relation(Enum):
    SUBJECT = "subject"
    OBJECT = "object"


# conservative defaults: exact UD labels, no subtypes like nsubj:pass
DEFAULT_LABELS: dict[Relation, frozenset[str]] = {
    Relation.SUBJECT: frozenset({"nsubj"}),
    Relation.OBJECT: frozenset({"obj"}),
}


@dataclass(frozen=True)
class SubtreeSpan:
    relation: Relation
    head_index: int
    member_indices: tuple[int, ...]
    surface: str

    def __post_init__(self):
        members = self.member_indices
        if list(members) != sorted(set(members)):
            raise ValueError(f"member indices must be sorted and unique: {members}")
        if self.head_index not in members:
            raise ValueError(f"head {self.head_index} not among members {members}")


def children_map(sentence: DepSentence) -> dict[int, list[int]]:
    children: dict[int, list[int]] = {i: [] for i in range(len(sentence) + 1)}
    for t in sentence.tokens:
        children[t.head].append(t.index)
    return children


def descendants(sentence: DepSentence, index: int) -> set[int]:
    """Index plus every token whose head chain passes through it."""
    if not 1 <= index <= len(sentence):
        raise ValueError(f"token index {index} out of range 1..{len(sentence)}")
    children = children_map(sentence)
    result = set()
    stack = [index]
    while stack:
        node = stack.pop()
        result.add(node)
        stack.extend(children[node])
    return result


def find_relation_heads(
    sentence: DepSentence,
    relation: Relation,
    label_set: frozenset[str] | set[str] | None = None,
) -> list[int]:
    """Indices of tokens whose deprel matches the relation, in surface order."""
    labels = label_set if label_set is not None else DEFAULT_LABELS[relation]
    if not labels:
        raise ValueError("label_set must be non-empty")
    return [t.index for t in sentence.tokens if t.deprel in labels]


def join_forms(pairs: list[tuple[str, bool]]) -> str:
    """Detokenize (form, space_after) pairs; trailing spacing is dropped."""
    out: list[str] = []
    for form, space_after in pairs:
        out.append(form)
        if space_after:
            out.append(" ")
    return "".join(out).rstrip(" ")


def sentence_text(sentence: DepSentence) -> str:
    return join_forms([(t.form, t.space_after) for t in sentence.tokens])


def span_surface(sentence: DepSentence, member_indices: tuple[int, ...]) -> str:
    # inside a run of consecutive members the SpaceAfter flags apply;
    # across a gap a single space is emitted
    pairs = []
    for pos, idx in enumerate(member_indices):
        tok = sentence.token(idx)
        consecutive = pos + 1 < len(member_indices) and member_indices[pos + 1] == idx + 1
        pairs.append((tok.form, tok.space_after if consecutive else True))
    return join_forms(pairs)


def span_of(sentence: DepSentence, head_index: int, relation: Relation) -> SubtreeSpan:
    members = tuple(sorted(descendants(sentence, head_index)))
    return SubtreeSpan(
        relation=relation,
        head_index=head_index,
        member_indices=members,
        surface=span_surface(sentence, members),
    )


def is_contiguous(span: SubtreeSpan) -> bool:
    m = span.member_indices
    return m[-1] - m[0] + 1 == len(m)


def span_tokens(sentence: DepSentence, span: SubtreeSpan) -> list[Token]:
    return [sentence.token(i) for i in span.member_indices]
