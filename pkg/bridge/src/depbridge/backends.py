"""Parser backends and their registry.

The neural backends (Stanza for English, HuSpacy for Hungarian) need their
models installed locally; the `rule` backend is a deterministic offline
fallback mainly used for tests and smoke runs. All backends receive one
pre-tokenized-or-raw sentence per line and must never re-split sentences.
"""

from __future__ import annotations

from typing import Callable, NamedTuple, Protocol

# pinned backend versions; parse drift silently changes eligibility rates
PINNED_BACKENDS = {
    "en": ("stanza", "1.8.2", "en"),
    "hu": ("huspacy", "0.12.0", "hu_core_news_lg"),
}


class SetupError(RuntimeError):
    """A backend or its model is not available locally."""


class ParsedToken(NamedTuple):
    form: str
    upos: str
    head: int  # 0 = root
    deprel: str
    space_after: bool = True


class Backend(Protocol):
    def parse_batch(self, lines: list[str]) -> list[list[ParsedToken]]: ...


class StanzaBackend:
    """English parsing via Stanza, tokenize_pretokenized to keep alignment."""

    def __init__(self):
        try:
            import stanza
        except ImportError as exc:
            raise SetupError(
                "stanza is not installed; run `pip install stanza==1.8.2` and "
                "`python -c \"import stanza; stanza.download('en')\"`"
            ) from exc
        try:
            self._pipeline = stanza.Pipeline(
                "en",
                processors="tokenize,pos,lemma,depparse",
                tokenize_pretokenized=False,
                tokenize_no_ssplit=True,
                download_method=None,
            )
        except Exception as exc:
            raise SetupError(
                "stanza English model missing; run "
                "`python -c \"import stanza; stanza.download('en')\"`"
            ) from exc

    def parse_batch(self, lines: list[str]) -> list[list[ParsedToken]]:
        out = []
        for line in lines:
            doc = self._pipeline(line)
            words = [w for sent in doc.sentences for w in sent.words]
            out.append(
                [
                    ParsedToken(w.text, w.upos or "X", w.head, w.deprel or "dep")
                    for w in words
                ]
            )
        return out


class HuSpacyBackend:
    """Hungarian parsing via the HuSpacy model."""

    def __init__(self):
        try:
            import huspacy
        except ImportError as exc:
            raise SetupError(
                "huspacy is not installed; run `pip install huspacy==0.12.0` and "
                "`python -c \"import huspacy; huspacy.download()\"`"
            ) from exc
        try:
            self._nlp = huspacy.load()
        except Exception as exc:
            raise SetupError(
                "HuSpacy model missing; run `python -c \"import huspacy; huspacy.download()\"`"
            ) from exc

    def parse_batch(self, lines: list[str]) -> list[list[ParsedToken]]:
        out = []
        for doc in self._nlp.pipe(lines):
            tokens = []
            by_token = {t: i + 1 for i, t in enumerate(doc)}
            for t in doc:
                head = 0 if t.head is t else by_token[t.head]
                deprel = "root" if head == 0 else t.dep_.lower()
                tokens.append(ParsedToken(t.text, t.pos_ or "X", head, deprel, not t.whitespace_ == ""))
            out.append(tokens)
        return out


# --- deterministic rule-based fallback ------------------------------------

_LEXICON = {
    "en": {
        "det": {"the", "a", "an"},
        "aux": {"is", "are", "was", "were", "has", "have", "had", "will", "shall"},
        "adj": {"black", "red", "delicious", "big", "small", "old", "young", "green",
                "fast", "slow", "happy", "angry", "quiet", "loud", "tasty", "fresh"},
        "verb": {"chasing", "cooking", "eating", "watching", "reading", "building",
                 "painting", "saw", "fed", "checked", "found", "likes", "wants",
                 "holds", "carries", "writes", "sings"},
        "pron": {"he", "she", "it", "they", "we", "i", "you"},
    },
    "hu": {
        "det": {"a", "az", "egy"},
        "aux": set(),
        "adj": {"fekete", "piros", "finom", "nagy", "kicsi", "öreg", "fiatal", "zöld",
                "gyors", "lassú", "boldog", "mérges", "csendes", "hangos", "ízletes", "friss"},
        "verb": {"kergeti", "főz", "eszi", "nézi", "olvassa", "építi", "festi",
                 "látta", "etette", "ellenőrizte", "találta", "szereti", "akarja",
                 "tartja", "viszi", "írja", "énekli"},
        "pron": {"ő", "ők", "én", "te", "mi", "ti"},
    },
}

_PUNCT = ".,!?;:"


class RuleBackend:
    """Lexicon-driven heuristic parser producing valid single-rooted trees.

    Deterministic and dependency-free; good enough for pipeline smoke tests,
    not for real eligibility statistics.
    """

    def __init__(self, language: str):
        if language not in _LEXICON:
            raise SetupError(f"rule backend supports en/hu, not {language!r}")
        self._language = language
        self._lex = _LEXICON[language]

    def _tokenize(self, line: str) -> list[tuple[str, bool]]:
        tokens: list[tuple[str, bool]] = []
        for chunk in line.split():
            trailing = []
            while chunk and chunk[-1] in _PUNCT:
                trailing.append(chunk[-1])
                chunk = chunk[:-1]
            if chunk:
                tokens.append((chunk, not trailing))
            for pos, p in enumerate(reversed(trailing)):
                tokens.append((p, pos + 1 < len(trailing)))
        if tokens:
            tokens[-1] = (tokens[-1][0], True)
        return tokens

    def _tag(self, form: str, first: bool) -> str:
        lowered = form.lower()
        if form in _PUNCT:
            return "PUNCT"
        if lowered in self._lex["det"]:
            return "DET"
        if lowered in self._lex["adj"]:
            return "ADJ"
        if lowered in self._lex["aux"]:
            return "AUX"
        if lowered in self._lex["verb"]:
            return "VERB"
        if lowered in self._lex["pron"]:
            return "PRON"
        if form[:1].isupper() and not first:
            return "PROPN"
        return "NOUN"

    def _parse_line(self, line: str) -> list[ParsedToken]:
        toks = self._tokenize(line)
        if not toks:
            return []
        n = len(toks)
        tags = [self._tag(form, i == 0) for i, (form, _) in enumerate(toks)]
        # treat a capitalized unknown first word as PROPN if followed by PROPN
        if tags[0] == "NOUN" and toks[0][0][:1].isupper() and n > 1 and tags[1] == "PROPN":
            tags[0] = "PROPN"

        nominal = {"NOUN", "PROPN", "PRON"}
        verb_positions = [i for i, t in enumerate(tags) if t == "VERB"]

        # noun-phrase chunks: maximal runs of determiners/adjectives/nominals
        chunks: list[list[int]] = []
        current: list[int] = []
        for i, tag in enumerate(tags):
            if tag in nominal or tag in ("DET", "ADJ"):
                # a determiner opens a fresh noun phrase
                if tag == "DET" and current:
                    chunks.append(current)
                    current = []
                current.append(i)
            elif current:
                chunks.append(current)
                current = []
        if current:
            chunks.append(current)
        chunks = [c for c in chunks if any(tags[i] in nominal for i in c)]

        def chunk_head(chunk: list[int]) -> int:
            nominals = [i for i in chunk if tags[i] in nominal]
            if tags[nominals[0]] == "PROPN":
                return nominals[0]  # name runs are head-initial (flat)
            return nominals[-1]

        if verb_positions:
            root = verb_positions[0]
        elif chunks:
            root = chunk_head(chunks[0])
        else:
            root = 0

        heads = [root + 1] * n
        deprels = ["dep"] * n
        heads[root] = 0
        deprels[root] = "root"

        pre = [c for c in chunks if chunk_head(c) < root]
        post = [c for c in chunks if chunk_head(c) > root]
        if verb_positions and self._language == "hu" and not post and len(pre) >= 2:
            # SOV clause: the chunk nearest the verb is the object
            pre_roles = ["obj", "nsubj"] + ["obl"] * (len(pre) - 2)
        elif verb_positions:
            pre_roles = ["nsubj"] + ["obl"] * max(0, len(pre) - 1)
        else:
            pre_roles = ["obl"] * len(pre)
        for role, chunk in zip(pre_roles, reversed(pre)):
            _attach_chunk(chunk, chunk_head(chunk), role, root, tags, heads, deprels, nominal)
        for rank, chunk in enumerate(post):
            if chunk_head(chunk) == root:
                continue
            role = "obj" if rank == 0 and verb_positions else "obl"
            _attach_chunk(chunk, chunk_head(chunk), role, root, tags, heads, deprels, nominal)

        for i, tag in enumerate(tags):
            if i == root:
                continue
            if tag == "AUX":
                deprels[i] = "aux"
            elif tag == "PUNCT":
                deprels[i] = "punct"

        return [
            ParsedToken(toks[i][0], tags[i], heads[i], deprels[i], toks[i][1])
            for i in range(n)
        ]

    def parse_batch(self, lines: list[str]) -> list[list[ParsedToken]]:
        return [self._parse_line(line) for line in lines]


def _attach_chunk(chunk, head, role, root, tags, heads, deprels, nominal):
    if head != root:
        heads[head] = root + 1
        deprels[head] = role
    for i in chunk:
        if i == head:
            continue
        if tags[i] == "DET":
            deprels[i] = "det"
            heads[i] = head + 1
        elif tags[i] == "ADJ":
            deprels[i] = "amod"
            heads[i] = head + 1
        elif tags[i] in nominal:
            deprels[i] = "flat" if i > head else "compound"
            heads[i] = head + 1


_REGISTRY: dict[tuple[str, str], Callable[[], Backend]] = {
    ("en", "stanza"): StanzaBackend,
    ("hu", "huspacy"): HuSpacyBackend,
    ("en", "rule"): lambda: RuleBackend("en"),
    ("hu", "rule"): lambda: RuleBackend("hu"),
}

DEFAULT_BACKENDS = {"en": "stanza", "hu": "huspacy"}


def register_backend(language: str, name: str, factory: Callable[[], Backend]) -> None:
    _REGISTRY[(language, name)] = factory


def get_backend(language: str, name: str | None = None) -> Backend:
    name = name or DEFAULT_BACKENDS.get(language)
    if name is None or (language, name) not in _REGISTRY:
        raise SetupError(f"no registered backend for language {language!r} (name={name!r})")
    return _REGISTRY[(language, name)]()
