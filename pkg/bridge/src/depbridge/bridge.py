"""Run a parser backend over a one-sentence-per-line file and emit CoNLL-U.

Line-count preservation is the contract: exactly one sentence block per
input line, in order, with `# sent_id` equal to the line number. A line the
backend fails on becomes a flagged placeholder block so alignment survives.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .backends import Backend, ParsedToken, get_backend

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BridgeConfig:
    language: str
    input_path: str
    output_path: str
    batch_size: int = 32
    backend: str | None = None  # registry name; None = language default

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


@dataclass
class BridgeReport:
    lines: int = 0
    parsed: int = 0
    failed: int = 0


def _placeholder(line: str) -> list[ParsedToken]:
    form = line.strip() or "_EMPTY_"
    return [ParsedToken(form.split()[0] if form.split() else "_EMPTY_", "X", 0, "root")]


def _render_block(line_number: int, text: str, tokens: list[ParsedToken], failed: bool) -> str:
    lines = [f"# sent_id = {line_number}", f"# text = {text}"]
    for i, tok in enumerate(tokens, start=1):
        misc_parts = []
        if not tok.space_after and i < len(tokens):
            misc_parts.append("SpaceAfter=No")
        if failed:
            misc_parts.append("ParseFailed=Yes")
        misc = "|".join(misc_parts) if misc_parts else "_"
        lines.append(
            "\t".join([str(i), tok.form, "_", tok.upos, "_", "_", str(tok.head), tok.deprel, "_", misc])
        )
    return "\n".join(lines) + "\n\n"


def parse_lines(
    lines: list[str], backend: Backend, batch_size: int = 32
) -> tuple[list[str], BridgeReport]:
    """CoNLL-U blocks for each input line, plus a parse report."""
    report = BridgeReport(lines=len(lines))
    blocks: list[str] = []
    for start in range(0, len(lines), batch_size):
        batch = lines[start : start + batch_size]
        try:
            parsed = backend.parse_batch(batch)
            if len(parsed) != len(batch):
                raise RuntimeError("backend returned a wrong-size batch")
        except Exception:
            # retry line by line so one bad sentence doesn't sink the batch
            parsed = []
            for line in batch:
                try:
                    parsed.append(backend.parse_batch([line])[0])
                except Exception:
                    parsed.append(None)
        for offset, tokens in enumerate(parsed):
            line_number = start + offset + 1
            line = batch[offset]
            failed = tokens is None or not tokens
            if failed:
                tokens = _placeholder(line)
                report.failed += 1
                log.warning("line %d: backend failed, emitting placeholder", line_number)
            else:
                report.parsed += 1
            blocks.append(_render_block(line_number, line, tokens, failed))
    return blocks, report


def parse_file(cfg: BridgeConfig, backend: Backend | None = None) -> BridgeReport:
    backend = backend or get_backend(cfg.language, cfg.backend)
    lines = Path(cfg.input_path).read_text(encoding="utf-8").splitlines()
    blocks, report = parse_lines(lines, backend, cfg.batch_size)
    Path(cfg.output_path).write_text("".join(blocks), encoding="utf-8", newline="\n")
    return report
