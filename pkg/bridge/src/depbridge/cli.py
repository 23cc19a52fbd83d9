import argparse
import json
import sys

from .backends import SetupError
from .bridge import BridgeConfig, parse_file


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="depbridge", description="Dependency parser bridge")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", help="parse a one-sentence-per-line file to CoNLL-U")
    p.add_argument("--lang", choices=["en", "hu"], required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--batch", type=int, default=32)
    p.add_argument("--backend", help="registry name (default: stanza for en, huspacy for hu)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = BridgeConfig(
        language=args.lang,
        input_path=args.input,
        output_path=args.output,
        batch_size=args.batch,
        backend=args.backend,
    )
    try:
        report = parse_file(cfg)
    except SetupError as exc:
        print(json.dumps({"error": "setup", "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return 3
    print(
        json.dumps(
            {"command": "parse", "lines": report.lines, "parsed": report.parsed, "failed": report.failed}
        )
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
