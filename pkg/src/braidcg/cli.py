"""Command-line entry point: ``braidcg <command> --n N [options]``."""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from . import verify
from .braid_core import BraidError
from .burau_rep import DEFAULT_WORD_CAP, LevelError, WordTooLong
from .group_closure import DEFAULT_CAP, GroupTooLarge, ProbeNotExhaustive

COMMANDS = ("arnold", "symquot", "abquot", "fivelem", "nonsplit", "crt", "symplectic", "burau")
EXIT_FAIL = 1
EXIT_USAGE = 2


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "braidcg"


def load_config(path: str | Path | None) -> dict[str, str]:
    """Read ``key = value`` lines (``#`` comments allowed) into a dict."""
    if path is None:
        path = os.environ.get("BRAIDCG_CONFIG")
    if not path or not Path(path).exists():
        return {}
    parser = configparser.ConfigParser()
    parser.read_string("[braidcg]\n" + Path(path).read_text(encoding="utf-8"))
    return {k: v.strip().strip('"') for k, v in parser["braidcg"].items()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="braidcg",
        description="Verify congruence-quotient theorems for braid groups via the integral Burau representation.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("--ell", type=int, default=None, help="level (odd for theorem commands)")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--length", type=int, default=verify.DEFAULT_LENGTH,
                   help="sampled word length, in alphabet letters")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--word", default=None, help='e.g. "1 -2 1"')
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--no-timing", action="store_true",
                   help="omit runtime so reports are byte-identical across runs")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise verify.PreconditionError(f"{args.command} requires {', '.join(missing)}")


def run(args: argparse.Namespace, config: dict[str, str]) -> tuple[dict[str, Any], bool]:
    cap = int(config.get("cap", DEFAULT_CAP))
    word_cap = int(config.get("word_cap", DEFAULT_WORD_CAP))
    if args.no_cache:
        cache_dir = None
    else:
        cache_dir = args.cache_dir or config.get("cache_dir") or default_cache_dir()
    samples = args.samples
    cmd = args.command
    common = {"seed": args.seed, "length": args.length}
    if samples is not None:
        common["samples"] = samples

    if cmd == "burau":
        _need(args, "word")
        if len(args.word.split()) > word_cap:
            raise WordTooLong(f"word longer than cap {word_cap}")
        return verify.burau_matrix(args.word, args.n, args.mod), True

    if cmd == "arnold":
        report = verify.verify_arnold(args.n, cache_dir=cache_dir, cap=cap, **common)
    elif cmd == "symquot":
        _need(args, "ell")
        report = verify.verify_symquot(args.n, args.ell, cache_dir=cache_dir, cap=cap, **common)
    elif cmd == "abquot":
        _need(args, "ell")
        report = verify.verify_abquot(args.n, args.ell, cache_dir=cache_dir, cap=cap, **common)
    elif cmd == "fivelem":
        _need(args, "ell")
        report = verify.verify_fivelem(args.n, args.ell, cache_dir=cache_dir, cap=cap)
    elif cmd == "nonsplit":
        report = verify.verify_nonsplit(args.n, cache_dir=cache_dir, cap=cap)
    elif cmd == "crt":
        _need(args, "a", "b")
        report = verify.verify_crt(args.n, args.a, args.b, **common)
    else:
        if samples is None:
            common["samples"] = 100
        report = verify.verify_symplectic(args.n, **common)
    return report.to_json(timing=not args.no_timing), report.passed


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config)
        doc, ok = run(args, config)
    except (
        verify.PreconditionError,
        BraidError,
        LevelError,
        WordTooLong,
        GroupTooLarge,
        ProbeNotExhaustive,
        ValueError,
    ) as exc:
        print(f"braidcg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
