"""End-to-end driver: ingest a source tree, run the pipeline, emit clone pairs.

Pipeline: lex -> filter -> rank -> bag -> index -> detect -> emit.  Output is
deterministic: identical inputs and configuration produce byte-identical pair
files regardless of worker count.

Exit codes: 0 success (including zero clones), 2 no matching input files,
3 output failure, 4 bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import CodeBlock, TokenizedBlock, build_corpus, dump_rank
from .detect import ClonePair, detect_clones
from .index import create_partial_index
from .lexer import Granularity, Language, SourceFile, extract_blocks, tokenize
from .oracle import naive_detect, prefix_only_detect
from .stats import RunStats, append_csv_row

DEFAULT_GLOBS = {Language.JAVA: ("*.java",), Language.CFAMILY: ("*.c", "*.h")}

EXIT_OK = 0
EXIT_EMPTY_INPUT = 2
EXIT_OUTPUT_FAILURE = 3
EXIT_BAD_CONFIG = 4


@dataclass
class Config:
    input_dir: Path
    language: Language = Language.JAVA
    granularity: Granularity = Granularity.FUNCTION
    theta: int = 70  # integer percent
    min_lines: int = 6
    min_tokens: int = 1
    engine: str = "full"  # full | prefix-only | naive
    workers: int = 1
    output: Path | None = None  # None -> stdout
    stats_json: Path | None = None
    stats_csv: Path | None = None
    header: bool = False
    dump_blocks: Path | None = None
    dump_rank_path: Path | None = None
    globs: tuple[str, ...] = field(default_factory=tuple)  # empty -> language default

    def validate(self) -> str | None:
        if not 1 <= self.theta <= 100:
            return f"theta must be in 1..100, got {self.theta}"
        if self.min_lines < 0:
            return f"min-lines must be >= 0, got {self.min_lines}"
        if self.min_tokens < 0:
            return f"min-tokens must be >= 0, got {self.min_tokens}"
        if self.workers < 1:
            return f"workers must be >= 1, got {self.workers}"
        if self.engine not in ("full", "prefix-only", "naive"):
            return f"unknown engine: {self.engine}"
        return None


def collect_files(config: Config) -> list[Path]:
    """Matching files under the input tree, sorted by relative path."""
    globs = config.globs or DEFAULT_GLOBS[config.language]
    found: set[Path] = set()
    for pattern in globs:
        found.update(p for p in config.input_dir.rglob(pattern) if p.is_file())
    return sorted(found, key=lambda p: p.relative_to(config.input_dir).as_posix())


def lex_tree(config: Config, warnings: list[str]) -> list[TokenizedBlock]:
    blocks: list[TokenizedBlock] = []
    for path in collect_files(config):
        rel = path.relative_to(config.input_dir)
        try:
            src = SourceFile.read(path, config.language)
        except OSError as exc:
            warnings.append(f"{rel}: unreadable, skipped ({exc})")
            continue
        src = SourceFile(Path(rel), src.language, src.content)
        for raw in extract_blocks(src, config.granularity, warnings):
            tokens = tuple(t.text for t in tokenize(raw, config.language, warnings))
            blocks.append(TokenizedBlock(raw.file, raw.start_line, raw.end_line, tokens))
    return blocks


def emit_pairs(
    pairs: Sequence[ClonePair],
    blocks: Sequence[CodeBlock],
    out,
    header: bool = False,
) -> None:
    """Write one CSV line per pair: fileA,startA,endA,fileB,startB,endB,matched,ct."""
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(
            ["fileA", "startA", "endA", "fileB", "startB", "endB", "matched", "ct"]
        )
    for pair in pairs:
        a = blocks[pair.block_a]
        b = blocks[pair.block_b]
        writer.writerow(
            [
                a.file.as_posix(),
                a.start_line,
                a.end_line,
                b.file.as_posix(),
                b.start_line,
                b.end_line,
                pair.matched,
                pair.threshold_used,
            ]
        )


def _dump_blocks_text(blocks: Sequence[CodeBlock], rank) -> str:
    lines = []
    for b in blocks:
        bag = " ".join(f"{rank.texts[t]}:{f}" for t, f in b.bag.entries)
        lines.append(f"{b.file.as_posix()},{b.start_line},{b.end_line},{bag}\n")
    return "".join(lines)


def run(config: Config) -> int:
    """Execute the full pipeline for one configuration."""
    problem = config.validate()
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_BAD_CONFIG

    if not config.input_dir.is_dir():
        print(f"error: no such input directory: {config.input_dir}", file=sys.stderr)
        return EXIT_EMPTY_INPUT
    if not collect_files(config):
        print(f"error: no matching files under {config.input_dir}", file=sys.stderr)
        return EXIT_EMPTY_INPUT

    warnings: list[str] = []
    stats = RunStats()

    t0 = time.perf_counter()
    lexed = lex_tree(config, warnings)
    stats.time_phase("lex", (time.perf_counter() - t0) * 1000)

    t0 = time.perf_counter()
    blocks, rank = build_corpus(lexed, config.min_lines, config.min_tokens)
    stats.time_phase("rank", (time.perf_counter() - t0) * 1000)

    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)

    try:
        pairs = _detect(config, blocks, stats)
        stats.check_funnel()
        _write_outputs(config, pairs, blocks, rank, stats)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_OUTPUT_FAILURE
    return EXIT_OK


def _detect(config: Config, blocks, stats: RunStats) -> list[ClonePair]:
    n = len(blocks)
    t0 = time.perf_counter()
    if config.engine == "full":
        index = create_partial_index(blocks, config.theta)
        stats.time_phase("index", (time.perf_counter() - t0) * 1000)
        t0 = time.perf_counter()
        pairs = detect_clones(
            blocks, index, config.theta, workers=config.workers, stats=stats
        )
    elif config.engine == "prefix-only":
        stats.blocks = n
        stats.naive_pairs = n * (n - 1) // 2
        pairs, candidates = prefix_only_detect(blocks, config.theta)
        # No positional filtering: every size survivor reaches verification.
        stats.candidates_after_prefix = candidates
        stats.candidates_after_size = candidates
        stats.candidates_after_position = candidates
        stats.verified_pairs = candidates
        stats.clone_pairs = len(pairs)
    else:  # naive
        stats.blocks = n
        stats.naive_pairs = n * (n - 1) // 2
        pairs = naive_detect(blocks, config.theta)
        stats.candidates_after_prefix = stats.naive_pairs
        stats.candidates_after_size = stats.naive_pairs
        stats.candidates_after_position = stats.naive_pairs
        stats.verified_pairs = stats.naive_pairs
        stats.clone_pairs = len(pairs)
    stats.time_phase("detect", (time.perf_counter() - t0) * 1000)
    return pairs


def _write_outputs(config: Config, pairs, blocks, rank, stats: RunStats) -> None:
    if config.dump_blocks is not None:
        config.dump_blocks.write_text(_dump_blocks_text(blocks, rank), encoding="utf-8")
    if config.dump_rank_path is not None:
        config.dump_rank_path.write_text(dump_rank(rank), encoding="utf-8")
    if config.output is None:
        emit_pairs(pairs, blocks, sys.stdout, config.header)
    else:
        with config.output.open("w", encoding="utf-8", newline="") as fh:
            emit_pairs(pairs, blocks, fh, config.header)
    if config.stats_json is not None:
        stats.write_json(config.stats_json)
    if config.stats_csv is not None:
        append_csv_row(stats, config.theta, config.stats_csv)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; bad configuration is exit 4 here.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="clonesieve",
        description="Detect function-level code clones by token-bag overlap.",
    )
    parser.add_argument("--dir", required=True, type=Path, help="input source directory")
    parser.add_argument("--lang", choices=["java", "c"], default="java")
    parser.add_argument("--granularity", choices=["function", "file"], default="function")
    parser.add_argument("--theta", type=int, default=70, metavar="1..100",
                        help="similarity threshold, integer percent (default 70)")
    parser.add_argument("--min-lines", type=int, default=6, help="minimum block lines (default 6)")
    parser.add_argument("--min-tokens", type=int, default=1, help="minimum block tokens (default 1)")
    parser.add_argument("--engine", choices=["full", "prefix-only", "naive"], default="full")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--out", type=Path, default=None, help="pair CSV path (default stdout)")
    parser.add_argument("--stats", type=Path, default=None, help="write run stats JSON here")
    parser.add_argument("--stats-csv", type=Path, default=None, help="append a stats CSV row here")
    parser.add_argument("--header", action="store_true", help="emit a CSV header row")
    parser.add_argument("--dump-blocks", type=Path, default=None,
                        help="debug dump: path,start,end,token:freq ...")
    parser.add_argument("--dump-rank", type=Path, default=None,
                        help="debug dump: rank,token,freq lines")
    parser.add_argument("--glob", action="append", default=None, metavar="PATTERN",
                        help="file glob(s) overriding the language default")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    return Config(
        input_dir=args.dir,
        language=Language.JAVA if args.lang == "java" else Language.CFAMILY,
        granularity=Granularity(args.granularity),
        theta=args.theta,
        min_lines=args.min_lines,
        min_tokens=args.min_tokens,
        engine=args.engine,
        workers=args.workers,
        output=args.out,
        stats_json=args.stats,
        stats_csv=args.stats_csv,
        header=args.header,
        dump_blocks=args.dump_blocks,
        dump_rank_path=args.dump_rank,
        globs=tuple(args.glob) if args.glob else (),
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    raise SystemExit(main())
