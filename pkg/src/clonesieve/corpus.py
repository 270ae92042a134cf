"""Token interning, corpus-wide frequency ranking, and bag construction.

Token ids are assigned in global rank order (rarest token first, frequency
ties broken by token text), so ascending id equals ascending rank and bag
entries sort by id.  A bag is conceptually the flattened sequence in which
each (token, freq) entry occupies freq consecutive 1-based positions; all
prefix and position arithmetic downstream uses these flattened positions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GlobalTokenRank:
    """Total order over the corpus vocabulary, rarest first."""

    texts: tuple[str, ...]  # token id -> text
    freqs: tuple[int, ...]  # token id -> corpus occurrences (with multiplicity)
    ids: dict[str, int]  # text -> token id

    def rank_of(self, token_id: int) -> int:
        """1-based rank; lower rank means rarer."""
        return token_id + 1

    def corpus_freq(self, token_id: int) -> int:
        return self.freqs[token_id]

    def __len__(self) -> int:
        return len(self.texts)


def build_rank(blocks: Iterable[Sequence[str]]) -> GlobalTokenRank:
    """Count token occurrences across all blocks and rank ascending by
    (frequency, text)."""
    counts: Counter[str] = Counter()
    for tokens in blocks:
        counts.update(tokens)
    ordered = sorted(counts.items(), key=lambda kv: (kv[1], kv[0]))
    texts = tuple(text for text, _ in ordered)
    freqs = tuple(freq for _, freq in ordered)
    ids = {text: i for i, text in enumerate(texts)}
    return GlobalTokenRank(texts, freqs, ids)


@dataclass(frozen=True)
class TokenBag:
    """Frequency-ordered multiset of interned tokens.

    entries: (token id, freq) pairs with strictly increasing token id.
    size: multiset cardinality (sum of freqs).
    starts: flattened 1-based start position of each entry.
    """

    entries: tuple[tuple[int, int], ...]
    size: int
    starts: tuple[int, ...]


def make_bag(tokens: Sequence[str], rank: GlobalTokenRank) -> TokenBag:
    """Group a non-empty token sequence into a rank-sorted bag."""
    if not tokens:
        raise ValueError("cannot build a bag from an empty token sequence")
    ids = rank.ids
    counts: Counter[int] = Counter(ids[t] for t in tokens)
    entries = tuple(sorted(counts.items()))
    starts = tuple(accumulate((f for _, f in entries[:-1]), initial=1))
    return TokenBag(entries, len(tokens), starts)


@dataclass(frozen=True)
class TokenizedBlock:
    """A lexed block before ranking: location plus its token texts."""

    file: Path
    start_line: int
    end_line: int
    tokens: tuple[str, ...]

    @property
    def num_lines(self) -> int:
        return self.end_line - self.start_line + 1


@dataclass(frozen=True)
class CodeBlock:
    """A detection unit: source location plus its token bag.

    Ids are dense and deterministic for a fixed corpus (blocks ordered by
    file path, then start line).
    """

    id: int
    file: Path
    start_line: int
    end_line: int
    bag: TokenBag

    @property
    def num_lines(self) -> int:
        return self.end_line - self.start_line + 1


def filter_blocks(
    blocks: Iterable[TokenizedBlock], min_lines: int = 0, min_tokens: int = 1
) -> list[TokenizedBlock]:
    """Keep blocks meeting the line and token minimums, in deterministic
    order (sorted by path then start line).  Token-less blocks are always
    dropped: an empty bag is not representable."""
    min_tokens = max(min_tokens, 1)
    kept = [
        b
        for b in blocks
        if b.num_lines >= min_lines and len(b.tokens) >= min_tokens
    ]
    kept.sort(key=lambda b: (str(b.file), b.start_line))
    return kept


def build_corpus(
    blocks: Iterable[TokenizedBlock], min_lines: int = 0, min_tokens: int = 1
) -> tuple[list[CodeBlock], GlobalTokenRank]:
    """Filter, rank over the surviving blocks, and assign dense ids."""
    kept = filter_blocks(blocks, min_lines, min_tokens)
    rank = build_rank(b.tokens for b in kept)
    out = [
        CodeBlock(i, b.file, b.start_line, b.end_line, make_bag(b.tokens, rank))
        for i, b in enumerate(kept)
    ]
    return out, rank


def corpus_from_token_lists(
    token_lists: Sequence[Sequence[str]],
) -> tuple[list[CodeBlock], GlobalTokenRank]:
    """Build a synthetic corpus directly from token sequences (tests, demos)."""
    blocks = [
        TokenizedBlock(Path(f"block{i:06d}"), 1, 1, tuple(toks))
        for i, toks in enumerate(token_lists)
    ]
    return build_corpus(blocks, min_lines=0, min_tokens=1)


def dump_rank(rank: GlobalTokenRank) -> str:
    """Inspection dump: one `rank,token,freq` line per token, rarest first."""
    return "".join(
        f"{i + 1},{text},{rank.freqs[i]}\n" for i, text in enumerate(rank.texts)
    )
