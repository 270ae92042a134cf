"""Partial inverted index over each bag's rarest-token prefix.

Only the first prefix_len(size, theta) flattened positions of a bag are
indexed: two blocks can reach the similarity threshold only if their
prefixes share a token, so everything past the prefix never needs postings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .corpus import CodeBlock


class Posting(NamedTuple):
    block: int  # block id
    position: int  # last flattened prefix position of this token (1-based)
    count: int  # occurrences of the token inside the prefix


@dataclass
class PartialIndex:
    postings: dict[int, list[Posting]]  # token id -> postings, ascending block id
    theta: int  # integer percent the index was built for


def prefix_len(size: int, theta: int) -> int:
    """Number of leading flattened positions to index/probe: size − ⌈theta·size/100⌉ + 1.

    Exact integer arithmetic; result is always in [1, size] for
    1 <= theta <= 100.
    """
    return size - (theta * size + 99) // 100 + 1


def create_partial_index(blocks: Iterable[CodeBlock], theta: int) -> PartialIndex:
    """Index the prefix of every bag.  Duplicate tokens inside a prefix
    collapse to a single posting carrying their occurrence count and last
    prefix position.  Blocks must arrive in ascending id order so posting
    lists stay sorted."""
    postings: dict[int, list[Posting]] = {}
    for block in blocks:
        bag = block.bag
        limit = prefix_len(bag.size, theta)
        pos = 1
        for token, freq in bag.entries:
            if pos > limit:
                break
            in_prefix = min(freq, limit - pos + 1)
            entry = Posting(block.id, pos + in_prefix - 1, in_prefix)
            bucket = postings.get(token)
            if bucket is None:
                postings[token] = [entry]
            else:
                bucket.append(entry)
            pos += freq
    return PartialIndex(postings, theta)


def summary(index: PartialIndex) -> dict[str, int]:
    """Size line for logs: positions indexed, distinct keys, rough bytes."""
    positions = sum(p.count for plist in index.postings.values() for p in plist)
    keys = len(index.postings)
    n_postings = sum(len(plist) for plist in index.postings.values())
    return {
        "indexed_positions": positions,
        "distinct_tokens": keys,
        "approx_bytes": 64 * keys + 72 * n_postings,
    }
