"""Reference detectors used by tests, debug runs and the CLI's --engine flag.

naive_detect compares every unordered pair; prefix_only_detect retrieves
candidates through the partial index and size filter but skips positional
pruning, verifying every candidate in full.  Both compute overlap by hash
counting rather than the engine's merge, so a shared bug cannot hide, and
both must return exactly the engine's pair set on every input.
"""

from __future__ import annotations

from typing import Sequence

from .corpus import CodeBlock, TokenBag
from .detect import ClonePair, required_overlap
from .index import create_partial_index, prefix_len


def bag_overlap(bag_a: TokenBag, bag_b: TokenBag) -> int:
    """Hash-count multiset overlap (no ordering assumptions)."""
    ca = dict(bag_a.entries)
    cb = dict(bag_b.entries)
    if len(cb) < len(ca):
        ca, cb = cb, ca
    return sum(min(freq, cb.get(token, 0)) for token, freq in ca.items())


def naive_detect(blocks: Sequence[CodeBlock], theta: int) -> list[ClonePair]:
    """Quadratic ground truth: overlap of all n(n-1)/2 pairs, no filtering."""
    counts = [dict(b.bag.entries) for b in blocks]
    sizes = [b.bag.size for b in blocks]
    pairs: list[ClonePair] = []
    for j in range(len(blocks)):
        cj = counts[j]
        for i in range(j):
            ci = counts[i]
            if len(cj) < len(ci):
                matched = sum(min(f, ci.get(t, 0)) for t, f in cj.items())
            else:
                matched = sum(min(f, cj.get(t, 0)) for t, f in ci.items())
            ct = required_overlap(sizes[i], sizes[j], theta)
            if matched >= ct:
                pairs.append(ClonePair(i, j, matched, ct))
    pairs.sort()
    return pairs


def prefix_only_detect(
    blocks: Sequence[CodeBlock], theta: int
) -> tuple[list[ClonePair], int]:
    """Prefix retrieval + size filter only, then full verification of every
    candidate.  Returns (pairs, number of candidates verified)."""
    index = create_partial_index(blocks, theta)
    postings = index.postings
    pairs: list[ClonePair] = []
    candidate_count = 0
    for query in blocks:
        bag = query.bag
        limit = prefix_len(bag.size, theta)
        seen: set[int] = set()
        pos = 1
        for token, freq in bag.entries:
            if pos > limit:
                break
            for cand_id, _, _ in postings.get(token, ()):
                if cand_id >= query.id:
                    break
                seen.add(cand_id)
            pos += freq
        for cand_id in sorted(seen):
            csize = blocks[cand_id].bag.size
            if 100 * csize < theta * bag.size or 100 * bag.size < theta * csize:
                continue
            candidate_count += 1
            matched = bag_overlap(bag, blocks[cand_id].bag)
            ct = required_overlap(bag.size, csize, theta)
            if matched >= ct:
                pairs.append(ClonePair(cand_id, query.id, matched, ct))
    pairs.sort()
    return pairs, candidate_count
