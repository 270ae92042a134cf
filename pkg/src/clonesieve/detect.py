"""Filtered clone detection over a partial index.

For each query block the engine probes the index with the block's prefix
tokens, drops candidates that cannot reach the pair threshold by size, keeps
a live upper bound on the best achievable overlap to eliminate hopeless
candidates early, and verifies the survivors with a rank-ordered two-cursor
merge that resumes where the prefix phase stopped.

Position bookkeeping: bags flatten each (token, freq) entry into freq
consecutive 1-based positions.  The live bound for a match on token t uses
t's first flattened position on both sides (sim + 1 + min of the unseen
suffixes measured from there); measuring from the last position would
undercount whenever an entry straddles a prefix boundary and could eliminate
a true pair.  Verification settles that straddling token exactly before the
merge resumes, so accepted pairs always report their full overlap.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable, NamedTuple, Sequence

import multiprocessing as mp

from .corpus import CodeBlock, TokenBag
from .index import PartialIndex, create_partial_index, prefix_len
from .stats import RunStats


class ThetaMismatchError(ValueError):
    """Raised when an index built for one threshold is queried with another."""


class ClonePair(NamedTuple):
    block_a: int  # smaller block id
    block_b: int  # larger block id
    matched: int  # tokens shared (full multiset overlap)
    threshold_used: int  # ct for this pair


class CandidateState:
    """Mutable per-(query, candidate) accumulator for the prefix phase."""

    __slots__ = ("block", "sim", "last_pos_query", "last_pos_cand", "eliminated")

    def __init__(self, block: int) -> None:
        self.block = block
        self.sim = 0
        self.last_pos_query = 0
        self.last_pos_cand = 0
        self.eliminated = False


def required_overlap(size_a: int, size_b: int, theta: int) -> int:
    """Minimum shared tokens for a clone pair: ⌈theta·max(sizes)/100⌉."""
    larger = size_a if size_a > size_b else size_b
    return (theta * larger + 99) // 100


def overlap(bag_a: TokenBag, bag_b: TokenBag) -> int:
    """Multiset overlap via a two-cursor merge over rank-sorted entries."""
    ea, eb = bag_a.entries, bag_b.entries
    na, nb = len(ea), len(eb)
    i = j = total = 0
    while i < na and j < nb:
        ta, fa = ea[i]
        tb, fb = eb[j]
        if ta == tb:
            total += fa if fa < fb else fb
            i += 1
            j += 1
        elif ta < tb:
            i += 1
        else:
            j += 1
    return total


def upper_bound(
    sim: int, query_size: int, query_pos: int, cand_size: int, cand_pos: int
) -> int:
    """Best total overlap still achievable after matching a token whose
    occurrences start at query_pos / cand_pos: the current match plus the
    smaller unseen suffix."""
    rem_q = query_size - query_pos
    rem_c = cand_size - cand_pos
    return sim + 1 + (rem_q if rem_q < rem_c else rem_c)


def _bag_counts(bag: TokenBag) -> dict[int, int]:
    return dict(bag.entries)


def _true_overlap(bag_a: TokenBag, bag_b: TokenBag) -> int:
    # Independent hash-count overlap, used only for paranoid cross-checks.
    ca, cb = _bag_counts(bag_a), _bag_counts(bag_b)
    if len(cb) < len(ca):
        ca, cb = cb, ca
    return sum(min(f, cb.get(t, 0)) for t, f in ca.items())


def verify_candidates(
    query: CodeBlock,
    candidates: Iterable[tuple[CodeBlock, CandidateState]],
    theta: int,
    stats: RunStats | None = None,
) -> list[tuple[int, int, int]]:
    """Finish surviving candidates; returns (candidate id, matched, ct) for
    every accepted one."""
    accepted = []
    for cand, state in candidates:
        ct = required_overlap(query.bag.size, cand.bag.size, theta)
        matched = _verify(query.bag, cand.bag, state, ct, stats)
        if matched >= ct:
            accepted.append((cand.id, matched, ct))
    return accepted


def _verify(
    qbag: TokenBag, cbag: TokenBag, state: CandidateState, ct: int, stats: RunStats | None
) -> int:
    """Resume the merge from the stored positions and return the exact
    overlap, or -1 on early abandon (threshold unreachable)."""
    qe, ce = qbag.entries, cbag.entries
    qs, cs = qbag.starts, cbag.starts
    kq = bisect_right(qs, state.last_pos_query) - 1
    kc = bisect_right(cs, state.last_pos_cand) - 1
    # Both cursors sit inside the entries of the last matched token; credit
    # whatever the prefix phase could not see of it.
    seen_q = state.last_pos_query - qs[kq] + 1
    seen_c = state.last_pos_cand - cs[kc] + 1
    fq = qe[kq][1]
    fc = ce[kc][1]
    sim = state.sim + min(fq, fc) - min(seen_q, seen_c)
    kq += 1
    kc += 1
    nq, nc = len(qe), len(ce)
    rem_q = qbag.size - qs[kq] + 1 if kq < nq else 0
    rem_c = cbag.size - cs[kc] + 1 if kc < nc else 0
    comparisons = 0
    while kq < nq and kc < nc:
        if sim + (rem_q if rem_q < rem_c else rem_c) < ct:
            if stats is not None:
                stats.token_comparisons += comparisons
            return -1
        tq, fq = qe[kq]
        tc, fc = ce[kc]
        comparisons += 1
        if tq == tc:
            sim += fq if fq < fc else fc
            kq += 1
            kc += 1
            rem_q -= fq
            rem_c -= fc
        elif tq < tc:
            kq += 1
            rem_q -= fq
        else:
            kc += 1
            rem_c -= fc
    if stats is not None:
        stats.token_comparisons += comparisons
        stats.verified_pairs += 1
    return sim


_SIZE_SKIPPED = CandidateState(-1)  # sentinel: candidate rejected by size filter


def _query_block(
    query: CodeBlock,
    blocks: Sequence[CodeBlock],
    index: PartialIndex,
    theta: int,
    stats: RunStats | None,
    paranoid: bool,
    out: list[ClonePair],
) -> None:
    bag = query.bag
    qsize = bag.size
    limit = prefix_len(qsize, theta)
    postings = index.postings
    states: dict[int, CandidateState] = {}
    pos = 1
    for token, freq in bag.entries:
        if pos > limit:
            break
        in_prefix = min(freq, limit - pos + 1)
        q_first = pos
        q_last = pos + in_prefix - 1
        plist = postings.get(token)
        if plist is not None:
            for cand_id, c_pos, c_count in plist:
                if cand_id >= query.id:
                    break  # postings sorted by id; symmetry dedup
                state = states.get(cand_id)
                if state is None:
                    if stats is not None:
                        stats.candidates_after_prefix += 1
                    csize = blocks[cand_id].bag.size
                    if 100 * csize < theta * qsize or 100 * qsize < theta * csize:
                        states[cand_id] = _SIZE_SKIPPED
                        continue
                    if stats is not None:
                        stats.candidates_after_size += 1
                    state = CandidateState(cand_id)
                    states[cand_id] = state
                elif state.eliminated or state is _SIZE_SKIPPED:
                    continue
                csize = blocks[cand_id].bag.size
                ct = required_overlap(qsize, csize, theta)
                if stats is not None:
                    stats.token_comparisons += 1
                c_first = c_pos - c_count + 1
                if upper_bound(state.sim, qsize, q_first, csize, c_first) < ct:
                    state.eliminated = True
                    if paranoid:
                        true = _true_overlap(bag, blocks[cand_id].bag)
                        assert true < ct, (
                            f"unsound elimination: query {query.id} cand {cand_id} "
                            f"true overlap {true} >= ct {ct}"
                        )
                else:
                    state.sim += in_prefix if in_prefix < c_count else c_count
                    state.last_pos_query = q_last
                    state.last_pos_cand = c_pos
        pos += freq
    survivors = []
    for cand_id, state in states.items():
        if state is _SIZE_SKIPPED or state.eliminated:
            continue
        survivors.append((blocks[cand_id], state))
    if stats is not None:
        stats.candidates_after_position += len(survivors)
    for cand_id, matched, ct in verify_candidates(query, survivors, theta, stats):
        out.append(ClonePair(cand_id, query.id, matched, ct))
        if paranoid:
            assert matched == _true_overlap(bag, blocks[cand_id].bag)


def _detect_range(
    ids: Sequence[int],
    blocks: Sequence[CodeBlock],
    index: PartialIndex,
    theta: int,
    stats: RunStats | None,
    paranoid: bool,
) -> list[ClonePair]:
    pairs: list[ClonePair] = []
    for i in ids:
        _query_block(blocks[i], blocks, index, theta, stats, paranoid, pairs)
    return pairs


# Worker-side state for the parallel path, installed once per process.
_WORKER: tuple | None = None


def _init_worker(blocks, index, theta, collect_stats, paranoid) -> None:
    global _WORKER
    _WORKER = (blocks, index, theta, collect_stats, paranoid)


def _run_chunk(ids: Sequence[int]) -> tuple[list[ClonePair], RunStats | None]:
    assert _WORKER is not None
    blocks, index, theta, collect_stats, paranoid = _WORKER
    stats = RunStats() if collect_stats else None
    pairs = _detect_range(ids, blocks, index, theta, stats, paranoid)
    return pairs, stats


def detect_clones(
    blocks: Sequence[CodeBlock],
    index: PartialIndex,
    theta: int,
    *,
    workers: int = 1,
    stats: RunStats | None = None,
    paranoid: bool = False,
) -> list[ClonePair]:
    """All clone pairs of the corpus at the given threshold.

    blocks must be the id-dense, id-ordered list the index was built from.
    Results are deterministic and independent of the worker count; pairs come
    back sorted by (block_a, block_b).
    """
    if index.theta != theta:
        raise ThetaMismatchError(
            f"index built for theta={index.theta}, detection requested theta={theta}"
        )
    if stats is not None:
        n = len(blocks)
        stats.blocks += n
        stats.naive_pairs += n * (n - 1) // 2
    if workers <= 1 or len(blocks) < 2:
        pairs = _detect_range(range(len(blocks)), blocks, index, theta, stats, paranoid)
    else:
        chunks = [list(range(w, len(blocks), workers)) for w in range(workers)]
        ctx = mp.get_context("fork" if "fork" in mp.get_all_start_methods() else "spawn")
        with ctx.Pool(
            processes=workers,
            initializer=_init_worker,
            initargs=(blocks, index, theta, stats is not None, paranoid),
        ) as pool:
            results = pool.map(_run_chunk, chunks)
        pairs = []
        for chunk_pairs, chunk_stats in results:
            pairs.extend(chunk_pairs)
            if stats is not None and chunk_stats is not None:
                stats.merge(chunk_stats)
    pairs.sort()
    if stats is not None:
        stats.clone_pairs += len(pairs)
    return pairs


def detect_clones_from_blocks(
    blocks: Sequence[CodeBlock],
    theta: int,
    *,
    workers: int = 1,
    stats: RunStats | None = None,
    paranoid: bool = False,
) -> list[ClonePair]:
    """Convenience wrapper: build the partial index, then detect."""
    index = create_partial_index(blocks, theta)
    return detect_clones(
        blocks, index, theta, workers=workers, stats=stats, paranoid=paranoid
    )
