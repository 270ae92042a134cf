"""Reference detectors: ground truth and the retrieval-only variant."""

import random
from collections import Counter
from pathlib import Path

from clonesieve.corpus import CodeBlock, GlobalTokenRank, corpus_from_token_lists, make_bag
from clonesieve.detect import ClonePair, detect_clones_from_blocks
from clonesieve.oracle import naive_detect, prefix_only_detect
from clonesieve.stats import RunStats

from corpusgen import gen_corpus


class TestNaiveDetect:
    def test_worked_two_block_corpus(self):
        blocks, _ = corpus_from_token_lists([list("abcde"), list("bcdef")])
        assert naive_detect(blocks, 80) == [ClonePair(0, 1, 4, 4)]

    def test_four_identical_blocks_complete_graph(self):
        blocks, _ = corpus_from_token_lists([["m", "n", "o"]] * 4)
        for theta in (60, 100):
            pairs = naive_detect(blocks, theta)
            assert len(pairs) == 6
            assert {(p.block_a, p.block_b) for p in pairs} == {
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)
            }
            assert all(p.matched == 3 for p in pairs)

    def test_counter_intersection_cross_check(self):
        # Third, independent overlap path: collections.Counter intersection.
        rng = random.Random(3)
        blocks, _ = gen_corpus(rng, 60, 25, 3, 30)
        counters = [Counter(dict(b.bag.entries)) for b in blocks]
        expected = []
        for j in range(len(blocks)):
            for i in range(j):
                matched = sum((counters[i] & counters[j]).values())
                ct = -(-70 * max(blocks[i].bag.size, blocks[j].bag.size) // 100)
                if matched >= ct:
                    expected.append(ClonePair(i, j, matched, ct))
        assert naive_detect(blocks, 70) == sorted(expected)

    def test_token_order_irrelevant(self):
        rng = random.Random(9)
        lists = [["a", "b", "b", "c"], ["c", "b", "a", "b"], ["d", "d", "a"]]
        blocks, _ = corpus_from_token_lists(lists)
        shuffled_blocks, _ = corpus_from_token_lists(
            [rng.sample(toks, len(toks)) for toks in lists]
        )
        assert naive_detect(blocks, 60) == naive_detect(shuffled_blocks, 60)


def _blocks_with_alphabetical_rank(lists):
    vocab = sorted({t for toks in lists for t in toks})
    rank = GlobalTokenRank(
        texts=tuple(vocab),
        freqs=tuple(range(1, len(vocab) + 1)),
        ids={t: i for i, t in enumerate(vocab)},
    )
    return [
        CodeBlock(i, Path(f"b{i}"), 1, 1, make_bag(toks, rank))
        for i, toks in enumerate(lists)
    ]


class TestPrefixOnlyDetect:
    def test_candidate_retrieved_then_rejected(self):
        # Size-4 vs size-5 blocks sharing only one rare token: retrieval
        # succeeds through the shared prefix token, verification rejects.
        blocks = _blocks_with_alphabetical_rank([list("abxy"), list("bcdef")])
        pairs, candidates = prefix_only_detect(blocks, 60)
        assert pairs == []
        assert candidates == 1

    def test_spec_corpus_never_retrieved(self):
        # Under the corpus-frequency rank the 4-token block's prefix is a
        # single unique token, so the undersized candidate is rejected before
        # retrieval, not merely before verification.
        blocks, _ = corpus_from_token_lists([list("abcd"), list("bcdef")])
        pairs, candidates = prefix_only_detect(blocks, 80)
        assert pairs == []
        assert candidates == 0

    def test_disjoint_vocabulary_no_candidates(self):
        blocks, _ = corpus_from_token_lists([["a", "b", "c"], ["x", "y", "z"]])
        pairs, candidates = prefix_only_detect(blocks, 60)
        assert (pairs, candidates) == ([], 0)

    def test_pairs_equal_naive_on_random_corpora(self):
        rng = random.Random(13)
        for _ in range(15):
            blocks, _ = gen_corpus(rng, rng.randint(5, 80), rng.randint(5, 50), 3, 30)
            for theta in (60, 75, 90):
                pairs, candidates = prefix_only_detect(blocks, theta)
                ref = naive_detect(blocks, theta)
                assert pairs == ref
                n = len(blocks)
                assert len(ref) <= candidates <= n * (n - 1) // 2

    def test_candidate_count_sits_between_filtered_and_quadratic(self):
        rng = random.Random(19)
        blocks, _ = gen_corpus(rng, 1000, 150, 5, 60)
        theta = 70
        stats = RunStats()
        full = detect_clones_from_blocks(blocks, theta, stats=stats)
        pairs, candidates = prefix_only_detect(blocks, theta)
        assert pairs == full
        # retrieval+size candidates match the engine's pre-positional count
        assert candidates == stats.candidates_after_size
        naive_pairs = len(blocks) * (len(blocks) - 1) // 2
        assert stats.candidates_after_position < candidates < naive_pairs
