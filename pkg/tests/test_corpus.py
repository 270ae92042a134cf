"""Ranking, bag construction, and block filtering."""

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonesieve.corpus import (
    TokenizedBlock,
    build_corpus,
    build_rank,
    corpus_from_token_lists,
    dump_rank,
    filter_blocks,
    make_bag,
)
from clonesieve.lexer import Granularity, Language, SourceFile, extract_blocks, tokenize


def _rank_map(rank):
    return {rank.texts[i]: rank.rank_of(i) for i in range(len(rank))}


class TestBuildRank:
    def test_counts_with_multiplicity_and_text_tiebreak(self):
        rank = build_rank([["a", "a", "b"], ["b", "c"]])
        assert {rank.texts[i]: rank.freqs[i] for i in range(len(rank))} == {
            "a": 2,
            "b": 2,
            "c": 1,
        }
        assert _rank_map(rank) == {"c": 1, "a": 2, "b": 3}

    def test_single_block_single_token(self):
        rank = build_rank([["x"]])
        assert _rank_map(rank) == {"x": 1}

    def test_rarer_tokens_rank_earlier(self):
        rank = build_rank([["u", "v", "v", "w", "w", "w"]])
        assert _rank_map(rank) == {"u": 1, "v": 2, "w": 3}

    def test_fixture_rarest_tokens_match_independent_recount(self, java_fixture_dir):
        # Independent oracle: recount with a plain dict over files walked in
        # reverse order, then compare the ten rarest (freq, text) entries.
        files = sorted(java_fixture_dir.glob("*.java"))
        per_block: list[list[str]] = []
        for path in files:
            src = SourceFile.read(path, Language.JAVA)
            for block in extract_blocks(src):
                per_block.append([t.text for t in tokenize(block, Language.JAVA)])
        rank = build_rank(per_block)

        recount: dict[str, int] = {}
        for tokens in reversed(per_block):
            for tok in reversed(tokens):
                recount[tok] = recount.get(tok, 0) + 1
        expected = sorted((f, t) for t, f in recount.items())[:10]
        got = [(rank.freqs[i], rank.texts[i]) for i in range(10)]
        assert got == expected


class TestMakeBag:
    def test_groups_and_sorts_by_rank(self):
        rank = build_rank([["for", "for", "i", "i", "i", "n"]])
        # n rarest (rank 1), then for, then i
        bag = make_bag(["for", "i", "i", "n"], rank)
        texts = [(rank.texts[t], f) for t, f in bag.entries]
        assert texts == [("n", 1), ("for", 1), ("i", 2)]
        assert bag.size == 4
        assert bag.starts == (1, 2, 3)

    def test_permutation_invariant(self):
        rank = build_rank([["a", "b", "c", "a"]])
        assert make_bag(["a", "b", "c", "a"], rank) == make_bag(["c", "a", "a", "b"], rank)

    def test_five_token_block_in_given_rank_order(self):
        # Rank a<b<c<d<e forced by ascending corpus frequencies.
        corpus = [["a"], ["b"] * 2, ["c"] * 3, ["d"] * 4, ["e"] * 5]
        rank = build_rank(corpus)
        bag = make_bag(["a", "b", "c", "d", "e"], rank)
        assert [rank.texts[t] for t, _ in bag.entries] == ["a", "b", "c", "d", "e"]
        assert bag.size == 5

    def test_empty_sequence_rejected(self):
        rank = build_rank([["x"]])
        with pytest.raises(ValueError):
            make_bag([], rank)


def _tb(name: str, start: int, end: int, tokens: tuple[str, ...]) -> TokenizedBlock:
    return TokenizedBlock(Path(name), start, end, tokens)


class TestFilterBlocks:
    def test_five_line_method_excluded_at_min_six(self):
        five = _tb("a.java", 10, 14, ("x",) * 9)
        six = _tb("a.java", 20, 25, ("x",) * 9)
        assert filter_blocks([five, six], min_lines=6) == [six]

    def test_zero_minimums_keep_all_token_bearing_blocks(self):
        blocks = [_tb("a.java", 1, 1, ("x",)), _tb("b.java", 1, 3, ("y", "z"))]
        assert filter_blocks(blocks, 0, 0) == blocks

    def test_min_tokens(self):
        small = _tb("a.java", 1, 9, ("x", "y"))
        big = _tb("b.java", 1, 9, ("x",) * 30)
        assert filter_blocks([small, big], 0, 25) == [big]

    def test_fixture_corpus_min_six_count(self, java_fixture_dir):
        # Hand manifest: Alpha 2, Beta 2, Edge 0, Seven 4 (addAll, maxOf,
        # average, join), Small 1 (sixLiner) => 9 blocks at min_lines=6.
        lexed = []
        for path in sorted(java_fixture_dir.glob("*.java")):
            src = SourceFile.read(path, Language.JAVA)
            for raw in extract_blocks(src):
                toks = tuple(t.text for t in tokenize(raw, Language.JAVA))
                lexed.append(TokenizedBlock(raw.file, raw.start_line, raw.end_line, toks))
        assert len(filter_blocks(lexed, min_lines=6)) == 9

    def test_ids_deterministic_and_dense(self):
        blocks = [
            _tb("b.java", 5, 20, ("p", "q")),
            _tb("a.java", 30, 40, ("r",)),
            _tb("a.java", 1, 10, ("s", "t")),
        ]
        out, _ = build_corpus(blocks, 0, 0)
        assert [b.id for b in out] == [0, 1, 2]
        assert [(str(b.file), b.start_line) for b in out] == [
            ("a.java", 1),
            ("a.java", 30),
            ("b.java", 5),
        ]


token_lists = st.lists(
    st.lists(st.sampled_from("abcdefgh"), min_size=1, max_size=12),
    min_size=1,
    max_size=8,
)


@given(token_lists)
@settings(max_examples=80)
def test_bag_sizes_and_prefix_rarity(lists):
    blocks, rank = corpus_from_token_lists(lists)
    for b in blocks:
        assert sum(f for _, f in b.bag.entries) == b.bag.size
        tokens = [t for t, _ in b.bag.entries]
        # entries strictly increasing by rank, first entry rarest
        assert tokens == sorted(tokens)
        freqs = [rank.freqs[t] for t in tokens]
        assert all(freqs[0] <= f for f in freqs)


@given(token_lists)
@settings(max_examples=40)
def test_two_runs_identical(lists):
    a_blocks, a_rank = corpus_from_token_lists(lists)
    b_blocks, b_rank = corpus_from_token_lists(lists)
    assert a_rank == b_rank
    assert a_blocks == b_blocks


def test_dump_rank_format():
    rank = build_rank([["a", "a", "b"], ["b", "c"]])
    assert dump_rank(rank) == "1,c,1\n2,a,2\n3,b,2\n"
