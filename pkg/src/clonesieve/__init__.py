"""Token-bag code clone detection with a partial inverted index.

Code blocks are multisets of tokens; two blocks are clones when they share
at least ⌈theta·max(sizes)/100⌉ tokens.  The engine scales the all-pairs
join with a partial index over each bag's rarest tokens plus size and
positional pruning, all lossless: output always equals the quadratic
reference detector's.
"""

from .corpus import (
    CodeBlock,
    GlobalTokenRank,
    TokenBag,
    TokenizedBlock,
    build_corpus,
    build_rank,
    corpus_from_token_lists,
    filter_blocks,
    make_bag,
)
from .detect import (
    ClonePair,
    ThetaMismatchError,
    detect_clones,
    detect_clones_from_blocks,
    overlap,
    required_overlap,
    upper_bound,
)
from .index import PartialIndex, Posting, create_partial_index, prefix_len
from .lexer import (
    Granularity,
    Language,
    RawBlock,
    RawToken,
    SourceFile,
    TokenKind,
    extract_blocks,
    tokenize,
)
from .oracle import bag_overlap, naive_detect, prefix_only_detect
from .stats import RunStats

__version__ = "0.1.0"

__all__ = [
    "ClonePair",
    "CodeBlock",
    "GlobalTokenRank",
    "Granularity",
    "Language",
    "PartialIndex",
    "Posting",
    "RawBlock",
    "RawToken",
    "RunStats",
    "SourceFile",
    "ThetaMismatchError",
    "TokenBag",
    "TokenKind",
    "TokenizedBlock",
    "bag_overlap",
    "build_corpus",
    "build_rank",
    "corpus_from_token_lists",
    "create_partial_index",
    "detect_clones",
    "detect_clones_from_blocks",
    "extract_blocks",
    "filter_blocks",
    "make_bag",
    "naive_detect",
    "overlap",
    "prefix_len",
    "prefix_only_detect",
    "required_overlap",
    "tokenize",
    "upper_bound",
    "__version__",
]
