"""Function-level block extraction and tokenization for Java/C-family sources.

The scanner is deliberately lightweight: brace matching plus a header
heuristic (identifier, parameter list, opening brace) instead of a full
grammar, so new languages only need a keyword table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence


class Language(Enum):
    JAVA = "java"
    CFAMILY = "c"


class Granularity(Enum):
    FUNCTION = "function"
    FILE = "file"


class TokenKind(Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    LITERAL_PIECE = "literal"


@dataclass(frozen=True, slots=True)
class SourceFile:
    """One input file, already decoded to text."""

    path: Path
    language: Language
    content: str

    @classmethod
    def read(cls, path: Path, language: Language) -> "SourceFile":
        # Invalid bytes are replaced, never fatal.
        data = Path(path).read_bytes()
        return cls(Path(path), language, data.decode("utf-8", errors="replace"))


@dataclass(frozen=True, slots=True)
class RawBlock:
    """A contiguous source region (1-based, inclusive line span)."""

    file: Path
    start_line: int
    end_line: int
    body: str


@dataclass(frozen=True, slots=True)
class RawToken:
    text: str
    kind: TokenKind


JAVA_KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while var record sealed
    permits yield true false null""".split()
)

C_KEYWORDS = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if inline int long register restrict return short signed
    sizeof static struct switch typedef union unsigned void volatile while
    _Bool _Complex _Imaginary""".split()
)

_KEYWORDS = {Language.JAVA: JAVA_KEYWORDS, Language.CFAMILY: C_KEYWORDS}


def keywords_for(language: Language) -> frozenset[str]:
    """Keyword table for a language; unknown languages get an empty set."""
    return _KEYWORDS.get(language, frozenset())


# One master pattern; alternatives are ordered so terminated literals and
# comments win over their run-to-end-of-input fallbacks.
_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<line_comment>//[^\n]*)
    | (?P<block_comment>/\*(?:[^*]|\*(?!/))*\*/)
    | (?P<block_comment_open>/\*.*)
    | (?P<string>"(?:\\.|[^"\\])*")
    | (?P<string_open>"(?:\\.|[^"\\])*)
    | (?P<char>'(?:\\.|[^'\\])*')
    | (?P<char_open>'(?:\\.|[^'\\])*)
    | (?P<ident>[A-Za-z_$][A-Za-z0-9_$]*)
    | (?P<number>\d[0-9A-Za-z_$]*(?:\.\d[0-9A-Za-z_$]*)?)
    | (?P<op>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_WORD_RE = re.compile(r"[A-Za-z0-9_$]+")


def tokenize(
    block: RawBlock,
    language: Language,
    warnings: list[str] | None = None,
) -> list[RawToken]:
    """Lex a block into keyword/identifier/literal tokens.

    Comments, whitespace, operators and punctuation are dropped.  String and
    character literal contents are reduced to their word pieces (quotes and
    any non-word characters stripped); numeric literals are kept whole.
    Unterminated strings and comments run to the end of the block and record
    a warning.
    """
    keywords = keywords_for(language)
    out: list[RawToken] = []
    for m in _TOKEN_RE.finditer(block.body):
        group = m.lastgroup
        if group == "ws" or group == "op" or group == "line_comment" or group == "block_comment":
            continue
        text = m.group()
        if group == "ident":
            kind = TokenKind.KEYWORD if text in keywords else TokenKind.IDENTIFIER
            out.append(RawToken(text, kind))
        elif group == "number":
            out.append(RawToken(text, TokenKind.LITERAL_PIECE))
        elif group == "block_comment_open":
            if warnings is not None:
                warnings.append(f"{block.file}:{block.start_line}: unterminated block comment")
        else:  # string / char literal, possibly unterminated
            if group.endswith("_open") and warnings is not None:
                warnings.append(f"{block.file}:{block.start_line}: unterminated literal")
            for piece in _WORD_RE.findall(text[1:].removesuffix(text[0])):
                out.append(RawToken(piece, TokenKind.LITERAL_PIECE))
    return out


# Tokens that may sit between the parameter list and the opening brace
# (throws clauses, cv-qualifiers, etc.): identifier-like words and commas.
_CONTROL_WORDS = frozenset(
    "if for while switch catch do else try return new synchronized sizeof case".split()
)

_IDENT_LIKE_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")


def _is_function_header(pending: list[tuple[str, int]]) -> bool:
    """Decide whether the tokens before a `{` form a function header.

    Works backwards: skip trailing words (throws clause etc.), require a
    balanced parameter list, and require the token before it to be a plain
    identifier that is not a control keyword and not a `new` type name.
    """
    k = len(pending) - 1
    while k >= 0 and (pending[k][0] == "," or _IDENT_LIKE_RE.match(pending[k][0])):
        k -= 1
    if k < 0 or pending[k][0] != ")":
        return False
    depth = 0
    while k >= 0:
        tok = pending[k][0]
        if tok == ")":
            depth += 1
        elif tok == "(":
            depth -= 1
            if depth == 0:
                break
        k -= 1
    if depth != 0 or k <= 0:
        return False
    name = pending[k - 1][0]
    if not _IDENT_LIKE_RE.match(name) or name in _CONTROL_WORDS:
        return False
    if k >= 2 and pending[k - 2][0] == "new":
        return False
    return True


def _count_lines(content: str) -> int:
    if not content:
        return 0
    return content.count("\n") + (0 if content.endswith("\n") else 1)


def extract_blocks(
    src: SourceFile,
    granularity: Granularity = Granularity.FUNCTION,
    warnings: list[str] | None = None,
) -> list[RawBlock]:
    """Split a source file into code blocks.

    Function granularity yields one block per function/method, spanning the
    header line through the matching closing brace; nested local classes and
    lambdas stay inside the enclosing function.  File granularity yields a
    single block for the whole file.  Unbalanced braces never abort: the
    blocks completed so far are returned and a warning is recorded.
    """
    content = src.content
    if granularity is Granularity.FILE:
        n = _count_lines(content)
        if n == 0:
            return []
        return [RawBlock(src.path, 1, n, content)]

    lines = content.split("\n")
    blocks: list[RawBlock] = []
    pending: list[tuple[str, int]] = []  # (token text, line) since the last boundary
    depth = 0
    func_depth: int | None = None
    func_start = 0
    line = 1
    underflow = False
    directive_line = 0  # preprocessor lines carry no block structure

    for m in _TOKEN_RE.finditer(content):
        group = m.lastgroup
        text = m.group()
        tok_line = line
        line += text.count("\n")
        if group in ("ws", "line_comment", "block_comment", "block_comment_open"):
            continue
        if tok_line == directive_line:
            continue
        if group == "op" and text == "#":
            directive_line = tok_line
            pending.clear()
            continue
        if func_depth is not None:
            if group == "op":
                if text == "{":
                    depth += 1
                elif text == "}":
                    depth -= 1
                    if depth == func_depth:
                        blocks.append(
                            RawBlock(
                                src.path,
                                func_start,
                                tok_line,
                                "\n".join(lines[func_start - 1 : tok_line]),
                            )
                        )
                        func_depth = None
            continue
        if group == "op":
            if text == "{":
                if _is_function_header(pending):
                    func_depth = depth
                    func_start = pending[0][1]
                depth += 1
                pending.clear()
            elif text == "}":
                if depth == 0:
                    underflow = True
                depth = max(0, depth - 1)
                pending.clear()
            elif text == ";":
                pending.clear()
            else:
                pending.append((text, tok_line))
        else:
            pending.append((text, tok_line))

    if warnings is not None:
        if func_depth is not None:
            warnings.append(
                f"{src.path}: unbalanced braces, dropped unterminated block at line {func_start}"
            )
        elif depth != 0 or underflow:
            warnings.append(f"{src.path}: unbalanced braces")
    return blocks
