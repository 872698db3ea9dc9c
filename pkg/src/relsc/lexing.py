"""Comment stripping and Java tokenization.

Token indices are the basis for source order everywhere downstream, so
the lexer is deliberately boring: one linear scan, positions preserved.
"""

from __future__ import annotations

from dataclasses import dataclass


class JavaSyntaxError(Exception):
    """Lex or parse failure with a source location."""

    def __init__(self, message: str, line: int, col: int = 0, path: str = "<source>"):
        super().__init__(f"{path}:{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.path = path


KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while""".split()
)

MODIFIER_KEYWORDS = frozenset(
    """public protected private static abstract final native synchronized
    transient volatile strictfp default""".split()
)

PRIMITIVE_TYPES = frozenset("boolean byte short int long char float double".split())

# Maximal munch, except '>' which is always lexed as a single token so
# nested type-argument closes never collide with shift operators; the
# parser reassembles '>=', '>>', '>>>', '>>=', '>>>=' from adjacent '>'s.
_OPERATORS = (
    "<<=", "...", "->", "::", "<<", "<=", "==", "!=", "&&", "||", "++",
    "--", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "+", "-", "*",
    "/", "&", "|", "^", "%", "<", ">", "=", "!", "~", "?", ":", ";", ",",
    ".", "(", ")", "{", "}", "[", "]", "@",
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | int | float | char | string | op | eof
    text: str
    line: int
    col: int
    index: int


def strip_comments(source_text: str, path: str = "<source>") -> str:
    """Blank out // and /* */ comments, leaving literals untouched.

    Every non-newline comment character becomes a space, so both line and
    column numbers of the remaining tokens are preserved.
    """
    out = list(source_text)
    i, n = 0, len(source_text)
    line = 1
    while i < n:
        c = source_text[i]
        if c == "\n":
            line += 1
            i += 1
        elif c == "/" and i + 1 < n and source_text[i + 1] == "/":
            while i < n and source_text[i] != "\n":
                out[i] = " "
                i += 1
        elif c == "/" and i + 1 < n and source_text[i + 1] == "*":
            start_line = line
            out[i] = out[i + 1] = " "
            i += 2
            closed = False
            while i < n:
                if source_text[i] == "*" and i + 1 < n and source_text[i + 1] == "/":
                    out[i] = out[i + 1] = " "
                    i += 2
                    closed = True
                    break
                if source_text[i] == "\n":
                    line += 1
                else:
                    out[i] = " "
                i += 1
            if not closed:
                raise JavaSyntaxError("unterminated block comment", start_line, 0, path)
        elif c == '"' or c == "'":
            i = _skip_literal(source_text, i, line, path)
        else:
            i += 1
    return "".join(out)


def _skip_literal(text: str, i: int, line: int, path: str) -> int:
    quote = text[i]
    n = len(text)
    j = i + 1
    while j < n:
        c = text[j]
        if c == "\\":
            j += 2
            continue
        if c == quote:
            return j + 1
        if c == "\n":
            break
        j += 1
    kind = "string" if quote == '"' else "char"
    raise JavaSyntaxError(f"unterminated {kind} literal", line, 0, path)


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c in "_$"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c in "_$"


def tokenize(text: str, path: str = "<source>") -> list[Token]:
    """Lex comment-free Java text into tokens (plus a trailing eof token)."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    line, line_start = 1, 0

    def emit(kind: str, start: int, end: int) -> None:
        tokens.append(Token(kind, text[start:end], line, start - line_start + 1, len(tokens)))

    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if c.isspace():
            i += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            # Tolerate comments in already-clean text rather than failing.
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "*":
            start_line = line
            i += 2
            while i < n and not text.startswith("*/", i):
                if text[i] == "\n":
                    line += 1
                    line_start = i + 1
                i += 1
            if i >= n:
                raise JavaSyntaxError("unterminated block comment", start_line, 0, path)
            i += 2
            continue
        if _is_ident_start(c):
            j = i + 1
            while j < n and _is_ident_part(text[j]):
                j += 1
            word = text[i:j]
            emit("keyword" if word in KEYWORDS else "ident", i, j)
            i = j
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            i = _lex_number(text, i, emit)
            continue
        if c == '"':
            j = _skip_literal(text, i, line, path)
            emit("string", i, j)
            i = j
            continue
        if c == "'":
            j = _skip_literal(text, i, line, path)
            emit("char", i, j)
            i = j
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                emit("op", i, i + len(op))
                i += len(op)
                break
        else:
            raise JavaSyntaxError(f"unexpected character {c!r}", line, i - line_start + 1, path)

    tokens.append(Token("eof", "", line, 1, len(tokens)))
    return tokens


def _lex_number(text: str, i: int, emit) -> int:
    n = len(text)
    j = i
    is_float = False
    if text[j] == "0" and j + 1 < n and text[j + 1] in "xX":
        j += 2
        while j < n and (text[j] in "0123456789abcdefABCDEF_"):
            j += 1
    elif text[j] == "0" and j + 1 < n and text[j + 1] in "bB":
        j += 2
        while j < n and text[j] in "01_":
            j += 1
    else:
        while j < n and (text[j].isdigit() or text[j] == "_"):
            j += 1
        if j < n and text[j] == "." and (j + 1 >= n or text[j + 1] != "."):
            is_float = True
            j += 1
            while j < n and (text[j].isdigit() or text[j] == "_"):
                j += 1
        if j < n and text[j] in "eE":
            k = j + 1
            if k < n and text[k] in "+-":
                k += 1
            if k < n and text[k].isdigit():
                is_float = True
                j = k
                while j < n and (text[j].isdigit() or text[j] == "_"):
                    j += 1
    if j < n and text[j] in "fFdD":
        is_float = True
        j += 1
    elif j < n and text[j] in "lL":
        j += 1
    emit("float" if is_float else "int", i, j)
    return j
