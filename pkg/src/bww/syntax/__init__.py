"""BWW-ML front end: tokenize, parse, resolve."""
from __future__ import annotations

from pathlib import Path
from typing import Union

from ..kernel import Model, build_model
from .lexer import Token, TokenKind, detokenize, tokenize
from .parser import parse
from .printer import print_decl, print_model
from .resolver import ResolvedAst, resolve


def load_source(source: str, filename: str = "<input>") -> Model:
    """Run the whole pipeline on ``source``.

    Raises a :class:`~bww.errors.FrontendError` subclass for lex, parse and
    resolve failures, and :class:`~bww.errors.ModelError` if the model
    cannot be built.
    """
    return build_model(resolve(parse(tokenize(source, filename))))


def load_file(path: Union[str, Path]) -> Model:
    path = Path(path)
    return load_source(path.read_text(encoding="utf-8"), str(path))


__all__ = [
    "Token", "TokenKind", "tokenize", "detokenize", "parse", "print_model",
    "print_decl", "resolve", "ResolvedAst", "load_source", "load_file",
]
