"""Reading and writing 8-bit PGM images (``P2`` ASCII and ``P5`` binary).

File pixel (column ``x``, row ``y``) becomes ``I(i=x, j=y)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List
from typing import Tuple
from typing import Union

import numpy as np

from .errors import PgmParseError
from .model import Image

logger = logging.getLogger(__name__)

__all__ = ["PgmHeader", "parse_pgm", "read_pgm", "write_pgm", "encode_pgm"]

_WHITESPACE = b" \t\r\n\x0b\x0c"
_MAGICS = ("P2", "P5")

PathLike = Union[str, Path]


@dataclass(frozen=True)
class PgmHeader:
    """Parsed PGM header fields."""

    magic: str
    width: int
    height: int
    maxval: int


class _Tokenizer:
    """Whitespace-separated tokens with ``#`` comments running to end of line."""

    def __init__(self, data: bytes) -> None:
        self.data = data
        self.position = 0
        self.last_offset = 0

    def _skip(self) -> None:
        data = self.data
        while self.position < len(data):
            byte = data[self.position:self.position + 1]
            if byte in _WHITESPACE:
                self.position += 1
            elif byte == b"#":
                end = data.find(b"\n", self.position)
                self.position = len(data) if end < 0 else end + 1
            else:
                return

    def token(self, what: str) -> Tuple[bytes, int]:
        self._skip()
        start = self.position
        data = self.data
        while self.position < len(data):
            byte = data[self.position:self.position + 1]
            if byte in _WHITESPACE or byte == b"#":
                break
            self.position += 1
        if start == self.position:
            raise PgmParseError(f"truncated data: missing {what}", start)
        self.last_offset = start
        return data[start:self.position], start

    def integer(self, what: str) -> int:
        text, offset = self.token(what)
        if not text.isdigit():
            raise PgmParseError(f"non-numeric {what} {text!r}", offset)
        return int(text)


def _parse_header(tokens: _Tokenizer) -> PgmHeader:
    magic_bytes, offset = tokens.token("magic number")
    magic = magic_bytes.decode("ascii", errors="replace")
    if magic not in _MAGICS:
        raise PgmParseError(f"bad magic {magic!r}; expected P2 or P5", offset)
    width = tokens.integer("width")
    height = tokens.integer("height")
    if width < 1 or height < 1:
        raise PgmParseError(f"image dimensions must be positive, got {width}x{height}", tokens.position)
    maxval = tokens.integer("maxval")
    maxval_offset = tokens.last_offset
    if maxval > 255:
        raise PgmParseError(f"unsupported maxval {maxval}", maxval_offset)
    if maxval < 1:
        raise PgmParseError("maxval must be at least 1", maxval_offset)
    return PgmHeader(magic, width, height, maxval)


def parse_pgm(data: bytes) -> Image:
    """Parse PGM bytes into an :class:`Image`.

    Args:
        data (bytes): Complete file contents.

    Returns:
        Image: Pixels in file order, row by row.

    Raises:
        PgmParseError: On a bad magic number, ``maxval > 255``, truncated
            data, non-numeric tokens or values above ``maxval``.
    """
    tokens = _Tokenizer(data)
    header = _parse_header(tokens)
    count = header.width * header.height
    if header.magic == "P5":
        # exactly one whitespace byte separates maxval from the raster
        separator = data[tokens.position:tokens.position + 1]
        if separator and separator not in _WHITESPACE:
            raise PgmParseError(
                f"expected one whitespace byte after maxval, got {separator!r}", tokens.position
            )
        start = tokens.position + 1
        raster = data[start:start + count]
        if len(raster) < count:
            raise PgmParseError(
                f"truncated data: expected {count} pixel bytes, got {len(raster)}",
                start + len(raster),
            )
        pixels = np.frombuffer(raster, dtype=np.uint8)
        over = np.flatnonzero(pixels > header.maxval)
        if over.size:
            raise PgmParseError(
                f"pixel value {int(pixels[over[0]])} exceeds maxval {header.maxval}",
                start + int(over[0]),
            )
    else:
        values: List[int] = []
        for _ in range(count):
            value = tokens.integer("pixel value")
            if value > header.maxval:
                raise PgmParseError(
                    f"pixel value {value} exceeds maxval {header.maxval}", tokens.last_offset
                )
            values.append(value)
        pixels = np.array(values, dtype=np.uint8)
    logger.debug("Parsed %s image %dx%d maxval %d", header.magic, header.width, header.height, header.maxval)
    return Image(pixels.reshape(header.height, header.width))


def read_pgm(path: PathLike) -> Image:
    """Read a PGM file from disk; see :func:`parse_pgm`."""
    return parse_pgm(Path(path).read_bytes())


def encode_pgm(img: Image, binary: bool = True) -> bytes:
    """Return the PGM encoding of ``img`` with ``maxval`` 255."""
    header = f"{'P5' if binary else 'P2'}\n{img.width} {img.height}\n255\n".encode("ascii")
    if binary:
        return header + img.pixels
    rows = (" ".join(str(value) for value in row) for row in img.array.tolist())
    return header + ("\n".join(rows) + "\n").encode("ascii")


def write_pgm(img: Image, path: PathLike, binary: bool = True) -> None:
    """Write ``img`` as a ``P5`` (default) or ``P2`` file."""
    Path(path).write_bytes(encode_pgm(img, binary))
