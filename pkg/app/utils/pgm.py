"""
Reader and writer for 8-bit portable graymaps (P2 ASCII and P5 binary).
"""
import logging
from pathlib import Path
from typing import List, Literal, Tuple, Union

import numpy as np

from app.exceptions import FormatError, IoError
from app.models import GrayImage

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_WHITESPACE = b" \t\r\n\v\f"


def _next_token(data: bytes, pos: int) -> Tuple[bytes, int, int]:
    """Next whitespace-delimited header token, skipping '#' comments.

    Returns (token, start offset, offset after the token).
    """
    n = len(data)
    while pos < n:
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("Unexpected end of file in header", offset=start)
    return data[start:pos], start, pos


def _header_int(data: bytes, pos: int, name: str) -> Tuple[int, int]:
    token, start, pos = _next_token(data, pos)
    if not token.isdigit():
        raise FormatError(f"Invalid {name} '{token.decode(errors='replace')}'", offset=start)
    return int(token), pos


def parse_pgm(data: bytes) -> GrayImage:
    """
    Parse P2 or P5 bytes.

    Raises:
        FormatError: bad magic, malformed header, maxval above 255, truncated
            raster or a sample above maxval; the offset points at the culprit
    """
    magic, _, pos = _next_token(data, 0)
    if magic not in (b"P2", b"P5"):
        raise FormatError(f"Unsupported magic number {magic!r}", offset=0)
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval_offset = pos
    maxval, pos = _header_int(data, pos, "maxval")
    if width == 0 or height == 0:
        raise FormatError(f"Empty raster {width}x{height}", offset=maxval_offset)
    if not 0 < maxval <= 255:
        raise FormatError(f"Unsupported maxval {maxval}, only 8-bit graymaps are read", offset=maxval_offset)

    count = width * height
    if magic == b"P5":
        pos += 1  # single whitespace byte before the raster
        raster = data[pos:pos + count]
        if len(raster) < count:
            raise FormatError(f"Raster truncated: {len(raster)} of {count} bytes", offset=pos + len(raster))
        values = np.frombuffer(raster, dtype=np.uint8).copy()
        over = np.nonzero(values > maxval)[0]
        if over.size:
            raise FormatError(f"Sample {int(values[over[0]])} above maxval {maxval}", offset=pos + int(over[0]))
    else:
        samples: List[int] = []
        for _ in range(count):
            try:
                token, start, pos = _next_token(data, pos)
            except FormatError as e:
                raise FormatError(f"Raster truncated: {len(samples)} of {count} samples", offset=e.offset) from e
            if not token.isdigit() or int(token) > maxval:
                raise FormatError(f"Invalid sample '{token.decode(errors='replace')}'", offset=start)
            samples.append(int(token))
        values = np.array(samples, dtype=np.uint8)
    return GrayImage(pixels=values.reshape(height, width))


def read_pgm(path: PathLike) -> GrayImage:
    """Read a graymap from disk."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise IoError(f"Cannot read {path}: {e}") from e
    img = parse_pgm(data)
    logger.debug(f"Read {img.width}x{img.height} graymap from {path}")
    return img


def encode_pgm(img: GrayImage, mode: Literal["P5", "P2"] = "P5") -> bytes:
    header = f"{mode}\n{img.width} {img.height}\n255\n".encode("ascii")
    if mode == "P5":
        return header + np.ascontiguousarray(img.pixels, dtype=np.uint8).tobytes()
    rows = (" ".join(str(int(v)) for v in row) for row in img.pixels)
    return header + ("\n".join(rows) + "\n").encode("ascii")


def write_pgm(img: GrayImage, path: PathLike, mode: Literal["P5", "P2"] = "P5") -> str:
    """
    Write a graymap, creating parent directories.

    Returns:
        str: Path to the written file
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(encode_pgm(img, mode))
    except OSError as e:
        logger.error(f"Error writing graymap: {str(e)}", exc_info=True)
        raise IoError(f"Cannot write {path}: {e}") from e
    logger.info(f"Wrote {img.width}x{img.height} {mode} graymap to {path}")
    return str(path)
