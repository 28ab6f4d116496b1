"""PGM reader/writer - binary (P5) and ASCII (P2) greymaps, maxval <= 255."""

import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from .image import Image

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\n\r\v\f"


class PgmFormatError(ValueError):
    """Raised for malformed, truncated or unsupported PGM data."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def _read_header(data: bytes) -> Tuple[bytes, List[int], int]:
    """
    Tokenize magic, width, height and maxval.

    Returns:
        (magic, [width, height, maxval], offset of first payload byte)
    """
    tokens: List[Tuple[bytes, int]] = []
    pos = 0

    while len(tokens) < 4:
        while pos < len(data) and data[pos] in _WHITESPACE:
            pos += 1
        if pos >= len(data):
            raise PgmFormatError("Truncated header", pos)
        if data[pos:pos + 1] == b"#":
            newline = data.find(b"\n", pos)
            pos = len(data) if newline < 0 else newline + 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append((data[start:pos], start))

    magic, magic_offset = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise PgmFormatError(f"Unsupported magic number {magic!r}, expected P2 or P5", magic_offset)

    values = []
    for token, offset in tokens[1:]:
        if not token.isdigit():
            raise PgmFormatError(f"Expected a decimal integer, got {token!r}", offset)
        values.append(int(token))

    width, height, maxval = values
    if width < 1 or height < 1:
        raise PgmFormatError(f"Image size must be at least 1x1, got {width}x{height}", tokens[1][1])
    if not 1 <= maxval <= 255:
        raise PgmFormatError(f"Unsupported maxval {maxval}, expected 1..255", tokens[3][1])

    # exactly one whitespace byte separates maxval from a binary raster
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        if magic == b"P5":
            raise PgmFormatError("Missing whitespace after maxval", pos)
    else:
        pos += 1

    return magic, values, pos


def read_pgm(data: bytes) -> Image:
    """
    Decode PGM bytes to an Image.

    Samples are scaled to the [0, 255] range when maxval is below 255.

    Args:
        data: Raw PGM file content (P2 or P5)

    Returns:
        Decoded image

    Raises:
        PgmFormatError: On malformed header, truncated payload or maxval > 255

    Example:
        >>> img = read_pgm(b"P5 2 2 255\\n" + bytes([0, 64, 128, 255]))
        >>> img.pixels.tolist()
        [[0.0, 64.0], [128.0, 255.0]]
    """
    magic, (width, height, maxval), offset = _read_header(data)
    count = width * height

    if magic == b"P5":
        payload = data[offset:offset + count]
        if len(payload) < count:
            raise PgmFormatError(
                f"Truncated payload: expected {count} bytes, got {len(payload)}",
                offset + len(payload),
            )
        samples = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
        too_large = np.flatnonzero(samples > maxval)
        if too_large.size:
            raise PgmFormatError(f"Sample exceeds maxval {maxval}", offset + int(too_large[0]))
    else:
        samples = np.empty(count, dtype=np.float64)
        pos = offset
        for i in range(count):
            while pos < len(data) and data[pos] in _WHITESPACE:
                pos += 1
            start = pos
            while pos < len(data) and data[pos] not in _WHITESPACE:
                pos += 1
            token = data[start:pos]
            if not token:
                raise PgmFormatError(f"Truncated payload: expected {count} samples, got {i}", pos)
            if not token.isdigit() or int(token) > maxval:
                raise PgmFormatError(f"Invalid sample {token!r}", start)
            samples[i] = int(token)

    if maxval != 255:
        samples = samples * (255.0 / maxval)

    return Image(samples.reshape(height, width))


def write_pgm(img: Image) -> bytes:
    """
    Encode an Image as binary PGM (P5, maxval 255).

    Values are rounded to the nearest integer and clamped to [0, 255].

    Example:
        >>> write_pgm(Image.from_rows([[255.4]]))[-1]
        255
    """
    rounded = np.floor(img.pixels + 0.5)
    clamped = np.clip(rounded, 0, 255)

    n_clamped = int(np.count_nonzero(clamped != rounded))
    if n_clamped:
        logger.warning(f"Clamped {n_clamped} pixel(s) to [0, 255] on PGM write")

    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + clamped.astype(np.uint8).tobytes()


def load_pgm(file_path: Union[str, Path]) -> Image:
    """
    Read a PGM file from disk.

    Raises:
        FileNotFoundError: If file doesn't exist
        PgmFormatError: If content is not a valid PGM
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")

    return read_pgm(file_path.read_bytes())


def save_pgm(img: Image, output_path: Union[str, Path]) -> Path:
    """
    Write an image as binary PGM, creating parent directories if needed.

    Returns:
        Path to created file
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    try:
        output_path.write_bytes(write_pgm(img))
    except OSError as e:
        raise OSError(f"Failed to write file {output_path}: {e}") from e

    return output_path
