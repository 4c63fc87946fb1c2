"""Binary PPM (P6, maxval 255) reading and writing."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .diffusion import check_image

WHITESPACE = b" \t\n\r\v\f"


class PnmFormatError(ValueError):
    pass


def _tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` header tokens, skipping comments. Returns tokens and payload offset."""
    pos, out = 0, []
    while len(out) < count:
        if pos >= len(data):
            raise PnmFormatError(f"header truncated at byte {pos}")
        if data[pos] in WHITESPACE:
            pos += 1
        elif data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise PnmFormatError(f"unterminated comment at byte {pos}")
            pos = end + 1
        else:
            start = pos
            while pos < len(data) and data[pos] not in WHITESPACE and data[pos : pos + 1] != b"#":
                pos += 1
            out.append(data[start:pos])
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos] not in WHITESPACE:
        raise PnmFormatError(f"expected whitespace after header at byte {pos}")
    return out, pos + 1


def decode_ppm(data: bytes) -> np.ndarray:
    if not data.startswith(b"P6"):
        raise PnmFormatError(f"bad magic {data[:2]!r} at byte 0, expected b'P6'")
    tokens, offset = _tokens(data, 4)
    if tokens[0] != b"P6":
        raise PnmFormatError(f"bad magic {tokens[0][:8]!r} at byte 0, expected b'P6'")
    try:
        W, H, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise PnmFormatError(f"non-numeric header field in {tokens[1:]!r}") from None
    if maxval != 255:
        raise PnmFormatError(f"maxval {maxval} unsupported, expected 255")
    if W < 1 or H < 1:
        raise PnmFormatError(f"image dimensions must be positive, got {W}x{H}")
    size = 3 * H * W
    payload = data[offset : offset + size]
    if len(payload) < size:
        raise PnmFormatError(
            f"truncated payload: expected {size} bytes from byte {offset}, "
            f"file ends at byte {len(data)}"
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(H, W, 3).copy()


def encode_ppm(img: np.ndarray) -> bytes:
    img = check_image(img)
    H, W, _ = img.shape
    return b"P6\n%d %d\n255\n" % (W, H) + np.ascontiguousarray(img).tobytes()


def load_image(path: str | Path) -> np.ndarray:
    return decode_ppm(Path(path).read_bytes())


def save_image(img: np.ndarray, path: str | Path) -> None:
    Path(path).write_bytes(encode_ppm(img))
