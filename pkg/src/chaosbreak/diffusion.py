"""XOR-chaining diffusion passes and their inverses.

Images are ``uint8`` arrays of shape ``(H, W, 3)``. The horizontal pass
walks the image in row-major order from the top-left pixel; the vertical
pass walks it column-major from the bottom-right pixel and mixes channels
of the predecessor with :func:`overline` before XORing.

The channel mixer is idempotent (``overline(overline(p)) == overline(p)``),
so the vertical recurrence ``v[t] = u[t] ^ overline(v[t-1])`` unrolls to
``v[t] = u[t] ^ overline(u[0] ^ ... ^ u[t-1])``. That is what lets every
pass here run as a single vectorized prefix-XOR.
"""

from __future__ import annotations

import numpy as np

from .chaos import DimensionError

DKEYS = 16


def check_image(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.shape[0] < 1 or img.shape[1] < 1:
        raise DimensionError(f"expected an HxWx3 image with H, W >= 1, got shape {img.shape}")
    if img.dtype != np.uint8:
        raise DimensionError(f"expected uint8 pixels, got {img.dtype}")
    return img


def same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[:2]} vs {b.shape[:2]}")


def overline(p: np.ndarray) -> np.ndarray:
    """Map ``(r, g, b)`` to ``(g^b, r^b, r^g)``; works on any ``(..., 3)`` array."""
    p = np.asarray(p, dtype=np.uint8)
    s = np.bitwise_xor.reduce(p, axis=-1, keepdims=True)
    return p ^ s


# Scan orders. Row-major is the natural flatten; the vertical scan visits
# k = HW-1, ..., 0 with i = k mod H, j = k // H, i.e. the reversed
# column-major order.

def _row_scan(img: np.ndarray) -> np.ndarray:
    return img.reshape(-1, 3)


def _from_row_scan(seq: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    return seq.reshape(shape)


def _col_scan(img: np.ndarray) -> np.ndarray:
    return img.transpose(1, 0, 2).reshape(-1, 3)[::-1]


def _from_col_scan(seq: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    H, W, _ = shape
    return np.ascontiguousarray(seq[::-1].reshape(W, H, 3).transpose(1, 0, 2))


def _hd_key_stream(n: int, dk: tuple[int, ...]) -> np.ndarray:
    # Step k >= 1 uses Dkey*(k-1): all three channels equal dk[(k-1) mod 16].
    keys = np.asarray(dk, dtype=np.uint8)
    stream = np.zeros((n, 3), dtype=np.uint8)
    stream[1:] = keys[np.arange(n - 1) % DKEYS][:, None]
    return stream


def _vd_key_stream(n: int, dk: tuple[int, ...]) -> np.ndarray:
    # Processing step t >= 1 is k = HW-1-t, so k' = HW-2-k = t-1.
    keys = np.asarray(dk, dtype=np.uint8)
    stream = np.zeros((n, 3), dtype=np.uint8)
    m = np.arange(n - 1, dtype=np.int64)[:, None]
    stream[1:] = keys[(3 * m + np.arange(3)) % DKEYS]
    return stream


def _check_dk(dk: tuple[int, ...]) -> tuple[int, ...]:
    dk = tuple(int(d) for d in dk)
    if len(dk) != DKEYS or any(not 0 <= d <= 255 for d in dk):
        raise ValueError(f"diffusion key set must hold {DKEYS} bytes, got {dk!r}")
    return dk


def _chain(seq: np.ndarray) -> np.ndarray:
    return np.bitwise_xor.accumulate(seq, axis=0)


def _mixed_chain(seq: np.ndarray) -> np.ndarray:
    out = seq.copy()
    out[1:] ^= overline(_chain(seq)[:-1])
    return out


def _mixed_unchain(seq: np.ndarray) -> np.ndarray:
    out = seq.copy()
    out[1:] ^= overline(seq[:-1])
    return out


def _unchain(seq: np.ndarray) -> np.ndarray:
    out = seq.copy()
    out[1:] ^= seq[:-1]
    return out


def horizontal_diffuse(img: np.ndarray) -> np.ndarray:
    img = check_image(img)
    return _from_row_scan(_chain(_row_scan(img)), img.shape)


def horizontal_undiffuse(img: np.ndarray) -> np.ndarray:
    img = check_image(img)
    return _from_row_scan(_unchain(_row_scan(img)), img.shape)


def vertical_diffuse(img: np.ndarray) -> np.ndarray:
    img = check_image(img)
    return _from_col_scan(_mixed_chain(_col_scan(img)), img.shape)


def vertical_undiffuse(img: np.ndarray) -> np.ndarray:
    img = check_image(img)
    return _from_col_scan(_mixed_unchain(_col_scan(img)), img.shape)


def keyed_horizontal_diffuse(img: np.ndarray, dk: tuple[int, ...]) -> np.ndarray:
    img = check_image(img)
    seq = _row_scan(img) ^ _hd_key_stream(img.shape[0] * img.shape[1], _check_dk(dk))
    return _from_row_scan(_chain(seq), img.shape)


def keyed_horizontal_undiffuse(img: np.ndarray, dk: tuple[int, ...]) -> np.ndarray:
    img = check_image(img)
    seq = _unchain(_row_scan(img)) ^ _hd_key_stream(img.shape[0] * img.shape[1], _check_dk(dk))
    return _from_row_scan(seq, img.shape)


def keyed_vertical_diffuse(img: np.ndarray, dk: tuple[int, ...]) -> np.ndarray:
    img = check_image(img)
    seq = _col_scan(img) ^ _vd_key_stream(img.shape[0] * img.shape[1], _check_dk(dk))
    return _from_col_scan(_mixed_chain(seq), img.shape)


def keyed_vertical_undiffuse(img: np.ndarray, dk: tuple[int, ...]) -> np.ndarray:
    img = check_image(img)
    seq = _mixed_unchain(_col_scan(img)) ^ _vd_key_stream(img.shape[0] * img.shape[1], _check_dk(dk))
    return _from_col_scan(seq, img.shape)
