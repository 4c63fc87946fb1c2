"""PPS09 and mPPS09 encryption and decryption pipelines."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .chaos import SecretKey, cks_image, diffusion_keys, xkey_image
from .diffusion import (
    check_image,
    horizontal_diffuse,
    horizontal_undiffuse,
    keyed_horizontal_diffuse,
    keyed_horizontal_undiffuse,
    keyed_vertical_diffuse,
    keyed_vertical_undiffuse,
    vertical_diffuse,
    vertical_undiffuse,
)


@lru_cache(maxsize=32)
def _masks(key: SecretKey, H: int, W: int) -> tuple[np.ndarray, np.ndarray]:
    xk, cks = xkey_image(key, H, W), cks_image(key, H, W)
    xk.flags.writeable = False
    cks.flags.writeable = False
    return xk, cks


def keystream_images(key: SecretKey, H: int, W: int) -> tuple[np.ndarray, np.ndarray]:
    """Return the (XOR-key image, chaotic keystream image) pair, cached per key and size."""
    return _masks(key, H, W)


def encrypt_pps09(plain: np.ndarray, key: SecretKey) -> np.ndarray:
    plain = check_image(plain)
    xk, cks = _masks(key, *plain.shape[:2])
    return vertical_diffuse(horizontal_diffuse(plain ^ xk)) ^ cks


def decrypt_pps09(cipher: np.ndarray, key: SecretKey) -> np.ndarray:
    cipher = check_image(cipher)
    xk, cks = _masks(key, *cipher.shape[:2])
    return horizontal_undiffuse(vertical_undiffuse(cipher ^ cks)) ^ xk


def encrypt_mpps09(plain: np.ndarray, key: SecretKey, dk: tuple[int, ...] | None = None) -> np.ndarray:
    """Encrypt with the key-dependent diffusion passes.

    ``dk`` overrides the diffusion keys derived from ``key``; passing
    sixteen zeros reduces the cipher to PPS09.
    """
    plain = check_image(plain)
    dk = diffusion_keys(key) if dk is None else dk
    xk, cks = _masks(key, *plain.shape[:2])
    return keyed_vertical_diffuse(keyed_horizontal_diffuse(plain ^ xk, dk), dk) ^ cks


def decrypt_mpps09(cipher: np.ndarray, key: SecretKey, dk: tuple[int, ...] | None = None) -> np.ndarray:
    cipher = check_image(cipher)
    dk = diffusion_keys(key) if dk is None else dk
    xk, cks = _masks(key, *cipher.shape[:2])
    return keyed_horizontal_undiffuse(keyed_vertical_undiffuse(cipher ^ cks, dk), dk) ^ xk


CIPHERS = {
    "pps09": (encrypt_pps09, decrypt_pps09),
    "mpps09": (encrypt_mpps09, decrypt_mpps09),
}
