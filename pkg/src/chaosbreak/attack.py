"""Equivalent-key attack on PPS09/mPPS09 and the differential bitplane analysis.

Both ciphers reduce to ``C = VD(HD(P)) ^ E`` where the image ``E`` depends
only on the secret key and the image size. One known (plaintext,
ciphertext) pair therefore yields ``E``, which then encrypts and decrypts
all other traffic of that size. The same code path serves both ciphers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chaos import SecretKey, diffusion_keys, random_key
from .cipher import encrypt_mpps09, keystream_images
from .diffusion import (
    check_image,
    horizontal_diffuse,
    horizontal_undiffuse,
    keyed_horizontal_diffuse,
    keyed_vertical_diffuse,
    same_shape,
    vertical_diffuse,
    vertical_undiffuse,
)

CHANNELS = "RGB"


@dataclass(frozen=True)
class EquivalentKey:
    image: np.ndarray

    def __post_init__(self) -> None:
        check_image(self.image)

    @property
    def shape(self) -> tuple[int, int]:
        return self.image.shape[:2]


def _vdhd(img: np.ndarray) -> np.ndarray:
    return vertical_diffuse(horizontal_diffuse(img))


def derive_equivalent_key(plain: np.ndarray, cipher: np.ndarray) -> EquivalentKey:
    plain, cipher = check_image(plain), check_image(cipher)
    same_shape(plain, cipher)
    return EquivalentKey(_vdhd(plain) ^ cipher)


def decrypt_with_equivalent_key(cipher: np.ndarray, ek: EquivalentKey) -> np.ndarray:
    cipher = check_image(cipher)
    same_shape(cipher, ek.image)
    return horizontal_undiffuse(vertical_undiffuse(cipher ^ ek.image))


def encrypt_with_equivalent_key(plain: np.ndarray, ek: EquivalentKey) -> np.ndarray:
    plain = check_image(plain)
    same_shape(plain, ek.image)
    return _vdhd(plain) ^ ek.image


def equivalent_key_from_secret(
    key: SecretKey,
    H: int,
    W: int,
    keyed_hd: Callable[[np.ndarray, tuple[int, ...]], np.ndarray] = keyed_horizontal_diffuse,
    keyed_vd: Callable[[np.ndarray, tuple[int, ...]], np.ndarray] = keyed_vertical_diffuse,
) -> EquivalentKey:
    """Closed-form mPPS09 equivalent key computed directly from the secret key.

    ``VD(HD(Xkey)) ^ VD(mHD(0)) ^ mVD(0) ^ CKS``. The diffusion passes can
    be swapped out so that a faulty implementation can be checked against
    the real cipher.
    """
    dk = diffusion_keys(key)
    xk, cks = keystream_images(key, H, W)
    zero = np.zeros((H, W, 3), dtype=np.uint8)
    return EquivalentKey(
        _vdhd(xk) ^ vertical_diffuse(keyed_hd(zero, dk)) ^ keyed_vd(zero, dk) ^ cks
    )


def differential_pattern(delta: np.ndarray) -> np.ndarray:
    """Ciphertext difference caused by plaintext difference ``delta``, under any key."""
    return _vdhd(check_image(delta))


def one_bit_delta(H: int, W: int, channel: int, i: int, j: int, bit: int) -> np.ndarray:
    if not (0 <= channel < 3 and 0 <= i < H and 0 <= j < W and 0 <= bit < 8):
        raise ValueError(f"flip ({channel}, {i}, {j}, bit {bit}) outside a {H}x{W} image")
    delta = np.zeros((H, W, 3), dtype=np.uint8)
    delta[i, j, channel] = 1 << bit
    return delta


@dataclass(frozen=True)
class BitplaneDiffReport:
    counts: np.ndarray  # (3 channels, 8 bits): positions whose bit differs
    changed_pixels: int

    def nonzero_bits(self) -> set[int]:
        return {int(b) for b in np.flatnonzero(self.counts.any(axis=0))}

    def format(self) -> str:
        lines = ["channel " + " ".join(f"bit{b:<5d}" for b in range(8))]
        for c, row in zip(CHANNELS, self.counts):
            lines.append(f"{c:<7} " + " ".join(f"{int(v):<8d}" for v in row))
        lines.append(f"changed pixels: {self.changed_pixels}")
        return "\n".join(lines)


def bitplane_diff_report(a: np.ndarray, b: np.ndarray) -> BitplaneDiffReport:
    a, b = check_image(a), check_image(b)
    same_shape(a, b)
    diff = a ^ b
    bits = np.unpackbits(diff[..., None], axis=-1, bitorder="little")  # H, W, 3, 8
    counts = bits.reshape(-1, 3, 8).sum(axis=0, dtype=np.int64)
    return BitplaneDiffReport(counts=counts, changed_pixels=int(diff.any(axis=-1).sum()))


@dataclass
class LemmaReport:
    trials: int
    passes: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list[tuple[int, int]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v == self.trials for v in self.passes.values())

    def format(self) -> str:
        lines = [f"{name:<16} {n}/{self.trials}" for name, n in self.passes.items()]
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)


CHECKS = ("hd-linearity", "vd-linearity", "lemma1", "lemma2", "proposition")
DEGENERATE_SIZES = ((1, 1), (1, 7), (5, 1), (1, 16), (16, 1))


def _trial_size(rng: np.random.Generator, t: int) -> tuple[int, int]:
    if t < len(DEGENERATE_SIZES):
        return DEGENERATE_SIZES[t]
    return int(rng.integers(1, 17)), int(rng.integers(1, 17))


def verify_lemmas(
    trials: int,
    rng_seed: int,
    keyed_hd: Callable[[np.ndarray, tuple[int, ...]], np.ndarray] = keyed_horizontal_diffuse,
    keyed_vd: Callable[[np.ndarray, tuple[int, ...]], np.ndarray] = keyed_vertical_diffuse,
    sizes: list[tuple[int, int]] | None = None,
) -> LemmaReport:
    """Check the structural identities exactly on random images and keys.

    The XOR-linearity of HD/VD, mHD(X) = HD(X) ^ mHD(0), mVD(X) = VD(X) ^ mVD(0),
    and the closed form of mPPS09 encryption against the real cipher. Each
    trial draws from its own sub-seed, so the report does not depend on
    evaluation order. The first trials cover degenerate sizes unless
    ``sizes`` is given.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    report = LemmaReport(trials, {c: 0 for c in CHECKS}, {c: [] for c in CHECKS})
    for t, seq in enumerate(np.random.SeedSequence(rng_seed).spawn(trials)):
        rng = np.random.default_rng(seq)
        H, W = sizes[t % len(sizes)] if sizes else _trial_size(rng, t)
        x, y = (rng.integers(0, 256, (H, W, 3), dtype=np.uint8) for _ in range(2))
        key = random_key(rng)
        dk = tuple(int(v) for v in rng.integers(0, 256, 16))
        zero = np.zeros_like(x)
        results = {
            "hd-linearity": horizontal_diffuse(x ^ y) == horizontal_diffuse(x) ^ horizontal_diffuse(y),
            "vd-linearity": vertical_diffuse(x ^ y) == vertical_diffuse(x) ^ vertical_diffuse(y),
            "lemma1": keyed_hd(x, dk) == horizontal_diffuse(x) ^ keyed_hd(zero, dk),
            "lemma2": keyed_vd(x, dk) == vertical_diffuse(x) ^ keyed_vd(zero, dk),
            "proposition": encrypt_mpps09(x, key)
            == _vdhd(x) ^ equivalent_key_from_secret(key, H, W, keyed_hd, keyed_vd).image,
        }
        for name, eq in results.items():
            if np.all(eq):
                report.passes[name] += 1
            else:
                report.failures[name].append((H, W))
    return report
