"""Chaotic maps and the key schedule of the PPS09/mPPS09 image ciphers.

Everything here is a pure function of a :class:`SecretKey`: the four XOR
keys, the sixteen diffusion keys, and the two keystream pseudo-images
(the tiled XOR-key image and the chaotic keystream image).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

import numpy as np

TWO_PI = 2.0 * math.pi
DIGITS = 15


class InvalidStateError(ValueError):
    """A chaotic map was started from a state outside its domain."""


class KeyFormatError(ValueError):
    """Secret-key material is malformed or out of range."""


class DimensionError(ValueError):
    """Image dimensions are empty or do not match."""


@dataclass(frozen=True)
class SecretKey:
    x0: float
    y0: float
    K: float
    N: int
    x0_digits: tuple[int, ...]
    y0_digits: tuple[int, ...]
    K_digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0.0 < self.x0 < TWO_PI:
            raise KeyFormatError(f"x0={self.x0!r} violates 0 < x0 < 2*pi")
        if not 0.0 < self.y0 < TWO_PI:
            raise KeyFormatError(f"y0={self.y0!r} violates 0 < y0 < 2*pi")
        if not self.K > 18.0 or not math.isfinite(self.K):
            raise KeyFormatError(f"K={self.K!r} violates K > 18")
        if not 100 < self.N < 1100:
            raise KeyFormatError(f"N={self.N!r} violates 100 < N < 1100")
        for name in ("x0_digits", "y0_digits", "K_digits"):
            digits = getattr(self, name)
            if len(digits) != DIGITS or any(not 0 <= d <= 9 for d in digits):
                raise KeyFormatError(f"{name} must hold {DIGITS} decimal digits, got {digits!r}")

    @classmethod
    def parse(cls, x0: str, y0: str, K: str, N: str) -> SecretKey:
        """Build a key from decimal strings.

        Digit lists are read from the strings themselves, so they are exact.
        For ``x0`` and ``y0`` the first digit is the integer part; for ``K``
        it is the digit immediately left of the decimal point. The next 14
        digits are fractional digits, right-padded with zeros when the
        string is shorter.
        """
        try:
            n = int(N.strip())
        except ValueError:
            raise KeyFormatError(f"N must be an integer, got {N!r}") from None
        return cls(
            x0=_parse_real("x0", x0),
            y0=_parse_real("y0", y0),
            K=_parse_real("K", K),
            N=n,
            x0_digits=_digits("x0", x0),
            y0_digits=_digits("y0", y0),
            K_digits=_digits("K", K),
        )

    def strings(self) -> tuple[str, str, str, str]:
        """Decimal strings that :meth:`parse` maps back to this key."""
        def fmt(digits: tuple[int, ...], value: float) -> str:
            head = str(int(value))[:-1]
            return head + str(digits[0]) + "." + "".join(map(str, digits[1:]))

        return (
            fmt(self.x0_digits, self.x0),
            fmt(self.y0_digits, self.y0),
            fmt(self.K_digits, self.K),
            str(self.N),
        )


def _parse_real(name: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise KeyFormatError(f"{name} is not a decimal number: {text!r}") from None
    if not math.isfinite(value):
        raise KeyFormatError(f"{name} must be finite, got {text!r}")
    return value


def _digits(name: str, text: str) -> tuple[int, ...]:
    try:
        dec = Decimal(text.strip())
    except InvalidOperation:
        raise KeyFormatError(f"{name} is not a decimal number: {text!r}") from None
    if not dec.is_finite() or dec < 0:
        raise KeyFormatError(f"{name} must be a finite non-negative decimal, got {text!r}")
    whole, _, frac = format(dec, "f").partition(".")
    frac = (frac + "0" * (DIGITS - 1))[: DIGITS - 1]
    return tuple(int(c) for c in whole[-1] + frac)


def random_key(rng: np.random.Generator, k_max: float = 2000.0) -> SecretKey:
    """Draw a key uniformly from the valid ranges, with K in (18, k_max].

    Values are rounded to 14 fractional digits so that the decimal string
    and the float agree; draws that round onto a range bound are redrawn.
    """
    while True:
        x0 = rng.uniform(0.0, TWO_PI)
        y0 = rng.uniform(0.0, TWO_PI)
        K = 18.0 + (k_max - 18.0) * (1.0 - rng.random())
        N = int(rng.integers(101, 1100))
        try:
            return SecretKey.parse(f"{x0:.14f}", f"{y0:.14f}", f"{K:.14f}", str(N))
        except KeyFormatError:
            continue


def iterate_standard_map(x: float, y: float, K: float, n: int) -> list[tuple[float, float]]:
    """Return ``n`` successive states of the standard map.

    The update is sequential: x moves first, then y uses the new x and
    ``sin`` of the old y.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(K)):
        raise InvalidStateError(f"non-finite standard-map state ({x}, {y}, K={K})")
    sin = math.sin
    states = []
    for _ in range(n):
        kick = K * sin(y)
        x = (x + kick) % TWO_PI
        y = (y + x + kick) % TWO_PI
        states.append((x, y))
    return states


def iterate_logistic(z: float, n: int) -> list[float]:
    """Return ``n`` successive values of ``z <- 4 z (1 - z)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= z <= 1.0:
        raise InvalidStateError(f"logistic state {z!r} outside [0, 1]")
    out = []
    for _ in range(n):
        z = 4.0 * z * (1.0 - z)
        out.append(z)
    return out


def xor_keys(key: SecretKey) -> tuple[int, int, int, int]:
    return (
        min(int(256.0 * key.x0 / TWO_PI), 255),
        min(int(256.0 * key.y0 / TWO_PI), 255),
        int(math.floor(key.K % 256.0)),
        key.N % 256,
    )


def diffusion_keys(key: SecretKey) -> tuple[int, ...]:
    """The 16 diffusion keys: three-digit groups of x0, y0 and K, then N."""
    out = []
    for digits in (key.x0_digits, key.y0_digits, key.K_digits):
        if len(digits) != DIGITS:
            raise KeyFormatError(f"expected {DIGITS} digits, got {len(digits)}")
        for g in range(0, DIGITS, 3):
            d1, d2, d3 = digits[g : g + 3]
            out.append((100 * d1 + 10 * d2 + d3) % 256)
    out.append(key.N % 256)
    return tuple(out)


def _check_dims(H: int, W: int) -> None:
    if H < 1 or W < 1:
        raise DimensionError(f"image dimensions must be positive, got {H}x{W}")


def xkey_image(key: SecretKey, H: int, W: int) -> np.ndarray:
    _check_dims(H, W)
    keys = np.array(xor_keys(key), dtype=np.uint8)
    k = np.arange(H * W, dtype=np.int64)[:, None]
    idx = (3 * k + np.arange(3)) % 4
    return keys[idx].reshape(H, W, 3)


def quantize_angle(v: np.ndarray) -> np.ndarray:
    return np.minimum(np.floor(256.0 * np.asarray(v) / TWO_PI), 255).astype(np.uint8)


def quantize_unit(z: np.ndarray) -> np.ndarray:
    return np.minimum(np.floor(256.0 * np.asarray(z)), 255).astype(np.uint8)


def _warm_orbits(key: SecretKey, length: int) -> tuple[list[tuple[float, float]], list[float]]:
    warm = iterate_standard_map(key.x0, key.y0, key.K, key.N)
    xs, ys = warm[-1]
    std = iterate_standard_map(xs, ys, key.K, length)
    z = iterate_logistic((xs + ys) % 1.0, key.N)[-1]
    return std, iterate_logistic(z, length)


def cks_image(key: SecretKey, H: int, W: int) -> np.ndarray:
    """Keystream pseudo-image: R, G from the standard-map orbit, B from the logistic orbit.

    Both maps run N warm-up steps before H*W states are recorded. The
    logistic seed is taken from the standard-map state after warm-up.
    """
    _check_dims(H, W)
    std, zs = _warm_orbits(key, H * W)
    xy = np.array(std, dtype=np.float64)
    out = np.empty((H * W, 3), dtype=np.uint8)
    out[:, 0] = quantize_angle(xy[:, 0])
    out[:, 1] = quantize_angle(xy[:, 1])
    out[:, 2] = quantize_unit(np.array(zs, dtype=np.float64))
    return out.reshape(H, W, 3)
