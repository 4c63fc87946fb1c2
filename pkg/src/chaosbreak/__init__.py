"""Cryptanalysis workbench for the PPS09 and mPPS09 chaotic image ciphers."""

from .attack import (
    BitplaneDiffReport,
    EquivalentKey,
    bitplane_diff_report,
    decrypt_with_equivalent_key,
    derive_equivalent_key,
    differential_pattern,
    encrypt_with_equivalent_key,
    verify_lemmas,
)
from .chaos import SecretKey, cks_image, diffusion_keys, xkey_image, xor_keys
from .cipher import decrypt_mpps09, decrypt_pps09, encrypt_mpps09, encrypt_pps09
from .pnm import load_image, save_image

__all__ = [
    "BitplaneDiffReport",
    "EquivalentKey",
    "SecretKey",
    "bitplane_diff_report",
    "cks_image",
    "decrypt_mpps09",
    "decrypt_pps09",
    "decrypt_with_equivalent_key",
    "derive_equivalent_key",
    "differential_pattern",
    "diffusion_keys",
    "encrypt_mpps09",
    "encrypt_pps09",
    "encrypt_with_equivalent_key",
    "load_image",
    "save_image",
    "verify_lemmas",
    "xkey_image",
    "xor_keys",
]
