"""Command-line front end.

Every subcommand reads and writes binary PPM (P6) images. Errors print a
single ``error: ...`` line to stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import attack, cipher, stats
from .chaos import SecretKey
from .pnm import load_image, save_image


def parse_key(spec: str) -> SecretKey:
    """Parse ``x0,y0,K,N`` into a :class:`SecretKey`."""
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != 4:
        raise ValueError(f"key must be x0,y0,K,N; got {len(parts)} field(s)")
    return SecretKey.parse(*parts)


def _flip(spec: str) -> tuple[int, int, int, int]:
    ch, i, j, bit = (p.strip() for p in spec.split(","))
    channel = "RGB".index(ch.upper()) if ch.upper() in ("R", "G", "B") else int(ch)
    return channel, int(i), int(j), int(bit)


def cmd_encrypt(args: argparse.Namespace) -> None:
    enc, _ = cipher.CIPHERS[args.cipher]
    key = parse_key(args.key)
    save_image(enc(load_image(args.inp), key), args.out)


def cmd_decrypt(args: argparse.Namespace) -> None:
    _, dec = cipher.CIPHERS[args.cipher]
    key = parse_key(args.key)
    save_image(dec(load_image(args.inp), key), args.out)


def cmd_attack_derive(args: argparse.Namespace) -> None:
    ek = attack.derive_equivalent_key(load_image(args.plain), load_image(args.cipher_img))
    save_image(ek.image, args.out_eqkey)


def cmd_attack_decrypt(args: argparse.Namespace) -> None:
    ek = attack.EquivalentKey(load_image(args.eqkey))
    save_image(attack.decrypt_with_equivalent_key(load_image(args.inp), ek), args.out)


def cmd_attack_encrypt(args: argparse.Namespace) -> None:
    ek = attack.EquivalentKey(load_image(args.eqkey))
    save_image(attack.encrypt_with_equivalent_key(load_image(args.inp), ek), args.out)


def cmd_diff_pattern(args: argparse.Namespace) -> None:
    if args.delta:
        delta = load_image(args.delta)
    else:
        channel, i, j, bit = _flip(args.flip)
        delta = attack.one_bit_delta(args.height, args.width, channel, i, j, bit)
    pattern = attack.differential_pattern(delta)
    save_image(pattern, args.out)
    print(attack.bitplane_diff_report(pattern, np.zeros_like(pattern)).format())


def cmd_bitplane_report(args: argparse.Namespace) -> None:
    print(attack.bitplane_diff_report(load_image(args.a), load_image(args.b)).format())


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    report = attack.verify_lemmas(args.trials, args.seed)
    print(report.format())
    return 0 if report.ok else 1


def cmd_randomness(args: argparse.Namespace) -> None:
    report = stats.run_table1_experiment(args.keys, args.height, args.width, args.seed, args.workers)
    print(report.summary())
    if args.csv_out:
        report.write_csv(args.csv_out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaosbreak",
        description="Encrypt, decrypt and break the PPS09/mPPS09 chaotic image ciphers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func in (("encrypt", cmd_encrypt), ("decrypt", cmd_decrypt)):
        p = sub.add_parser(name, help=f"{name} a P6 image")
        p.add_argument("--cipher", choices=sorted(cipher.CIPHERS), default="mpps09")
        p.add_argument("--key", required=True, help="x0,y0,K,N as decimal strings")
        p.add_argument("--in", dest="inp", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("attack-derive", help="derive the equivalent key from a known pair")
    p.add_argument("--plain", required=True)
    p.add_argument("--cipher-img", required=True)
    p.add_argument("--out-eqkey", required=True)
    p.set_defaults(func=cmd_attack_derive)

    for name, func in (("attack-decrypt", cmd_attack_decrypt), ("attack-encrypt", cmd_attack_encrypt)):
        p = sub.add_parser(name, help=f"{name.split('-')[1]} with an equivalent key")
        p.add_argument("--eqkey", required=True)
        p.add_argument("--in", dest="inp", required=True)
        p.add_argument("--out", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("diff-pattern", help="ciphertext difference pattern VD(HD(delta))")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--delta", help="difference image")
    src.add_argument("--flip", help="CH,i,j,bit: one-bit difference in an empty image")
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_diff_pattern)

    p = sub.add_parser("bitplane-report", help="count differing bits per channel and bitplane")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_bitplane_report)

    p = sub.add_parser("verify-lemmas", help="check the structural identities on random inputs")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lemmas)

    p = sub.add_parser("randomness", help="randomness tests on the blue-channel keystream")
    p.add_argument("--keys", type=int, default=100)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--csv-out")
    p.set_defaults(func=cmd_randomness)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
