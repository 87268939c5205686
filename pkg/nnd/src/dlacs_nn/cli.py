"""Deep-decoder CLI: nn-train | nn-decompress.

Exit codes: 0 on success, 2 on contract errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .archive import save_archive
from .infer import nn_decompress
from .pgm import save_pgm
from .training import train_decoder


def cmd_nn_train(args) -> int:
    containers = sorted(Path(args.data).glob("*.dlacs"))
    pairs = []
    for c in containers:
        target = c.with_suffix(".pgm")
        if target.exists():
            pairs.append((c, target))
    if not pairs:
        raise ValueError(f"no container/PGM pairs in {args.data}")
    weights, trace = train_decoder(
        pairs, epochs=args.epochs, lr=args.lr, seed=args.seed, batch_size=args.batch
    )
    for epoch, value in enumerate(trace):
        print(f"epoch {epoch} mse {value:.6e}")
    save_archive(args.out, weights)
    print(f"wrote {args.out}")
    return 0


def cmd_nn_decompress(args) -> int:
    samples = nn_decompress(
        Path(args.input).read_bytes(),
        weights_path=args.weights,
        seed=args.seed,
    )
    save_pgm(samples, args.out)
    print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlacs-nn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nn-train", help="train the deep decoder on container/PGM pairs")
    p.add_argument("--data", required=True, help="directory of matching *.dlacs and *.pgm files")
    p.add_argument("--out", required=True, help="output tensor archive")
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--batch", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_nn_train)

    p = sub.add_parser("nn-decompress", help="decode a container with the deep network")
    p.add_argument("--input", required=True)
    p.add_argument("--weights", help="tensor archive; omitted = identity-initialized network")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_nn_decompress)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
