"""Command-line front end: train | compress | decompress | metrics | bench | ec.

Exit codes: 0 on success, 2 on contract errors (bad input, malformed files,
non-divisible dims).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench as bench_mod
from . import container as container_mod
from .decoder import decode_to_frame, dequantize, transpose_decode
from .demosaic import demosaic_bilinear
from .encoder import CompQ, compress, compress_rgb, quantize, select_q_scale
from .entropy import ec_decode, ec_encode, pack_stream, unpack_stream
from .frame_io import RgbImage, extract_crops, load_pgm, load_ppm, save_pgm, save_ppm
from .masks import MaskSet, deserialize_masks, serialize_masks
from .metrics import quality_report
from .rounding import round_half_away
from .trainer import TrainConfig, finalize_mask_set, train_linear_autoencoder


class CliError(ValueError):
    pass


def _load_mask_file(path) -> MaskSet:
    return deserialize_masks(Path(path).read_bytes())


def cmd_train(args) -> int:
    paths = sorted(Path(args.input).glob("*.pgm"))
    if not paths:
        raise CliError(f"no PGM files in {args.input}")
    crops = []
    for i, path in enumerate(paths):
        frame = load_pgm(path)
        crops.extend(extract_crops(frame, args.crop, args.count, args.seed + i))
    cfg = TrainConfig(
        learning_rate=args.lr, epochs=args.epochs, batch_size=args.batch, seed=args.seed
    )
    w, d, report = train_linear_autoencoder(crops, args.kx, args.ky, args.nc, cfg)
    for epoch, value in enumerate(report.epoch_mse):
        print(f"epoch {epoch} mse {value:.6e}")
    print(f"final mse {report.final_mse:.6e}")
    print(f"pca oracle mse {report.pca_mse:.6e}")
    mask_set = finalize_mask_set(w, d, args.bits)
    comp = [compress(crop, mask_set.w_int) for crop in crops]
    mask_set.q_scale = select_q_scale(comp)
    print(f"q_scale {mask_set.q_scale}")
    Path(args.out).write_bytes(serialize_masks(mask_set))
    return 0


def cmd_compress(args) -> int:
    mask_set = _load_mask_file(args.masks)
    if mask_set.q_scale is None:
        raise CliError("mask file has no Q_scale; re-run train")
    suffix = Path(args.input).suffix.lower()
    rgb = suffix == ".ppm"
    if rgb:
        image = load_ppm(args.input)
        nx, ny = image.height, image.width
    else:
        frame = load_pgm(args.input)
        nx, ny = frame.height, frame.width
    if nx % mask_set.kx or ny % mask_set.ky:
        raise CliError(
            f"dims {nx}x{ny} not divisible by {mask_set.kx}x{mask_set.ky}; "
            f"crop to {nx - nx % mask_set.kx}x{ny - ny % mask_set.ky}"
        )
    if rgb:
        raw_planes = compress_rgb(image, mask_set.w_int)
    else:
        raw_planes = [compress(frame, mask_set.w_int)]
    planes = [quantize(c, mask_set.q_scale) for c in raw_planes]
    blob = container_mod.build_container(
        mask_set,
        planes,
        nx,
        ny,
        rgb=rgb,
        ec=args.ec,
        include_kernel=not args.strip_kernel,
    )
    Path(args.out).write_bytes(blob)
    print(f"wrote {args.out} ({len(blob)} bytes)")
    return 0


def _decode_plane(plane: CompQ, d_float: np.ndarray) -> np.ndarray:
    return transpose_decode(dequantize(plane), d_float)


def cmd_decompress(args) -> int:
    cont = container_mod.parse_container(Path(args.input).read_bytes())
    d_float = cont.d_float
    if d_float is None:
        if not args.masks:
            raise CliError("decode kernel unavailable: container has none and no mask file given")
        d_float = _load_mask_file(args.masks).d_float
    if cont.rgb:
        planes = [_decode_plane(p, d_float) for p in cont.planes]
        stacked = np.stack([np.clip(p, 0.0, 255.0) for p in planes])
        image = RgbImage(round_half_away(stacked).astype(np.uint8))
        save_ppm(image, args.out)
    else:
        frame = decode_to_frame(_decode_plane(cont.planes[0], d_float))
        if args.demosaic:
            save_ppm(demosaic_bilinear(frame), args.out)
        else:
            save_pgm(frame, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_metrics(args) -> int:
    if args.rgb:
        a = load_ppm(args.a).planes
        b = load_ppm(args.b).planes
    else:
        a = load_pgm(args.a).samples
        b = load_pgm(args.b).samples
    report = quality_report(a, b)
    print(json.dumps(report.as_dict(), indent=2))
    return 0


def cmd_bench(args) -> int:
    frame = load_pgm(args.input)
    report = bench_mod.bench_encode_vs_dct(frame, args.iterations, args.sample_pixels)
    print(report.format_table(), file=sys.stderr)
    print(report.to_json())
    return 0


def cmd_ec(args) -> int:
    data = Path(args.input).read_bytes()
    if args.action == "encode":
        out = pack_stream(ec_encode(data))
    else:
        stream, _ = unpack_stream(data)
        out = ec_decode(stream)
    Path(args.out).write_bytes(out)
    print(f"wrote {args.out} ({len(out)} bytes)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dlacs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn masks from a directory of PGM frames")
    p.add_argument("--input", required=True, help="directory of training PGMs")
    p.add_argument("--out", required=True, help="output mask file")
    p.add_argument("--kx", type=int, default=8)
    p.add_argument("--ky", type=int, default=8)
    p.add_argument("--nc", type=int, default=4)
    p.add_argument("--bits", type=int, default=4)
    p.add_argument("--crop", type=int, default=128)
    p.add_argument("--count", type=int, default=10, help="crops per input frame")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lr", type=float, default=1e-2)
    p.add_argument("--epochs", type=int, default=200)
    p.add_argument("--batch", type=int, default=64)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("compress", help="compress a PGM (Bayer) or PPM (RGB channel mode)")
    p.add_argument("--input", required=True)
    p.add_argument("--masks", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--ec", action="store_true", help="entropy-code the payload")
    p.add_argument("--strip-kernel", action="store_true", help="omit the decode kernel")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="decode a container to PGM/PPM")
    p.add_argument("--input", required=True)
    p.add_argument("--masks", help="mask file, required if the container has no kernel")
    p.add_argument("--out", required=True)
    p.add_argument("--demosaic", action="store_true", help="demosaic Bayer output to PPM")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("metrics", help="PSNR/SSIM/MSE between two images")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--rgb", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("bench", help="mask encode vs 8x8 DCT timing")
    p.add_argument("--input", required=True)
    p.add_argument("--iterations", type=int, default=5)
    p.add_argument("--sample-pixels", type=int, default=65536)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ec", help="standalone entropy encode/decode of a file")
    p.add_argument("action", choices=["encode", "decode"])
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ec)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
