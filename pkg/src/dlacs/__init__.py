"""Blind compressive-sampling image codec.

Capture side: integer-mask block encoding with quantization and optional
arithmetic entropy coding. Display side: learned linear transpose decode.
Plus mask training, quality metrics, baselines and a complexity benchmark
against the 8x8 DCT.
"""

from .bench import BenchReport, OpCount, bench_encode_vs_dct, count_ops, daus_baseline, dct8x8, idct8x8
from .container import Container, build_container, parse_container
from .decoder import decode_to_frame, dequantize, transpose_decode
from .demosaic import demosaic_bilinear
from .encoder import (
    CodecMode,
    CompQ,
    CompRaw,
    compress,
    compress_float,
    compress_rgb,
    compression_ratio,
    quantize,
    select_q_scale,
)
from .entropy import EcStream, ec_decode, ec_encode
from .frame_io import (
    BayerFrame,
    Pattern,
    RgbImage,
    extract_crops,
    load_pgm,
    load_ppm,
    save_pgm,
    save_ppm,
)
from .masks import MaskSet, deserialize_masks, effective_encoder, integerize_masks, serialize_masks
from .metrics import QualityReport, mse, psnr, quality_report, ssim
from .trainer import (
    TrainConfig,
    TrainReport,
    finalize_mask_set,
    pca_block_oracle,
    train_linear_autoencoder,
)

__version__ = "0.1.0"
