"""Deep decompression for DLACS containers.

A pre-transpose residual network, the linear transpose layer initialized from
the container's decode kernel, and a post-transpose refinement network;
identity at initialization, trained against ground-truth crops.
"""

from .archive import load_archive, save_archive
from .container import ContainerView, parse_container
from .infer import nn_decompress
from .model import DeepDecoder, PostTransposeNet, PreTransposeNet, audit_layers, build_decoder
from .training import gradient_check, train_decoder

__version__ = "0.1.0"
