"""Deep decompression network: pre-transpose net, transpose layer, post-transpose net.

The pre-transpose net is a three-layer residual conv stack working on the
quantized compressed array; the post-transpose net refines the transposed
frame with exactly 20 conv layers, 19 batch-norm units and 10 leaky-ReLU
activations (a pre-stack module, eight stackable modules, a skip concat and
closing layers ending in Tanh). Both residual exits are zero-initialized so a
fresh network reproduces the linear decode bit for bit.
"""

from __future__ import annotations

import torch
from torch import nn

CHANNELS = 32
KERNEL = 3
NEG_SLOPE = 0.01


class PreTransposeNet(nn.Module):
    """Three convs with ReLU; the 1-channel output is broadcast-added to the input."""

    def __init__(self, nc: int):
        super().__init__()
        self.conv1 = nn.Conv2d(nc, CHANNELS, KERNEL, padding="same")
        self.conv2 = nn.Conv2d(CHANNELS, CHANNELS, KERNEL, padding="same")
        self.conv3 = nn.Conv2d(CHANNELS, 1, KERNEL, padding="same")
        nn.init.zeros_(self.conv3.weight)
        nn.init.zeros_(self.conv3.bias)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        h = torch.relu(self.conv1(x))
        h = torch.relu(self.conv2(h))
        h = torch.relu(self.conv3(h))
        return x + h  # (n, 1, h, w) broadcasts over the n_c channels


class StackableModule(nn.Module):
    """conv-BN-LeakyReLU then conv-BN."""

    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(CHANNELS, CHANNELS, KERNEL, padding="same")
        self.bn1 = nn.BatchNorm2d(CHANNELS)
        self.act = nn.LeakyReLU(NEG_SLOPE)
        self.conv2 = nn.Conv2d(CHANNELS, CHANNELS, KERNEL, padding="same")
        self.bn2 = nn.BatchNorm2d(CHANNELS)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.bn2(self.conv2(self.act(self.bn1(self.conv1(x)))))


class PostTransposeNet(nn.Module):
    """Pre-stack + 8 stackables + skip concat + closing layers + Tanh residual."""

    def __init__(self):
        super().__init__()
        self.pre_conv = nn.Conv2d(1, CHANNELS, KERNEL, padding="same")
        self.pre_bn = nn.BatchNorm2d(CHANNELS)
        self.pre_act = nn.LeakyReLU(NEG_SLOPE)
        self.stack = nn.Sequential(*[StackableModule() for _ in range(8)])
        self.close_conv1 = nn.Conv2d(2 * CHANNELS, CHANNELS, KERNEL, padding="same")
        self.close_bn1 = nn.BatchNorm2d(CHANNELS)
        self.close_act = nn.LeakyReLU(NEG_SLOPE)
        self.close_conv2 = nn.Conv2d(CHANNELS, CHANNELS, KERNEL, padding="same")
        self.close_bn2 = nn.BatchNorm2d(CHANNELS)
        self.out_conv = nn.Conv2d(CHANNELS, 1, KERNEL, padding="same")
        nn.init.zeros_(self.out_conv.weight)
        nn.init.zeros_(self.out_conv.bias)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        p = self.pre_act(self.pre_bn(self.pre_conv(x)))
        s = self.stack(p)
        h = torch.cat([p, s], dim=1)
        h = self.close_act(self.close_bn1(self.close_conv1(h)))
        h = self.close_bn2(self.close_conv2(h))
        return x + torch.tanh(self.out_conv(h))


class DeepDecoder(nn.Module):
    """Full display-side network in [-1, 1] pixel units.

    Input is the dequantized compressed array scaled by 1/(128*Q_scale); the
    transpose layer carries the container's decode kernel, rescaled into the
    same normalized units.
    """

    def __init__(self, kx: int, ky: int, nc: int, q_scale: int):
        super().__init__()
        self.kx, self.ky, self.nc = kx, ky, nc
        self.comp_scale = 128.0 * q_scale
        self.pre = PreTransposeNet(nc)
        self.transpose = nn.ConvTranspose2d(nc, 1, (kx, ky), stride=(kx, ky), bias=False)
        self.post = PostTransposeNet()

    def load_decode_kernel(self, d_float) -> None:
        with torch.no_grad():
            w = torch.as_tensor(d_float, dtype=self.transpose.weight.dtype)
            self.transpose.weight.copy_(w.reshape(self.nc, 1, self.kx, self.ky))

    def forward(self, comp: torch.Tensor) -> torch.Tensor:
        """comp: dequantized values (n, nc, bx, by); returns (n, 1, nx, ny) in [-1, 1]."""
        z = self.pre(comp / self.comp_scale)
        dcomp = self.transpose(z) * self.comp_scale  # pixel units
        return self.post((dcomp - 127.5) / 127.5)


def build_decoder(kx: int, ky: int, nc: int, q_scale: int, d_float, seed: int) -> DeepDecoder:
    torch.manual_seed(seed)
    model = DeepDecoder(kx, ky, nc, q_scale)
    model.load_decode_kernel(d_float)
    return model


def audit_layers(module: nn.Module) -> tuple[int, int, int]:
    """(conv, batch-norm, leaky-ReLU) unit counts under ``module``."""
    conv = sum(1 for m in module.modules() if isinstance(m, nn.Conv2d))
    bn = sum(1 for m in module.modules() if isinstance(m, nn.BatchNorm2d))
    lrelu = sum(1 for m in module.modules() if isinstance(m, nn.LeakyReLU))
    return conv, bn, lrelu
