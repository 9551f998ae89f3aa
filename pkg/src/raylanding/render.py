"""Escape-time pictures with ray overlays."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np
from PIL import Image, ImageDraw

from .maps import MapSpec


@dataclass
class RenderSpec:
    viewport: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax
    width: int = 512
    height: int = 512
    max_iter: int = 200
    rays: list[np.ndarray] = field(default_factory=list)
    markers: list[complex] = field(default_factory=list)

    def __post_init__(self):
        x0, x1, y0, y1 = self.viewport
        if not (x1 > x0 and y1 > y0):
            raise ValueError("viewport must have positive width and height")
        if self.width < 1 or self.height < 1:
            raise ValueError("image size must be positive")


def escape_counts(f: MapSpec, spec: RenderSpec) -> np.ndarray:
    """Iteration at which each pixel escapes, or -1 if it never does within max_iter."""
    x0, x1, y0, y1 = spec.viewport
    xs = np.linspace(x0, x1, spec.width)
    ys = np.linspace(y1, y0, spec.height)
    z = xs[None, :] + 1j * ys[:, None]
    counts = np.full(z.shape, -1, dtype=np.int32)
    alive = np.ones(z.shape, dtype=bool)
    if f.is_poly:
        R = max(2.0, abs(f.c) + 1.0)
        for n in range(spec.max_iter):
            zz = z[alive]
            zz = zz**f.degree + f.c
            z[alive] = zz
            esc = np.zeros_like(alive)
            esc[alive] = np.abs(zz) > R
            counts[esc] = n
            alive &= ~esc
    else:
        # Re z > 50 escapes under e^z + c for any moderate c
        for n in range(spec.max_iter):
            zz = z[alive]
            with np.errstate(over="ignore", invalid="ignore"):
                zz = np.exp(zz) + f.c
            z[alive] = zz
            esc = np.zeros_like(alive)
            esc[alive] = ~np.isfinite(zz) | (zz.real > 50.0)
            counts[esc] = n
            alive &= ~esc
    return counts


def _palette(counts: np.ndarray, max_iter: int) -> np.ndarray:
    img = np.zeros(counts.shape + (3,), dtype=np.uint8)
    esc = counts >= 0
    s = np.sqrt(counts[esc] / max(1, max_iter))
    img[esc, 0] = (255 * np.clip(1.5 * s, 0, 1)).astype(np.uint8)
    img[esc, 1] = (255 * np.clip(s, 0, 1)).astype(np.uint8)
    img[esc, 2] = (255 * np.clip(0.35 + s, 0, 1)).astype(np.uint8)
    return img


def render(f: MapSpec, spec: RenderSpec) -> Image.Image:
    counts = escape_counts(f, spec)
    im = Image.fromarray(_palette(counts, spec.max_iter))
    x0, x1, y0, y1 = spec.viewport

    def px(z: complex) -> tuple[float, float]:
        return ((z.real - x0) / (x1 - x0) * (spec.width - 1),
                (y1 - z.imag) / (y1 - y0) * (spec.height - 1))

    draw = ImageDraw.Draw(im)
    for pts in spec.rays:
        xy = [px(complex(z)) for z in pts if np.isfinite(z)]
        if len(xy) > 1:
            draw.line(xy, fill=(255, 255, 255), width=1)
    for z in spec.markers:
        u, v = px(complex(z))
        draw.ellipse([u - 3, v - 3, u + 3, v + 3], outline=(255, 40, 40), width=2)
    return im


def save_png(im: Image.Image, path) -> str:
    """Write the PNG and return the SHA-256 of its bytes."""
    im.save(path, format="PNG")
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
