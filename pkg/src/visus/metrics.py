"""Difference and correlation distortion metrics, plus per-channel histograms.

All accumulations are exact 64-bit integer sums (an image of 2**32 pixels
stays below 2**63 even for sums of squared 8-bit values); only the final
ratios are taken in double precision.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, fields

import numpy as np

from ._backend import kernels
from .errors import DimensionMismatch
from .image import RasterImage

CHANNELS = ("R", "G", "B")
PEAK = 255
UNDEFINED = float("nan")
INF = float("inf")

FOOTNOTES = (
    "PSNR = 10*log10(255^2 / MSE) dB.",
    "NAD = sum|x - x'| / sum|x|.",
    "SNR is the linear ratio sum x^2 / sum (x - x')^2.",
    "n/a: original channel is all zero; inf: images are identical on that channel.",
)

LABELS = {
    "max_difference": "Maximum Difference",
    "avg_abs_difference": "Average Absolute Difference",
    "norm_avg_abs_difference": "Norm. Average Absolute Difference",
    "mse": "Mean Square Error",
    "nmse": "Normalized Mean Square Error",
    "snr_linear": "SNR",
    "psnr_db": "PSNR (dB)",
    "image_fidelity": "Image Fidelity",
    "ncc": "Normalized Cross-Correlation",
    "correlation_quality": "Correlation Quality",
}


@dataclass(frozen=True)
class ChannelMetrics:
    max_difference: int
    avg_abs_difference: float
    norm_avg_abs_difference: float
    mse: float
    nmse: float
    snr_linear: float
    psnr_db: float
    image_fidelity: float
    ncc: float
    correlation_quality: float


@dataclass(frozen=True)
class MetricsReport:
    R: ChannelMetrics
    G: ChannelMetrics
    B: ChannelMetrics

    def channel(self, name: str) -> ChannelMetrics:
        return getattr(self, name)

    def as_dict(self) -> dict:
        return {
            ch: {f.name: getattr(self.channel(ch), f.name) for f in fields(ChannelMetrics)}
            for ch in CHANNELS
        }

    def to_json(self, indent=2) -> str:
        doc = {
            "metrics": {
                ch: {k: _json_value(v) for k, v in vals.items()} for ch, vals in self.as_dict().items()
            },
            "notes": list(FOOTNOTES),
        }
        return json.dumps(doc, indent=indent)

    def to_table(self) -> str:
        rows = [("Metric", *CHANNELS)]
        for f in fields(ChannelMetrics):
            rows.append((LABELS[f.name], *(_fmt(getattr(self.channel(ch), f.name)) for ch in CHANNELS)))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = []
        for n, row in enumerate(rows):
            lines.append("  ".join([row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]))
            if n == 0:
                lines.append("  ".join("-" * w for w in widths))
        lines.append("")
        lines.extend(f"* {note}" for note in FOOTNOTES)
        return "\n".join(lines)


def _json_value(v):
    if isinstance(v, float):
        if math.isnan(v):
            return "undefined"
        if math.isinf(v):
            return "+inf" if v > 0 else "-inf"
    return v


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if math.isnan(v):
        return "n/a"
    if math.isinf(v):
        return "inf"
    return f"{v:.10g}"


def _channel(max_abs, sum_abs, sum_x, sum_x2, sum_d2, sum_xy, n) -> ChannelMetrics:
    mse = sum_d2 / n
    if sum_x2 == 0:
        # all-zero original channel
        nad = nmse = snr = ncc = cq = UNDEFINED
    else:
        nad = sum_abs / sum_x
        nmse = sum_d2 / sum_x2
        snr = sum_x2 / sum_d2 if sum_d2 else INF
        ncc = sum_xy / sum_x2
        cq = sum_xy / sum_x
    psnr = 10.0 * math.log10(PEAK * PEAK / mse) if sum_d2 else INF
    return ChannelMetrics(
        max_difference=int(max_abs),
        avg_abs_difference=sum_abs / n,
        norm_avg_abs_difference=nad,
        mse=mse,
        nmse=nmse,
        snr_linear=snr,
        psnr_db=psnr,
        image_fidelity=1.0 - nmse,
        ncc=ncc,
        correlation_quality=cq,
    )


def compute_metrics(original: RasterImage, modified: RasterImage) -> MetricsReport:
    if original.shape != modified.shape:
        raise DimensionMismatch(
            f"images differ in size: {original.width}x{original.height} vs {modified.width}x{modified.height}"
        )
    stats = kernels.channel_stats(original.array, modified.array).tolist()
    n = len(original)
    return MetricsReport(*(_channel(*row, n) for row in stats))


@dataclass(frozen=True, eq=False)
class Histogram:
    """Counts of shape (256, 3): row = sample value, column = channel."""

    counts: np.ndarray

    def channel(self, name: str) -> np.ndarray:
        return self.counts[:, CHANNELS.index(name)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["value", *CHANNELS])
        for v, row in enumerate(self.counts.tolist()):
            writer.writerow([v, *row])
        return buf.getvalue()


def compute_histogram(image: RasterImage) -> Histogram:
    return Histogram(np.asarray(kernels.histogram(image.array), dtype=np.int64))
