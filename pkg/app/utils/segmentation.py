"""
Two-class image thresholding by entropy maximization or disentropy minimization.

For every candidate threshold t the pixels split into A (value >= t) and
B (value < t). Each class gets a distribution over its pixels, either
proportional to the pixel value (the default) or to the gray-level
histogram, and the pseudo-additive objectives

    SAB_q = S_q(A) + S_q(B) + (1-q) S_q(A) S_q(B)      (maximized)
    DAB_q = D_q(A) + D_q(B) - (1-q) D_q(A) D_q(B)      (minimized)

are evaluated from the 256-bin histogram, so cost does not grow with the
image size.
"""
import logging
from typing import Literal, Tuple

import numpy as np

from app.exceptions import DegenerateImage, EmptyClass, OutOfRange
from app.models import GrayImage, SegmentationResult
from app.utils.special_functions import wq

logger = logging.getLogger(__name__)

Weighting = Literal["value", "histogram"]
Method = Literal["entropy", "disentropy"]

LEVELS = np.arange(256)


def gray_histogram(img: GrayImage) -> np.ndarray:
    return np.bincount(img.pixels.ravel(), minlength=256)


def _class_measures(hist: np.ndarray, members: np.ndarray, q: float, weighting: Weighting) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Entropy and disentropy of one class for every threshold row.

    Args:
        hist: 256-bin histogram
        members: (T, 256) mask of the levels belonging to the class
        q: Tsallis index
        weighting: "value" (one entry per pixel, p = v / sum v) or
            "histogram" (one entry per level, p = h(v) / sum h)

    Returns:
        (entropy, disentropy, valid) arrays of length T
    """
    if weighting == "value":
        base = LEVELS.astype(float)
        multiplicity = hist.astype(float)
        mass = base * multiplicity
    else:
        base = hist.astype(float)
        multiplicity = (hist > 0).astype(float)
        mass = base

    total = np.sum(np.where(members, mass, 0.0), axis=1)
    valid = total > 0
    present = members & (mass > 0)[None, :] & valid[:, None]
    probs = np.zeros(members.shape)
    probs[present] = (np.broadcast_to(base, members.shape)[present]
                      / np.broadcast_to(total[:, None], members.shape)[present])
    mult = np.where(present, multiplicity[None, :], 0.0)

    w = np.zeros(members.shape)
    w[present] = wq(probs[present], q)
    p_q = np.power(probs, q)
    disentropy = np.sum(mult * p_q * w, axis=1)
    if q == 1.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            logs = np.where(present, np.log(np.where(present, probs, 1.0)), 0.0)
        entropy = -np.sum(mult * probs * logs, axis=1)
    else:
        entropy = (1.0 - np.sum(mult * np.where(present, p_q, 0.0), axis=1)) / (q - 1.0)
    return entropy, disentropy, valid


def segmentation_sweep(img: GrayImage, q: float, weighting: Weighting = "value") -> SegmentationResult:
    """
    Evaluate SAB_q and DAB_q for every threshold between the image's extremes.

    Args:
        img: Gray image with at least two distinct values
        q: Tsallis index in (0, 2]
        weighting: "value" as the class distributions are defined, or "histogram"

    Returns:
        SegmentationResult with t_entropy = argmax SAB_q and t_disentropy =
        argmin DAB_q, ties broken toward the smaller t

    Raises:
        DegenerateImage: fewer than two distinct pixel values
        EmptyClass: no threshold leaves both classes with weight
    """
    if not 0.0 < q <= 2.0:
        raise OutOfRange(f"Segmentation needs q in (0, 2], got {q}")
    hist = gray_histogram(img)
    levels = np.nonzero(hist)[0]
    if levels.size < 2:
        raise DegenerateImage(f"Image has a single gray level {int(levels[0])}")

    thresholds = np.arange(int(levels[0]) + 1, int(levels[-1]) + 1)
    upper = LEVELS[None, :] >= thresholds[:, None]
    s_a, d_a, ok_a = _class_measures(hist, upper, q, weighting)
    s_b, d_b, ok_b = _class_measures(hist, ~upper, q, weighting)
    valid = ok_a & ok_b
    if not np.any(valid):
        raise EmptyClass("Every threshold leaves a class without weight")
    skipped = thresholds[~valid]
    if skipped.size:
        logger.debug(f"Skipped thresholds with an empty class: {skipped.tolist()}")

    s_a, s_b, d_a, d_b = s_a[valid], s_b[valid], d_a[valid], d_b[valid]
    sab = s_a + s_b + (1.0 - q) * s_a * s_b
    dab = d_a + d_b - (1.0 - q) * d_a * d_b
    kept = thresholds[valid]
    result = SegmentationResult(
        q=q,
        weighting=weighting,
        thresholds=kept.tolist(),
        sab=sab.tolist(),
        dab=dab.tolist(),
        t_entropy=int(kept[int(np.argmax(sab))]),
        t_disentropy=int(kept[int(np.argmin(dab))]),
    )
    logger.info(
        f"Segmentation q={q} ({weighting}): t_entropy={result.t_entropy}, t_disentropy={result.t_disentropy}"
    )
    return result


def binarize(img: GrayImage, t: int) -> GrayImage:
    """Pixels below t become 0, the rest 255."""
    return GrayImage(pixels=np.where(img.pixels < t, 0, 255).astype(np.uint8))


def segment(img: GrayImage, q: float, method: Method = "disentropy", weighting: Weighting = "value") -> Tuple[int, GrayImage]:
    """Threshold chosen by the given method and the binarized image."""
    result = segmentation_sweep(img, q, weighting)
    t = result.t_disentropy if method == "disentropy" else result.t_entropy
    return t, binarize(img, t)
