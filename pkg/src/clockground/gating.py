"""Confidence gating and static-ROI consensus over per-frame detections.

A frame is accepted only when both scoreboard regions clear the confidence
threshold; otherwise the frame yields an empty result and becomes an
interpolation target downstream. Accepted boxes are then reduced to one
static ROI per region, since scorebugs do not move.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import NoDetectionsError, UnstableRoiError
from .types import Bbox, Detection, RegionKind

#: Minimum fraction of accepted boxes that must overlap the consensus box.
ROI_SUPPORT_MIN = 0.8

#: Overlap threshold for counting a box as supporting the consensus.
ROI_SUPPORT_IOU = 0.5


def detection_score(det: Detection) -> float:
    """Combined confidence: objectness times estimated localization overlap."""
    return det.object_prob * det.iou_est


@dataclass(frozen=True)
class GatedRegions:
    """Outcome of gating one frame: both boxes, or nothing."""

    time_bbox: Optional[Bbox]
    quarter_bbox: Optional[Bbox]
    accepted: bool

    def bbox_for(self, region: RegionKind) -> Optional[Bbox]:
        if region is RegionKind.TIME_REMAINING:
            return self.time_bbox
        return self.quarter_bbox


EMPTY_GATE = GatedRegions(None, None, False)


def gate_frame(dets: Sequence[Detection], threshold: float) -> GatedRegions:
    """Gate one frame's detections against a confidence threshold.

    Accepts only when each region kind has at least one detection scoring
    at or above the threshold; the highest-scoring box per region wins.
    A frame missing either region yields the empty result, never an error.
    """
    best: dict[RegionKind, tuple[float, Detection]] = {}
    for det in dets:
        score = detection_score(det)
        if score < threshold:
            continue
        kept = best.get(det.region)
        if kept is None or score > kept[0]:
            best[det.region] = (score, det)
    if RegionKind.TIME_REMAINING in best and RegionKind.QUARTER in best:
        return GatedRegions(
            time_bbox=best[RegionKind.TIME_REMAINING][1].bbox,
            quarter_bbox=best[RegionKind.QUARTER][1].bbox,
            accepted=True,
        )
    return EMPTY_GATE


def bbox_iou(a: Bbox, b: Bbox) -> float:
    """Intersection-over-union of two (x, y, w, h) boxes."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    union = aw * ah + bw * bh - inter
    if union <= 0:
        return 0.0
    return inter / union


@dataclass(frozen=True)
class RegionConsensus:
    """Consensus box for one region plus how well detections agree on it."""

    bbox: Bbox
    support_count: int
    support_fraction: float


@dataclass(frozen=True)
class StaticRoi:
    """Per-region consensus ROI assumed fixed for the whole video."""

    regions: Mapping[RegionKind, RegionConsensus]

    def bbox_for(self, region: RegionKind) -> Bbox:
        return self.regions[region].bbox


def consensus_roi(frames: Sequence[tuple[int, GatedRegions]]) -> StaticRoi:
    """Reduce accepted per-frame boxes to one static ROI per region.

    The consensus is the component-wise median, which shrugs off the odd
    frame where the bug is occluded or briefly displaced. Raises
    NoDetectionsError when no frame was accepted and UnstableRoiError when
    fewer than ROI_SUPPORT_MIN of the accepted boxes overlap the consensus.
    """
    accepted = [gated for _, gated in frames if gated.accepted]
    if not accepted:
        raise NoDetectionsError("no frame passed confidence gating")
    regions: dict[RegionKind, RegionConsensus] = {}
    unstable = []
    for region in RegionKind:
        boxes = np.array(
            [gated.bbox_for(region) for gated in accepted], dtype=np.float64
        )
        consensus = tuple(np.median(boxes, axis=0))
        support = sum(1 for box in boxes if bbox_iou(tuple(box), consensus) >= ROI_SUPPORT_IOU)
        fraction = support / len(boxes)
        regions[region] = RegionConsensus(consensus, support, fraction)
        if fraction < ROI_SUPPORT_MIN:
            unstable.append(region.value)
    roi = StaticRoi(regions)
    if unstable:
        raise UnstableRoiError(
            f"ROI support below {ROI_SUPPORT_MIN} for: {', '.join(unstable)}", roi=roi
        )
    return roi
