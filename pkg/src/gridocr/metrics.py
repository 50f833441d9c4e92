"""Evaluation protocols: edit-distance rates, word-level P/R/F1, area-overlap
detection matching, and the two query-task average precisions.

All scores are ratios in [0, 1]. Detection matching is greedy one-to-one in
descending intersection-area order with separate area-recall and
area-precision thresholds; for the clean single-line boxes produced here it
coincides with the exhaustive optimum (asserted by test oracles on small
instances).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .geometry import BBox, expand, intersection_area

AP_IOU_THRESHOLDS = (0.5, 0.6, 0.7, 0.8)
AP_CER_THRESHOLDS = tuple(round(0.05 * k, 2) for k in range(1, 11))  # 0.05 .. 0.50


def levenshtein(ref, hyp) -> int:
    """Unit-cost edit distance between two sequences."""
    if len(ref) < len(hyp):
        ref, hyp = hyp, ref
    prev = list(range(len(hyp) + 1))
    for i, r in enumerate(ref, start=1):
        cur = [i]
        for j, h in enumerate(hyp, start=1):
            cur.append(min(prev[j] + 1,
                           cur[j - 1] + 1,
                           prev[j - 1] + (r != h)))
        prev = cur
    return prev[-1]


def cer(ref: str, hyp: str) -> float:
    """Character error rate; empty reference scores 0 or 1 by convention."""
    if not ref:
        return 0.0 if not hyp else 1.0
    return levenshtein(ref, hyp) / len(ref)


def wer(ref: str, hyp: str) -> float:
    """Word error rate over whitespace-split tokens."""
    ref_words = ref.split()
    hyp_words = hyp.split()
    if not ref_words:
        return 0.0 if not hyp_words else 1.0
    return levenshtein(ref_words, hyp_words) / len(ref_words)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def word_prf(gt_words, pred_words) -> tuple[float, float, float]:
    """Exact word matching over page-level multisets (case-sensitive)."""
    gt_counts = Counter(gt_words)
    pred_counts = Counter(pred_words)
    matched = sum((gt_counts & pred_counts).values())
    precision = matched / sum(pred_counts.values()) if pred_counts else 0.0
    recall = matched / sum(gt_counts.values()) if gt_counts else 0.0
    return precision, recall, f1_score(precision, recall)


@dataclass
class DetectionMatchResult:
    """One-to-one matches between ground-truth and predicted boxes."""

    pairs: list[tuple[int, int]] = field(default_factory=list)
    unmatched_gt: list[int] = field(default_factory=list)
    unmatched_pred: list[int] = field(default_factory=list)
    area_recall: list[float] = field(default_factory=list)
    area_precision: list[float] = field(default_factory=list)


def deteval_match(gt, pred, t_r: float = 0.8, t_p: float = 0.4) -> DetectionMatchResult:
    """Greedy matching: a pair is eligible when the overlap covers >= t_r of
    the ground-truth area and >= t_p of the predicted area."""
    candidates = []
    for gi, g in enumerate(gt):
        for pi, p in enumerate(pred):
            inter = intersection_area(g, p)
            if inter <= 0 or g.area <= 0 or p.area <= 0:
                continue
            ar, ap = inter / g.area, inter / p.area
            if ar >= t_r and ap >= t_p:
                candidates.append((inter, gi, pi, ar, ap))
    candidates.sort(key=lambda c: (-c[0], c[1], c[2]))

    result = DetectionMatchResult()
    used_gt: set[int] = set()
    used_pred: set[int] = set()
    for _, gi, pi, ar, ap in candidates:
        if gi in used_gt or pi in used_pred:
            continue
        used_gt.add(gi)
        used_pred.add(pi)
        result.pairs.append((gi, pi))
        result.area_recall.append(ar)
        result.area_precision.append(ap)
    result.unmatched_gt = [i for i in range(len(gt)) if i not in used_gt]
    result.unmatched_pred = [i for i in range(len(pred)) if i not in used_pred]
    return result


def deteval(gt, pred, t_r: float = 0.8, t_p: float = 0.4
            ) -> tuple[DetectionMatchResult, float, float, float]:
    """Detection precision/recall/F1 under area-overlap matching."""
    match = deteval_match(gt, pred, t_r, t_p)
    recall = len(match.pairs) / len(gt) if gt else 0.0
    precision = len(match.pairs) / len(pred) if pred else 0.0
    return match, precision, recall, f1_score(precision, recall)


def ap_iou(results, threshold: float) -> float:
    """Fraction of localization queries whose prediction reaches the IoU bar.

    `results` holds (gt_box, pred_box_or_None) pairs, one per query.
    """
    from .geometry import iou  # local import keeps module load cheap

    if not results:
        return 0.0
    hits = sum(1 for gt_box, pred in results
               if pred is not None and iou(gt_box, pred) >= threshold)
    return hits / len(results)


def ap_cer_curve(results) -> dict[float, float]:
    """Accuracy at each tolerance: fraction of (gt, pred) texts with cer <= t."""
    if not results:
        return {t: 0.0 for t in AP_CER_THRESHOLDS}
    errors = [cer(gt, pred) for gt, pred in results]
    return {t: sum(1 for e in errors if e <= t + 1e-12) / len(errors)
            for t in AP_CER_THRESHOLDS}


def ap_cer(results) -> float:
    """Mean accuracy over the tolerance sweep 0.05 .. 0.50 step 0.05."""
    curve = ap_cer_curve(results)
    return sum(curve.values()) / len(curve)


def padding_study(gt, pred, pads, width: float, height: float,
                  t_r: float = 0.8, t_p: float = 0.4) -> dict[int, tuple[float, float, float]]:
    """Detection P/R/F1 after expanding every prediction by each pad."""
    out = {}
    for pad in pads:
        grown = [expand(p, pad, width, height) for p in pred]
        _, precision, recall, f1 = deteval(gt, grown, t_r, t_p)
        out[pad] = (precision, recall, f1)
    return out


@dataclass
class MetricBundle:
    """Flat report over one evaluation split; keys are stable JSON names."""

    cer: float = 0.0
    wer: float = 0.0
    word_precision: float = 0.0
    word_recall: float = 0.0
    word_f1: float = 0.0
    det_precision: float = 0.0
    det_recall: float = 0.0
    det_f1: float = 0.0
    ap_iou: dict[int, float] = field(default_factory=dict)
    ap_cer: float = 0.0

    def as_dict(self) -> dict:
        return {
            "cer": self.cer,
            "wer": self.wer,
            "word_precision": self.word_precision,
            "word_recall": self.word_recall,
            "word_f1": self.word_f1,
            "det_precision": self.det_precision,
            "det_recall": self.det_recall,
            "det_f1": self.det_f1,
            "ap_iou": {str(k): v for k, v in self.ap_iou.items()},
            "ap_cer": self.ap_cer,
        }
