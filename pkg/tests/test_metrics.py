import itertools

import numpy as np
import pytest

from gridocr.geometry import BBox, expand, intersection_area
from gridocr.metrics import (AP_CER_THRESHOLDS, ap_cer, ap_cer_curve, ap_iou,
                             cer, deteval, deteval_match, levenshtein,
                             padding_study, wer, word_prf)
from util import random_box


def edit_distance_oracle(a, b) -> int:
    """Full-matrix DP, kept deliberately separate from the implementation."""
    n, m = len(a), len(b)
    d = np.zeros((n + 1, m + 1), dtype=int)
    d[:, 0] = np.arange(n + 1)
    d[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d[i, j] = min(d[i - 1, j] + 1,
                          d[i, j - 1] + 1,
                          d[i - 1, j - 1] + (a[i - 1] != b[j - 1]))
    return int(d[n, m])


def optimal_match_count(gt, pred, t_r=0.8, t_p=0.4) -> int:
    """Exhaustive best one-to-one matching (instances of <= 5 boxes)."""
    eligible = set()
    for gi, g in enumerate(gt):
        for pi, p in enumerate(pred):
            inter = intersection_area(g, p)
            if g.area > 0 and p.area > 0 and inter / g.area >= t_r and inter / p.area >= t_p:
                eligible.add((gi, pi))
    best = 0
    indices = list(range(len(pred)))
    for k in range(min(len(gt), len(pred)), 0, -1):
        for gsub in itertools.combinations(range(len(gt)), k):
            for psub in itertools.permutations(indices, k):
                if all((gi, pi) in eligible for gi, pi in zip(gsub, psub)):
                    return k
    return best


class TestEditRates:
    def test_examples(self):
        assert cer("abc", "abc") == 0.0
        assert cer("kitten", "sitting") == pytest.approx(0.5)
        assert wer("a b c", "a x c") == pytest.approx(1 / 3)

    def test_empty_reference_convention(self):
        assert cer("", "") == 0.0
        assert cer("", "xyz") == 1.0
        assert wer("", "word") == 1.0

    def test_against_dp_oracle(self):
        rng = np.random.default_rng(3)
        alphabet = "abcde "
        for _ in range(300):
            a = "".join(rng.choice(list(alphabet), size=rng.integers(0, 15)))
            b = "".join(rng.choice(list(alphabet), size=rng.integers(0, 15)))
            assert levenshtein(a, b) == edit_distance_oracle(a, b)

    def test_triangle_sanity(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            a, b, c = ("".join(rng.choice(list("abc"), size=rng.integers(1, 10)))
                       for _ in range(3))
            assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


class TestWordPrf:
    def test_receipt_example(self):
        p, r, f1 = word_prf(["TOTAL", "12.00"], ["TOTAL", "12.00", "RM"])
        assert (p, r) == (pytest.approx(2 / 3), 1.0)
        assert f1 == pytest.approx(0.8)

    def test_identical(self):
        assert word_prf(["a", "b"], ["b", "a"]) == (1.0, 1.0, 1.0)

    def test_multiset_semantics(self):
        p, r, f1 = word_prf(["a", "a", "b"], ["a", "b", "b"])
        assert p == pytest.approx(2 / 3)
        assert r == pytest.approx(2 / 3)

    def test_empty_prediction(self):
        assert word_prf(["a"], []) == (0.0, 0.0, 0.0)


def _page_boxes(rng, n, w=400, h=400, min_side=8, max_side=60):
    """Non-overlapping boxes, one per 'line', like clean page annotations."""
    boxes = []
    y = float(rng.uniform(0, 20))
    for _ in range(n):
        bh = float(rng.uniform(min_side, 24))
        bw = float(rng.uniform(min_side, max_side))
        x = float(rng.uniform(0, w - bw))
        if y + bh > h:
            break
        boxes.append(BBox(x, y, x + bw, y + bh))
        y += bh + float(rng.uniform(3, 12))
    return boxes


class TestDetEval:
    def test_perfect_predictions(self):
        gt = [BBox(0, 0, 10, 10), BBox(0, 20, 10, 30)]
        _, p, r, f1 = deteval(gt, list(gt))
        assert (p, r, f1) == (1.0, 1.0, 1.0)

    def test_threshold_rejects_half_overlap(self):
        gt = [BBox(0, 0, 10, 10)]
        pred = [BBox(5, 0, 15, 10)]  # covers half the gt area < t_r
        _, p, r, _ = deteval(gt, pred)
        assert r == 0.0 and p == 0.0

    def test_spurious_prediction(self):
        gt = _page_boxes(np.random.default_rng(0), 3)
        pred = list(gt[:2]) + [BBox(300, 300, 340, 320)]
        _, p, r, _ = deteval(gt, pred)
        assert p == pytest.approx(2 / 3)
        assert r == pytest.approx(2 / 3)

    def test_matching_is_one_to_one(self):
        gt = [BBox(0, 0, 10, 10)]
        pred = [BBox(0, 0, 10, 10), BBox(1, 0, 11, 10)]
        match = deteval_match(gt, pred)
        assert len(match.pairs) == 1
        assert len(match.unmatched_pred) == 1

    def test_greedy_equals_exhaustive_on_small_instances(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            gt = _page_boxes(rng, int(rng.integers(1, 6)))
            pred = []
            for g in gt:
                roll = rng.uniform()
                if roll < 0.6:  # jittered true positive
                    dx, dy = rng.uniform(-2, 2, size=2)
                    pred.append(BBox(max(0, g.x1 + dx), max(0, g.y1 + dy),
                                     g.x2 + dx + 2, g.y2 + dy + 2))
                elif roll < 0.8:  # miss
                    continue
                else:  # wild box
                    pred.append(random_box(rng, 400, 400))
            if len(pred) > 5:
                pred = pred[:5]
            match = deteval_match(gt, pred)
            assert len(match.pairs) == optimal_match_count(gt, pred)


class TestApIou:
    def test_fraction_of_hits(self):
        gt = BBox(0, 0, 100, 10)
        results = [(gt, gt)] * 7 + [(gt, None)] * 3
        assert ap_iou(results, 0.5) == pytest.approx(0.7)

    def test_all_missing(self):
        assert ap_iou([(BBox(0, 0, 10, 10), None)] * 4, 0.5) == 0.0

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            results = []
            for _ in range(20):
                g = random_box(rng, 200, 200)
                pred = None if rng.uniform() < 0.2 else random_box(rng, 200, 200)
                results.append((g, pred))
            values = [ap_iou(results, t) for t in (0.5, 0.6, 0.7, 0.8)]
            assert all(a >= b for a, b in zip(values, values[1:]))


class TestApCer:
    def test_exact_matches(self):
        assert ap_cer([("abc", "abc"), ("de", "de")]) == 1.0

    def test_total_mismatch(self):
        assert ap_cer([("abc", "xyz")]) == 0.0

    def test_single_quarter_error(self):
        got = ap_cer([("abcd", "abcx")])  # cer = 0.25 passes 6 of 10 thresholds
        assert got == pytest.approx(0.6)

    def test_curve_monotone_in_tolerance(self):
        rng = np.random.default_rng(9)
        pairs = []
        for _ in range(50):
            ref = "".join(rng.choice(list("abcd"), size=8))
            hyp = "".join(rng.choice(list("abcd"), size=8))
            pairs.append((ref, hyp))
        curve = ap_cer_curve(pairs)
        values = [curve[t] for t in AP_CER_THRESHOLDS]
        assert all(a <= b for a, b in zip(values, values[1:]))


class TestPaddingStudy:
    def test_pad_zero_equals_plain_deteval(self):
        rng = np.random.default_rng(12)
        gt = _page_boxes(rng, 4)
        pred = [expand(g, 1, 400, 400) for g in gt]
        study = padding_study(gt, pred, [0], 400, 400)
        _, p, r, f1 = deteval(gt, pred)
        assert study[0] == (p, r, f1)

    def test_tight_predictions_recover_with_pad(self):
        gt = [BBox(10, 10 + 14 * i, 40, 20 + 14 * i) for i in range(4)]
        pred = [BBox(g.x1 + 1, g.y1 + 1, g.x2 - 1, g.y2 - 1) for g in gt]
        study = padding_study(gt, pred, [0, 1, 2], 400, 400)
        assert study[0][2] == 0.0  # 28*8/300 < t_r
        assert study[1][2] == 1.0
        assert study[1][2] > study[0][2]

    def test_counts_preserved(self):
        gt = [BBox(0, 0, 30, 10)]
        pred = [BBox(2, 2, 28, 8), BBox(100, 100, 130, 110)]
        for pad in (0, 1, 2):
            match = deteval_match(gt, [expand(p, pad, 400, 400) for p in pred])
            assert len(match.pairs) + len(match.unmatched_gt) == len(gt)
            assert len(match.pairs) + len(match.unmatched_pred) == len(pred)
