"""Generates a randomized COCO evaluation instance and its reference report.

The reference numbers come from pycocotools (bbox, maxDets 100). Box areas
never sit exactly on the 32^2 / 96^2 strata edges, where pycocotools' closed
intervals and this crate's half-open ones would disagree.

    python3 gen_eval_fixture.py <seed> <out_prefix>
"""
import contextlib
import io
import json
import random
import sys

from pycocotools.coco import COCO
from pycocotools.cocoeval import COCOeval


def rand_instance(rng, n_images=5, max_gt=10, max_det=20):
    images, anns, dets = [], [], []
    for i in range(1, n_images + 1):
        images.append({"id": i, "file_name": f"img_{i:03d}.png", "width": 416, "height": 416})
        gts = []
        for _ in range(rng.randint(0, max_gt)):
            w = round(rng.choice([rng.uniform(3, 30), rng.uniform(30, 95), rng.uniform(95, 160)]), 2)
            h = round(rng.uniform(0.5, 1.5) * w, 2)
            h = min(h, 250.0)
            x = round(rng.uniform(0, 416 - w), 2)
            y = round(rng.uniform(0, 416 - h), 2)
            area = round(w * h * rng.uniform(0.6, 1.0), 2)
            if area in (1024.0, 9216.0):
                area += 0.5
            gts.append([x, y, w, h])
            anns.append({"id": len(anns) + 1, "image_id": i, "category_id": 1,
                         "bbox": [x, y, w, h], "area": area, "iscrowd": 0})
        for _ in range(rng.randint(0, max_det)):
            if gts and rng.random() < 0.7:
                x, y, w, h = rng.choice(gts)
                j = lambda s: rng.uniform(-s, s)
                box = [x + j(0.15 * w), y + j(0.15 * h), w * (1 + j(0.2)), h * (1 + j(0.2))]
            else:
                w = rng.uniform(3, 140)
                box = [rng.uniform(0, 300), rng.uniform(0, 300), w, w * rng.uniform(0.5, 1.5)]
            box = [round(v, 2) for v in box]
            dets.append({"image_id": i, "category_id": 1, "bbox": box, "score": round(rng.random(), 2)})
    gt = {"images": images, "annotations": anns, "categories": [{"id": 1, "name": "bluerov", "supercategory": ""}]}
    return gt, dets


def reference(gt, dets):
    with contextlib.redirect_stdout(io.StringIO()):
        coco = COCO()
        coco.dataset = json.loads(json.dumps(gt))
        coco.createIndex()
        res = coco.loadRes(json.loads(json.dumps(dets))) if dets else None
        if res is None:
            return None
        ev = COCOeval(coco, res, "bbox")
        ev.evaluate()
        ev.accumulate()
        ev.summarize()
    pct = [v * 100 if v >= 0 else -1.0 for v in ev.stats[:5]]
    return dict(zip(["AP", "AP50", "AP75", "AP_s", "AP_m"], pct))


def main():
    seed, prefix = int(sys.argv[1]), sys.argv[2]
    gt, dets = rand_instance(random.Random(seed))
    with open(f"{prefix}_gt.json", "w") as f:
        json.dump(gt, f)
    with open(f"{prefix}_predictions.json", "w") as f:
        json.dump(dets, f)
    with open(f"{prefix}_expected.json", "w") as f:
        json.dump(reference(gt, dets), f, indent=2)


if __name__ == "__main__":
    main()
