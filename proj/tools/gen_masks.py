#!/usr/bin/env python3
"""Author the bundled shape masks under shapes/.

Each shape is rasterized from a continuous outline, scaled until it covers at
least the requested number of cells, then trimmed from the outer boundary
(farthest cells first) while keeping the mask 8-connected and its hole count
unchanged. Seed slots are the 4 cells nearest the centroid, ties broken by
(y, x) ascending.

Usage: python3 tools/gen_masks.py [out_dir]
"""

import math
import sys
from collections import deque
from pathlib import Path

LIMIT = 29  # cells are kept within [-LIMIT, LIMIT] on both axes

TARGETS = {
    "star": 1036,
    "wrench": 566,
    "k_letter": 1352,
    "rectangle": 438,
    "tyre": 1282,
    "spinner": 1040,
}


def rasterize(pred):
    return {(x, y) for x in range(-LIMIT, LIMIT + 1)
            for y in range(-LIMIT, LIMIT + 1) if pred(x, y)}


def neighbors8(c):
    x, y = c
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            if dx or dy:
                yield (x + dx, y + dy)


def neighbors4(c):
    x, y = c
    yield from ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))


def connected(cells):
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    todo = [start]
    while todo:
        c = todo.pop()
        for n in neighbors8(c):
            if n in cells and n not in seen:
                seen.add(n)
                todo.append(n)
    return len(seen) == len(cells)


def holes(cells, four=False):
    """Number of background regions not reachable from outside the bbox."""
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    nb = neighbors4 if four else neighbors8
    bg = {(x, y) for x in range(x0, x1 + 1) for y in range(y0, y1 + 1)} - cells
    seen = set()
    count = 0
    for start in sorted(bg):
        if start in seen:
            continue
        comp = {start}
        q = deque([start])
        border = False
        while q:
            c = q.popleft()
            if c[0] in (x0, x1) or c[1] in (y0, y1):
                border = True
            for n in nb(c):
                if n in bg and n not in comp:
                    comp.add(n)
                    q.append(n)
        seen |= comp
        if not border:
            count += 1
    return count


def fit(make, target, lo=0.1, hi=4.0):
    """Smallest scale whose raster has >= target cells, then trim to target."""
    for _ in range(60):
        mid = (lo + hi) / 2
        if len(rasterize(make(mid))) >= target:
            hi = mid
        else:
            lo = mid
    cells = rasterize(make(hi))
    return trim(cells, target)


def trim(cells, target):
    cells = set(cells)
    h = holes(cells)
    cx = sum(c[0] for c in cells) / len(cells)
    cy = sum(c[1] for c in cells) / len(cells)
    while len(cells) > target:
        outer = [c for c in cells
                 if any(n not in cells for n in neighbors4(c))]
        outer.sort(key=lambda c: (-(c[0] - cx) ** 2 - (c[1] - cy) ** 2, c[1], c[0]))
        for c in outer:
            cand = cells - {c}
            if connected(cand) and holes(cand) == h:
                cells = cand
                break
        else:
            raise RuntimeError("cannot trim further")
    if len(cells) != target:
        raise RuntimeError(f"raster undershoot: {len(cells)} < {target}")
    return cells


def seed_slots(cells):
    cx = sum(c[0] for c in cells) / len(cells)
    cy = sum(c[1] for c in cells) / len(cells)
    order = sorted(cells, key=lambda c: ((c[0] - cx) ** 2 + (c[1] - cy) ** 2, c[1], c[0]))
    slots = order[:4]
    if not connected(set(slots)):
        raise RuntimeError(f"seed slots not connected: {slots}")
    return slots


# --- outlines ---------------------------------------------------------------

def star(s):
    def pred(x, y):
        r = math.hypot(x, y)
        th = math.atan2(y, x) - math.pi / 2
        return r <= s * 10 * (1 + 0.5 * math.cos(5 * th))
    return pred


def wrench(s):
    def pred(x, y):
        # head: disc centred left with an open jaw facing left
        hx, hy = -16 * s, 0
        head = math.hypot(x - hx, y - hy) <= 9 * s
        jaw = (x < hx + 1) and abs(y - hy) <= 3.2 * s
        handle = (hx <= x <= 26 * s) and abs(y - hy) <= 3.6 * s
        return (head and not jaw) or handle
    return pred


def k_letter(s):
    def pred(x, y):
        w = 7.0 * s
        bar = (-18 * s <= x <= -18 * s + 2 * w) and abs(y) <= 22 * s
        # arms: thick segments from the bar middle to the top/bottom right
        def seg(ax, ay, bx, by):
            vx, vy = bx - ax, by - ay
            t = max(0.0, min(1.0, ((x - ax) * vx + (y - ay) * vy) / (vx * vx + vy * vy)))
            return math.hypot(x - (ax + t * vx), y - (ay + t * vy)) <= w
        ax, ay = -18 * s + 2 * w, 0
        upper = seg(ax, ay, 16 * s, 19 * s)
        lower = seg(ax, ay, 16 * s, -19 * s)
        return bar or upper or lower
    return pred


def rectangle_cells():
    # 22 x 20 block with one cell clipped from two opposite corners -> 438
    cells = {(x, y) for x in range(-11, 11) for y in range(-10, 10)}
    cells -= {(-11, 9), (10, -10)}
    return cells


def tyre(s):
    def pred(x, y):
        r = math.hypot(x, y)
        hub = r <= 4.5 * s
        spokes = (abs(x) <= 1.6 * s or abs(y) <= 1.6 * s) and r <= 10 * s
        rim = 9.5 * s <= r <= 25 * s
        return hub or spokes or rim
    return pred


def spinner(s):
    lobes = [(15 * s * math.cos(a), 15 * s * math.sin(a))
             for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3)]

    def pred(x, y):
        if math.hypot(x, y) <= 8 * s:
            return True
        for lx, ly in lobes:
            d = math.hypot(x - lx, y - ly)
            if 2.6 * s <= d <= 9 * s:
                return True
            # web joining the hub to each lobe
            vx, vy = lx, ly
            t = (x * vx + y * vy) / (vx * vx + vy * vy)
            if 0 <= t <= 1 and math.hypot(x - t * vx, y - t * vy) <= 4.5 * s \
                    and math.hypot(x - lx, y - ly) >= 2.6 * s:
                return True
        return False
    return pred


def render(cells, slots):
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    lines = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for x in range(min(xs), max(xs) + 1):
            if (x, y) in slots:
                row.append("S")
            elif (x, y) in cells:
                row.append("#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "shapes")
    out.mkdir(parents=True, exist_ok=True)
    builders = {
        "star": lambda: fit(star, TARGETS["star"]),
        "wrench": lambda: fit(wrench, TARGETS["wrench"]),
        "k_letter": lambda: fit(k_letter, TARGETS["k_letter"]),
        "rectangle": rectangle_cells,
        "tyre": lambda: fit(tyre, TARGETS["tyre"]),
        "spinner": lambda: fit(spinner, TARGETS["spinner"]),
    }
    for name, build in builders.items():
        cells = build()
        assert len(cells) == TARGETS[name], (name, len(cells))
        assert connected(cells), name
        slots = set(seed_slots(cells))
        h8 = holes(cells)
        h4 = holes(cells, four=True)
        if name in ("tyre", "spinner"):
            assert h8 >= 1, (name, h8)
        else:
            assert h4 == 0, (name, h4)
        (out / f"{name}.mask").write_text(render(cells, slots))
        xs = [c[0] for c in cells]
        ys = [c[1] for c in cells]
        print(f"{name}: {len(cells)} cells, holes8={h8}, "
              f"bbox x[{min(xs)},{max(xs)}] y[{min(ys)},{max(ys)}]")


if __name__ == "__main__":
    main()
