#!/usr/bin/env python3
"""Writes the 9-block / 44-net fixture under tests/data (deterministic)."""
import pathlib
import random
import sys

BLOCKS = [  # name, x, y, w, h
    ("bk1", 0, 0, 250, 400),
    ("bk2", 250, 0, 250, 400),
    ("bk3", 0, 400, 500, 300),
    ("bk4", 0, 700, 500, 300),
    ("bk5", 500, 0, 350, 550),
    ("bk6", 850, 0, 350, 550),
    ("bk7", 500, 550, 280, 450),
    ("bk8", 780, 550, 420, 250),
    ("bk9", 780, 800, 420, 200),
]

DEGREES = [2] * 13 + [3] * 13 + [4] * 8 + [5] * 5 + [6] * 3 + [7] * 2


def main(out_dir: pathlib.Path) -> None:
    rng = random.Random(2024)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = out_dir / "apte_like"

    lines = ["UCLA blocks 1.0", "# 9-block mosaic", "", f"NumSoftRectangularBlocks : 0",
             f"NumHardRectilinearBlocks : {len(BLOCKS)}", "NumTerminals : 0", ""]
    for name, _, _, w, h in BLOCKS:
        lines.append(f"{name} hardrectilinear 4 (0, 0) (0, {h}) ({w}, {h}) ({w}, 0)")
    stem.with_suffix(".blocks").write_text("\n".join(lines) + "\n")

    lines = ["UCLA pl 1.0", ""]
    for name, x, y, _, _ in BLOCKS:
        lines.append(f"{name}\t{x}\t{y}")
    stem.with_suffix(".pl").write_text("\n".join(lines) + "\n")

    degrees = DEGREES[:]
    rng.shuffle(degrees)
    lines = ["UCLA nets 1.0", "", f"NumNets : {len(degrees)}", f"NumPins : {sum(degrees)}"]
    for i, d in enumerate(degrees):
        lines.append(f"NetDegree : {d} net{i}")
        for name, _, _, w, h in rng.sample(BLOCKS, d):
            kind = rng.choice("IOB")
            style = rng.random()
            if style < 0.3:
                lines.append(f"  {name} {kind}")
            elif style < 0.65:
                dx, dy = rng.randint(-40, 40), rng.randint(-40, 40)
                lines.append(f"  {name} {kind} : %{dx}.0 %{dy}.0")
            else:
                dx, dy = rng.randint(-w // 3, w // 3), rng.randint(-h // 3, h // 3)
                lines.append(f"  {name} {kind} : {dx} {dy}")
    stem.with_suffix(".nets").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parents[1] / "tests" / "data")
