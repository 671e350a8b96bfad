#!/usr/bin/env python3
"""Regenerates the synthetic curve histories under data/fixtures.

Every series is driven by a fixed seed, so rerunning reproduces the shipped
files byte for byte.
"""
import argparse
import datetime as dt
import random
from pathlib import Path

TENOR_MONTHS = (1, 2, 3, 6, 9, 12)


def write_csv(path, start, levels, slopes):
    with open(path, "w", newline="\n") as f:
        f.write("date,tenor_months,rate_cc\n")
        for week, (level, slope) in enumerate(zip(levels, slopes)):
            day = (start + dt.timedelta(weeks=week)).isoformat()
            for m in TENOR_MONTHS:
                rate = level + slope * (m - 1) / 12.0
                f.write(f"{day},{m},{rate:.10f}\n")


def two_regime(seed, weeks=626):
    """High flat-ish rates, a steady fall to half the level, then low rates.
    Curves slope upward throughout."""
    rng = random.Random(seed)
    high, low = 0.05, 0.025
    fall_start, fall_end = 300, 400
    levels, slopes = [], []
    noise = 0.0
    for w in range(weeks):
        if w < fall_start:
            base = high
        elif w < fall_end:
            base = high + (low - high) * (w - fall_start) / (fall_end - fall_start)
        else:
            base = low
        noise = 0.9 * noise + rng.gauss(0.0, 0.0004)
        levels.append(base + noise)
        slopes.append(0.01 + rng.gauss(0.0, 0.001))
    return levels, slopes


def random_walk(seed, weeks):
    rng = random.Random(seed)
    level = 0.02 + 0.04 * rng.random()
    slope = 0.008
    drift = 0.0
    levels, slopes = [], []
    for _ in range(weeks):
        if rng.random() < 0.03:
            drift = (rng.random() - 0.5) * 0.001
        level = max(0.001, level + drift + rng.gauss(0.0, 0.0005))
        slope = min(0.03, max(-0.01, slope + rng.gauss(0.0, 0.0005)))
        levels.append(level)
        slopes.append(slope)
    return levels, slopes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "fixtures")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    write_csv(args.out / "two_regime.csv", dt.date(2000, 1, 3), *two_regime(seed=20240611))
    write_csv(args.out / "walk_aaa.csv", dt.date(2001, 1, 1), *random_walk(seed=101, weeks=420))
    write_csv(args.out / "walk_bbb.csv", dt.date(2001, 1, 1), *random_walk(seed=202, weeks=420))


if __name__ == "__main__":
    main()
