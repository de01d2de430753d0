"""Invariant curves for the squeezed-bath steady state over x in (0, 1)."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from symq.cli import sweep_rows
from symq.formats import CSV_HEADER


@dataclass
class BathConfig:
    qubit_numbers: list[int] = field(default_factory=lambda: [4, 6, 8, 20])
    x_min: float = 0.01
    x_max: float = 0.99
    points: int = 100
    tol: float = 1e-10
    out_dir: Path = Path("results")


def run(cfg: BathConfig) -> list[Path]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for n in cfg.qubit_numbers:
        rows = sweep_rows("bath", n, cfg.x_min, cfg.x_max, cfg.points, cfg.tol)
        path = cfg.out_dir / f"bath_n{n}.csv"
        path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
        data = np.array([[float(v) for v in r.split(",")] for r in rows])
        print(f"N={n}: I5 in [{data[:, 5].min():.3e}, {data[:, 5].max():.3e}], "
              f"min xi^2 = {data[:, 8].min():.4f} -> {path}")
        written.append(path)
    return written


def main() -> None:
    cfg = BathConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=cfg.qubit_numbers)
    ap.add_argument("--points", type=int, default=cfg.points)
    ap.add_argument("--out-dir", type=Path, default=cfg.out_dir)
    args = ap.parse_args()
    run(BathConfig(qubit_numbers=args.n, points=args.points, out_dir=args.out_dir))


if __name__ == "__main__":
    main()
