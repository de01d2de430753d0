"""How often each invariant criterion fires on random symmetric states, checked against PPT."""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from symq.classify import classify, ppt_entangled
from symq.collective import random_symmetric_state
from symq.invariants import compute_invariants
from symq.reduction import pair_density, reduce_pure
from symq.squeezing import korbicz_scan_pair


@dataclass
class CensusConfig:
    qubit_numbers: list[int] = field(default_factory=lambda: list(range(2, 11)))
    samples: int = 500
    seed: int = 0


def run(cfg: CensusConfig) -> dict[int, Counter]:
    rng = np.random.default_rng(cfg.seed)
    table = {}
    print("N   squeezed  longit.  window  zeroI1  any  PPT-ent  witness  missed-by-invariants")
    for n in cfg.qubit_numbers:
        c = Counter()
        for _ in range(cfg.samples):
            pair = reduce_pure(random_symmetric_state(n, rng))
            flags = classify(compute_invariants(pair))
            ent = ppt_entangled(pair_density(pair))
            c["ss"] += flags.spin_squeezed
            c["long"] += flags.longitudinal
            c["window"] += flags.window
            c["zero"] += flags.zero_spin_i1
            c["any"] += flags.any_entanglement_flag
            c["ppt"] += ent
            c["witness"] += korbicz_scan_pair(pair, n) is not None
            c["missed"] += ent and not flags.any_entanglement_flag
        table[n] = c
        print(f"{n:<3} {c['ss']:>8} {c['long']:>8} {c['window']:>7} {c['zero']:>7} {c['any']:>4} "
              f"{c['ppt']:>8} {c['witness']:>8} {c['missed']:>8}")
    return table


def main() -> None:
    cfg = CensusConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=cfg.samples)
    ap.add_argument("--seed", type=int, default=cfg.seed)
    args = ap.parse_args()
    run(CensusConfig(samples=args.samples, seed=args.seed))


if __name__ == "__main__":
    main()
