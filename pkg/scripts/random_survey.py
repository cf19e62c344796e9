"""Survey random channels: rank signatures, labels and how many Bell outcomes are invertible.

    python scripts/random_survey.py --samples 500 --kind bipartite
"""

import argparse
from collections import Counter
from dataclasses import dataclass

import numpy as np

from channelrank import AliceAssignment, Pairing, classify, make_state, numerical_rank, random_state, transfer_matrix
from channelrank.teleport import all_bell_measurements


@dataclass
class SurveyConfig:
    samples: int = 200
    seed: int = 0
    kind: str = "haar"  # haar | bipartite | mixed
    assignment: str = "34"


def sample_channel(cfg: SurveyConfig, k: int):
    kind = cfg.kind if cfg.kind != "mixed" else ("haar", "bipartite")[k % 2]
    if kind == "haar":
        return random_state(4, (cfg.seed, k))
    pairing = list(Pairing)[k % 3]
    left, right = random_state(2, (cfg.seed, k, 1)), random_state(2, (cfg.seed, k, 2))
    t = np.einsum("ab,cd->abcd", left.amplitudes.reshape(2, 2), right.amplitudes.reshape(2, 2))
    order = list(pairing.rows) + list(pairing.columns)
    return make_state(np.transpose(t, np.argsort(order)).reshape(16))


def run(cfg: SurveyConfig):
    assignment = AliceAssignment.from_qubits(cfg.assignment)
    labels, signatures, invertible = Counter(), Counter(), Counter()
    for k in range(cfg.samples):
        ch = sample_channel(cfg, k)
        report = classify(ch)
        labels[report.describe()] += 1
        signatures[tuple(report.pair_ranks.values())] += 1
        n_inv = sum(numerical_rank(transfer_matrix(ch, assignment, m)) == 4 for m in all_bell_measurements())
        invertible[n_inv] += 1
    return labels, signatures, invertible


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=SurveyConfig.samples)
    parser.add_argument("--seed", type=int, default=SurveyConfig.seed)
    parser.add_argument("--kind", choices=["haar", "bipartite", "mixed"], default=SurveyConfig.kind)
    parser.add_argument("--alice", dest="assignment", choices=["34", "35", "36"], default="34")
    cfg = SurveyConfig(**vars(parser.parse_args()))
    labels, signatures, invertible = run(cfg)
    print(f"{cfg.samples} {cfg.kind} channels, alice {cfg.assignment}")
    print("labels:")
    for k, v in labels.most_common():
        print(f"  {k:28s} {v}")
    print("pair-rank signatures (AB, AC, AD):")
    for k, v in signatures.most_common():
        print(f"  {k}  {v}")
    print("invertible Bell outcomes per channel:")
    for k, v in sorted(invertible.items()):
        print(f"  {k:2d}/16  {v}")


if __name__ == "__main__":
    main()
