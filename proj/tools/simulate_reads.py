#!/usr/bin/env python3
"""Simulate an Illumina-like single-end FASTQ from a random diploid genome.

Used to produce tests/data/sample_10k.fastq.gz:

    python3 tools/simulate_reads.py --reads 10000 --seed 2021 | gzip -9 -n > tests/data/sample_10k.fastq.gz
"""

import argparse
import math
import random
import sys

COMPLEMENT = str.maketrans("ACGT", "TGCA")


def make_genome(rng, length):
    return "".join(rng.choice("ACGT") for _ in range(length))


def add_snps(rng, genome, count):
    hap = list(genome)
    for pos in rng.sample(range(len(genome)), count):
        hap[pos] = rng.choice([b for b in "ACGT" if b != genome[pos]])
    return "".join(hap)


def phred_for(rng, pos, length):
    # Quality decays towards the 3' end; most calls stay in the high 30s.
    center = 38 - 8 * (pos / length) ** 2
    q = int(round(rng.gauss(center, 3.5)))
    if rng.random() < 0.04:
        q = rng.randint(2, 19)
    return max(2, min(41, q))


def simulate(args):
    rng = random.Random(args.seed)
    genome = make_genome(rng, args.genome_length)
    haplotypes = [genome, add_snps(rng, genome, args.snps)]
    out = sys.stdout
    for i in range(args.reads):
        hap = haplotypes[rng.randrange(2)]
        start = rng.randrange(len(hap) - args.read_length + 1)
        seq = hap[start:start + args.read_length]
        if rng.random() < 0.5:
            seq = seq.translate(COMPLEMENT)[::-1]
        bases, quals = [], []
        for pos, b in enumerate(seq):
            q = phred_for(rng, pos, args.read_length)
            err = 10 ** (-q / 10)
            if q <= 2 and rng.random() < 0.5:
                b = "N"
            elif rng.random() < err:
                b = rng.choice([c for c in "ACGT" if c != b])
            bases.append(b)
            quals.append(chr(q + 33))
        out.write("@sim.%d %d/%s\n%s\n+\n%s\n" % (i + 1, start, "1", "".join(bases), "".join(quals)))


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--reads", type=int, default=10000)
    p.add_argument("--read-length", type=int, default=100)
    p.add_argument("--genome-length", type=int, default=20000)
    p.add_argument("--snps", type=int, default=20)
    p.add_argument("--seed", type=int, default=2021)
    simulate(p.parse_args())


if __name__ == "__main__":
    main()
