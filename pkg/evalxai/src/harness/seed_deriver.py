import zlib

import numpy

SEED_MODULUS = 2**64


def _mix(*entropy: int) -> int:
    return int(numpy.random.SeedSequence(entropy).generate_state(1, numpy.uint64)[0])


def derive_seed(master: int, instance_index: int, run_index: int) -> int:
    """

    pure 64 bit mix of (master, instance, run), the seed an explainer gets for one instance in one run
    :return: a seed in [0, 2**64)
             <int>
    """
    if instance_index < 0 or run_index < 0:
        raise ValueError(f"indices must not be negative, got {instance_index} and {run_index}")
    return _mix(master % SEED_MODULUS, instance_index, run_index)


def stage_seed(master: int, stage: str) -> int:
    """seed of a pipeline stage such as "split" or "train:LR", stable across processes and platforms"""
    return _mix(master % SEED_MODULUS, zlib.crc32(stage.encode("utf-8")))
