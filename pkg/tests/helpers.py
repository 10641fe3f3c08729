"""Random element generators shared by the test modules."""
import random
import zlib

from k2ds.ring import GroupRingElement

CASE_SPECS = [("fpg", 2, 2, 1), ("fpg", 3, 2, 1), ("fpg", 2, 3, 1),
              ("zpk", 2, 2, 2), ("zpk", 3, 2, 2), ("zpk", 2, 3, 3)]


def random_exponent(rng, spec, nonzero=True):
    while True:
        lam = tuple(rng.randrange(spec.p) for _ in range(spec.n))
        if any(lam) or not nonzero:
            return lam


def random_aug(rng, spec, terms=2):
    """Random element of the augmentation ideal with at most `terms` terms."""
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        coeffs[random_exponent(rng, spec)] = rng.randrange(1, spec.modulus)
    return GroupRingElement(spec, coeffs)


def random_element(rng, spec, terms=2):
    a = random_aug(rng, spec, terms)
    return a + rng.randrange(spec.modulus)


def random_unit(rng, spec, terms=2):
    c = rng.randrange(1, spec.modulus)
    while c % spec.p == 0:
        c = rng.randrange(1, spec.modulus)
    return random_aug(rng, spec, terms) + c


def make_rng(seed):
    return random.Random(seed)


def stable_seed(*parts):
    """Seed that does not depend on PYTHONHASHSEED."""
    return zlib.crc32(repr(parts).encode())
