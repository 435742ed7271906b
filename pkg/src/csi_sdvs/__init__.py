"""Designated verifier signatures over a commutative group action.

Signatures verify only under the designated verifier's secret key, and the
verifier can simulate signatures indistinguishable from real ones, so
verification carries no transferable evidence of who signed.  Two
group-action backends are provided: a real isogeny-based action on
supersingular Montgomery curves over a tiny prime field (UNSAFE-TOY, for
exact desk-scale verification), and an additive mock action at production
parameter shapes (for serialization and distribution testing).
"""

from .action import (
    MockAdditiveBackend,
    ToyIsogenyBackend,
    act_ideal_vector,
    build_orbit,
    gaip_bruteforce,
    toy_backend,
)
from .curve import (
    MontgomeryCurve,
    XOnlyPoint,
    is_supersingular,
    sample_point_of_order,
    scalar_mult,
    velu_isogeny,
)
from .fp import FieldElement, PrimeModulus, sample_uniform
from .protocol import (
    KeyPair,
    PublicParams,
    Signature,
    hash_transcript,
    setup,
    sign,
    signer_keygen,
    simulate,
    verifier_keygen,
    verify,
    verify_detailed,
)
from .rng import RandomSource, sample_below

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "KeyPair",
    "MockAdditiveBackend",
    "MontgomeryCurve",
    "PrimeModulus",
    "PublicParams",
    "RandomSource",
    "Signature",
    "ToyIsogenyBackend",
    "XOnlyPoint",
    "act_ideal_vector",
    "build_orbit",
    "gaip_bruteforce",
    "hash_transcript",
    "is_supersingular",
    "sample_below",
    "sample_point_of_order",
    "sample_uniform",
    "scalar_mult",
    "setup",
    "sign",
    "signer_keygen",
    "simulate",
    "toy_backend",
    "velu_isogeny",
    "verifier_keygen",
    "verify",
    "verify_detailed",
]
