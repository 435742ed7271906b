"""The designated-verifier signature scheme over a group-action backend.

Six algorithms: setup, signer/verifier key generation, sign, verify, and
simulate.  The designated verifier's secret key enters verification, and
the verifier can simulate signatures that verify identically to real ones,
so a transcript transfers no conviction to third parties.

Sign:      Y_i = [b_i] * pkV_i,  h = H(Y_1 .. Y_eta, m),  z_i = b_i - s_i mod N
Verify:    Y'_i = [v_i + z_i] * pkS_i,  accept iff H(Y'_1 .. Y'_eta, m) = h
Simulate:  Y_i = [r_i] * pkS_i,  h as above,  z_i = r_i - v_i mod N

Serialized payload shapes (big-endian, fixed width per backend):
  secret key  = eta scalars of ceil(log2 N / 8) bytes
  public key  = eta set elements of the backend's storage width
  signature   = h (lam/8 bytes) followed by eta scalars
"""

import hashlib
from dataclasses import dataclass
from typing import NamedTuple

from .action import MockAdditiveBackend, ToyIsogenyBackend, TOY_CLASS_NUMBER
from .rng import RandomSource

HASH_TAG = b"CSI-SDVS-v1"
SUPPORTED_LAMBDAS = (16, 128)
_HASHES = {"sha256": hashlib.sha256}

SIGNER = "signer"
VERIFIER = "verifier"


@dataclass(frozen=True)
class PublicParams:
    backend: object
    eta: int
    lam: int
    hash_id: str = "sha256"

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError("eta must be at least 1")
        if self.lam not in SUPPORTED_LAMBDAS:
            raise ValueError(f"lam must be one of {SUPPORTED_LAMBDAS}")
        if self.hash_id not in _HASHES:
            raise ValueError(f"unknown hash function: {self.hash_id}")
        if _HASHES[self.hash_id]().digest_size * 8 < self.lam:
            raise ValueError("hash output narrower than lam")

    @property
    def unsafe(self):
        return self.lam < 128

    @property
    def hash_len(self):
        return self.lam // 8


@dataclass(frozen=True)
class KeyPair:
    role: str
    sk: tuple
    pk: tuple

    def __post_init__(self):
        if self.role not in (SIGNER, VERIFIER):
            raise ValueError("role must be 'signer' or 'verifier'")
        if len(self.sk) != len(self.pk):
            raise ValueError("secret and public parts have different lengths")


@dataclass(frozen=True)
class Signature:
    h: bytes
    z: tuple


class VerifyOutcome(NamedTuple):
    accepted: bool
    malformed: bool


def setup(profile, eta, lam, rng=None, *, group_order=None, element_bits=None,
          modulus=None, base_a=None, generator=None, expected_order=None,
          hash_id="sha256"):
    """Assemble public parameters for the requested backend profile.

    profile "toy" builds the isogeny backend (enumerating and certifying
    its orbit); profile "mock" builds the additive stand-in, with group
    order 2^(2*lam) and element width 4*lam bits unless overridden.
    """
    if eta < 1:
        raise ValueError("eta must be at least 1")
    if rng is None:
        rng = RandomSource()
    if profile == "toy":
        kwargs = {}
        if modulus is not None:
            kwargs["modulus"] = modulus
        if base_a is not None:
            kwargs["base_a"] = base_a
        if generator is not None:
            kwargs["generator"] = generator
        if expected_order is None and not kwargs:
            expected_order = TOY_CLASS_NUMBER
        backend = ToyIsogenyBackend(rng=rng, expected_order=expected_order, **kwargs)
    elif profile == "mock":
        if group_order is None:
            group_order = 1 << (2 * lam)
        if element_bits is None and group_order == 1 << (2 * lam):
            element_bits = 4 * lam
        backend = MockAdditiveBackend(group_order, element_bits=element_bits)
    else:
        raise ValueError(f"unknown profile: {profile}")
    return PublicParams(backend=backend, eta=eta, lam=lam, hash_id=hash_id)


def _keygen(pp, rng, role):
    backend = pp.backend
    sk = tuple(backend.sample_scalar(rng) for _ in range(pp.eta))
    pk = tuple(backend.act(s, backend.base) for s in sk)
    return KeyPair(role=role, sk=sk, pk=pk)


def signer_keygen(pp, rng=None):
    return _keygen(pp, rng or RandomSource(), SIGNER)


def verifier_keygen(pp, rng=None):
    return _keygen(pp, rng or RandomSource(), VERIFIER)


def hash_transcript(pp, elements, message):
    """Hash the canonical transcript encoding down to lam bits.

    Encoding: domain tag, backend kind byte, eta as 4 bytes, then each set
    element at its fixed canonical width, then the raw message.  Fixed
    widths keep the encoding prefix-free given the parameters.
    """
    if len(elements) != pp.eta:
        raise ValueError("transcript element count does not match eta")
    backend = pp.backend
    parts = [HASH_TAG, bytes([backend.kind_byte]), pp.eta.to_bytes(4, "big")]
    for el in elements:
        parts.append(backend.element_to_int(el).to_bytes(backend.element_len, "big"))
    if not isinstance(message, (bytes, bytearray)):
        raise TypeError("message must be bytes")
    parts.append(bytes(message))
    digest = _HASHES[pp.hash_id](b"".join(parts)).digest()
    return digest[: pp.hash_len]


def _check_shapes(pp, sk, pk):
    if len(sk) != pp.eta or len(pk) != pp.eta:
        raise ValueError("key length does not match eta")


def _sign_with_nonces(pp, signer_sk, verifier_pk, message, rng):
    """Sign and additionally return the nonces and target elements.

    Test instrumentation only: production callers use sign(), which
    discards both.
    """
    _check_shapes(pp, signer_sk, verifier_pk)
    backend = pp.backend
    n = backend.N
    nonces = tuple(backend.sample_scalar(rng) for _ in range(pp.eta))
    targets = tuple(backend.act(b, e) for b, e in zip(nonces, verifier_pk))
    h = hash_transcript(pp, targets, message)
    z = tuple((b - s) % n for b, s in zip(nonces, signer_sk))
    return Signature(h=h, z=z), nonces, targets


def sign(pp, signer_sk, verifier_pk, message, rng=None):
    sig, _, _ = _sign_with_nonces(pp, signer_sk, verifier_pk, message, rng or RandomSource())
    return sig


def _simulate_with_nonces(pp, verifier_sk, signer_pk, message, rng):
    """Simulation counterpart of _sign_with_nonces; test use only."""
    _check_shapes(pp, verifier_sk, signer_pk)
    backend = pp.backend
    n = backend.N
    nonces = tuple(backend.sample_scalar(rng) for _ in range(pp.eta))
    targets = tuple(backend.act(r, e) for r, e in zip(nonces, signer_pk))
    h = hash_transcript(pp, targets, message)
    z = tuple((r - v) % n for r, v in zip(nonces, verifier_sk))
    return Signature(h=h, z=z), nonces, targets


def simulate(pp, verifier_sk, signer_pk, message, rng=None):
    sig, _, _ = _simulate_with_nonces(pp, verifier_sk, signer_pk, message, rng or RandomSource())
    return sig


def verify_detailed(pp, verifier_sk, signer_pk, message, sig):
    """Full verification verdict.

    malformed is True when the signature fails well-formedness (wrong hash
    width, wrong vector length, scalar out of range); such signatures are
    rejected without raising.  The strict scalar range check matters for
    strong unforgeability: z_i + N must not be an alternate encoding of an
    accepted signature.
    """
    _check_shapes(pp, verifier_sk, signer_pk)
    backend = pp.backend
    n = backend.N
    if (
        not isinstance(sig.h, (bytes, bytearray))
        or len(sig.h) != pp.hash_len
        or len(sig.z) != pp.eta
        or any(not isinstance(z, int) or not 0 <= z < n for z in sig.z)
    ):
        return VerifyOutcome(accepted=False, malformed=True)
    recovered = tuple(
        backend.act((v + z) % n, e)
        for v, z, e in zip(verifier_sk, sig.z, signer_pk)
    )
    h = hash_transcript(pp, recovered, message)
    return VerifyOutcome(accepted=h == bytes(sig.h), malformed=False)


def verify(pp, verifier_sk, signer_pk, message, sig):
    """1 if the signature is accepted by the designated verifier, else 0."""
    return int(verify_detailed(pp, verifier_sk, signer_pk, message, sig).accepted)


# ---------------------------------------------------------------------------
# fixed-width payload serialization


def payload_sizes(pp):
    """Bit widths of the serialized payloads under the given parameters."""
    backend = pp.backend
    return {
        "sk_bits": pp.eta * 8 * backend.scalar_len,
        "pk_bits": pp.eta * 8 * backend.element_store_len,
        "sig_bits": pp.lam + pp.eta * 8 * backend.scalar_len,
    }


def encode_secret_key(pp, sk):
    if len(sk) != pp.eta:
        raise ValueError("secret key length does not match eta")
    width = pp.backend.scalar_len
    n = pp.backend.N
    out = bytearray()
    for s in sk:
        if not 0 <= s < n:
            raise ValueError("secret scalar out of range")
        out += s.to_bytes(width, "big")
    return bytes(out)


def decode_secret_key(pp, data):
    width = pp.backend.scalar_len
    if len(data) != pp.eta * width:
        raise ValueError("secret key payload has wrong length")
    n = pp.backend.N
    sk = []
    for i in range(pp.eta):
        s = int.from_bytes(data[i * width : (i + 1) * width], "big")
        if s >= n:
            raise ValueError("secret scalar out of range")
        sk.append(s)
    return tuple(sk)


def encode_public_key(pp, pk):
    if len(pk) != pp.eta:
        raise ValueError("public key length does not match eta")
    backend = pp.backend
    width = backend.element_store_len
    out = bytearray()
    for el in pk:
        out += backend.element_to_int(el).to_bytes(width, "big")
    return bytes(out)


def decode_public_key(pp, data):
    backend = pp.backend
    width = backend.element_store_len
    if len(data) != pp.eta * width:
        raise ValueError("public key payload has wrong length")
    pk = []
    for i in range(pp.eta):
        v = int.from_bytes(data[i * width : (i + 1) * width], "big")
        pk.append(backend.element_from_int(v))
    return tuple(pk)


def encode_signature(pp, sig):
    if len(sig.h) != pp.hash_len or len(sig.z) != pp.eta:
        raise ValueError("signature shape does not match parameters")
    width = pp.backend.scalar_len
    out = bytearray(sig.h)
    for z in sig.z:
        if not 0 <= z < 1 << (8 * width):
            raise ValueError("signature scalar does not fit its field width")
        out += z.to_bytes(width, "big")
    return bytes(out)


def decode_signature(pp, data):
    """Parse a signature payload.

    Out-of-range scalars are preserved as parsed so that verification can
    reject them with the malformed flag rather than an exception.
    """
    width = pp.backend.scalar_len
    expected = pp.hash_len + pp.eta * width
    if len(data) != expected:
        raise ValueError("signature payload has wrong length")
    h = bytes(data[: pp.hash_len])
    z = tuple(
        int.from_bytes(data[pp.hash_len + i * width : pp.hash_len + (i + 1) * width], "big")
        for i in range(pp.eta)
    )
    return Signature(h=h, z=z)
