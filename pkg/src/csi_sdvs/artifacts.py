"""Self-describing binary container for every on-disk artifact.

Layout: 8-byte magic, kind byte, profile byte, flags byte, 4-byte payload
length, payload, then a 4-byte checksum (truncated SHA-256 over everything
preceding it).  The flags byte carries the unsafe marker for any artifact
generated below the standard security level.  Parameter payloads are
canonical JSON; key and signature payloads are the fixed-width encodings
from the protocol layer, so their bit lengths follow the size formulas
exactly.
"""

import hashlib
import json

from .action import MockAdditiveBackend, ToyIsogenyBackend
from .fp import PrimeModulus
from .protocol import PublicParams

MAGIC = b"CSISDVS1"
FLAG_UNSAFE = 0x01

KIND_PARAMS = 1
KIND_SIGNER_SK = 2
KIND_SIGNER_PK = 3
KIND_VERIFIER_SK = 4
KIND_VERIFIER_PK = 5
KIND_SIGNATURE = 6

KIND_NAMES = {
    KIND_PARAMS: "params",
    KIND_SIGNER_SK: "signer-sk",
    KIND_SIGNER_PK: "signer-pk",
    KIND_VERIFIER_SK: "verifier-sk",
    KIND_VERIFIER_PK: "verifier-pk",
    KIND_SIGNATURE: "signature",
}

PROFILE_NAMES = {1: "toy-isogeny", 2: "mock-additive"}

_HEADER_LEN = len(MAGIC) + 3 + 4
_CHECKSUM_LEN = 4


class ArtifactError(Exception):
    """Raised for any malformed, corrupted, or mismatched artifact."""


def pack(kind, profile, unsafe, payload):
    if kind not in KIND_NAMES:
        raise ValueError(f"unknown artifact kind {kind}")
    if profile not in PROFILE_NAMES:
        raise ValueError(f"unknown profile byte {profile}")
    flags = FLAG_UNSAFE if unsafe else 0
    body = MAGIC + bytes([kind, profile, flags]) + len(payload).to_bytes(4, "big") + payload
    return body + hashlib.sha256(body).digest()[:_CHECKSUM_LEN]


def unpack(blob):
    """Return (kind, profile, unsafe, payload) or raise ArtifactError."""
    if len(blob) < _HEADER_LEN + _CHECKSUM_LEN:
        raise ArtifactError("artifact too short")
    if blob[: len(MAGIC)] != MAGIC:
        raise ArtifactError("bad magic")
    kind = blob[len(MAGIC)]
    profile = blob[len(MAGIC) + 1]
    flags = blob[len(MAGIC) + 2]
    length = int.from_bytes(blob[len(MAGIC) + 3 : _HEADER_LEN], "big")
    if len(blob) != _HEADER_LEN + length + _CHECKSUM_LEN:
        raise ArtifactError("artifact length mismatch")
    body, checksum = blob[: _HEADER_LEN + length], blob[_HEADER_LEN + length :]
    if hashlib.sha256(body).digest()[:_CHECKSUM_LEN] != checksum:
        raise ArtifactError("checksum mismatch")
    if kind not in KIND_NAMES:
        raise ArtifactError(f"unknown artifact kind {kind}")
    if profile not in PROFILE_NAMES:
        raise ArtifactError(f"unknown profile byte {profile}")
    return kind, profile, bool(flags & FLAG_UNSAFE), blob[_HEADER_LEN : _HEADER_LEN + length]


def params_to_payload(pp):
    backend = pp.backend
    if isinstance(backend, ToyIsogenyBackend):
        doc = {
            "kind": backend.kind,
            "p": backend.modulus.p,
            "ells": list(backend.modulus.ells),
            "base_a": backend.orbit[0],
            "generator": list(backend.generator),
            "class_number": backend.N,
            "eta": pp.eta,
            "lam": pp.lam,
            "hash": pp.hash_id,
        }
    elif isinstance(backend, MockAdditiveBackend):
        doc = {
            "kind": backend.kind,
            "group_order": backend.N,
            "element_bits": backend.element_bits,
            "eta": pp.eta,
            "lam": pp.lam,
            "hash": pp.hash_id,
        }
    else:
        raise ValueError(f"unknown backend type {type(backend).__name__}")
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def params_from_payload(payload, rng=None):
    """Rebuild parameters; the toy orbit is re-derived and must reproduce
    the frozen class number, which re-certifies the stored generator."""
    try:
        doc = json.loads(payload.decode())
        kind = doc["kind"]
        if kind == ToyIsogenyBackend.kind:
            modulus = PrimeModulus(doc["p"], doc["ells"])
            backend = ToyIsogenyBackend(
                modulus,
                base_a=doc["base_a"],
                generator=doc["generator"],
                rng=rng,
                expected_order=doc["class_number"],
            )
        elif kind == MockAdditiveBackend.kind:
            backend = MockAdditiveBackend(doc["group_order"], element_bits=doc["element_bits"])
        else:
            raise ArtifactError(f"unknown backend kind {kind!r}")
        return PublicParams(backend=backend, eta=doc["eta"], lam=doc["lam"], hash_id=doc["hash"])
    except ArtifactError:
        raise
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as exc:
        raise ArtifactError(f"invalid parameter payload: {exc}") from exc


def pack_for_params(pp, kind, payload):
    return pack(kind, pp.backend.kind_byte, pp.unsafe, payload)


def unpack_for_params(pp, blob, expected_kind):
    """Unpack and enforce kind/profile consistency with loaded parameters."""
    kind, profile, unsafe, payload = unpack(blob)
    if kind != expected_kind:
        raise ArtifactError(
            f"expected a {KIND_NAMES[expected_kind]} artifact, got {KIND_NAMES[kind]}"
        )
    if profile != pp.backend.kind_byte:
        raise ArtifactError(
            f"profile mismatch: artifact is {PROFILE_NAMES[profile]}, "
            f"parameters are {pp.backend.kind}"
        )
    if unsafe != pp.unsafe:
        raise ArtifactError("unsafe marker does not match parameters")
    return payload
