"""Executable security experiments with pluggable adversaries.

Three challenger state machines: strong unforgeability under chosen-message
attack (forger with sign/simulate/verify oracles), non-transferability
(real-vs-simulated distinguishing), and signer-identity privacy
(which-of-two-signers distinguishing with simulate/verify oracles).

"Negligible advantage" has no desk-scale number, so verdicts use binomial
three-sigma bands around the no-information baseline instead of a fixed
epsilon: an experiment passes when the measured advantage stays inside the
band (or, for wiring-check distinguishers that hold the verifier secret,
when it exceeds a floor).
"""

import json
import math
from dataclasses import dataclass, field

from .protocol import (
    Signature,
    _sign_with_nonces,
    _simulate_with_nonces,
    encode_signature,
    hash_transcript,
    sign,
    signer_keygen,
    simulate,
    verifier_keygen,
    verify,
)
from .rng import RandomSource

SUF_CMA = "SUF-CMA"
NT = "NT"
PSI = "PSI"


@dataclass
class QueryLog:
    """Append-only per-experiment bookkeeping.

    signatures holds canonical (message, signature-payload) pairs issued by
    the sign/simulate oracles; hash_records holds (message, element values,
    hash, auxiliary element values or None) tuples for every transcript the
    challenger hashed on the adversary's behalf.
    """

    signatures: set = field(default_factory=set)
    hash_records: list = field(default_factory=list)

    def remember_signature(self, pp, message, sig):
        self.signatures.add((bytes(message), encode_signature(pp, sig)))

    def contains(self, pp, message, sig):
        try:
            encoded = encode_signature(pp, sig)
        except (ValueError, TypeError):
            return False
        return (bytes(message), encoded) in self.signatures

    def remember_hash(self, message, elements, h, aux=None):
        self.hash_records.append((bytes(message), tuple(elements), h, aux))


@dataclass(frozen=True)
class ExperimentVerdict:
    experiment: str
    trials: int
    successes: int
    advantage_estimate: float
    bound: float
    passed: bool
    baseline: float = 0.0
    detail: str = ""

    def as_dict(self):
        return {
            "experiment": self.experiment,
            "detail": self.detail,
            "trials": self.trials,
            "successes": self.successes,
            "advantage": self.advantage_estimate,
            "bound": self.bound,
            "pass": self.passed,
        }

    def line(self):
        status = "pass" if self.passed else "FAIL"
        label = f"{self.experiment}[{self.detail}]" if self.detail else self.experiment
        return (
            f"{status} {label}: {self.successes}/{self.trials} successes, "
            f"advantage {self.advantage_estimate:.6f} vs bound {self.bound:.6f}"
        )


def three_sigma_band(trials, rate):
    """Half-width of the 3-sigma binomial band around the given rate."""
    return 3.0 * math.sqrt(rate * (1.0 - rate) / trials)


def _verdict(experiment, detail, trials, successes, baseline, bound, require_at_least=False):
    advantage = abs(successes / trials - baseline)
    passed = advantage >= bound if require_at_least else advantage <= bound
    return ExperimentVerdict(
        experiment=experiment,
        trials=trials,
        successes=successes,
        advantage_estimate=advantage,
        bound=bound,
        passed=passed,
        baseline=baseline,
        detail=detail,
    )


# ---------------------------------------------------------------------------
# strong unforgeability


class SufChallenger:
    """One unforgeability experiment: keys, the three oracles, and the log."""

    def __init__(self, pp, rng, query_budget):
        self.pp = pp
        self.rng = rng
        self.query_budget = query_budget
        self.queries = 0
        self.log = QueryLog()
        self.signer = signer_keygen(pp, rng)
        self.verifier = verifier_keygen(pp, rng)

    @property
    def signer_pk(self):
        return self.signer.pk

    @property
    def verifier_pk(self):
        return self.verifier.pk

    def _count(self):
        self.queries += 1
        if self.queries > self.query_budget:
            raise RuntimeError("oracle query budget exceeded")

    def sign_query(self, message):
        self._count()
        sig, _, targets = _sign_with_nonces(
            self.pp, self.signer.sk, self.verifier.pk, message, self.rng
        )
        self.log.remember_signature(self.pp, message, sig)
        backend = self.pp.backend
        aux = tuple(
            backend.element_to_int(backend.act(z, e))
            for z, e in zip(sig.z, self.signer.pk)
        )
        self.log.remember_hash(
            message, (backend.element_to_int(y) for y in targets), sig.h, aux
        )
        return sig

    def simulate_query(self, message):
        self._count()
        sig, _, targets = _simulate_with_nonces(
            self.pp, self.verifier.sk, self.signer.pk, message, self.rng
        )
        self.log.remember_signature(self.pp, message, sig)
        backend = self.pp.backend
        self.log.remember_hash(
            message, (backend.element_to_int(y) for y in targets), sig.h, None
        )
        return sig

    def verify_query(self, message, sig):
        self._count()
        return verify(self.pp, self.verifier.sk, self.signer.pk, message, sig)

    def judge(self, forgery):
        """Win iff the forgery verifies and was never issued by an oracle."""
        if forgery is None:
            return False
        message, sig = forgery
        if self.log.contains(self.pp, message, sig):
            return False
        return verify(self.pp, self.verifier.sk, self.signer.pk, message, sig) == 1


def run_suf_cma(pp, adversary, trials, rng=None, query_budget=64):
    """Repeat the unforgeability experiment with fresh keys per trial."""
    if rng is None:
        rng = RandomSource()
    successes = 0
    for _ in range(trials):
        challenger = SufChallenger(pp, rng, query_budget)
        forgery = adversary.run(challenger)
        if challenger.judge(forgery):
            successes += 1
    guess_rate = 2.0 ** -pp.lam
    bound = guess_rate + three_sigma_band(trials, guess_rate)
    detail = getattr(adversary, "name", type(adversary).__name__)
    return _verdict(SUF_CMA, detail, trials, successes, 0.0, bound)


class ReplayAdversary:
    """Returns a queried message-signature pair verbatim; must never win."""

    name = "replay"

    def run(self, ch):
        message = ch.rng.take(16)
        return message, ch.sign_query(message)


class RandomForgeryAdversary:
    """Makes no queries; outputs uniformly random hash and scalars."""

    name = "random-forgery"

    def run(self, ch):
        message = ch.rng.take(16)
        h = ch.rng.take(ch.pp.hash_len)
        z = tuple(ch.pp.backend.sample_scalar(ch.rng) for _ in range(ch.pp.eta))
        return message, Signature(h=h, z=z)


class RerandomizeAdversary:
    """Perturbs one scalar of a legitimately queried signature."""

    name = "rerandomize-z"

    def run(self, ch):
        message = ch.rng.take(16)
        sig = ch.sign_query(message)
        z = list(sig.z)
        z[0] = (z[0] + 1) % ch.pp.backend.N
        return message, Signature(h=sig.h, z=tuple(z))


def builtin_suf_adversaries():
    return [ReplayAdversary(), RandomForgeryAdversary(), RerandomizeAdversary()]


# ---------------------------------------------------------------------------
# non-transferability


@dataclass
class NTContext:
    pp: object
    signer_pk: tuple
    verifier_pk: tuple
    rng: RandomSource
    verifier_sk: tuple = None


def run_nt(pp, distinguisher, trials, rng=None, fresh_keys=False):
    """Real-vs-simulated distinguishing game.

    Keys are fixed across trials unless fresh_keys is set.  Distinguishers
    flagged needs_verifier_secret get the verifier secret key in their
    context (white-box sanity strategies); all others run without secrets.
    """
    if rng is None:
        rng = RandomSource()
    signer = verifier = None
    successes = 0
    for _ in range(trials):
        if fresh_keys or signer is None:
            signer = signer_keygen(pp, rng)
            verifier = verifier_keygen(pp, rng)
        ctx = NTContext(
            pp=pp,
            signer_pk=signer.pk,
            verifier_pk=verifier.pk,
            rng=rng,
            verifier_sk=verifier.sk if getattr(distinguisher, "needs_verifier_secret", False) else None,
        )
        message = rng.take(32)
        candidates = (
            sign(pp, signer.sk, verifier.pk, message, rng),
            simulate(pp, verifier.sk, signer.pk, message, rng),
        )
        b = rng.bit()
        guess = distinguisher.decide(ctx, message, candidates[b]) & 1
        if guess == b:
            successes += 1
    bound = three_sigma_band(trials, 0.5)
    detail = getattr(distinguisher, "name", type(distinguisher).__name__)
    return _verdict(NT, detail, trials, successes, 0.5, bound)


class _Fixed:
    needs_verifier_secret = False

    def __init__(self, name, fn):
        self.name = name
        self._fn = fn

    def decide(self, ctx, message, sig):
        return self._fn(ctx, message, sig)


class VerifyBitDistinguisher:
    """Outputs the verification bit.  Both branches verify, so this must
    show zero advantage even though it holds the verifier secret."""

    name = "verify-bit"
    needs_verifier_secret = True

    def decide(self, ctx, message, sig):
        return verify(ctx.pp, ctx.verifier_sk, ctx.signer_pk, message, sig)


def builtin_nt_distinguishers():
    """Ten fixed strategies thresholding everything observable in a signature."""

    def enc_parity(ctx, message, sig):
        return sum(encode_signature(ctx.pp, sig)) & 1

    half = lambda ctx: ctx.pp.backend.N // 2
    return [
        _Fixed("always-zero", lambda ctx, m, s: 0),
        _Fixed("always-one", lambda ctx, m, s: 1),
        _Fixed("coin-flip", lambda ctx, m, s: ctx.rng.bit()),
        _Fixed("z-low-half", lambda ctx, m, s: int(s.z[0] < half(ctx))),
        _Fixed("z-parity", lambda ctx, m, s: s.z[0] & 1),
        _Fixed("z-sum-parity", lambda ctx, m, s: sum(s.z) & 1),
        _Fixed("h-top-bit", lambda ctx, m, s: s.h[0] >> 7),
        _Fixed("h-parity", lambda ctx, m, s: s.h[-1] & 1),
        _Fixed("payload-byte-parity", enc_parity),
        VerifyBitDistinguisher(),
    ]


# ---------------------------------------------------------------------------
# privacy of signer identity


@dataclass
class PsiContext:
    pp: object
    signer_pks: tuple      # (pk of signer 0, pk of signer 1)
    signer_sks: tuple      # both signer secrets are public in this game
    verifier_pk: tuple
    rng: RandomSource
    verifier_sk: tuple = None
    _challenger: object = None

    def simulate_query(self, message, which):
        return self._challenger.simulate_query(message, which)

    def verify_query(self, message, sig, which):
        return self._challenger.verify_query(message, sig, which)


class PsiChallenger:
    """One identity-privacy trial: oracles, challenge, freshness tracking.

    Simulation queries are allowed only before the challenge; verification
    queries are always allowed but are recorded, and a win is discarded if
    the challenge pair was ever submitted for verification.
    """

    def __init__(self, pp, signers, verifier, rng, query_budget):
        self.pp = pp
        self.signers = signers
        self.verifier = verifier
        self.rng = rng
        self.query_budget = query_budget
        self.queries = 0
        self.verified_pairs = set()
        self.challenged = False

    def _count(self):
        self.queries += 1
        if self.queries > self.query_budget:
            raise RuntimeError("oracle query budget exceeded")

    def simulate_query(self, message, which):
        if self.challenged:
            raise RuntimeError("simulation queries are not allowed after the challenge")
        self._count()
        return simulate(self.pp, self.verifier.sk, self.signers[which].pk, message, self.rng)

    def verify_query(self, message, sig, which):
        self._count()
        try:
            self.verified_pairs.add((bytes(message), encode_signature(self.pp, sig)))
        except (ValueError, TypeError):
            pass
        return verify(self.pp, self.verifier.sk, self.signers[which].pk, message, sig)

    def challenge(self, message):
        self.challenged = True
        b = self.rng.bit()
        sig = sign(self.pp, self.signers[b].sk, self.verifier.pk, message, self.rng)
        return b, sig

    def is_fresh(self, message, sig):
        return (bytes(message), encode_signature(self.pp, sig)) not in self.verified_pairs


def run_psi(pp, distinguisher, trials, rng=None, query_budget=64):
    """Which-signer distinguishing game; one key configuration per run.

    A trial counts as a success only when the guess is right and the
    challenge pair was never submitted to the verification oracle.
    Distinguishers carrying expected="distinguishing" (wiring checks that
    hold the verifier secret) pass by exceeding their min_advantage floor
    instead of staying inside the band.
    """
    if rng is None:
        rng = RandomSource()
    signers = (signer_keygen(pp, rng), signer_keygen(pp, rng))
    verifier = verifier_keygen(pp, rng)
    needs_secret = getattr(distinguisher, "needs_verifier_secret", False)
    successes = 0
    for _ in range(trials):
        challenger = PsiChallenger(pp, signers, verifier, rng, query_budget)
        ctx = PsiContext(
            pp=pp,
            signer_pks=(signers[0].pk, signers[1].pk),
            signer_sks=(signers[0].sk, signers[1].sk),
            verifier_pk=verifier.pk,
            rng=rng,
            verifier_sk=verifier.sk if needs_secret else None,
            _challenger=challenger,
        )
        prepare = getattr(distinguisher, "prepare", None)
        if prepare is not None:
            prepare(ctx)
        message = rng.take(32)
        b, sig = challenger.challenge(message)
        guess = distinguisher.decide(ctx, message, sig) & 1
        if guess == b and challenger.is_fresh(message, sig):
            successes += 1
    detail = getattr(distinguisher, "name", type(distinguisher).__name__)
    if getattr(distinguisher, "expected", "indistinguishable") == "distinguishing":
        bound = getattr(distinguisher, "min_advantage", 0.45)
        return _verdict(PSI, detail, trials, successes, 0.5, bound, require_at_least=True)
    bound = three_sigma_band(trials, 0.5)
    return _verdict(PSI, detail, trials, successes, 0.5, bound)


class RetraceThenGuessPsi:
    """Follows the public part of the retrace attack: computes [z_i] applied
    to both candidate public keys, which is as far as anyone gets without
    the verifier secret, then guesses."""

    name = "retrace-then-guess"
    needs_verifier_secret = False

    def decide(self, ctx, message, sig):
        backend = ctx.pp.backend
        for pk in ctx.signer_pks:
            for z, e in zip(sig.z, pk):
                backend.act(z, e)
        return ctx.rng.bit()


class WhiteboxVerifierPsi:
    """Holds the verifier secret and verifies against both candidate signer
    keys; exists to confirm the experiment is winnable when the secret is
    available, i.e. that the wiring is live."""

    name = "whitebox-verifier"
    needs_verifier_secret = True
    expected = "distinguishing"
    min_advantage = 0.45

    def decide(self, ctx, message, sig):
        for j in (0, 1):
            if verify(ctx.pp, ctx.verifier_sk, ctx.signer_pks[j], message, sig):
                return j
        return 0


class ChallengeEchoCheater:
    """Learns the bit by submitting the challenge pair to the verification
    oracle; the freshness rule must zero out its successes."""

    name = "challenge-echo-cheater"
    needs_verifier_secret = False

    def decide(self, ctx, message, sig):
        return 1 if ctx.verify_query(message, sig, 1) else 0


def builtin_psi_distinguishers():
    """No-secret strategies expected to sit at the 1/2 baseline."""

    def enc_parity(ctx, message, sig):
        return sum(encode_signature(ctx.pp, sig)) & 1

    half = lambda ctx: ctx.pp.backend.N // 2
    return [
        _Fixed("always-zero", lambda ctx, m, s: 0),
        _Fixed("always-one", lambda ctx, m, s: 1),
        _Fixed("coin-flip", lambda ctx, m, s: ctx.rng.bit()),
        RetraceThenGuessPsi(),
        _Fixed("z-low-half", lambda ctx, m, s: int(s.z[0] < half(ctx))),
        _Fixed("z-parity", lambda ctx, m, s: s.z[0] & 1),
        _Fixed("h-top-bit", lambda ctx, m, s: s.h[0] >> 7),
        _Fixed("payload-byte-parity", enc_parity),
    ]


# ---------------------------------------------------------------------------
# the extraction identity behind the unforgeability reduction


def extraction_identity_check(pp, rng=None, trials=100, simulated=False):
    """Check [-z_i] applied to Y_i equals [s_i + v_i] applied to the base.

    The unforgeability reduction extracts the joint secret element from any
    valid signature via this identity; it must hold for honestly signed and
    for simulated signatures alike.
    """
    if rng is None:
        rng = RandomSource()
    backend = pp.backend
    n = backend.N
    for _ in range(trials):
        signer = signer_keygen(pp, rng)
        verifier = verifier_keygen(pp, rng)
        message = rng.take(32)
        if simulated:
            sig, _, targets = _simulate_with_nonces(pp, verifier.sk, signer.pk, message, rng)
        else:
            sig, _, targets = _sign_with_nonces(pp, signer.sk, verifier.pk, message, rng)
        for i in range(pp.eta):
            left = backend.act((n - sig.z[i]) % n, targets[i])
            right = backend.act((signer.sk[i] + verifier.sk[i]) % n, backend.base)
            if not backend.element_eq(left, right):
                return False
    return True


# ---------------------------------------------------------------------------
# reports


def format_report(verdicts):
    lines = [v.line() for v in verdicts]
    overall = "ALL PASS" if all(v.passed for v in verdicts) else "FAILURES PRESENT"
    lines.append(overall)
    return "\n".join(lines) + "\n"


def write_report(verdicts, text_path, json_path):
    with open(text_path, "w") as fh:
        fh.write(format_report(verdicts))
    with open(json_path, "w") as fh:
        json.dump([v.as_dict() for v in verdicts], fh, indent=2)
        fh.write("\n")
