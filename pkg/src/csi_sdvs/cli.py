"""Command-line front end: parameter generation, key lifecycle, signing,
verification, simulation, security games, and micro-benchmarks.

Exit codes are frozen for scripting:
  0 success / signature valid       3 I/O failure
  1 signature invalid               4 malformed or mismatched artifact
  2 usage error                     5 security-game verdict failure
"""

import argparse
import os
import sys
import time

from . import artifacts, games, protocol
from .rng import RandomSource

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ARTIFACT = 4
EXIT_GAME = 5

PARAMS_ENV = "CSI_SDVS_PARAMS"

_ROLE_KINDS = {
    ("signer", "sk"): artifacts.KIND_SIGNER_SK,
    ("signer", "pk"): artifacts.KIND_SIGNER_PK,
    ("verifier", "sk"): artifacts.KIND_VERIFIER_SK,
    ("verifier", "pk"): artifacts.KIND_VERIFIER_PK,
}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _warn_unsafe(pp):
    if pp.unsafe:
        print("WARNING: UNSAFE-TOY parameters (security level below 128 bits)", file=sys.stderr)


def _read_file(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")


def _write_file(path, data, secret=False):
    try:
        if secret:
            fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
        else:
            with open(path, "wb") as fh:
                fh.write(data)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}")


def _load_params(path):
    if path is None:
        path = os.environ.get(PARAMS_ENV)
    if path is None:
        raise CliError(EXIT_USAGE, f"no parameter file given (flag --params or ${PARAMS_ENV})")
    blob = _read_file(path)
    try:
        kind, _, _, payload = artifacts.unpack(blob)
        if kind != artifacts.KIND_PARAMS:
            raise artifacts.ArtifactError("not a parameter file")
        pp = artifacts.params_from_payload(payload)
    except artifacts.ArtifactError as exc:
        raise CliError(EXIT_ARTIFACT, f"{path}: {exc}")
    _warn_unsafe(pp)
    return pp


def _load_key(pp, path, role, part):
    blob = _read_file(path)
    try:
        payload = artifacts.unpack_for_params(pp, blob, _ROLE_KINDS[(role, part)])
        if part == "sk":
            return protocol.decode_secret_key(pp, payload)
        return protocol.decode_public_key(pp, payload)
    except (artifacts.ArtifactError, ValueError) as exc:
        raise CliError(EXIT_ARTIFACT, f"{path}: {exc}")


def _load_signature(pp, path):
    blob = _read_file(path)
    try:
        payload = artifacts.unpack_for_params(pp, blob, artifacts.KIND_SIGNATURE)
        return protocol.decode_signature(pp, payload)
    except (artifacts.ArtifactError, ValueError) as exc:
        raise CliError(EXIT_ARTIFACT, f"{path}: {exc}")


def _rng_from(args):
    return RandomSource(args.seed) if args.seed is not None else RandomSource()


def cmd_paramgen(args):
    if args.eta < 1:
        raise CliError(EXIT_USAGE, "--eta must be at least 1")
    if args.lam not in protocol.SUPPORTED_LAMBDAS:
        raise CliError(EXIT_USAGE, f"--lambda must be one of {protocol.SUPPORTED_LAMBDAS}")
    rng = _rng_from(args)
    try:
        pp = protocol.setup(args.profile, args.eta, args.lam, rng, group_order=args.group_order)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc))
    payload = artifacts.params_to_payload(pp)
    _write_file(args.out, artifacts.pack_for_params(pp, artifacts.KIND_PARAMS, payload))
    _warn_unsafe(pp)
    backend = pp.backend
    sizes = protocol.payload_sizes(pp)
    print(f"profile: {backend.kind}")
    print(f"N (group order): {backend.N}")
    if backend.kind == "toy-isogeny":
        print(f"p: {backend.modulus.p}")
    print(
        f"payload bits: sk={sizes['sk_bits']} pk={sizes['pk_bits']} sig={sizes['sig_bits']}"
    )
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_keygen(args):
    pp = _load_params(args.params)
    rng = _rng_from(args)
    if args.role == "signer":
        pair = protocol.signer_keygen(pp, rng)
    else:
        pair = protocol.verifier_keygen(pp, rng)
    sk_blob = artifacts.pack_for_params(
        pp, _ROLE_KINDS[(args.role, "sk")], protocol.encode_secret_key(pp, pair.sk)
    )
    pk_blob = artifacts.pack_for_params(
        pp, _ROLE_KINDS[(args.role, "pk")], protocol.encode_public_key(pp, pair.pk)
    )
    _write_file(args.out_prefix + ".sk", sk_blob, secret=True)
    _write_file(args.out_prefix + ".pk", pk_blob)
    print(f"wrote {args.out_prefix}.sk and {args.out_prefix}.pk ({args.role})")
    return EXIT_OK


def cmd_sign(args):
    pp = _load_params(args.params)
    sk = _load_key(pp, args.signer_sk, "signer", "sk")
    pk = _load_key(pp, args.verifier_pk, "verifier", "pk")
    message = _read_file(args.message)
    sig = protocol.sign(pp, sk, pk, message, _rng_from(args))
    blob = artifacts.pack_for_params(pp, artifacts.KIND_SIGNATURE, protocol.encode_signature(pp, sig))
    _write_file(args.out, blob)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_simulate(args):
    pp = _load_params(args.params)
    sk = _load_key(pp, args.verifier_sk, "verifier", "sk")
    pk = _load_key(pp, args.signer_pk, "signer", "pk")
    message = _read_file(args.message)
    sig = protocol.simulate(pp, sk, pk, message, _rng_from(args))
    blob = artifacts.pack_for_params(pp, artifacts.KIND_SIGNATURE, protocol.encode_signature(pp, sig))
    _write_file(args.out, blob)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args):
    pp = _load_params(args.params)
    sk = _load_key(pp, args.verifier_sk, "verifier", "sk")
    pk = _load_key(pp, args.signer_pk, "signer", "pk")
    message = _read_file(args.message)
    sig = _load_signature(pp, args.signature)
    outcome = protocol.verify_detailed(pp, sk, pk, message, sig)
    if outcome.accepted:
        print("VALID")
        return EXIT_OK
    print("INVALID" + (" (malformed)" if outcome.malformed else ""))
    return EXIT_INVALID


def _game_params(args):
    if args.params is None and os.environ.get(PARAMS_ENV) is None and args.profile is not None:
        rng = RandomSource(args.seed) if args.seed is not None else RandomSource()
        lam = args.lam if args.lam is not None else (16 if args.profile == "toy" else 128)
        try:
            pp = protocol.setup(args.profile, args.eta, lam, rng, group_order=args.group_order)
        except ValueError as exc:
            raise CliError(EXIT_USAGE, str(exc))
        _warn_unsafe(pp)
        return pp
    return _load_params(args.params)


def cmd_game(args):
    pp = _game_params(args)
    rng = _rng_from(args)
    verdicts = []
    if args.experiment == "suf":
        for adversary in games.builtin_suf_adversaries():
            verdicts.append(games.run_suf_cma(pp, adversary, args.trials, rng))
    elif args.experiment == "nt":
        for dist in games.builtin_nt_distinguishers():
            verdicts.append(games.run_nt(pp, dist, args.trials, rng))
    else:
        for dist in games.builtin_psi_distinguishers():
            verdicts.append(games.run_psi(pp, dist, args.trials, rng))
        verdicts.append(games.run_psi(pp, games.WhiteboxVerifierPsi(), args.trials, rng))
    for v in verdicts:
        print(v.line())
    prefix = args.report or f"game-{args.experiment}-report"
    try:
        games.write_report(verdicts, prefix + ".txt", prefix + ".json")
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write report: {exc}")
    print(f"report: {prefix}.txt {prefix}.json")
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_GAME


def cmd_bench(args):
    pp = _load_params(args.params)
    rng = _rng_from(args)
    signer = protocol.signer_keygen(pp, rng)
    verifier = protocol.verifier_keygen(pp, rng)
    message = rng.take(64)
    iterations = args.iterations

    start = time.perf_counter()
    for _ in range(iterations):
        sig = protocol.sign(pp, signer.sk, verifier.pk, message, rng)
    sign_ms = (time.perf_counter() - start) * 1000 / iterations

    start = time.perf_counter()
    for _ in range(iterations):
        protocol.verify(pp, verifier.sk, signer.pk, message, sig)
    verify_ms = (time.perf_counter() - start) * 1000 / iterations

    start = time.perf_counter()
    for _ in range(iterations):
        protocol.simulate(pp, verifier.sk, signer.pk, message, rng)
    simul_ms = (time.perf_counter() - start) * 1000 / iterations

    print(f"sign:     {sign_ms:.3f} ms/op")
    print(f"verify:   {verify_ms:.3f} ms/op")
    print(f"simulate: {simul_ms:.3f} ms/op")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="csi-sdvs",
        description="Designated verifier signatures over a commutative group action.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paramgen", help="generate a parameter file")
    p.add_argument("--profile", choices=("toy", "mock"), required=True)
    p.add_argument("--eta", type=int, default=1, help="number of parallel instances")
    p.add_argument("--lambda", dest="lam", type=int, default=128, help="security bits (16 or 128)")
    p.add_argument("--group-order", type=int, default=None, help="mock profile group order override")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_paramgen)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--params", default=None)
    p.add_argument("--role", choices=("signer", "verifier"), required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(fn=cmd_keygen)

    p = sub.add_parser("sign", help="sign a message file for a designated verifier")
    p.add_argument("--params", default=None)
    p.add_argument("--signer-sk", required=True)
    p.add_argument("--verifier-pk", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_sign)

    p = sub.add_parser("simulate", help="simulate a signature as the designated verifier")
    p.add_argument("--params", default=None)
    p.add_argument("--verifier-sk", required=True)
    p.add_argument("--signer-pk", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("verify", help="verify a signature file")
    p.add_argument("--params", default=None)
    p.add_argument("--verifier-sk", required=True)
    p.add_argument("--signer-pk", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--signature", required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("game", help="run a security experiment suite")
    p.add_argument("experiment", choices=("suf", "nt", "psi"))
    p.add_argument("--params", default=None)
    p.add_argument("--profile", choices=("toy", "mock"), default=None,
                   help="build default parameters instead of loading a file")
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=int, default=None)
    p.add_argument("--group-order", type=int, default=None)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", default=None, help="report path prefix")
    p.set_defaults(fn=cmd_game)

    p = sub.add_parser("bench", help="micro-benchmark sign/verify/simulate")
    p.add_argument("--params", default=None)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
