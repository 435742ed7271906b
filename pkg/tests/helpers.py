"""Shared test utilities: statistical checks and scripted randomness."""

import scipy.stats


def chi_square_uniform(counts, significance=0.001, probabilities=None):
    """Pearson chi-square goodness-of-fit test over the given cell counts.

    Cells are equiprobable unless explicit probabilities are supplied (used
    when uniform draws are folded into unequal-sized buckets).  Returns
    (ok, statistic, critical); ok is True when the statistic stays below
    the critical value at the given significance level.
    """
    k = len(counts)
    n = sum(counts)
    if probabilities is None:
        expected = [n / k] * k
    else:
        assert len(probabilities) == k
        expected = [n * q for q in probabilities]
    stat = sum((c - e) ** 2 / e for c, e in zip(counts, expected))
    critical = scipy.stats.chi2.ppf(1 - significance, k - 1)
    return stat <= critical, stat, critical


class ScriptedRng:
    """Feeds a fixed sequence of byte chunks; used to force specific nonces."""

    def __init__(self, chunks):
        self.chunks = [bytes(c) for c in chunks]

    def take(self, n):
        chunk = self.chunks.pop(0)
        assert len(chunk) == n, f"script expected a draw of {len(chunk)} bytes, got {n}"
        return chunk

    def bit(self):
        return self.take(1)[0] & 1


def flip_bit(data, bit_index):
    """Return a copy of data with one bit flipped."""
    out = bytearray(data)
    out[bit_index // 8] ^= 1 << (bit_index % 8)
    return bytes(out)
