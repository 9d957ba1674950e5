import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from functools import reduce
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from ..probability import State
from ..utils import get_settings, check_enumeration, UselessChannelError
from ._channel import Channel
from ._classify import LosslessChannel, classify
from ._metrics import capacity

log = logging.getLogger(__name__)

MAX_DRAWS_PER_CODEWORD = 100


@dataclass(frozen=True)
class CodingTrial:
    """One seeded codebook of the coding experiment.

    Attributes:
        k (int): block length
        rate (float): transmission rate R in bits per symbol
        trial (int): trial index
        seed (int): seed of this trial
        deviation (float): Omega(|O_Ck - O_Lk|)
        error_prob (float): decoding error probability
        degenerate (bool): the decoder has an empty decision block
    """
    k: int
    rate: float
    trial: int
    seed: int
    deviation: float
    error_prob: float
    degenerate: bool

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class CodingExperimentResult:
    """Averages over the trials of one block length.

    Attributes:
        k (int): block length
        rate (float): transmission rate R
        codebook_size (int): r_k = floor(2**(k R))
        deviation (float): mean deviation
        error_prob (float): mean error probability
        trials (int): number of trials
        seed (int): base seed; trial t used seed + t
        degenerate_trials (int): trials whose decoder was degenerate
    """
    k: int
    rate: float
    codebook_size: int
    deviation: float
    error_prob: float
    trials: int
    seed: int
    degenerate_trials: int = 0

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'CodingExperimentResult':
        return cls(**data)


class CodeAndDecoder(NamedTuple):
    codebook: Tuple[Tuple[int, ...], ...]
    decoder: LosslessChannel


def codebook_size(k: int, rate: float) -> int:
    """r_k = floor(2**(k R)), robust to rounding when k R is an integer.

    Examples:
        >>> from cstarinfo.channel import codebook_size
        >>> codebook_size(4, 0.5), codebook_size(12, 0.4)
        (4, 27)
    """
    return int(math.floor(2.0 ** (k * rate) * (1 + 1e-12)))


def induced_channel(c: Channel, codebook: Sequence[Sequence[int]]) -> np.ndarray:
    """Rows of C^(k) at the codewords, shape (r_k, n**k)."""
    return np.array([reduce(np.kron, [c.matrix[x] for x in word]) for word in codebook])


def _draw_codebook(omega: State, k: int, r: int, rng: np.random.Generator) -> Tuple[Tuple[int, ...], ...]:
    codebook: List[Tuple[int, ...]] = []
    seen = set()
    draws = 0
    while len(codebook) < r:
        if draws >= MAX_DRAWS_PER_CODEWORD * r:
            raise ValueError(f'Could not draw {r} distinct codewords of length {k} after {draws} draws; '
                             'the rate is too high for this block length')
        word = tuple(int(x) for x in rng.choice(omega.dim, size=k, p=omega.weights))
        draws += 1
        if word not in seen:
            seen.add(word)
            codebook.append(word)
    return tuple(codebook)


def decode(induced: np.ndarray) -> LosslessChannel:
    """Maximum a-posteriori decoder of a code with uniform prior.

    Every output string goes to the codeword of largest likelihood, the lowest
    codeword index winning ties. Each row is the induced row restricted to its
    decision block and renormalized; a block of zero mass gets the uniform row.
    """
    r, n_out = induced.shape
    partition = np.argmax(induced, axis=0)
    L = np.zeros_like(induced)
    for j in range(r):
        block = np.flatnonzero(partition == j)
        if block.size == 0:
            continue
        mass = induced[j, block].sum()
        L[j, block] = induced[j, block] / mass if mass > 0 else 1 / block.size
    return LosslessChannel(L, partition)


def build_code_and_decoder(c: Channel, omega: State, k: int, R: float, seed: int = 0,
                           guard_override: bool = False) -> CodeAndDecoder:
    """Random code of rate R and block length k with its maximum a-posteriori decoder.

    The r_k = floor(2**(k R)) codewords are distinct input strings drawn i.i.d. from
    omega^k with `numpy.random.default_rng(seed)`, duplicates being redrawn. The
    decoder L is the lossless channel of [cstarinfo.channel.decode][] applied to
    the induced channel C_k.

    Examples:
        >>> from cstarinfo.channel import build_code_and_decoder, bsc
        >>> from cstarinfo.probability import State
        >>> codebook, L = build_code_and_decoder(bsc(0.05), State.uniform(2), 4, 0.5, seed=7)
        >>> len(codebook), len(L.partition)
        (4, 16)

    Raises:
        ValueError: r_k < 2, r_k > m**k, or too many duplicate draws
        GuardExceededError: n**k output strings exceed the enumeration guard
    """
    r = _checked_size(c, omega, k, R)
    codebook, decoder = _build(c, omega, k, r, seed, guard_override)
    if decoder.degenerate:
        warnings.warn(f'Degenerate decoder at k={k}, seed={seed}: some codewords have empty decision blocks')
    return CodeAndDecoder(codebook, decoder)


def _checked_size(c: Channel, omega: State, k: int, R: float) -> int:
    if int(k) != k or k < 1:
        raise ValueError(f'Block length must be a positive integer, got {k}')
    if c.input_dim != omega.dim:
        raise ValueError(f'Input state of dimension {omega.dim} for a channel with {c.input_dim} inputs')
    r = codebook_size(k, R)
    if r < 2:
        raise ValueError(f'Rate {R} gives fewer than two codewords at k={k}')
    if r > c.input_dim ** k:
        raise ValueError(f'Rate {R} asks for {r} codewords but only {c.input_dim ** k} strings of length {k} exist')
    return r


def _build(c: Channel, omega: State, k: int, r: int, seed: int,
           guard_override: bool) -> CodeAndDecoder:
    check_enumeration(k * math.log2(c.output_dim), guard_override)
    codebook = _draw_codebook(omega, int(k), r, np.random.default_rng(seed))
    return CodeAndDecoder(codebook, decode(induced_channel(c, codebook)))


def deviation_and_error(induced: np.ndarray, decoder: LosslessChannel) -> Tuple[float, float]:
    """Deviation Omega(|O_Ck - O_Lk|) and error probability under the uniform code state.

    Both outputs share the codeword/output-string basis, so the deviation is the
    average over codewords of sum_i |C_k(y_i|x_j) - L(y_i|x_j)|.
    """
    r = induced.shape[0]
    deviation = float(np.abs(induced - decoder.matrix).sum() / r)
    outside = np.ones_like(induced, dtype=bool)
    outside[list(decoder.partition), np.arange(induced.shape[1])] = False
    error = float(induced[outside].sum() / r)
    return deviation, min(max(error, 0.0), 1.0)


def _trial(c: Channel, omega: State, k: int, R: float, trial: int, seed: int, guard_override: bool) -> CodingTrial:
    codebook, decoder = _build(c, omega, k, codebook_size(k, R), seed + trial, guard_override)
    deviation, error = deviation_and_error(induced_channel(c, codebook), decoder)
    return CodingTrial(int(k), float(R), trial, seed + trial, deviation, error, decoder.degenerate)


def coding_trials(c: Channel, omega: State, R: float, ks: Sequence[int], trials: int = 20, seed: int = 0,
                  guard_override: bool = False) -> List[CodingTrial]:
    """One [cstarinfo.channel.CodingTrial][] per (k, trial), ordered by k then trial.

    Trials run on `get_settings().threads` worker threads; each trial seeds its
    own generator with seed + trial index, so results do not depend on the threads.
    """
    if trials < 1:
        raise ValueError(f'At least one trial is needed, got {trials}')
    ks = [int(k) for k in ks]
    for k in ks:
        _checked_size(c, omega, k, R)
    jobs = [(k, t) for k in ks for t in range(trials)]
    with ThreadPoolExecutor(max_workers=get_settings().threads) as executor:
        results = list(executor.map(lambda job: _trial(c, omega, job[0], R, job[1], seed, guard_override), jobs))
    degenerate = sum(result.degenerate for result in results)
    if degenerate:
        warnings.warn(f'{degenerate} of {len(results)} trials produced a degenerate decoder')
    return results


def summarize_trials(results: Sequence[CodingTrial], seed: int = 0) -> List[CodingExperimentResult]:
    """Per-k averages of trial rows, in order of first appearance of each k."""
    by_k: Dict[int, List[CodingTrial]] = {}
    for result in results:
        by_k.setdefault(result.k, []).append(result)
    summary = []
    for k, rows in by_k.items():
        summary.append(CodingExperimentResult(
            k=k, rate=rows[0].rate, codebook_size=codebook_size(k, rows[0].rate),
            deviation=float(np.mean([row.deviation for row in rows])),
            error_prob=float(np.mean([row.error_prob for row in rows])),
            trials=len(rows), seed=seed, degenerate_trials=sum(row.degenerate for row in rows)))
    return summary


def check_coding(c: Channel, R: float) -> float:
    """Refuses useless channels and warns when R is not below capacity; returns the capacity.

    Raises:
        UselessChannelError: the channel is useless
    """
    if classify(c).kind == 'useless':
        raise UselessChannelError('No code transmits information over a useless channel')
    C = capacity(c).capacity
    if R >= C:
        warnings.warn(f'Rate {R} is not below the channel capacity {C:.6f}; errors will not vanish')
    return C


def coding_experiment(c: Channel, omega: State, R: float, ks: Sequence[int], trials: int = 20, seed: int = 0,
                      guard_override: bool = False) -> List[CodingExperimentResult]:
    """Random coding experiment: mean deviation and error probability per block length.

    Examples:
        >>> from cstarinfo.channel import coding_experiment, identity
        >>> from cstarinfo.probability import State
        >>> [r.deviation for r in coding_experiment(identity(2), State.uniform(2), 0.5, (2, 4), trials=3)]
        [0.0, 0.0]

    Args:
        c (Channel): the channel
        omega (State): input state the codewords are drawn from
        R (float): transmission rate in bits per symbol
        ks (sequence of int): block lengths
        trials (int): codebooks per block length
        seed (int): base seed

    Returns:
        list of [cstarinfo.channel.CodingExperimentResult][], one per block length

    Raises:
        UselessChannelError: the channel is useless
    """
    check_coding(c, R)
    log.info('Coding experiment: R=%s, ks=%s, %d trials, seed %d', R, list(ks), trials, seed)
    return summarize_trials(coding_trials(c, omega, R, ks, trials, seed, guard_override), seed)
