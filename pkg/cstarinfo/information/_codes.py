import heapq
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Sequence, Tuple, Union

import numpy as np
from typing_extensions import Literal

from ..algebra import Element, TensorElement, functional_calculus
from ..probability import State, evaluate
from ._source import Source, _state, source_output

log = logging.getLogger(__name__)

SYMBOLS = '0123456789abcdefghijklmnopqrstuvwxyz'


@dataclass(frozen=True)
class Code:
    """Code f assigning a word over {0, ..., n-1} to every letter of a source alphabet.

    Attributes:
        words (tuple): one tuple of code symbols per source letter
        n (int): code alphabet size

    Examples:
        >>> from cstarinfo.information import Code
        >>> code = Code.from_strings(['0', '10', '11'])
        >>> code.lengths
        (1, 2, 2)
        >>> code.to_dict()
        {'n': 2, 'words': ['0', '10', '11']}
    """
    words: Tuple[Tuple[int, ...], ...]
    n: int = 2

    def __post_init__(self):
        if not 2 <= self.n <= len(SYMBOLS):
            raise ValueError(f'Code alphabet size must be in [2, {len(SYMBOLS)}], got {self.n}')
        words = tuple(tuple(int(s) for s in word) for word in self.words)
        if not words:
            raise ValueError('A code needs at least one word')
        for word in words:
            if not word:
                raise ValueError('Code words must be non-empty')
            if any(not 0 <= s < self.n for s in word):
                raise ValueError(f'Code symbols must lie in [0, {self.n - 1}], got {word}')
        object.__setattr__(self, 'words', words)

    @classmethod
    def from_strings(cls, words: Sequence[str], n: int = 2) -> 'Code':
        return cls(tuple(tuple(SYMBOLS.index(s) for s in word.lower()) for word in words), n)

    @property
    def source_dim(self) -> int:
        return len(self.words)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(word) for word in self.words)

    def strings(self) -> List[str]:
        return [''.join(SYMBOLS[s] for s in word) for word in self.words]

    def to_dict(self) -> Dict:
        """JSON form `{"n": alphabet size, "words": ["0", "10", ...]}`."""
        return {'n': self.n, 'words': self.strings()}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Code':
        return cls.from_strings(data['words'], int(data['n']))


def is_prefix_free(code: Code) -> bool:
    """True iff no word is a prefix of another (equal words included).

    After sorting, a word that prefixes any other word also prefixes its successor.

    Examples:
        >>> from cstarinfo.information import Code, is_prefix_free
        >>> is_prefix_free(Code.from_strings(['0', '10', '11']))
        True
        >>> is_prefix_free(Code.from_strings(['0', '01', '011', '111']))
        False
    """
    words = sorted(code.words)
    return all(b[:len(a)] != a for a, b in zip(words, words[1:]))


def words_orthogonal(code: Code) -> bool:
    """True iff the embedded words f(x_i) are pairwise orthogonal tensor elements."""
    embedded = [TensorElement.string(code.n, word) for word in code.words]
    for i, a in enumerate(embedded):
        for b in embedded[i + 1:]:
            if (a * b).terms:
                return False
    return True


def kraft(lengths: Sequence[int], n: int = 2, mode: Literal['check', 'construct'] = 'check') -> Union[bool, Code]:
    """Kraft inequality sum_i n**(k_m - k_i) <= n**k_m, with k_m the largest length.

    `check` returns the verdict in exact integer arithmetic; `construct` returns a
    prefix-free code with exactly these lengths (in the given order), allocating
    lexicographically consecutive intervals in order of increasing length.

    Examples:
        >>> from cstarinfo.information import kraft
        >>> kraft([1, 2, 2]), kraft([1, 1, 2])
        (True, False)
        >>> kraft([2, 1, 2], mode='construct').strings()
        ['10', '0', '11']

    Raises:
        ValueError: `construct` on lengths that violate the inequality
    """
    lengths = [int(k) for k in lengths]
    if not lengths:
        raise ValueError('At least one length is needed')
    if any(k < 1 for k in lengths):
        raise ValueError('Code word lengths must be positive')
    if n < 2:
        raise ValueError(f'Code alphabet size must be at least 2, got {n}')
    k_max = max(lengths)
    holds = sum(n ** (k_max - k) for k in lengths) <= n ** k_max
    if mode == 'check':
        return holds
    if mode != 'construct':
        raise ValueError('Invalid mode')
    if not holds:
        raise ValueError(f'Lengths {lengths} violate the Kraft inequality for n={n}')

    order = sorted(range(len(lengths)), key=lambda i: lengths[i])
    words: List[Tuple[int, ...]] = [()] * len(lengths)
    value, previous = 0, lengths[order[0]]
    for i in order:
        value *= n ** (lengths[i] - previous)
        previous = lengths[i]
        digits = []
        v = value
        for _ in range(lengths[i]):
            v, s = divmod(v, n)
            digits.append(s)
        words[i] = tuple(reversed(digits))
        value += 1
    return Code(tuple(words), n)


class CodeMetrics(NamedTuple):
    expected_length: float
    bound_value: float


def code_metrics(code: Code, source: Union[Source, State]) -> CodeMetrics:
    """Expected length and the noiseless coding bound omega(K + log_n O_omega).

    K = sum_i k_i x_i is the length element. The bound value equals E[k] - H_n(omega)
    and is non-negative for every prefix-free code.

    Examples:
        >>> from cstarinfo.information import Code, code_metrics
        >>> from cstarinfo.probability import State
        >>> code_metrics(Code.from_strings(['0', '10', '11']), State(3, [0.5, 0.25, 0.25]))
        CodeMetrics(expected_length=1.5, bound_value=0.0)

    Raises:
        ValueError: the code is not prefix-free or does not match the source alphabet
    """
    omega = _state(source)
    if not is_prefix_free(code):
        raise ValueError('The noiseless coding bound needs a prefix-free code')
    if code.source_dim != omega.dim:
        raise ValueError(f'Code has {code.source_dim} words for a source of dimension {omega.dim}')
    K = Element(omega.algebra, code.lengths)
    log_output = functional_calculus(source_output(omega), 'log2', domain_check=False).scale(1 / math.log2(code.n))
    expected_length = float(evaluate(omega, K).real)
    return CodeMetrics(expected_length, float(evaluate(omega, K + log_output).real))


def huffman_code(source: Union[Source, State], n: int = 2) -> Code:
    """n-ary Huffman code, an optimal prefix-free code for the source.

    Nodes are merged n at a time, smallest probability first; equal probabilities
    merge the lowest node index first, and the i-th merged child gets symbol i.
    Zero-probability dummy leaves complete the last merge when needed.

    Examples:
        >>> from cstarinfo.information import huffman_code
        >>> from cstarinfo.probability import State
        >>> huffman_code(State(3, [0.5, 0.25, 0.25])).strings()
        ['0', '10', '11']
    """
    omega = _state(source)
    if n < 2:
        raise ValueError(f'Code alphabet size must be at least 2, got {n}')
    d = omega.dim
    if d == 1:
        return Code(((0,),), n)

    n_dummies = (-(d - 1)) % (n - 1)
    heap = [(float(p), i) for i, p in enumerate(omega.weights)]
    heap += [(0.0, d + j) for j in range(n_dummies)]
    heapq.heapify(heap)
    children: Dict[int, List[int]] = {}
    next_index = d + n_dummies
    while len(heap) > 1:
        merged = [heapq.heappop(heap) for _ in range(min(n, len(heap)))]
        children[next_index] = [index for _, index in merged]
        heapq.heappush(heap, (sum(p for p, _ in merged), next_index))
        next_index += 1

    words: Dict[int, Tuple[int, ...]] = {}
    stack = [(heap[0][1], ())]
    while stack:
        node, prefix = stack.pop()
        if node in children:
            stack.extend((child, prefix + (s,)) for s, child in enumerate(children[node]))
        elif node < d:
            words[node] = prefix
    log.debug('Huffman code with %d dummy leaves: %s', n_dummies, words)
    return Code(tuple(words[i] for i in range(d)), n)
