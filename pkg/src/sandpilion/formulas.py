"""Closed forms for the cone over bi-coconut and coconut trees."""
from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidParameters
from .graphs import FamilyParams
from .sandpile import AbelianGroup


def fib(n: int) -> int:
    """Fibonacci numbers with F_1 = F_2 = 1, extended to negative n."""
    if n < 0:
        # F_{-n} = (-1)^{n+1} F_n
        f = fib(-n)
        return f if n % 2 else -f
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


class BSequence:
    """b_n for fixed s1: b_{-2} = 2^{s1}, b_{-1} = 2^{s1-1}(s1+2), then
    b_n = b_{n-1} + b_{n-2}."""

    def __init__(self, s1: int) -> None:
        if s1 < 0:
            raise InvalidParameters(f"s1 must be >= 0, got {s1}")
        self.s1 = s1
        # 2^{s1-1}(s1+2) is 1 at s1 = 0
        first = 1 if s1 == 0 else (s1 + 2) << (s1 - 1)
        self._memo = [1 << s1, first]  # offsets: memo[k] = b_{k-2}
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> int:
        if n < -2:
            raise InvalidParameters(f"b_n is defined for n >= -2, got {n}")
        memo = self._memo
        if len(memo) <= n + 2:
            with self._lock:
                while len(memo) <= n + 2:
                    memo.append(memo[-1] + memo[-2])
        return memo[n + 2]


@lru_cache(maxsize=64)
def _bseq(s1: int) -> BSequence:
    return BSequence(s1)


def b(s1: int, n: int) -> int:
    return _bseq(s1)[n]


def t_closed(params: FamilyParams) -> int:
    """2^{s2-1} (2 b_{2p-3} + s2 b_{2p-4}) with b = b^{(s1)}."""
    params.require()
    p, s1, s2 = params.p, params.s1, params.s2
    seq = _bseq(s1)
    return (2 * seq[2 * p - 3] + s2 * seq[2 * p - 4]) << (s2 - 1)


def a_value(params: FamilyParams) -> int:
    """t(p, s1, s2) / 2^{s1+s2-2}; the division is checked to be exact."""
    t = t_closed(params)
    shift = params.s1 + params.s2 - 2
    a, rem = divmod(t, 1 << shift)
    if rem:
        raise ArithmeticError(f"t{params} = {t} is not divisible by 2^{shift}")
    return a


def _linear_recurrence(seed: list[int], c1: int, c2: int, terms: int) -> list[int]:
    """Expand numerator / (1 - c1 x - c2 x^2) to ``terms`` coefficients."""
    out: list[int] = []
    for k in range(terms):
        c = seed[k] if k < len(seed) else 0
        if k >= 1:
            c += c1 * out[k - 1]
        if k >= 2:
            c += c2 * out[k - 2]
        out.append(c)
    return out


def _t_gf(s1: int, s2: int, terms: int, prefactor_exp: int) -> list[int]:
    if s1 < 1 or s2 < 1:
        raise InvalidParameters("generating function needs s1, s2 >= 1")
    if terms < 1:
        raise InvalidParameters("terms must be >= 1")
    scale = 1 << prefactor_exp
    seed = [scale * (4 + 2 * (s1 + s2)), scale * (s1 * s2 - 2 * (s1 + s2))]
    return _linear_recurrence(seed, 3, -1, terms)


def gf_coefficients(s1: int, s2: int, terms: int) -> list[int]:
    """Coefficients of sum_p t(p,s1,s2) x^{p-1} from the rational closed form
    2^{s1+s2-2} (4 + 2(s1+s2)(1-x) + s1 s2 x) / (1 - 3x + x^2)."""
    return _t_gf(s1, s2, terms, s1 + s2 - 2)


def gf_coefficients_as_stated(s1: int, s2: int, terms: int) -> list[int]:
    """Same expansion with the prefactor 2^{s1+s2-1}. It is twice the true
    series; kept to document the mismatch."""
    return _t_gf(s1, s2, terms, s1 + s2 - 1)


def b_gf_coefficients(s1: int, terms: int) -> list[int]:
    """Coefficients of 2^{s1-1}(2 + s1 x) / (1 - x - x^2), i.e. b_{-2}, b_{-1}, ..."""
    if s1 < 0:
        raise InvalidParameters("s1 must be >= 0")
    if terms < 1:
        raise InvalidParameters("terms must be >= 1")
    seed = [1 << s1, 0 if s1 == 0 else s1 << (s1 - 1)]
    return _linear_recurrence(seed, 1, 1, terms)


def _check_coconut(p: int, s: int) -> None:
    if p < 1 or s < 1:
        raise InvalidParameters(f"need p, s >= 1, got p={p}, s={s}")


def coconut_tau(p: int, s: int) -> int:
    """tau(Cone(CT(p, s))) = 2^{s-1} (2 F_{2p+1} + (s-2) F_{2p-1})."""
    _check_coconut(p, s)
    return (2 * fib(2 * p + 1) + (s - 2) * fib(2 * p - 1)) << (s - 1)


def coconut_plus_tau(p: int, s: int) -> int:
    """tau of Cone(CT(p, s)) with the apex-pi_1 edge doubled:
    2^{s-1} (2 F_{2p+2} + (s-2) F_{2p})."""
    _check_coconut(p, s)
    return (2 * fib(2 * p + 2) + (s - 2) * fib(2 * p)) << (s - 1)


class CaseTag(enum.Enum):
    P_MOD3_IS_1 = "PMod3Is1"
    ODD_S = "OddS"
    EVEN_S_EVEN_S = "EvenSEvenS"
    MERGED_BOUNDARY = "MergedBoundary"


@dataclass(frozen=True)
class GroupPrediction:
    """Z_2^{two_rank} (+ Z_4 if four_factor) (+ Z_{cyclic_part})."""

    two_rank: int
    four_factor: bool
    cyclic_part: int
    case_tag: CaseTag

    @property
    def order(self) -> int:
        return (1 << self.two_rank) * (4 if self.four_factor else 1) * self.cyclic_part

    def cyclic_orders(self) -> list[int]:
        orders = [2] * self.two_rank
        if self.four_factor:
            orders.append(4)
        orders.append(self.cyclic_part)
        return orders

    def to_group(self) -> AbelianGroup:
        return AbelianGroup.from_orders(self.cyclic_orders())


def predict_group(params: FamilyParams) -> GroupPrediction:
    """Predicted sandpile group of Cone(T(p, s1, s2)).

    p = 1 falls under the p = 1 mod 3 branch. At s1 = s2 = 1 with p != 1
    mod 3 the odd-s formula would need Z_2^{-1}; the order-preserving
    reading Z_a is returned and tagged MERGED_BOUNDARY.
    """
    params.require()
    p, s1, s2 = params.p, params.s1, params.s2
    a = a_value(params)
    if p % 3 == 1:
        return GroupPrediction(s1 + s2 - 2, False, a, CaseTag.P_MOD3_IS_1)
    if s1 % 2 or s2 % 2:
        if s1 == s2 == 1:
            return GroupPrediction(0, False, a, CaseTag.MERGED_BOUNDARY)
        return GroupPrediction(s1 + s2 - 3, False, 2 * a, CaseTag.ODD_S)
    return GroupPrediction(s1 + s2 - 4, True, a, CaseTag.EVEN_S_EVEN_S)
