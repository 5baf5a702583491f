"""
Index strings (addresses) over ``m`` symbols and the shift map.

An address is a finite prefix followed by a tail rule. Finite tails
(``ConstantDigit`` / ``RepeatingBlock``) are kept in a canonical form so that
dataclass equality is digit-by-digit equality. ``Generator`` tails stream
digits from a callable up to a stated horizon and exist for orbit streaming.
"""

from dataclasses import dataclass, field
from typing import Callable

from utils.errors import DigitRangeError, HorizonExceededError, UnsupportedTailError

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class ConstantDigit:
    digit: int

    @property
    def block(self):
        return (self.digit,)


@dataclass(frozen=True)
class RepeatingBlock:
    block: tuple

    def __post_init__(self):
        object.__setattr__(self, "block", tuple(int(d) for d in self.block))
        if not self.block:
            raise DigitRangeError("RepeatingBlock must be nonempty")


@dataclass(frozen=True, eq=False)
class Generator:
    """Digits ``producer(offset + i)`` for tail positions ``i < horizon``."""

    producer: Callable[[int], int]
    horizon: int
    offset: int = 0

    def digit_at(self, index):
        if index >= self.horizon:
            raise HorizonExceededError(
                f"Generator tail read at position {index}, horizon is {self.horizon}"
            )
        return int(self.producer(self.offset + index))

    def advanced(self, count):
        return Generator(self.producer, self.horizon - count, self.offset + count)


FINITE_TAILS = (ConstantDigit, RepeatingBlock)


def _least_period(block):
    n = len(block)
    for p in range(1, n + 1):
        if n % p == 0 and block == block[:p] * (n // p):
            return block[:p]
    return block


@dataclass(frozen=True)
class Address:
    base: int
    prefix: tuple = ()
    tail: object = field(default_factory=lambda: ConstantDigit(0))

    def __post_init__(self):
        if self.base < 2:
            raise DigitRangeError(f"base must be at least 2, got {self.base}")
        prefix = tuple(int(d) for d in self.prefix)
        self._check_digits(prefix)

        tail = self.tail
        if isinstance(tail, FINITE_TAILS):
            block = _least_period(tuple(tail.block))
            self._check_digits(block)
            prefix = list(prefix)
            # absorb trailing prefix digits into the periodic part
            while prefix and prefix[-1] == block[-1]:
                block = (block[-1],) + block[:-1]
                prefix.pop()
            prefix = tuple(prefix)
            tail = ConstantDigit(block[0]) if len(block) == 1 else RepeatingBlock(block)
        elif not isinstance(tail, Generator):
            raise TypeError(f"Unsupported tail type: {type(tail).__name__}")

        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "tail", tail)

    def _check_digits(self, digits):
        for d in digits:
            if not 0 <= d < self.base:
                raise DigitRangeError(f"digit {d} out of range for base {self.base}")

    @property
    def is_finite_tail(self):
        return isinstance(self.tail, FINITE_TAILS)

    @property
    def horizon(self):
        """Number of readable digits, or None when every digit is defined."""
        if self.is_finite_tail:
            return None
        return len(self.prefix) + self.tail.horizon

    @property
    def block(self):
        if not self.is_finite_tail:
            raise UnsupportedTailError("generator tails have no repeating block")
        return self.tail.block

    def digit(self, k):
        """The k-th digit, counting from 1."""
        if k < 1:
            raise ValueError(f"digit positions start at 1, got {k}")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        index = k - len(self.prefix) - 1
        if isinstance(self.tail, Generator):
            d = self.tail.digit_at(index)
            if not 0 <= d < self.base:
                raise DigitRangeError(f"generator produced digit {d} for base {self.base}")
            return d
        block = self.tail.block
        return block[index % len(block)]

    def digits(self, n):
        return tuple(self.digit(k) for k in range(1, n + 1))

    def shift(self, n=1):
        return shift(self, n)

    def render(self, offset=0):
        """Human-readable digits, e.g. ``27(31)`` with ``offset=1`` for 1-based labels."""
        prefix = "".join(_DIGIT_CHARS[d + offset] for d in self.prefix)
        if isinstance(self.tail, Generator):
            return f"{prefix}<generator>"
        block = "".join(_DIGIT_CHARS[d + offset] for d in self.tail.block)
        return f"{prefix}({block})"

    @classmethod
    def from_prefix(cls, base, digits, tail=None):
        return cls(base, tuple(digits), tail if tail is not None else ConstantDigit(0))

    @classmethod
    def periodic(cls, base, block):
        return cls(base, (), RepeatingBlock(tuple(block)))


def shift(a, n=1):
    """
    Apply the shift map ``n`` times: drop the first ``n`` digits.

    Raises:
        HorizonExceededError: A generator tail cannot provide digit ``n + 1``.
    """
    if n < 1:
        raise ValueError(f"shift count must be positive, got {n}")
    if a.horizon is not None and a.horizon < n + 1:
        raise HorizonExceededError(
            f"cannot shift {n} times, address horizon is {a.horizon}"
        )
    if n <= len(a.prefix):
        return Address(a.base, a.prefix[n:], a.tail)

    rest = n - len(a.prefix)
    tail = a.tail
    if isinstance(tail, Generator):
        return Address(a.base, (), tail.advanced(rest))
    if isinstance(tail, RepeatingBlock):
        k = rest % len(tail.block)
        return Address(a.base, (), RepeatingBlock(tail.block[k:] + tail.block[:k]))
    return Address(a.base, (), tail)


def is_periodic(a):
    """Least period p with digit(k) == digit(k + p) for all k, or None."""
    if not a.is_finite_tail:
        raise UnsupportedTailError("periodicity is only decidable for finite tails")
    if a.prefix:
        return None
    return len(a.tail.block)


def format_address(a):
    """Text form ``<base>:<prefix>|<tail>`` such as ``2:01|c0`` or ``3:|r012``."""
    if not a.is_finite_tail:
        raise UnsupportedTailError("generator tails have no text form")
    prefix = "".join(_DIGIT_CHARS[d] for d in a.prefix)
    if isinstance(a.tail, ConstantDigit):
        tail = f"c{_DIGIT_CHARS[a.tail.digit]}"
    else:
        tail = "r" + "".join(_DIGIT_CHARS[d] for d in a.tail.block)
    return f"{a.base}:{prefix}|{tail}"


def _parse_digits(text, base):
    digits = []
    for ch in text.lower():
        value = _DIGIT_CHARS.find(ch)
        if value < 0 or value >= base:
            raise DigitRangeError(f"invalid digit {ch!r} for base {base}")
        digits.append(value)
    return tuple(digits)


def parse_address(text):
    text = text.strip()
    try:
        base_text, body = text.split(":", 1)
        prefix_text, tail_text = body.split("|", 1)
        base = int(base_text)
    except ValueError as exc:
        raise DigitRangeError(f"malformed address {text!r}") from exc
    if base < 2 or base > len(_DIGIT_CHARS):
        raise DigitRangeError(f"unsupported base {base}")
    if not tail_text or tail_text[0] not in "cr":
        raise DigitRangeError(f"tail must start with 'c' or 'r' in {text!r}")

    prefix = _parse_digits(prefix_text, base)
    block = _parse_digits(tail_text[1:], base)
    if tail_text[0] == "c":
        if len(block) != 1:
            raise DigitRangeError(f"constant tail needs exactly one digit in {text!r}")
        return Address(base, prefix, ConstantDigit(block[0]))
    return Address(base, prefix, RepeatingBlock(block))


def parse_display_digits(text, base, offset=1):
    """Parse 1-based display labels such as the carpet's ``2773...`` into 0-based digits."""
    digits = []
    for ch in text.strip():
        value = _DIGIT_CHARS.find(ch.lower()) - offset
        if value < 0 or value >= base:
            raise DigitRangeError(f"invalid display digit {ch!r} for base {base}")
        digits.append(value)
    return tuple(digits)
