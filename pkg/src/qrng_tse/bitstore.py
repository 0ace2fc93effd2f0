"""Packed bit strings and GF(2) primitives.

A :class:`BitString` packs its bits into a single Python integer, least
significant bit first: logical bit ``i`` is bit ``i`` of ``value``.  Window
extraction is then a shift plus mask and the GF(2) inner product is a
popcount of an AND.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# byte -> byte with its bit order reversed; converts MSB-first byte streams
# to the LSB-first packing used internally.
_REVERSE = bytes(int(f"{b:08b}"[::-1], 2) for b in range(256))


@dataclass(frozen=True)
class BitString:
    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits set beyond length")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        if s and set(s) - {"0", "1"}:
            raise ValueError(f"not a binary string: {s!r}")
        return cls(int(s[::-1], 2) if s else 0, len(s))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        arr = np.fromiter(bits, dtype=np.uint8)
        return cls.from_array(arr)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "BitString":
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.size and arr.max() > 1:
            raise ValueError("array entries must be 0 or 1")
        packed = np.packbits(arr, bitorder="little")
        return cls(int.from_bytes(packed.tobytes(), "little"), int(arr.size))

    @classmethod
    def from_bytes(cls, data: bytes, length: int | None = None) -> "BitString":
        """Unpack bytes read MSB-first (the raw-file and output-file order)."""
        n = 8 * len(data) if length is None else length
        if n > 8 * len(data):
            raise ValueError(f"length {n} exceeds {8 * len(data)} available bits")
        v = int.from_bytes(data.translate(_REVERSE), "little")
        return cls(v & ((1 << n) - 1), n)

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls((1 << n) - 1, n)

    # -- conversions ------------------------------------------------------

    def to_bytes(self) -> bytes:
        """Pack MSB-first; a trailing partial byte is zero-padded."""
        nbytes = (self.length + 7) // 8
        return self.value.to_bytes(nbytes, "little").translate(_REVERSE)

    def to_array(self) -> np.ndarray:
        nbytes = (self.length + 7) // 8
        raw = np.frombuffer(self.value.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.length]

    def __str__(self) -> str:
        if not self.length:
            return ""
        return format(self.value, f"0{self.length}b")[::-1]

    def __repr__(self) -> str:
        s = str(self)
        if len(s) > 64:
            s = s[:61] + "..."
        return f"BitString({s!r}, len={self.length})"

    # -- sequence protocol ------------------------------------------------

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        return get_bit(self, i)

    def __iter__(self):
        v = self.value
        for _ in range(self.length):
            yield v & 1
            v >>= 1

    def __xor__(self, other: "BitString") -> "BitString":
        _check_same_length(self, other)
        return BitString(self.value ^ other.value, self.length)

    def popcount(self) -> int:
        return self.value.bit_count()

    def reversed(self) -> "BitString":
        if not self.length:
            return self
        return BitString(int(format(self.value, f"0{self.length}b")[::-1], 2), self.length)


def _check_same_length(a: BitString, b: BitString) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} != {b.length}")


def get_bit(s: BitString, i: int) -> int:
    if not 0 <= i < s.length:
        raise IndexError(f"bit index {i} out of range for length {s.length}")
    return (s.value >> i) & 1


def and_parity(a: BitString, b: BitString) -> int:
    """GF(2) inner product: XOR-fold of the bitwise AND."""
    _check_same_length(a, b)
    return (a.value & b.value).bit_count() & 1


def concat(parts: Sequence[BitString]) -> BitString:
    value = 0
    offset = 0
    for p in parts:
        value |= p.value << offset
        offset += p.length
    return BitString(value, offset)


def window(s: BitString, start: int, width: int) -> BitString:
    if start < 0 or width < 0 or start + width > s.length:
        raise IndexError(
            f"window [{start}, {start + width}) out of range for length {s.length}"
        )
    return BitString((s.value >> start) & ((1 << width) - 1), width)
