"""
Signed multi-qubit Pauli operators and real-weighted sums of them.

An n-qubit Pauli string is stored as two n-bit masks and a phase exponent::

    P = i**phase * sigma(x_0, z_0) (x) ... (x) sigma(x_{n-1}, z_{n-1})

with sigma(0, 0) = I, sigma(1, 0) = X, sigma(0, 1) = Z and sigma(1, 1) = Y.
Bit ``k`` of a mask refers to qubit ``k + 1``; the public interface counts
qubits from 1. Because Y is stored as a letter rather than as the product XZ,
a string is Hermitian exactly when its phase exponent is even.

Text form lists one letter per qubit, qubit 1 first, with an optional sign
prefix: ``"-YXY"``, ``"+ZXZ"``, ``"iXZ"``, ``"-iY"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import DimensionError, GraphBellError

MAX_QUBITS = 64

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PARSE_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


def _popcount(v: int) -> int:
    return v.bit_count()


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_QUBITS:
        raise DimensionError(f"qubit count {n} outside [0, {MAX_QUBITS}]")


@dataclass(frozen=True)
class PauliString:
    """Immutable signed Pauli string.

    Examples
    --------
    >>> PauliString.from_text("X") * PauliString.from_text("Z")
    PauliString('-iY')
    >>> PauliString.from_text("XZI") * PauliString.from_text("ZXZ")
    PauliString('YYZ')
    """

    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase: int = 0

    def __post_init__(self):
        _check_n(self.n)
        full = (1 << self.n) - 1
        if self.x_mask & ~full or self.z_mask & ~full or self.x_mask < 0 or self.z_mask < 0:
            raise DimensionError(f"mask bits set beyond qubit count {self.n}")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        """Letter ``letter`` on 1-based ``qubit``, identity elsewhere."""
        if not 1 <= qubit <= n:
            raise DimensionError(f"qubit {qubit} outside 1..{n}")
        x, z = _BITS[letter.upper()]
        return cls(n, x << (qubit - 1), z << (qubit - 1))

    @classmethod
    def from_letters(cls, n: int, letters: Mapping[int, str], phase: int = 0) -> "PauliString":
        """Build from a ``{qubit: letter}`` map (1-based qubits)."""
        x = z = 0
        for q, letter in letters.items():
            if not 1 <= q <= n:
                raise DimensionError(f"qubit {q} outside 1..{n}")
            try:
                bx, bz = _BITS[letter.upper()]
            except KeyError:
                raise GraphBellError(f"unknown Pauli letter {letter!r}") from None
            x |= bx << (q - 1)
            z |= bz << (q - 1)
        return cls(n, x, z, phase)

    @classmethod
    def from_text(cls, text: str) -> "PauliString":
        text = text.strip()
        body = text.lstrip("+-i")
        prefix = text[: len(text) - len(body)]
        if prefix not in _PARSE_PREFIX:
            raise GraphBellError(f"bad sign prefix {prefix!r} in {text!r}")
        x = z = 0
        for k, ch in enumerate(body):
            try:
                bx, bz = _BITS[ch.upper()]
            except KeyError:
                raise GraphBellError(f"unknown Pauli letter {ch!r} in {text!r}") from None
            x |= bx << k
            z |= bz << k
        return cls(len(body), x, z, _PARSE_PREFIX[prefix])

    # -- inspection -------------------------------------------------------

    def letter(self, qubit: int) -> str:
        b = qubit - 1
        return _LETTERS[(self.x_mask >> b) & 1, (self.z_mask >> b) & 1]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(1, self.n + 1))

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    def support(self) -> tuple[int, ...]:
        m = self.support_mask
        return tuple(q + 1 for q in range(self.n) if m >> q & 1)

    @property
    def weight(self) -> int:
        return _popcount(self.support_mask)

    @property
    def is_hermitian(self) -> bool:
        return self.phase % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian strings."""
        if not self.is_hermitian:
            raise GraphBellError(f"{self} is not Hermitian; it has no real sign")
        return 1 if self.phase == 0 else -1

    def unsigned(self) -> "PauliString":
        return PauliString(self.n, self.x_mask, self.z_mask, 0)

    def symplectic_product(self, other: "PauliString") -> int:
        """0 if the strings commute, 1 if they anticommute."""
        return (_popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)) & 1

    def commutes_with(self, other: "PauliString") -> bool:
        return self.symplectic_product(other) == 0

    def permute(self, mapping: Mapping[int, int]) -> "PauliString":
        """Move the letter on qubit ``q`` to ``mapping.get(q, q)``."""
        letters = {mapping.get(q, q): self.letter(q) for q in self.support()}
        if len(letters) != self.weight:
            raise GraphBellError("qubit mapping is not injective on the support")
        return PauliString.from_letters(self.n, letters, self.phase)

    # -- algebra ----------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, PauliString):
            return NotImplemented
        if self.n != other.n:
            raise DimensionError(f"cannot multiply {self.n}-qubit and {other.n}-qubit strings")
        x = self.x_mask ^ other.x_mask
        z = self.z_mask ^ other.z_mask
        # i^{x.z} X^x Z^z form for both factors, then move Z^{z1} past X^{x2}
        ph = (
            self.phase
            + other.phase
            + _popcount(self.x_mask & self.z_mask)
            + _popcount(other.x_mask & other.z_mask)
            + 2 * _popcount(self.z_mask & other.x_mask)
            - _popcount(x & z)
        )
        return PauliString(self.n, x, z, ph)

    def __neg__(self):
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase + 2)

    def __str__(self):
        return _PREFIX[self.phase] + self.letters

    def __repr__(self):
        return f"PauliString({str(self)!r})"


def pauli_mul(a: PauliString, b: PauliString) -> PauliString:
    return a * b


def is_hermitian(p: PauliString) -> bool:
    return p.is_hermitian


def _is_zero(c) -> bool:
    return c == 0


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of distinct Hermitian Pauli strings.

    Terms are stored with unsigned strings (phase 0): the sign of each
    Hermitian input string is folded into its coefficient. Terms are kept in
    canonical order, lexicographic in ``(x_mask, z_mask)``. Integer
    coefficients stay Python ints, so stabilizer sums are exact.

    Use :meth:`from_terms` or :func:`sum_add` rather than the raw constructor.
    """

    n: int
    terms: tuple = ()

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[float, PauliString]] = ()) -> "PauliSum":
        _check_n(n)
        acc: dict[tuple[int, int], float] = {}
        for c, p in terms:
            _accumulate(acc, n, c, p)
        return cls._from_acc(n, acc)

    @classmethod
    def from_strings(cls, strings: Iterable[str], n: int | None = None) -> "PauliSum":
        """Unit-coefficient sum of signed text strings, e.g. ``["ZXZ", "-YXY"]``."""
        ps = [PauliString.from_text(s) for s in strings]
        if n is None:
            if not ps:
                raise DimensionError("qubit count needed for an empty sum")
            n = ps[0].n
        return cls.from_terms(n, ((1, p) for p in ps))

    @classmethod
    def identity(cls, n: int, coeff=1) -> "PauliSum":
        return cls.from_terms(n, [(coeff, PauliString.identity(n))])

    @classmethod
    def _from_acc(cls, n, acc):
        items = sorted((k, c) for k, c in acc.items() if not _is_zero(c))
        return cls(n, tuple((c, PauliString(n, x, z)) for (x, z), c in items))

    def _acc(self) -> dict:
        return {(p.x_mask, p.z_mask): c for c, p in self.terms}

    # -- container protocol -----------------------------------------------

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[float, PauliString]]:
        return iter(self.terms)

    def coeff(self, p: PauliString):
        """Coefficient of ``p`` (sign of ``p`` applied), 0 if absent."""
        c = self._acc().get((p.x_mask, p.z_mask), 0)
        return c * p.sign

    @property
    def support_mask(self) -> int:
        m = 0
        for _, p in self.terms:
            m |= p.support_mask
        return m

    def support(self) -> tuple[int, ...]:
        m = self.support_mask
        return tuple(q + 1 for q in range(self.n) if m >> q & 1)

    def signed_strings(self) -> list[PauliString]:
        """Terms as signed strings; only meaningful for +-1 coefficients."""
        out = []
        for c, p in self.terms:
            if c == 1:
                out.append(p)
            elif c == -1:
                out.append(-p)
            else:
                raise GraphBellError(f"coefficient {c} is not +-1")
        return out

    def letters_on(self, qubit: int) -> set[str]:
        """Non-identity letters used on ``qubit`` across all terms."""
        return {p.letter(qubit) for _, p in self.terms} - {"I"}

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or float(c).is_integer() for c, _ in self.terms)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        _same_n(self.n, other.n)
        acc = self._acc()
        for c, p in other.terms:
            _accumulate(acc, self.n, c, p)
        return PauliSum._from_acc(self.n, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "PauliSum":
        return PauliSum._from_acc(self.n, {k: c * factor for k, c in self._acc().items()})

    def __mul__(self, other):
        if isinstance(other, PauliSum):
            return self.product(other)
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def product(self, other: "PauliSum") -> "PauliSum":
        """Operator product; raises if the result is not Hermitian."""
        _same_n(self.n, other.n)
        re: dict[tuple[int, int], float] = {}
        im: dict[tuple[int, int], float] = {}
        for c1, p1 in self.terms:
            for c2, p2 in other.terms:
                p = p1 * p2
                key = (p.x_mask, p.z_mask)
                c = c1 * c2
                if p.phase == 0:
                    re[key] = re.get(key, 0) + c
                elif p.phase == 2:
                    re[key] = re.get(key, 0) - c
                elif p.phase == 1:
                    im[key] = im.get(key, 0) + c
                else:
                    im[key] = im.get(key, 0) - c
        if any(not _is_zero(c) for c in im.values()):
            raise GraphBellError("product of the two sums is not Hermitian")
        return PauliSum._from_acc(self.n, re)

    def permute(self, mapping: Mapping[int, int]) -> "PauliSum":
        return PauliSum.from_terms(self.n, ((c, p.permute(mapping)) for c, p in self.terms))

    def isclose(self, other: "PauliSum", atol: float = 1e-12) -> bool:
        if self.n != other.n:
            return False
        a, b = self._acc(), other._acc()
        return all(abs(a.get(k, 0) - b.get(k, 0)) <= atol for k in a.keys() | b.keys())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, p in self.terms:
            if c == 1:
                parts.append(f"+{p.letters}")
            elif c == -1:
                parts.append(f"-{p.letters}")
            else:
                parts.append(f"{c:+g}*{p.letters}")
        return " ".join(parts)


def _same_n(a, b):
    if a != b:
        raise DimensionError(f"qubit counts differ: {a} vs {b}")


def _accumulate(acc, n, c, p):
    if p.n != n:
        raise DimensionError(f"term acts on {p.n} qubits, sum on {n}")
    if not p.is_hermitian:
        raise GraphBellError(f"term {p} is not Hermitian")
    key = (p.x_mask, p.z_mask)
    acc[key] = acc.get(key, 0) + c * p.sign


def sum_add(s: PauliSum, coeff, p: PauliString) -> PauliSum:
    """Return ``s + coeff * p``; a term cancelling to exactly zero is dropped."""
    acc = s._acc()
    _accumulate(acc, s.n, coeff, p)
    return PauliSum._from_acc(s.n, acc)
