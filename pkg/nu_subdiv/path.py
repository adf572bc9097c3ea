"""
Lattice paths, their closure ν̄ = EνN, canonical indexing and cyclic shifts.

A lattice path is a word over ``E`` (east) and ``N`` (north).  Closing it
with a leading ``E`` and a trailing ``N`` gives ν̄, whose letters are indexed
canonically: every letter receives the next positive integer, except the
first ``N`` of each north run, which repeats the index of the ``E`` right
before it.  The ``E`` indices form ``I``, the ``N`` indices form ``J``, and
``V = I ∩ J`` are the valleys (the ``E_k N_k`` factors).

Cyclic peaks are the ``N E`` factors of ν̄ read left to right, followed by
the wrap-around pair formed by the last and the first letter.  Reading ν̄
from the ``E`` of the k-th cyclic peak gives the cyclic shift ν̄(k); labels
travel with the letters.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import comb
from typing import Iterator

from .errors import PathError, SizeGuardError

_STEPS = frozenset("EN")

Letter = tuple[str, int]


@dataclass(frozen=True, order=True)
class LatticePath:
    """A monotone lattice path from (0, 0) to (a, b), stored as its step word."""

    steps: str = ""

    def __post_init__(self) -> None:
        for step in self.steps:
            if step not in _STEPS:
                raise PathError(f"invalid step '{step}'")

    @classmethod
    def parse(cls, text: str) -> "LatticePath":
        """Parse a user-supplied path string; surrounding whitespace is ignored."""
        return cls(text.strip())

    @property
    def a(self) -> int:
        return self.steps.count("E")

    @property
    def b(self) -> int:
        return self.steps.count("N")

    @property
    def size(self) -> int:
        return len(self.steps)

    def e_heights(self) -> tuple[int, ...]:
        """Height (number of earlier ``N`` steps) at which each ``E`` step is taken."""
        heights = []
        height = 0
        for step in self.steps:
            if step == "N":
                height += 1
            else:
                heights.append(height)
        return tuple(heights)

    def __str__(self) -> str:
        return self.steps

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class IndexedPath:
    """A closed path ν̄ whose letters carry indices.

    ``cyclic_peaks`` holds ``(N-position, E-position)`` pairs, positions
    being offsets into ``letters``.
    """

    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise PathError("indexed path must not be empty")
        if self.letters[0][0] != "E" or self.letters[-1][0] != "N":
            raise PathError("indexed path must begin with E and end with N")
        for step, index in self.letters:
            if step not in _STEPS:
                raise PathError(f"invalid step '{step}'")
            if index < 1:
                raise PathError(f"letter indices must be positive, got {index}")

    @cached_property
    def I(self) -> tuple[int, ...]:  # noqa: E743
        return tuple(sorted(index for step, index in self.letters if step == "E"))

    @cached_property
    def J(self) -> tuple[int, ...]:
        return tuple(sorted(index for step, index in self.letters if step == "N"))

    @cached_property
    def V(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.I) & set(self.J)))

    @property
    def n(self) -> int:
        return max(index for _, index in self.letters)

    @property
    def w(self) -> int:
        return len(self.V)

    @property
    def a(self) -> int:
        """Number of ``E`` steps of the open path ν."""
        return len(self.I) - 1

    @property
    def b(self) -> int:
        return len(self.J) - 1

    @cached_property
    def cyclic_peaks(self) -> tuple[tuple[int, int], ...]:
        peaks = [
            (pos, pos + 1)
            for pos in range(len(self.letters) - 1)
            if self.letters[pos][0] == "N" and self.letters[pos + 1][0] == "E"
        ]
        peaks.append((len(self.letters) - 1, 0))
        return tuple(peaks)

    @property
    def word(self) -> LatticePath:
        """The closed path ν̄ with its indices dropped."""
        return LatticePath("".join(step for step, _ in self.letters))

    def peak_arc(self, k: int) -> tuple[int, int]:
        """Index pair ``(E index, N index)`` of the k-th cyclic peak (1-based)."""
        _check_peak(self, k)
        n_pos, e_pos = self.cyclic_peaks[k - 1]
        return self.letters[e_pos][1], self.letters[n_pos][1]

    def render(self) -> str:
        return "".join(f"{step}{index}" for step, index in self.letters)

    def __str__(self) -> str:
        return self.render()


def close_path(nu: LatticePath) -> LatticePath:
    """Return ν̄ = EνN."""
    return LatticePath("E" + nu.steps + "N")


def strip(closed: LatticePath | IndexedPath) -> LatticePath:
    """Inverse of :func:`close_path`: drop the leading ``E`` and trailing ``N``."""
    word = closed.word if isinstance(closed, IndexedPath) else closed
    if not word.steps.startswith("E") or not word.steps.endswith("N"):
        raise PathError(f"'{word}' is not of the form EνN")
    return LatticePath(word.steps[1:-1])


def canonical_index(closed: LatticePath) -> IndexedPath:
    """Index the letters of ν̄ canonically."""
    steps = closed.steps
    if len(steps) < 2 or steps[0] != "E" or steps[-1] != "N":
        raise PathError(f"'{closed}' is not of the form EνN")

    letters: list[Letter] = []
    index = 0
    previous = ""
    for step in steps:
        if not (step == "N" and previous == "E"):
            index += 1
        letters.append((step, index))
        previous = step
    return IndexedPath(tuple(letters))


def index_path(nu: LatticePath | str) -> IndexedPath:
    """Shortcut for ``canonical_index(close_path(nu))``."""
    if isinstance(nu, str):
        nu = LatticePath.parse(nu)
    return canonical_index(close_path(nu))


def cyclic_shift(p: IndexedPath, k: int) -> IndexedPath:
    """Return ν̄(k): ν̄ read from the ``E`` step of its k-th cyclic peak."""
    _check_peak(p, k)
    _, e_pos = p.cyclic_peaks[k - 1]
    return IndexedPath(p.letters[e_pos:] + p.letters[:e_pos])


def rotation_relabeling(p: IndexedPath, k: int) -> dict[int, int]:
    """Map each label of ν̄ to its canonical index in the shifted path ν̄(k)."""
    shifted = cyclic_shift(p, k)
    canonical = canonical_index(shifted.word)
    mapping: dict[int, int] = {}
    for (_, old), (_, new) in zip(shifted.letters, canonical.letters):
        if mapping.setdefault(old, new) != new:
            raise PathError(f"label {old} splits under shift {k}")
    return mapping


def _check_peak(p: IndexedPath, k: int) -> None:
    if not 1 <= k <= p.w:
        raise PathError(f"cyclic peak {k} out of range 1..{p.w}")


# ---------------------------------------------------------------------------
# ν-Catalan numbers
# ---------------------------------------------------------------------------

def weakly_above(path: LatticePath, nu: LatticePath) -> bool:
    """True if *path* never passes strictly below *nu* (same endpoint required)."""
    if (path.a, path.b) != (nu.a, nu.b):
        return False
    return all(h >= g for h, g in zip(path.e_heights(), nu.e_heights()))


def nu_catalan(nu: LatticePath) -> int:
    """Number of lattice paths weakly above *nu* (dynamic programming)."""
    a, b = nu.a, nu.b
    floor = nu.e_heights()
    # counts[y]: paths reaching column x at height y
    counts = [0] * (b + 1)
    counts[0] = 1
    for y in range(1, b + 1):
        counts[y] = counts[y - 1]
    for x in range(a):
        column = [0] * (b + 1)
        for y in range(b + 1):
            from_west = counts[y] if y >= floor[x] else 0
            from_south = column[y - 1] if y > 0 else 0
            column[y] = from_west + from_south
        counts = column
    return counts[b]


def enumerate_paths_weakly_above(
    nu: LatticePath, *, max_size: int = 24
) -> frozenset[LatticePath]:
    """Exhaustively list the paths weakly above *nu*.

    Raises:
        SizeGuardError: if ``a + b`` exceeds *max_size*.
    """
    if nu.size > max_size:
        raise SizeGuardError(
            f"path of size {nu.size} exceeds the enumeration guard ({max_size})"
        )
    floor = nu.e_heights()
    found: list[str] = []

    def extend(prefix: list[str], x: int, y: int) -> None:
        if x == nu.a and y == nu.b:
            found.append("".join(prefix))
            return
        if x < nu.a and y >= floor[x]:
            prefix.append("E")
            extend(prefix, x + 1, y)
            prefix.pop()
        if y < nu.b:
            prefix.append("N")
            extend(prefix, x, y + 1)
            prefix.pop()

    extend([], 0, 0)
    return frozenset(LatticePath(steps) for steps in found)


def lattice_paths(a: int, b: int) -> Iterator[LatticePath]:
    """All C(a+b, a) paths from (0, 0) to (a, b), in lexicographic order."""
    for word in product("EN", repeat=a + b):
        if word.count("E") == a:
            yield LatticePath("".join(word))


def paths_up_to(max_size: int, *, min_size: int = 0) -> Iterator[LatticePath]:
    """Every lattice path with ``min_size <= a + b <= max_size``, grouped by size."""
    for size in range(min_size, max_size + 1):
        for word in product("EN", repeat=size):
            yield LatticePath("".join(word))


def shifted_catalan_numbers(p: IndexedPath) -> tuple[int, ...]:
    """``Cat(strip(ν̄(k)))`` for k = 1..w."""
    return tuple(nu_catalan(strip(cyclic_shift(p, k))) for k in range(1, p.w + 1))


def binomial_volume(p: IndexedPath) -> int:
    """Normalized volume C(a+b, a) of Δ_a × Δ_b."""
    return comb(p.a + p.b, p.a)
