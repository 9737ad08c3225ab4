"""Finitely generated groups of disc isometries: word enumeration, conjugacy
classes and the closed-geodesic length spectrum.

Labels use the lowercase/uppercase pairing convention: generator ``a`` has
formal inverse ``A`` and so on.  Words are tuples of single-character labels;
closed geodesics correspond to cyclically reduced words up to rotation, with
a word and its inverse kept as distinct (oriented) classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import MoebiusMap, axis_translation, boundary_point, reduce_angle, trace_length

__all__ = [
    "SchottkyDisc",
    "GroupPresentation",
    "ClosedGeodesic",
    "schottky_group",
    "inverse_label",
    "inverse_word",
    "cyclic_reduce",
    "least_rotation",
    "conjugacy_classes",
    "length_spectrum",
    "counting_exponent",
    "spectrum_rows",
]

Word = tuple[str, ...]


def inverse_label(label: str) -> str:
    return label.swapcase()


def inverse_word(word: Word) -> Word:
    return tuple(inverse_label(l) for l in reversed(word))


def is_reduced(word: Word) -> bool:
    return all(word[i + 1] != inverse_label(word[i]) for i in range(len(word) - 1))


def cyclic_reduce(word: Word) -> Word:
    """Strip adjacent inverse pairs, including across the wraparound."""
    w = list(word)
    changed = True
    while changed and w:
        changed = False
        out = []
        for l in w:
            if out and out[-1] == inverse_label(l):
                out.pop()
                changed = True
            else:
                out.append(l)
        w = out
        while len(w) >= 2 and w[0] == inverse_label(w[-1]):
            w = w[1:-1]
            changed = True
    return tuple(w)


def least_rotation(word: Word) -> Word:
    """Canonical class representative: lexicographically least cyclic rotation."""
    return min(tuple(word[i:] + word[:i]) for i in range(len(word))) if word else word


def primitive_root(word: Word) -> tuple[Word, int]:
    """Smallest rotation period of the word; returns (root, multiplicity)."""
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[p:] + word[:p]:
            return word[:p], n // p
    return word, 1  # unreachable: p = n always matches


@dataclass(frozen=True)
class SchottkyDisc:
    """Boundary disc of a Schottky pairing: the arc
    [center - radius, center + radius] in angle coordinates."""

    label: str
    center: float
    radius: float

    @property
    def lo(self) -> float:
        return self.center - self.radius

    @property
    def hi(self) -> float:
        return self.center + self.radius

    def euclidean_center(self) -> complex:
        return boundary_point(self.center) / math.cos(self.radius)

    def euclidean_radius(self) -> float:
        return math.tan(self.radius)


@dataclass(frozen=True)
class ClosedGeodesic:
    """Oriented closed geodesic: cyclically reduced canonical word, total
    length, primitive length and winding multiplicity."""

    word: Word
    length: float
    primitive_length: float
    multiplicity: int

    @property
    def primitive_word(self) -> Word:
        n = len(self.word) // self.multiplicity
        return self.word[:n]


@dataclass
class GroupPresentation:
    """Generators with labels and formal inverses.

    ``kind`` is ``"schottky"`` (with ping-pong disc data) or
    ``"cocompact-with-supplied-coding"`` (matrices trusted, coding supplied
    separately as a table file).
    """

    labels: list[str]                       # generator labels, lowercase
    generators: dict[str, MoebiusMap]       # label -> map, including inverses
    kind: str = "schottky"
    discs: dict[str, SchottkyDisc] = field(default_factory=dict)

    def __post_init__(self):
        for lab in self.labels:
            for l in (lab, inverse_label(lab)):
                if l not in self.generators:
                    raise ValueError(f"missing generator matrix for {l!r}")
        for l, m in self.generators.items():
            if m.classify() != "hyperbolic":
                raise ValueError(f"generator {l!r} is not hyperbolic")
        if self.kind == "schottky":
            self._check_ping_pong()

    @property
    def symbols(self) -> list[str]:
        out = []
        for lab in self.labels:
            out.extend([lab, inverse_label(lab)])
        return out

    def word_map(self, word: Word) -> MoebiusMap:
        m = MoebiusMap.identity()
        for l in word:
            m = m * self.generators[l]
        return m

    def min_generator_length(self) -> float:
        return min(trace_length(self.generators[l]) for l in self.labels)

    def _check_ping_pong(self):
        if set(self.discs) != set(self.symbols):
            raise ValueError("schottky presentation needs one disc per symbol")
        # pairwise disjoint closed discs, checked in the angle coordinate
        arcs = sorted((d.lo, d.hi, d.label) for d in self.discs.values())
        for i in range(len(arcs)):
            lo_next = arcs[(i + 1) % len(arcs)][0] + (2 * math.pi if i + 1 == len(arcs) else 0.0)
            if arcs[i][1] >= lo_next:
                raise ValueError(
                    f"schottky discs {arcs[i][2]!r} and {arcs[(i + 1) % len(arcs)][2]!r} overlap")
        # each generator must carry the boundary of its source disc onto the
        # boundary of its target disc
        for lab in self.symbols:
            g = self.generators[lab]
            src = self.discs[inverse_label(lab)]
            dst = self.discs[lab]
            for end in (src.lo, src.hi):
                img = g.apply(boundary_point(end))
                d = abs(reduce_angle(np.angle(img) - dst.lo + math.pi) - math.pi)
                d2 = abs(reduce_angle(np.angle(img) - dst.hi + math.pi) - math.pi)
                if min(d, d2) > 1e-9:
                    raise ValueError(f"generator {lab!r} does not match its disc boundaries")


def schottky_group(disc_specs: dict[str, tuple[float, float]]) -> GroupPresentation:
    """Build a Schottky presentation from boundary-disc data.

    ``disc_specs`` maps each symbol (generator label or its uppercase
    inverse) to ``(center_angle, radius_angle)``.  The paired discs of each
    generator must have equal radius angles: the pairing map is then the
    hyperbolic translation along the axis joining the two disc centers that
    carries one disc boundary exactly onto the other (both discs are its
    isometric circles), which keeps the induced boundary map Markov with the
    disc arcs as partition intervals.
    """
    labels = sorted({l.lower() for l in disc_specs})
    discs = {}
    for sym, (c, r) in disc_specs.items():
        if not (0.0 < r < math.pi / 2):
            raise ValueError(f"disc radius angle for {sym!r} must be in (0, pi/2)")
        discs[sym] = SchottkyDisc(sym, reduce_angle(c), float(r))
    gens: dict[str, MoebiusMap] = {}
    for lab in labels:
        inv = inverse_label(lab)
        if lab not in discs or inv not in discs:
            raise ValueError(f"missing disc for generator {lab!r} or its inverse")
        if abs(discs[lab].radius - discs[inv].radius) > 1e-12:
            raise ValueError(
                f"paired discs for {lab!r} must have equal radius angles "
                "(unequal radii do not give an exact boundary-matching pairing)")
        rho = discs[lab].radius
        length = 2.0 * math.atanh(math.cos(rho))
        g = axis_translation(length, discs[lab].center, discs[inv].center)
        gens[lab] = g
        gens[inv] = g.inverse()
    return GroupPresentation(labels=labels, generators=gens, kind="schottky", discs=discs)


class EllipticWordError(ValueError):
    """A word evaluated to a non-hyperbolic matrix (torsion or parabolic)."""


def _iter_cyclic_classes(symbols: list[str], max_word_len: int):
    """Yield one canonical representative per cyclic class of cyclically
    reduced words of length <= max_word_len, in deterministic order."""
    seen: set[Word] = set()
    order = {s: i for i, s in enumerate(sorted(symbols))}

    def rec(seq: list[str]):
        if seq and seq[0] != inverse_label(seq[-1]):
            key = least_rotation(tuple(seq))
            if key not in seen:
                seen.add(key)
                yield key
        if len(seq) < max_word_len:
            for s in sorted(symbols, key=order.get):
                if not seq or s != inverse_label(seq[-1]):
                    yield from rec(seq + [s])

    yield from rec([])


def conjugacy_classes(group: GroupPresentation, max_word_len: int) -> list[ClosedGeodesic]:
    """One :class:`ClosedGeodesic` per cyclic class of cyclically reduced
    words up to the given word length, sorted by (word length, word)."""
    if max_word_len < 1:
        raise ValueError("max_word_len must be >= 1")
    out = []
    for word in _iter_cyclic_classes(group.symbols, max_word_len):
        m = group.word_map(word)
        if m.classify() != "hyperbolic":
            raise EllipticWordError(f"word {''.join(word)!r} is not hyperbolic")
        root, k = primitive_root(word)
        length = trace_length(m)
        prim_len = trace_length(group.word_map(root)) if k > 1 else length
        out.append(ClosedGeodesic(word, length, prim_len, k))
    out.sort(key=lambda g: (len(g.word), g.word))
    return out


def per_letter_bound(group: GroupPresentation, probe_len: int = 8) -> float:
    """Empirical per-letter translation bound: the minimum of L/|word| over
    all classes up to ``probe_len`` letters, with a 2% safety margin.

    The naive bound min_g L(g) fails for mixed words (alternating words are
    shorter per letter), so the bound is probed on short classes where the
    minimum ratio stabilizes.
    """
    ratios = [g.length / len(g.word) for g in conjugacy_classes(group, probe_len)]
    if not ratios:
        raise ValueError("presentation admits no computable per-letter bound; "
                         "supply an explicit word-length cutoff")
    return 0.98 * min(ratios)


def length_spectrum(group: GroupPresentation, l_max: float,
                    max_word_len: int | None = None,
                    merge_tol: float = 1e-9) -> list[tuple[float, int, Word]]:
    """Sorted length spectrum up to ``l_max``: (length, multiplicity,
    canonical word of one representative per merged length).

    Completeness relies on the empirical per-letter bound (heuristic but
    probed on the presentation itself); pass ``max_word_len`` to override.
    """
    if l_max <= 0:
        raise ValueError("l_max must be positive")
    if max_word_len is None:
        delta0 = per_letter_bound(group)
        max_word_len = int(math.ceil(l_max / delta0)) + 2
    classes = [g for g in conjugacy_classes(group, max_word_len) if g.length <= l_max]
    classes.sort(key=lambda g: (g.length, g.word))
    merged: list[tuple[float, int, Word]] = []
    for g in classes:
        if merged and abs(g.length - merged[-1][0]) < merge_tol:
            L, n, w = merged[-1]
            merged[-1] = (L, n + 1, min(w, g.word))
        else:
            merged.append((g.length, 1, g.word))
    return merged


def counting_exponent(spectrum: list[tuple[float, int, Word]]) -> tuple[float, float]:
    """Fit log N(L) ~ delta * L + c over the computed spectrum.

    Returns (delta, c).  This is the heuristic growth rate used for tail
    bounds; callers apply their own safety factor.
    """
    if len(spectrum) < 8:
        raise ValueError("spectrum too short to fit a counting exponent")
    lengths = np.array([L for (L, n, _) in spectrum for _ in range(n)])
    lengths.sort()
    # fit on the upper half, skipping the small-L transient
    ns = np.arange(1, len(lengths) + 1)
    k0 = len(lengths) // 2
    A = np.vstack([lengths[k0:], np.ones(len(lengths) - k0)]).T
    coef, *_ = np.linalg.lstsq(A, np.log(ns[k0:]), rcond=None)
    return float(coef[0]), float(coef[1])


def spectrum_rows(spectrum: list[tuple[float, int, Word]]) -> list[str]:
    """CSV rows (length, multiplicity, canonical_word) with fixed formatting."""
    return [f"{L:.15g},{n},{''.join(w)}" for (L, n, w) in spectrum]
