"""Filtered chain complexes over GF(2).

A :class:`ChainComplex` stores one boundary matrix per degree; a
:class:`FilteredComplex` adds an increasing filtration by subcomplexes.
Both validate their defining identities on construction (``∂∘∂ = 0``,
filtration monotone, exhaustive, and preserved by the boundary), so
downstream spectral-sequence code can assume a well-formed object.

Degrees may run over any finite integer range; filtration levels
likewise.  Outside the stored ranges everything is zero (for degrees)
or clamped (for filtration levels).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .gf2 import (
    BitMatrix,
    BitSubspace,
    DimensionError,
    rank_kernel_image,
    vec_from_string,
    vec_to_string,
)


class ComplexError(ValueError):
    """Raised when chain-complex or filtration axioms fail."""


def complex_diagnostics(
    dims: Mapping[int, int], boundary: Mapping[int, BitMatrix]
) -> list[str]:
    """Violated chain-complex axioms, one message per finding."""
    out = []
    def dim(k: int) -> int:
        return dims.get(k, 0)
    for k, m in boundary.items():
        if m.cols != dim(k) or m.rows != dim(k - 1):
            out.append(f"boundary shape mismatch in degree {k}")
    if out:
        return out
    for k in sorted(dims):
        d_k = boundary.get(k, BitMatrix.zero(dim(k - 1), dim(k)))
        d_k1 = boundary.get(k + 1, BitMatrix.zero(dim(k), dim(k + 1)))
        if not d_k.mul(d_k1).is_zero():
            out.append(f"boundary squared is nonzero at degree {k + 1}")
    return out


@dataclass(frozen=True)
class ChainComplex:
    """Chain complex of GF(2) vector spaces with chosen bases.

    ``dims[k]`` is the dimension in degree k and ``boundary[k]`` maps
    degree k to degree k-1.  Degrees outside ``degree_range`` are zero.
    """

    dims: Mapping[int, int]
    boundary: Mapping[int, BitMatrix]

    def __post_init__(self) -> None:
        problems = complex_diagnostics(self.dims, self.boundary)
        if problems:
            raise ComplexError("; ".join(problems))

    @classmethod
    def make(
        cls,
        dims: Mapping[int, int],
        boundary: Mapping[int, BitMatrix] | None = None,
    ) -> "ChainComplex":
        dims = {k: n for k, n in dims.items() if n}
        boundary = {
            k: m for k, m in (boundary or {}).items() if m.rows and m.cols
        }
        return cls(dims, boundary)

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    @property
    def degree_range(self) -> tuple[int, int]:
        ks = self.degrees()
        return (ks[0], ks[-1]) if ks else (0, 0)

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def d(self, k: int) -> BitMatrix:
        m = self.boundary.get(k)
        if m is None:
            m = BitMatrix.zero(self.dim(k - 1), self.dim(k))
        return m

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def cycles(self, k: int) -> BitSubspace:
        return rank_kernel_image(self.d(k))[1]

    def boundaries(self, k: int) -> BitSubspace:
        return rank_kernel_image(self.d(k + 1))[2]

    def betti(self, k: int) -> int:
        return self.cycles(k).dim - self.boundaries(k).dim

    def betti_numbers(self) -> dict[int, int]:
        return {k: b for k in self.degrees() if (b := self.betti(k))}

    def shift(self, s: int) -> "ChainComplex":
        """Degree shift: degree k of the result is degree k - s of self."""
        return ChainComplex.make(
            {k + s: n for k, n in self.dims.items()},
            {k + s: m for k, m in self.boundary.items()},
        )


@dataclass(frozen=True)
class FilteredComplex:
    """Chain complex with an increasing filtration by subcomplexes.

    ``filtration[p][k]`` is a subspace of degree k; required to be
    monotone in p, exhaustive at ``p_max``, and closed under the
    boundary.  Levels below ``p_min`` are zero and above ``p_max`` equal
    the whole space.
    """

    complex: ChainComplex
    filtration: Mapping[int, Mapping[int, BitSubspace]]

    def __post_init__(self) -> None:
        problems = filtration_diagnostics(self.complex, self.filtration)
        if problems:
            raise ComplexError("; ".join(problems))

    @property
    def p_range(self) -> tuple[int, int]:
        ps = sorted(self.filtration)
        return ps[0], ps[-1]

    def level(self, p: int, k: int) -> BitSubspace:
        """F_p in degree k, with clamping outside the stored level range."""
        return _filtration_level(self.complex, self.filtration, p, k)


def _filtration_level(
    cx: ChainComplex,
    filtration: Mapping[int, Mapping[int, BitSubspace]],
    p: int,
    k: int,
) -> BitSubspace:
    ps = sorted(filtration)
    if p < ps[0]:
        return BitSubspace.zero(cx.dim(k))
    p = min(p, ps[-1])
    sub = filtration[p].get(k)
    if sub is None:
        # Unstored degrees at a stored level default to the full space
        # only at/above p_max; otherwise zero.
        if p >= ps[-1]:
            return BitSubspace.full(cx.dim(k))
        return BitSubspace.zero(cx.dim(k))
    return sub


def filtration_diagnostics(
    cx: ChainComplex, filtration: Mapping[int, Mapping[int, BitSubspace]]
) -> list[str]:
    """Violated filtration axioms against a valid complex, one per finding."""
    out = []
    ps = sorted(filtration)
    if not ps:
        return ["filtration has no levels"]
    for p in ps:
        for k, sub in filtration[p].items():
            if sub.ambient_dim != cx.dim(k):
                out.append(f"filtration ambient mismatch at p={p}, degree {k}")
    if out:
        return out
    def level(p: int, k: int) -> BitSubspace:
        return _filtration_level(cx, filtration, p, k)
    for k in cx.degrees():
        prev = BitSubspace.zero(cx.dim(k))
        for p in ps:
            cur = level(p, k)
            if not cur.contains_subspace(prev):
                out.append(f"filtration not monotone at p={p}, degree {k}")
            prev = cur
        if prev.dim != cx.dim(k):
            out.append(f"filtration not exhaustive in degree {k}")
    for p in ps:
        for k in cx.degrees():
            d = cx.d(k)
            img = BitSubspace.span(
                d.rows, [d.mul_vec(b) for b in level(p, k).basis])
            if not level(p, k - 1).contains_subspace(img):
                out.append(
                    f"boundary does not preserve filtration at p={p}, degree {k}")
    return out


def filtered_from_levels(
    complex_: ChainComplex,
    levels: Mapping[int, Mapping[int, BitSubspace]],
) -> FilteredComplex:
    """Build a filtered complex, filling missing (p, k) slots explicitly."""
    ps = sorted(levels)
    full: dict[int, dict[int, BitSubspace]] = {}
    for i, p in enumerate(ps):
        full[p] = {}
        for k in complex_.degrees():
            sub = levels[p].get(k)
            if sub is None:
                if i + 1 == len(ps):
                    sub = BitSubspace.full(complex_.dim(k))
                else:
                    # Inherit from the previous level (zero below p_min).
                    sub = full[ps[i - 1]][k] if i else BitSubspace.zero(complex_.dim(k))
            full[p][k] = sub
    return FilteredComplex(complex_, full)


def canonical_filtration(complex_: ChainComplex) -> FilteredComplex:
    """The filtration whose first page carries homology on q = -2p.

    F_p in degree k is: everything if k > -p, the cycles if k = -p, and
    zero if k < -p.
    """
    ks = complex_.degrees()
    if not ks:
        return FilteredComplex(complex_, {0: {}})
    k_min, k_max = ks[0], ks[-1]
    levels: dict[int, dict[int, BitSubspace]] = {}
    for p in range(-k_max, -k_min + 1):
        levels[p] = {}
        for k in ks:
            if k > -p:
                levels[p][k] = BitSubspace.full(complex_.dim(k))
            elif k == -p:
                levels[p][k] = complex_.cycles(k)
            else:
                levels[p][k] = BitSubspace.zero(complex_.dim(k))
    return FilteredComplex(complex_, levels)


def trivial_filtration(complex_: ChainComplex, p: int = 0) -> FilteredComplex:
    return FilteredComplex(
        complex_,
        {p: {k: BitSubspace.full(complex_.dim(k)) for k in complex_.degrees()}},
    )


def deligne_shift(fc: FilteredComplex) -> FilteredComplex:
    """The shifted (décalée) filtration on the same complex.

    The new level p in degree k is the part of the old level p + k whose
    boundary lies in the old level p + k - 1.
    """
    cx = fc.complex
    ks = cx.degrees()
    if not ks:
        return fc
    k_min, k_max = ks[0], ks[-1]
    p_min, p_max = fc.p_range
    levels: dict[int, dict[int, BitSubspace]] = {}
    for p in range(p_min - k_max, p_max - k_min + 1):
        levels[p] = {}
        for k in ks:
            base = fc.level(p + k, k)
            d = cx.d(k)
            good = preimage_subspace(d, fc.level(p + k - 1, k - 1))
            levels[p][k] = base.intersect(good)
    return FilteredComplex(cx, levels)


def preimage_subspace(m: BitMatrix, target: BitSubspace) -> BitSubspace:
    from .gf2 import preimage
    return preimage(m, target)


# ---------------------------------------------------------------------------
# Serialization


def complex_to_doc(cx: ChainComplex) -> dict:
    ks = cx.degrees()
    return {
        "degree_range": list(cx.degree_range),
        "dims": {str(k): cx.dim(k) for k in ks},
        "boundary": {
            str(k): sorted(map(list, cx.d(k).entries()))
            for k in ks if cx.d(k).entries()
        },
    }


def complex_from_doc(doc: Mapping) -> ChainComplex:
    dims = {int(k): int(n) for k, n in doc.get("dims", {}).items()}
    boundary = {}
    for k_str, entries in doc.get("boundary", {}).items():
        k = int(k_str)
        boundary[k] = BitMatrix.from_entries(
            dims.get(k - 1, 0), dims.get(k, 0),
            [(int(r), int(c)) for r, c in entries],
        )
    return ChainComplex.make(dims, boundary)


def filtered_to_doc(fc: FilteredComplex) -> dict:
    doc = complex_to_doc(fc.complex)
    doc["filtration"] = {
        str(p): {
            str(k): [vec_to_string(b, fc.complex.dim(k))
                     for b in fc.level(p, k).basis]
            for k in fc.complex.degrees()
        }
        for p in range(fc.p_range[0], fc.p_range[1] + 1)
    }
    return doc


def filtered_from_doc(doc: Mapping) -> FilteredComplex:
    cx = complex_from_doc(doc)
    filt = doc.get("filtration")
    if not filt:
        return trivial_filtration(cx)
    levels: dict[int, dict[int, BitSubspace]] = {}
    for p_str, by_deg in filt.items():
        p = int(p_str)
        levels[p] = {}
        for k_str, vecs in by_deg.items():
            k = int(k_str)
            levels[p][k] = BitSubspace.span(
                cx.dim(k), [vec_from_string(s) for s in vecs])
    return filtered_from_levels(cx, levels)


def load_filtered(path: str) -> FilteredComplex:
    with open(path) as fh:
        return filtered_from_doc(json.load(fh))
