"""Subgroup closure, structural flags and one-dimensional characters.

A subgroup is held as the full, canonically ordered element list together
with the generators it was built from.  Character enumeration is algebraic:
generators are sifted to an independent set over the symplectic bit space
(with exact phase tracking), every element is decomposed once over that
set, and characters are read off from all consistent root-of-unity
assignments.  No floating point is involved, so the same code works far
beyond the dense-matrix limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .pauli import (
    DENSE_QUBIT_LIMIT,
    PauliElement,
    QubitCountError,
    canonical_key,
    format_pauli,
    identity,
    mul,
    to_matrix,
)

#: Hard ceiling on closure size; a subgroup of P_K never needs more than
#: 4^(K+1) elements but runaway generator lists are cut off early.
DEFAULT_ORDER_CAP = 1 << 20


class ClosureCapError(ValueError):
    """Raised when a closure grows past the configured order cap."""


class NotAbelianError(ValueError):
    """Raised when an operation defined only for Abelian subgroups is
    applied to a non-Abelian one.  Non-Abelian Pauli subgroups have no
    one-dimensional irreps; use the joint-eigenspace search in the dfs
    module to confirm that the invariant-vector set is empty."""


@dataclass(frozen=True)
class PauliSubgroup:
    """A multiplicatively closed set of Pauli elements.

    ``elements`` is sorted by ``canonical_key`` so iteration order, JSON
    output and downstream reports are reproducible.
    """

    n_qubits: int
    elements: tuple[PauliElement, ...]
    generators: tuple[PauliElement, ...]
    is_abelian: bool
    contains_minus_identity: bool
    contains_imaginary_identity: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[PauliElement]:
        return frozenset(self.elements)

    def __contains__(self, p: PauliElement) -> bool:
        return p in self.element_set

    @cached_property
    def phase_subgroup(self) -> tuple[PauliElement, ...]:
        """The elements that are phase multiples of the identity string."""
        return tuple(e for e in self.elements if e.is_identity_multiple)

    def to_json_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "generators": [format_pauli(g) for g in self.generators],
            "elements": [format_pauli(e) for e in self.elements],
            "order": self.order,
            "is_abelian": self.is_abelian,
            "contains_minus_identity": self.contains_minus_identity,
        }


def closure(
    generators: list[PauliElement] | tuple[PauliElement, ...],
    n_qubits: int | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> PauliSubgroup:
    """Smallest subgroup containing ``generators``.

    Breadth-first multiplication from the identity; since every Pauli
    element has finite order, closure under products alone already yields
    a group.  An empty generator list needs an explicit ``n_qubits``.

    Raises:
        QubitCountError: generators act on different qubit counts, or no
            count is available for an empty list.
        ClosureCapError: the subgroup grows past ``order_cap``.
    """
    generators = tuple(generators)
    if generators:
        n = generators[0].n_qubits
        for g in generators[1:]:
            if g.n_qubits != n:
                raise QubitCountError(
                    f"mixed qubit counts in generators: {n} vs {g.n_qubits}"
                )
        if n_qubits is not None and n_qubits != n:
            raise QubitCountError(
                f"generators act on {n} qubits, n_qubits says {n_qubits}"
            )
    elif n_qubits is None:
        raise QubitCountError("empty generator list requires n_qubits")
    else:
        n = n_qubits

    start = identity(n)
    seen = {start}
    frontier = [start]
    while frontier:
        element = frontier.pop()
        for g in generators:
            product = mul(element, g)
            if product not in seen:
                if len(seen) >= order_cap:
                    raise ClosureCapError(
                        f"closure exceeded the order cap of {order_cap}"
                    )
                seen.add(product)
                frontier.append(product)

    elements = tuple(sorted(seen, key=canonical_key))
    abelian = all(
        _symplectic_even(a, b)
        for i, a in enumerate(generators)
        for b in generators[i + 1 :]
    )
    minus_i = PauliElement(2, 0, 0, n) in seen
    imag_i = PauliElement(1, 0, 0, n) in seen or PauliElement(3, 0, 0, n) in seen
    return PauliSubgroup(
        n_qubits=n,
        elements=elements,
        generators=generators,
        is_abelian=abelian,
        contains_minus_identity=minus_i,
        contains_imaginary_identity=imag_i,
    )


def subgroup_from_error_generators(
    terms: list[PauliElement] | tuple[PauliElement, ...],
    n_qubits: int | None = None,
    order_cap: int = DEFAULT_ORDER_CAP,
) -> PauliSubgroup:
    """Subgroup spanned by the Kraus operators of a Pauli-string coupling.

    When the system side of a system-bath Hamiltonian consists of the
    given Pauli strings, the time-evolution Kraus operators expand over
    the multiplicative closure of those strings, so the error group is
    exactly ``closure(terms)``.  Provided as a semantically named entry
    point for Hamiltonian-driven workflows.
    """
    return closure(terms, n_qubits=n_qubits, order_cap=order_cap)


def _symplectic_even(p: PauliElement, q: PauliElement) -> bool:
    overlap = (p.x_mask & q.z_mask).bit_count() + (p.z_mask & q.x_mask).bit_count()
    return overlap % 2 == 0


# ---------------------------------------------------------------------------
# generator sifting and element decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SiftedGenerators:
    """Independent generating data for a subgroup.

    ``pivots`` are elements with independent symplectic vectors, keyed by
    the highest set bit of their combined (x << K) | z vector.  The phase
    content of the group is held separately: ``phase_exp_generator`` is
    the exponent e such that the subgroup's identity-multiples are exactly
    the powers of i^e I (e = 0 meaning only +I).
    """

    n_qubits: int
    pivots: tuple[PauliElement, ...]
    pivot_bits: tuple[int, ...]
    phase_exp_generator: int

    @property
    def phase_subgroup_size(self) -> int:
        return {0: 1, 2: 2, 1: 4}[self.phase_exp_generator]


def _vector_key(p: PauliElement) -> int:
    return (p.x_mask << p.n_qubits) | p.z_mask


def sift_generators(
    generators: tuple[PauliElement, ...], n_qubits: int
) -> SiftedGenerators:
    """Greedy Gaussian sift of generators over the symplectic bit space.

    Each generator is reduced by the current pivots (via exact group
    multiplication, so phases are tracked); a nonzero remainder becomes a
    new pivot, a phase remainder i^c I is folded into the phase subgroup.
    Squares of anti-Hermitian pivots contribute -I as well.
    """
    pivots: dict[int, PauliElement] = {}
    phase_exps = {0}
    for g in generators:
        w = g
        while True:
            vec = _vector_key(w)
            if vec == 0:
                phase_exps.add(w.phase_exp)
                break
            bit = vec.bit_length() - 1
            if bit in pivots:
                w = mul(w, pivots[bit])
            else:
                pivots[bit] = w
                break
    for b in pivots.values():
        if b.phase_exp % 2 == 1:
            phase_exps.add(2)  # b squared is -I
    gcd = 0
    for e in phase_exps:
        gcd = math.gcd(gcd, e)
    gcd = math.gcd(gcd, 4)
    phase_gen = 0 if gcd == 4 else gcd
    ordered_bits = tuple(sorted(pivots, reverse=True))
    return SiftedGenerators(
        n_qubits=n_qubits,
        pivots=tuple(pivots[b] for b in ordered_bits),
        pivot_bits=ordered_bits,
        phase_exp_generator=phase_gen,
    )


def decompose(
    p: PauliElement, sifted: SiftedGenerators
) -> tuple[tuple[int, ...], int]:
    """Express ``p`` as i^c I times a product of pivot inverses.

    Returns ``(selection, c)`` where ``selection[i]`` flags whether pivot
    i participates, such that p = (i^c I) * prod(selected pivots)^(-1) in
    an Abelian subgroup.  Raises ValueError if ``p`` is not in the span.
    """
    w = p
    chosen = [0] * len(sifted.pivots)
    while True:
        vec = _vector_key(w)
        if vec == 0:
            return tuple(chosen), w.phase_exp
        bit = vec.bit_length() - 1
        try:
            index = sifted.pivot_bits.index(bit)
        except ValueError:
            raise ValueError(f"{format_pauli(p)} is outside the sifted span")
        chosen[index] = 1
        w = mul(w, sifted.pivots[index])


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

_ROOTS = (1 + 0j, 1j, -1 + 0j, -1j)


def _root_exponent(value: complex) -> int:
    """Index k with value == i^k, for exact fourth roots of unity."""
    for k, root in enumerate(_ROOTS):
        if value == root:
            return k
    raise ValueError(f"{value!r} is not an exact fourth root of unity")


@dataclass(frozen=True)
class Character:
    """A one-dimensional irrep of an Abelian Pauli subgroup.

    ``values`` maps every group element to an exact fourth root of unity;
    multiplicativity values[g h] == values[g] values[h] holds exactly.
    """

    label: int
    values: Mapping[PauliElement, complex]

    def __call__(self, p: PauliElement) -> complex:
        return self.values[p]

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())


def characters(group: PauliSubgroup) -> list[Character]:
    """All ``group.order`` one-dimensional characters of an Abelian subgroup.

    The sifted pivots b_i and the phase generator u = i^e I decompose every
    element uniquely as u^m * prod b_i^(eps_i).  A character is fixed by a
    root of unity for u (its order many choices) and a square root of
    chi(b_i^2) for each pivot (two choices each), which yields exactly
    ``order`` distinct, automatically consistent assignments.  Characters
    are sorted with the trivial one first and labeled 1..N.

    Raises:
        NotAbelianError: the group has an anticommuting pair, hence no
            one-dimensional irreps at all.
    """
    if not group.is_abelian:
        raise NotAbelianError(
            "characters are defined only for Abelian subgroups; a "
            "non-Abelian Pauli subgroup has no one-dimensional irreps "
            "(see dfs.nonabelian_one_dim_search)"
        )
    sifted = sift_generators(group.generators, group.n_qubits)
    z_size = sifted.phase_subgroup_size
    r = len(sifted.pivots)
    if z_size * 2**r != group.order:
        raise AssertionError(
            f"sift inconsistency: {z_size} * 2^{r} != order {group.order}"
        )

    decomposition = [decompose(e, sifted) for e in group.elements]
    e_exp = sifted.phase_exp_generator
    omegas = {1: (1 + 0j,), 2: (1 + 0j, -1 + 0j), 4: _ROOTS}[z_size]

    # chi(b_i)^2 == chi(b_i^2) == chi(i^(2 a_i) I); the square only ever
    # lands on +-1, so each pivot value is +-1 or +-i.
    pivot_square_exp = tuple((2 * b.phase_exp) % 4 for b in sifted.pivots)

    raw: list[dict[PauliElement, complex]] = []
    for omega in omegas:
        bases = []
        for sq in pivot_square_exp:
            target = omega ** (sq // e_exp) if sq else 1 + 0j
            bases.append(1 + 0j if target == 1 else 1j)
        for pattern in range(2**r):
            betas = [
                bases[i] * (1 - 2 * ((pattern >> (r - 1 - i)) & 1))
                for i in range(r)
            ]
            beta_conj = [b.conjugate() for b in betas]
            values: dict[PauliElement, complex] = {}
            for element, (selection, c) in zip(group.elements, decomposition):
                if e_exp:
                    value = omega ** (c // e_exp)
                else:
                    value = 1 + 0j
                for i, picked in enumerate(selection):
                    if picked:
                        value *= beta_conj[i]
                # clear negative zeros picked up from conjugation
                values[element] = complex(value.real + 0.0, value.imag + 0.0)
            raw.append(values)

    keyed = sorted(
        raw,
        key=lambda vals: tuple(_root_exponent(vals[e]) for e in group.elements),
    )
    result = [
        Character(label=k + 1, values=MappingProxyType(vals))
        for k, vals in enumerate(keyed)
    ]
    if len({tuple(_root_exponent(c.values[e]) for e in group.elements) for c in result}) != group.order:
        raise AssertionError("character enumeration produced duplicates")
    return result


def reducibility_sum(
    group: PauliSubgroup, dense_limit: int | None = None
) -> tuple[float, str]:
    """Sum of |trace|^2 over the natural representation, with the verdict.

    The natural representation of the subgroup on 2^K dimensions is
    irreducible exactly when the sum equals the group order; any excess
    means it is reducible.  Traces are taken of the dense matrices, so
    the dense qubit limit applies.
    """
    limit = DENSE_QUBIT_LIMIT if dense_limit is None else dense_limit
    total = 0.0
    for e in group.elements:
        total += abs(np.trace(to_matrix(e, dense_limit=limit))) ** 2
    verdict = "irreducible" if abs(total - group.order) < 1e-9 else "reducible"
    return total, verdict
