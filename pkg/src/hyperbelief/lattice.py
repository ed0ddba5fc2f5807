"""Set algebra of propositions built from a frame of discernment.

A proposition is a union of intersections of frame singletons, kept in a
canonical disjunctive form: an antichain of singleton-index sets (no term
contains another), sorted by term size and then lexicographically.  Under
that normal form the propositions over an n-singleton frame are exactly the
antichains of non-empty subsets of the frame -- the free distributive
lattice generated by the singletons, whose cardinalities 1, 2, 5, 19, 167,
7580, 7828353 follow the Dedekind numbers (each is M(n) - 1).

Exclusivity knowledge lives in a :class:`Model`: a set of index sets whose
joint intersection is declared empty.  Reduction under a model drops every
term that contains a declared-empty set, which yields the canonical
representative of the proposition in the constrained lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence


class EnumerationLimitError(ValueError):
    """Raised when a hyper-power-set enumeration exceeds the size cap."""


DEFAULT_ENUMERATION_LIMIT = 5
HARD_ENUMERATION_LIMIT = 6


@dataclass(frozen=True)
class Frame:
    """An ordered tuple of distinct singleton names."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("frame needs at least one singleton")
        if len(set(names)) != len(names):
            raise ValueError("frame names must be unique")
        if any(not isinstance(n, str) or not n for n in names):
            raise ValueError("frame names must be non-empty strings")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown singleton {name!r}") from None

    def singleton(self, name: str) -> "Proposition":
        return Proposition(self, ((frozenset((self.index(name),)),)))


def _canonical_terms(frame: Frame, terms: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    n = len(frame)
    sets = set()
    for term in terms:
        t = frozenset(term)
        if not t:
            raise ValueError("terms must be non-empty index sets")
        for i in t:
            if not isinstance(i, int) or not 0 <= i < n:
                raise ValueError(f"singleton index {i!r} out of range for frame of size {n}")
        sets.add(t)
    # absorption: a union term that contains another term is redundant
    kept = [t for t in sets if not any(o < t for o in sets)]
    return tuple(sorted(kept, key=lambda t: (len(t), sorted(t))))


@dataclass(frozen=True)
class Proposition:
    """A canonical antichain of singleton-index sets; () is the empty proposition."""

    frame: Frame
    terms: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _canonical_terms(self.frame, self.terms))

    @classmethod
    def empty(cls, frame: Frame) -> "Proposition":
        return cls(frame, ())

    @property
    def is_empty(self) -> bool:
        return not self.terms

    @property
    def sort_key(self) -> tuple:
        """A total order on same-frame propositions; the empty one sorts first."""
        return tuple((len(t), tuple(sorted(t))) for t in self.terms)

    def singleton_indices(self) -> frozenset[int]:
        """All singleton indices mentioned by any term."""
        return frozenset(i for t in self.terms for i in t)

    def __and__(self, other: "Proposition") -> "Proposition":
        return conjoin(self, other)

    def __or__(self, other: "Proposition") -> "Proposition":
        return disjoin(self, other)

    def to_names(self) -> list[list[str]]:
        """JSON form: a list of terms, each a list of singleton names."""
        return [[self.frame.names[i] for i in sorted(t)] for t in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "∅"
        parts = []
        for t in self.terms:
            text = "∩".join(self.frame.names[i] for i in sorted(t))
            if len(t) > 1 and len(self.terms) > 1:
                text = f"({text})"
            parts.append(text)
        return " ∪ ".join(parts)

    def __repr__(self) -> str:
        return f"<Proposition {self}>"


def canonicalize(frame: Frame, terms: Iterable[Iterable[int]]) -> Proposition:
    """Build the canonical proposition for an arbitrary list of index sets."""
    return Proposition(frame, tuple(frozenset(t) for t in terms))


def proposition_from_names(frame: Frame, nested: Sequence[Sequence[str]]) -> Proposition:
    """Inverse of :meth:`Proposition.to_names`."""
    return canonicalize(frame, [[frame.index(n) for n in term] for term in nested])


def _require_same_frame(a: Proposition, b: Proposition) -> None:
    if a.frame != b.frame:
        raise ValueError("propositions belong to different frames")


def conjoin(a: Proposition, b: Proposition) -> Proposition:
    """Intersection; distributes over the union terms, absorbing on ∅."""
    _require_same_frame(a, b)
    return Proposition(a.frame, tuple(ta | tb for ta in a.terms for tb in b.terms))


def disjoin(a: Proposition, b: Proposition) -> Proposition:
    """Union; ∅ is the identity."""
    _require_same_frame(a, b)
    return Proposition(a.frame, a.terms + b.terms)


@dataclass(frozen=True)
class Model:
    """A frame plus the index sets whose joint intersection is declared empty.

    ``kind`` is "free" (no constraints), "shafer" (every pair of distinct
    singletons exclusive) or "hybrid" (anything in between).  Constraint sets
    are kept minimal: a set that contains another declared set is redundant.
    """

    frame: Frame
    empty_intersections: frozenset[frozenset[int]]
    kind: str

    def __post_init__(self) -> None:
        n = len(self.frame)
        sets = set()
        for c in self.empty_intersections:
            cs = frozenset(c)
            if len(cs) < 2:
                raise ValueError("an empty-intersection constraint needs at least two members")
            if any(not 0 <= i < n for i in cs):
                raise ValueError("constraint index out of range")
            sets.add(cs)
        minimal = frozenset(c for c in sets if not any(o < c for o in sets))
        object.__setattr__(self, "empty_intersections", minimal)
        expected = _classify_kind(n, minimal)
        if self.kind != expected:
            raise ValueError(f"model kind {self.kind!r} does not match constraints ({expected})")

    @classmethod
    def free(cls, frame: Frame) -> "Model":
        return cls(frame, frozenset(), "free")

    @classmethod
    def shafer(cls, frame: Frame) -> "Model":
        pairs = frozenset(frozenset(p) for p in product(range(len(frame)), repeat=2) if len(set(p)) == 2)
        return cls(frame, pairs, _classify_kind(len(frame), pairs))

    @classmethod
    def from_constraints(cls, frame: Frame, constraints: Iterable[Iterable[int]]) -> "Model":
        sets = frozenset(frozenset(c) for c in constraints)
        minimal = frozenset(c for c in sets if not any(o < c for o in sets))
        return cls(frame, sets, _classify_kind(len(frame), minimal))


def _classify_kind(n: int, minimal_constraints: frozenset[frozenset[int]]) -> str:
    if not minimal_constraints:
        return "free"
    all_pairs = {frozenset((i, j)) for i in range(n) for j in range(i + 1, n)}
    if minimal_constraints == all_pairs:
        return "shafer"
    return "hybrid"


def reduce_under_model(a: Proposition, model: Model) -> Proposition:
    """Drop every term that contains a declared-empty index set.

    The result is the canonical representative of ``a`` in the constrained
    lattice: two propositions are equal under the constraints iff they reduce
    to the same antichain.
    """
    if a.frame != model.frame:
        raise ValueError("proposition and model belong to different frames")
    if not model.empty_intersections:
        return a
    kept = tuple(t for t in a.terms if not any(c <= t for c in model.empty_intersections))
    if len(kept) == len(a.terms):
        return a
    return Proposition(a.frame, kept)


def is_empty_under(a: Proposition, model: Model) -> bool:
    return reduce_under_model(a, model).is_empty


def leq(a: Proposition, b: Proposition, model: Model) -> bool:
    """Lattice order under the model: a ≤ b iff a∧b ≡ a."""
    return reduce_under_model(conjoin(a, b), model) == reduce_under_model(a, model)


def u_of(a: Proposition) -> Proposition:
    """The union of all singletons mentioned by ``a``; u(∅) = ∅."""
    return Proposition(a.frame, tuple(frozenset((i,)) for i in a.singleton_indices()))


def total_ignorance(frame: Frame) -> Proposition:
    """The union of every singleton in the frame."""
    return Proposition(frame, tuple(frozenset((i,)) for i in range(len(frame))))


# --- enumeration ----------------------------------------------------------
#
# A proposition corresponds to the monotone family of subsets S of the frame
# on which it evaluates true (some term ⊆ S).  Encoding that family as a
# bitmask over the 2^n subsets (subset S ↔ bit Σ 2^i, i ∈ S) turns meets and
# joins into bitwise AND/OR and gives a natural total order.  Monotone masks
# over k+1 generators are exactly the pairs (lo, hi) of monotone masks over k
# generators with lo ≤ hi pointwise, which is how we build them.


def _monotone_masks(n: int) -> list[int]:
    masks = [0, 1]  # the two constant families over the empty frame
    for k in range(n):
        shift = 1 << k
        masks = [lo | (hi << shift) for hi in masks for lo in masks if lo & ~hi == 0]
    return masks


def _mask_to_terms(mask: int, n: int) -> list[frozenset[int]]:
    # the antichain is the set of minimal subsets in the monotone family
    terms = []
    for s in range(1, 1 << n):
        if not mask >> s & 1:
            continue
        sub = (s - 1) & s
        minimal = True
        while sub:
            if mask >> sub & 1:
                minimal = False
                break
            sub = (sub - 1) & s
        if minimal:
            terms.append(frozenset(i for i in range(n) if s >> i & 1))
    return terms


def iter_hyper_power_set(frame: Frame) -> Iterator[Proposition]:
    """Yield every proposition over the frame in deterministic mask order."""
    n = len(frame)
    full = (1 << (1 << n)) - 1
    for mask in sorted(_monotone_masks(n)):
        if mask == full:
            continue  # the all-true family would need an empty term
        yield Proposition(frame, tuple(_mask_to_terms(mask, n)))


def enumerate_hyper_power_set(frame: Frame, *, allow_large: bool = False) -> list[Proposition]:
    """All propositions over the frame, ∅ first, in a fixed total order.

    Sizes follow M(n) - 1 where M is the Dedekind sequence: 2, 5, 19, 167,
    7580, 7828353 for n = 1..6.  Frames beyond five singletons are refused
    unless ``allow_large`` is set (n = 6 takes minutes and a lot of memory);
    nothing above six is ever enumerated.
    """
    limit = HARD_ENUMERATION_LIMIT if allow_large else DEFAULT_ENUMERATION_LIMIT
    if len(frame) > limit:
        raise EnumerationLimitError(
            f"enumeration over {len(frame)} singletons exceeds the limit of {limit}"
            + ("" if allow_large else " (pass allow_large for n=6)")
        )
    return list(iter_hyper_power_set(frame))


# --- refinement onto an exclusive atom frame -------------------------------


@dataclass(frozen=True)
class AtomFrame:
    """Ordered axes of mutually exclusive, exhaustive values.

    The atoms are the value combinations in mixed-radix order (first axis
    most significant), e.g. axes (f|f̄), (b|b̄), (p|p̄) give eight atoms
    starting with f∩b∩p.
    """

    axes: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        axes = tuple(tuple(axis) for axis in self.axes)
        object.__setattr__(self, "axes", axes)
        if not axes:
            raise ValueError("atom frame needs at least one axis")
        for axis in axes:
            if len(axis) < 2:
                raise ValueError("each axis needs at least two values")
            if len(set(axis)) != len(axis):
                raise ValueError("axis values must be unique")

    @property
    def atom_count(self) -> int:
        count = 1
        for axis in self.axes:
            count *= len(axis)
        return count

    def atom_index(self, values: Sequence[int]) -> int:
        index = 0
        for axis, v in zip(self.axes, values):
            index = index * len(axis) + v
        return index

    def atom_values(self, index: int) -> tuple[int, ...]:
        values = []
        for axis in reversed(self.axes):
            index, v = divmod(index, len(axis))
            values.append(v)
        return tuple(reversed(values))

    def atom_name(self, index: int) -> str:
        values = self.atom_values(index)
        return "∩".join(axis[v] for axis, v in zip(self.axes, values))

    def to_frame(self) -> Frame:
        return Frame(tuple(self.atom_name(i) for i in range(self.atom_count)))


def refine_to_atoms(
    a: Proposition,
    atom_frame: AtomFrame,
    literal_map: Mapping[str, tuple[int, int]],
) -> frozenset[int]:
    """Map a proposition onto the set of atoms consistent with some term.

    ``literal_map`` sends a singleton name to an (axis, value) pair.  A term
    pins each mapped axis to one value and leaves the other axes free; a term
    that pins one axis to two different values contributes no atoms.  Every
    singleton used by ``a`` must be mapped.
    """
    axes = atom_frame.axes
    atoms: set[int] = set()
    for term in a.terms:
        pinned: dict[int, int] = {}
        consistent = True
        for i in term:
            name = a.frame.names[i]
            if name not in literal_map:
                raise ValueError(f"singleton {name!r} has no axis mapping")
            axis, value = literal_map[name]
            if not 0 <= axis < len(axes) or not 0 <= value < len(axes[axis]):
                raise ValueError(f"axis mapping for {name!r} is out of range")
            if pinned.get(axis, value) != value:
                consistent = False
                break
            pinned[axis] = value
        if not consistent:
            continue
        choices = [
            (pinned[axis],) if axis in pinned else tuple(range(len(axes[axis])))
            for axis in range(len(axes))
        ]
        for combo in product(*choices):
            atoms.add(atom_frame.atom_index(combo))
    return frozenset(atoms)


def atoms_to_proposition(atom_indices: Iterable[int], atom_frame_as_frame: Frame) -> Proposition:
    """Turn an atom-index set into a union of singletons on the refined frame."""
    return Proposition(atom_frame_as_frame, tuple(frozenset((i,)) for i in atom_indices))
