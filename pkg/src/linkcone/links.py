"""Topological link models: loops, linking structure, loop cuts, and bridges.

A link model replaces both vertices and edges with weighted loops.  The
entropy of a subsystem is the minimum total weight of internal loops
whose removal leaves the subsystem's external loops unlinked from every
other external loop.

Genuine knot-theoretic linking is undecidable territory, so connectivity
is declared combinatorially through one of two structures:

* `AtomicLinkages` lists generator subsets ("atoms").  A set of loops is
  linked exactly when it is chained together by atoms that are fully
  contained in it; a Hopf pair is a 2-atom and a Brunnian triple is a
  3-atom whose proper subsets fall apart.
* `ConnectivityTable` spells out the sublink partition of every subset.
  Tables must be deletion-monotone: removing loops never creates linking.

Models are immutable after construction; all queries are pure.  Min-cut
results are cached per model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import EntropyVector, Subsystem, all_subsystems
from .hypergraphs import Hypergraph


class _Infinite:
    """Weight of a loop that can never be part of a cut."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


class MonotonicityError(ValueError):
    """A connectivity table where deleting a loop creates new linking."""


class UncuttableSubsystemError(ValueError):
    """No internal loop cut can unlink the subsystem from the other externals."""


class StratificationError(ValueError):
    """A min-cut loop belongs to no minimal bridge (non-minimal cut or bad structure)."""


@dataclass(frozen=True)
class AtomicLinkages:
    """Linking structure generated by atoms (loop subsets of size >= 2)."""

    atoms: tuple[frozenset[str], ...]

    def __post_init__(self) -> None:
        atoms = tuple(frozenset(a) for a in self.atoms)
        if any(len(a) < 2 for a in atoms):
            raise ValueError("atoms must contain at least two loops")
        object.__setattr__(self, "atoms", atoms)


@dataclass(frozen=True)
class ConnectivityTable:
    """Explicit sublink partition for every loop subset."""

    blocks_by_subset: dict[frozenset[str], tuple[frozenset[str], ...]]

    def blocks(self, subset: frozenset[str]) -> tuple[frozenset[str], ...]:
        try:
            return self.blocks_by_subset[subset]
        except KeyError:
            raise ValueError(f"connectivity table has no entry for subset {sorted(subset)}") from None


def validate_connectivity_table(loops: tuple[str, ...], table: ConnectivityTable) -> None:
    """Check coverage, partition validity, and deletion-monotonicity.

    Single-loop deletions suffice for monotonicity: refinement is
    transitive, so any chain of deletions inherits it.
    """
    universe = frozenset(loops)
    if len(universe) > 14:
        raise ValueError("connectivity tables are supported for at most 14 loops")
    subsets = [frozenset(c) for size in range(len(loops) + 1) for c in combinations(loops, size)]
    for subset in subsets:
        blocks = table.blocks(subset)
        union: set[str] = set()
        for block in blocks:
            if not block:
                raise ValueError("empty block in connectivity table")
            if block & union:
                raise ValueError(f"overlapping blocks for subset {sorted(subset)}")
            union |= block
        if union != set(subset):
            raise ValueError(f"blocks for subset {sorted(subset)} do not partition it")
    for subset in subsets:
        big = table.blocks(subset)
        for loop in subset:
            smaller = frozenset(subset - {loop})
            restriction = {x: next(b for b in big if x in b) for x in smaller}
            for block in table.blocks(smaller):
                anchors = {restriction[x] for x in block}
                if len(anchors) != 1:
                    raise MonotonicityError(
                        f"deleting {loop!r} from {sorted(subset)} links previously unlinked loops"
                    )


@dataclass(eq=False)
class LinkModel:
    """Weighted loop set with external labeling and a declared linking structure.

    Loop declaration order is significant: it fixes the deterministic
    tie-break between equal-weight min-cuts (lexicographically smallest
    cut as a sorted loop-index list).
    """

    loops: tuple[str, ...]
    weights: dict[str, Fraction | _Infinite]
    external: dict[int, str]
    structure: AtomicLinkages | ConnectivityTable
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.loops = tuple(self.loops)
        self.weights = dict(self.weights)
        self.external = dict(self.external)
        if len(set(self.loops)) != len(self.loops):
            raise ValueError("duplicate loop names")
        loop_set = set(self.loops)
        parties = sorted(self.external)
        if parties != list(range(1, len(parties) + 1)) or len(parties) < 2:
            raise ValueError("external mapping must cover parties 1..n+1 with n >= 1")
        if len(set(self.external.values())) != len(self.external):
            raise ValueError("external mapping must be injective")
        if not set(self.external.values()) <= loop_set:
            raise ValueError("external mapping references unknown loops")
        if set(self.weights) != loop_set:
            raise ValueError("weights must be given for every loop")
        externals = set(self.external.values())
        for loop, w in self.weights.items():
            if isinstance(w, _Infinite):
                continue
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative weight on loop {loop!r}")
            self.weights[loop] = w
        if isinstance(self.structure, AtomicLinkages):
            for atom in self.structure.atoms:
                if not atom <= loop_set:
                    raise ValueError(f"atom {sorted(atom)} references unknown loops")
        else:
            validate_connectivity_table(self.loops, self.structure)
        self._cache["index"] = {name: i for i, name in enumerate(self.loops)}
        self._cache["externals"] = externals

    @property
    def n(self) -> int:
        return len(self.external) - 1

    @property
    def external_loops(self) -> frozenset[str]:
        return frozenset(self._cache["externals"])

    @property
    def internal_loops(self) -> tuple[str, ...]:
        ext = self._cache["externals"]
        return tuple(name for name in self.loops if name not in ext)

    def loop_index(self, name: str) -> int:
        return self._cache["index"][name]

    def is_finite(self, name: str) -> bool:
        return not isinstance(self.weights[name], _Infinite)


@dataclass(frozen=True)
class LoopCutResult:
    """A min-cut together with the interior/exterior split it induces."""

    cut: frozenset[str]
    weight: Fraction
    interior: frozenset[str]
    exterior: frozenset[str]
    tie_break: str


# ---------------------------------------------------------------------------
# connectivity


def _mask_setup(model: LinkModel) -> tuple[int, list[int]]:
    """Full mask plus one bitmask per atom (atoms structure only)."""
    cached = model._cache.get("masks")
    if cached is None:
        index = model._cache["index"]
        atom_masks = []
        for atom in model.structure.atoms:
            mask = 0
            for name in atom:
                mask |= 1 << index[name]
            atom_masks.append(mask)
        full = (1 << len(model.loops)) - 1
        cached = (full, atom_masks)
        model._cache["masks"] = cached
    return cached


def _blocks_mask(model: LinkModel, present: int) -> list[int]:
    """Connected-sublink blocks of the loops in `present`, as bitmasks."""
    _, atom_masks = _mask_setup(model)
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    bits = []
    probe = present
    while probe:
        low = probe & -probe
        idx = low.bit_length() - 1
        parent[idx] = idx
        bits.append(idx)
        probe ^= low
    for mask in atom_masks:
        if mask & ~present:
            continue
        members = []
        probe = mask
        while probe:
            low = probe & -probe
            members.append(low.bit_length() - 1)
            probe ^= low
        head = find(members[0])
        for other in members[1:]:
            root = find(other)
            if root != head:
                parent[root] = head
    groups: dict[int, int] = {}
    for idx in bits:
        root = find(idx)
        groups[root] = groups.get(root, 0) | (1 << idx)
    return list(groups.values())


def _names_from_mask(model: LinkModel, mask: int) -> frozenset[str]:
    return frozenset(name for i, name in enumerate(model.loops) if mask & (1 << i))


def connected_sublinks(model: LinkModel, subset) -> list[frozenset[str]]:
    """Partition of `subset` into connected sublinks; singletons are their own blocks."""
    subset = frozenset(subset)
    unknown = subset - set(model.loops)
    if unknown:
        raise ValueError(f"unknown loops {sorted(unknown)}")
    if isinstance(model.structure, ConnectivityTable):
        blocks = list(model.structure.blocks(subset))
    else:
        mask = 0
        for name in subset:
            mask |= 1 << model.loop_index(name)
        blocks = [_names_from_mask(model, b) for b in _blocks_mask(model, mask)]
    return sorted(blocks, key=lambda b: min(model.loop_index(x) for x in b))


def _split_blocks(model: LinkModel, removed: frozenset[str]) -> list[frozenset[str]]:
    return connected_sublinks(model, frozenset(model.loops) - removed)


# ---------------------------------------------------------------------------
# loop cuts


def _subsystem_externals(model: LinkModel, subsystem: Subsystem) -> tuple[frozenset[str], frozenset[str]]:
    subsystem = frozenset(subsystem)
    if not subsystem or not subsystem <= set(range(1, model.n + 1)):
        raise ValueError(f"subsystem must be a nonempty subset of [{model.n}]")
    inside = frozenset(model.external[i] for i in subsystem)
    outside = frozenset(v for i, v in model.external.items() if i not in subsystem)
    return inside, outside


def is_valid_loop_cut(model: LinkModel, subsystem: Subsystem, cut) -> bool:
    """True when removing `cut` leaves the subsystem unlinked from all other externals."""
    cut = frozenset(cut)
    inside, outside = _subsystem_externals(model, subsystem)
    bad = [name for name in cut if name in model.external_loops or not model.is_finite(name)]
    if bad:
        raise ValueError(f"cut contains external or infinite-weight loops: {sorted(bad)}")
    for block in _split_blocks(model, cut):
        if block & inside and block & outside:
            return False
    return True


def _cut_candidates(model: LinkModel) -> list[str]:
    """Internal finite-weight loops that can take part in a cut.

    With an atoms structure, loops in no atom never affect connectivity,
    so they are never needed in a cut.
    """
    ext = model.external_loops
    names = [name for name in model.loops if name not in ext and model.is_finite(name)]
    if isinstance(model.structure, AtomicLinkages):
        in_atoms = set().union(*model.structure.atoms) if model.structure.atoms else set()
        names = [name for name in names if name in in_atoms]
    return names


def link_min_cut(model: LinkModel, subsystem: Subsystem) -> LoopCutResult:
    """Minimum-weight valid loop cut for the subsystem, with deterministic tie-break.

    Among equal-weight cuts the lexicographically smallest sorted list of
    loop indices wins.  The interior collects every block that remains
    linked to the subsystem's external loops after the cut is removed.
    """
    subsystem = frozenset(subsystem)
    cached = model._cache.get(("mincut", subsystem))
    if cached is not None:
        return cached
    inside, outside = _subsystem_externals(model, subsystem)
    candidates = _cut_candidates(model)
    if not is_valid_loop_cut(model, subsystem, frozenset(candidates)):
        raise UncuttableSubsystemError(
            f"externals of {sorted(subsystem)} stay linked to the rest after removing every internal loop"
        )
    order = sorted(candidates, key=model.loop_index)
    weights = [Fraction(model.weights[name]) for name in order]

    best: tuple[Fraction, tuple[int, ...]] | None = None
    best_cut: frozenset[str] | None = None

    def descend(pos: int, chosen: tuple[str, ...], idx_tuple: tuple[int, ...], weight: Fraction) -> None:
        nonlocal best, best_cut
        if best is not None and weight > best[0]:
            return
        if is_valid_loop_cut(model, subsystem, frozenset(chosen)):
            key = (weight, idx_tuple)
            if best is None or key < best:
                best = key
                best_cut = frozenset(chosen)
            return
        for j in range(pos, len(order)):
            descend(
                j + 1,
                chosen + (order[j],),
                idx_tuple + (model.loop_index(order[j]),),
                weight + weights[j],
            )

    descend(0, (), (), Fraction(0))
    assert best is not None and best_cut is not None
    blocks = _split_blocks(model, best_cut)
    interior = frozenset().union(*(b for b in blocks if b & inside))
    exterior = frozenset(model.loops) - best_cut - interior
    result = LoopCutResult(
        cut=best_cut,
        weight=best[0],
        interior=interior,
        exterior=exterior,
        tie_break="minimum weight, then lexicographically smallest sorted loop-index list",
    )
    model._cache[("mincut", subsystem)] = result
    return result


def link_entropy(model: LinkModel, subsystem: Subsystem) -> Fraction:
    return link_min_cut(model, subsystem).weight


def link_entropy_vector(model: LinkModel) -> EntropyVector:
    return EntropyVector(model.n, tuple(link_entropy(model, sub) for sub in all_subsystems(model.n)))


# ---------------------------------------------------------------------------
# irreducible sublinks and bridges


def is_irreducible(model: LinkModel, subset) -> bool:
    """True when the subset on its own forms a single linked block of size >= 2."""
    subset = frozenset(subset)
    if len(subset) < 2:
        return False
    return len(connected_sublinks(model, subset)) == 1


def _irreducible_family(model: LinkModel) -> tuple[frozenset[str], ...]:
    """All irreducible sublinks, sorted by size then loop indices.

    Enumerates every loop subset, so it is reserved for desk-scale models.
    """
    cached = model._cache.get("irreducible")
    if cached is None:
        if len(model.loops) > 16:
            raise ValueError("irreducible-sublink enumeration is supported for at most 16 loops")
        family = []
        for size in range(2, len(model.loops) + 1):
            for combo in combinations(model.loops, size):
                subset = frozenset(combo)
                if is_irreducible(model, subset):
                    family.append(subset)
        cached = tuple(
            sorted(family, key=lambda b: (len(b), tuple(sorted(model.loop_index(x) for x in b))))
        )
        model._cache["irreducible"] = cached
    return cached


def bridge_oracle(model: LinkModel, subsystem: Subsystem, candidate) -> bool:
    """Decide whether `candidate` is a minimal bridge across the subsystem's min-cut.

    A bridge is an irreducible sublink meeting the cut interior, the cut
    exterior, and the min-cut itself; minimal means no proper subset is
    also a bridge.  Minimality is checked by an exhaustive proper-subset
    scan.
    """
    candidate = frozenset(candidate)
    cut = link_min_cut(model, frozenset(subsystem))

    def crosses(subset: frozenset[str]) -> bool:
        return bool(subset & cut.interior) and bool(subset & cut.exterior) and bool(subset & cut.cut)

    if not crosses(candidate):
        return False
    if not is_irreducible(model, candidate):
        return False
    for size in range(3, len(candidate)):
        for combo in combinations(sorted(candidate), size):
            subset = frozenset(combo)
            if crosses(subset) and is_irreducible(model, subset):
                return False
    return True


def minimal_bridges(model: LinkModel, subsystem: Subsystem) -> tuple[frozenset[str], ...]:
    """Every minimal bridge across the subsystem's min-cut, sorted by size then indices."""
    subsystem = frozenset(subsystem)
    cached = model._cache.get(("bridges", subsystem))
    if cached is not None:
        return cached
    cut = link_min_cut(model, subsystem)
    family = _irreducible_family(model)
    crossing = [
        b for b in family if b & cut.interior and b & cut.exterior and b & cut.cut
    ]
    crossing_set = set(crossing)
    minimal = []
    for b in crossing:
        if any(other < b for other in crossing_set if len(other) < len(b)):
            continue
        minimal.append(b)
    result = tuple(minimal)
    model._cache[("bridges", subsystem)] = result
    return result


def has_single_crossing_bridges(model: LinkModel) -> bool:
    """True when every minimal bridge of every subsystem meets its min-cut in one loop.

    This is the applicability domain of the bridge-crediting machinery:
    declared structures can route a minimal bridge through two cut loops
    in series (a chain interior-cut-cut-exterior), which no crediting
    scheme that pays one loop per bridge can account for.
    """
    for subsystem in all_subsystems(model.n):
        cut = link_min_cut(model, subsystem)
        for bridge in minimal_bridges(model, subsystem):
            if len(bridge & cut.cut) != 1:
                return False
    return True


def satisfies_strong_subadditivity(model: LinkModel) -> bool:
    """Check S(XY) + S(YZ) >= S(Y) + S(XYZ) over all disjoint subsystem triples.

    Subadditivity is a theorem for every declared structure (the union of
    two cuts always cuts the union), but strong subadditivity is not:
    declared connectivity can make a lone subsystem expensive to isolate
    while larger groups cut around it cheaply.  Genuine links never do
    that, so failing models are combinatorial artifacts outside the
    geometry this class abstracts.
    """
    subs = all_subsystems(model.n)
    values = {sub: link_entropy(model, sub) for sub in subs}
    for x in subs:
        for y in subs:
            if x & y:
                continue
            for z in subs:
                if z & (x | y):
                    continue
                if values[x | y] + values[y | z] < values[y] + values[x | y | z]:
                    return False
    return True


def k_loop_stratification(model: LinkModel, subsystem: Subsystem) -> dict[str, int]:
    """Smallest minimal-bridge size through each min-cut loop.

    The strata partition the min-cut; a cut loop outside every minimal
    bridge signals a non-minimal cut or an inconsistent structure.
    """
    subsystem = frozenset(subsystem)
    cut = link_min_cut(model, subsystem)
    strata: dict[str, int] = {}
    for bridge in minimal_bridges(model, subsystem):
        for loop in bridge & cut.cut:
            strata.setdefault(loop, len(bridge))
    missing = cut.cut - set(strata)
    if missing:
        raise StratificationError(
            f"min-cut loops {sorted(missing)} for subsystem {sorted(subsystem)} lie in no minimal bridge"
        )
    return strata


# ---------------------------------------------------------------------------
# conversions and built-ins


def hypergraph_to_link(hypergraph: Hypergraph) -> LinkModel:
    """Replace vertices with uncuttable loops and hyperedges with weighted loops.

    Each hyperedge loop is Hopf-linked (2-atom) to every member's vertex
    loop, which reproduces the hypergraph's min-cut weights exactly.
    """
    loops = list(hypergraph.vertices)
    taken = set(loops)
    weights: dict[str, Fraction | _Infinite] = {v: INFINITE for v in hypergraph.vertices}
    atoms: list[frozenset[str]] = []
    for i, (members, w) in enumerate(hypergraph.hyperedges):
        name = f"e{i}"
        while name in taken:
            name += "_"
        taken.add(name)
        loops.append(name)
        weights[name] = w
        for member in sorted(members):
            atoms.append(frozenset({name, member}))
    return LinkModel(
        loops=tuple(loops),
        weights=weights,
        external=dict(hypergraph.external),
        structure=AtomicLinkages(tuple(atoms)),
    )


RAY15_SEPARATING_INEQUALITY = (
    "S(AB) + S(DE) + S(ACD) + 2 S(ACE) + S(BCD) + S(ABDE)"
    " >= S(AC) + S(AE) + S(BD) + 2 S(ABCD) + S(ACDE)"
)


def ray15_link() -> LinkModel:
    """Ten-loop model realizing the ray-15 entropy vector (five parties plus purifier F).

    One weight-2 hub loop and three weight-1 loops tie the external pairs
    (A,B), (D,E), (C,F) together through Brunnian triples.  Declaring the
    hub before the weight-1 loops makes the tie-break reproduce the
    expected cuts (for instance, the pair AC cuts the hub, not two
    weight-1 loops).
    """
    loops = ("A", "B", "C", "D", "E", "F", "w2", "u1", "u2", "u3")
    weights: dict[str, Fraction | _Infinite] = {name: Fraction(1) for name in loops}
    weights["w2"] = Fraction(2)
    atoms = (
        frozenset({"A", "u1", "w2"}),
        frozenset({"B", "u1", "w2"}),
        frozenset({"D", "u2", "w2"}),
        frozenset({"E", "u2", "w2"}),
        frozenset({"C", "u3", "w2"}),
        frozenset({"F", "u3", "w2"}),
    )
    external = {i + 1: name for i, name in enumerate("ABCDEF")}
    return LinkModel(loops=loops, weights=weights, external=external, structure=AtomicLinkages(atoms))
