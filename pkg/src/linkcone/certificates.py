"""Cut-dependent contraction certificates for entropy inequalities on link models.

The machinery here addresses links through the min-cuts of an
inequality's LHS terms.  Every loop gets a trit per LHS term: +1 inside
that term's cut interior, 0 inside the cut itself, -1 in the exterior.
Loops sharing a trit-string form a cell, and the cells partition the
loop set.  A trit-string map then assembles candidate RHS cuts out of
cells, and a bridge-driven indicator table supplies the combinatorial
inequality that has to hold tuple by tuple.

All checks are instance-level: the indicator table depends on the chosen
min-cuts of one specific model, so a passing certificate establishes the
inequality on that model, not on the whole model class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import LinearInequality, Subsystem, subsystem_label
from .links import (
    LinkModel,
    LoopCutResult,
    StratificationError,
    _split_blocks,
    is_valid_loop_cut,
    link_entropy,
    link_min_cut,
    minimal_bridges,
)

Trits = tuple[int, ...]


class CertificateError(ValueError):
    """Structurally unusable certificate (undefined cells, bad lengths)."""


class InconsistentAssignment(ValueError):
    """Zero cells that do not induce a coherent RHS cut/interior/exterior split."""


@dataclass(frozen=True)
class TritPartition:
    """Trit-string addressing of every loop relative to the LHS min-cuts."""

    length: int
    cells: dict[Trits, frozenset[str]]
    loop_trits: dict[str, Trits]
    cuts: tuple[LoopCutResult, ...]

    def cell_of(self, loop: str) -> Trits:
        return self.loop_trits[loop]


def build_trit_partition(model: LinkModel, ineq: LinearInequality) -> TritPartition:
    """Assign each loop its trit-string and materialize the nonempty cells.

    The reconstruction identities (interiors from +1 cells, cuts from 0
    cells) are asserted before returning.
    """
    if ineq.n != model.n:
        raise ValueError(f"party-count mismatch: inequality n={ineq.n}, model n={model.n}")
    cuts = tuple(link_min_cut(model, sub) for sub in ineq.lhs_subsystems)
    loop_trits: dict[str, Trits] = {}
    for loop in model.loops:
        trits = []
        for cut in cuts:
            if loop in cut.interior:
                trits.append(1)
            elif loop in cut.cut:
                trits.append(0)
            else:
                trits.append(-1)
        loop_trits[loop] = tuple(trits)
    cells: dict[Trits, set[str]] = {}
    for loop, trits in loop_trits.items():
        cells.setdefault(trits, set()).add(loop)
    frozen_cells = {trits: frozenset(members) for trits, members in cells.items()}
    for l, cut in enumerate(cuts):
        rebuilt_interior = frozenset().union(
            *(members for trits, members in frozen_cells.items() if trits[l] == 1)
        )
        rebuilt_cut = frozenset().union(
            *(members for trits, members in frozen_cells.items() if trits[l] == 0)
        )
        assert rebuilt_interior == cut.interior, "cell reconstruction of a cut interior failed"
        assert rebuilt_cut == cut.cut, "cell reconstruction of a min-cut failed"
    return TritPartition(
        length=len(ineq.lhs),
        cells=frozen_cells,
        loop_trits=loop_trits,
        cuts=cuts,
    )


@dataclass(frozen=True)
class IndicatorEntry:
    """One credited bridge: the tuple of cells covering it and the cut loop it pays for."""

    term_index: int
    cover_size: int
    bridge_size: int
    cells: tuple[Trits, ...]
    loop: str
    bridge: frozenset[str]


@dataclass(frozen=True)
class OracularIndicatorTable:
    """Support of the bridge indicator, with the per-term loop coloring.

    Each min-cut loop is credited exactly once per LHS term, by the first
    minimal bridge through it in (bridge size, cover size, cell tuple,
    loop indices) order; crediting turns the loop from gray to green.
    """

    entries: tuple[IndicatorEntry, ...]
    support: frozenset[tuple[int, int, int, tuple[Trits, ...]]]
    coloring: dict[int, dict[str, str]]
    partition: TritPartition

    def value(self, term_index: int, cover_size: int, bridge_size: int, cells: tuple[Trits, ...]) -> int:
        return 1 if (term_index, cover_size, bridge_size, cells) in self.support else 0


def _bridge_cells(partition: TritPartition, bridge: frozenset[str], loop: str) -> tuple[Trits, ...]:
    """Canonical cell tuple covering a bridge: the credited loop's cell first, rest sorted."""
    head = partition.cell_of(loop)
    rest = sorted({partition.cell_of(x) for x in bridge} - {head})
    return (head, *rest)


def compute_oracular_indicator(model: LinkModel, ineq: LinearInequality) -> OracularIndicatorTable:
    """Credit every min-cut loop of every LHS term through its minimal bridges.

    For each LHS term the min-cut loops start gray.  Minimal bridges are
    visited in ascending (size, cover size, cell tuple, loop index)
    order; a bridge whose cut loop is still gray colors it green and
    switches the indicator on for the covering cell tuple.  Any gray loop
    surviving the scan signals a non-minimal cut or an inconsistent
    structure.
    """
    partition = build_trit_partition(model, ineq)
    entries: list[IndicatorEntry] = []
    coloring: dict[int, dict[str, str]] = {}
    for l, subsystem in enumerate(ineq.lhs_subsystems):
        cut = partition.cuts[l]
        gray = set(cut.cut)
        colors = {loop: "gray" for loop in cut.cut}
        scheduled = []
        for bridge in minimal_bridges(model, subsystem):
            hit = bridge & cut.cut
            if len(hit) != 1:
                raise StratificationError(
                    f"minimal bridge {sorted(bridge)} meets the min-cut of "
                    f"{subsystem_label(subsystem)} in {len(hit)} loops"
                )
            loop = next(iter(hit))
            cells = _bridge_cells(partition, bridge, loop)
            order_key = (
                len(bridge),
                len(cells),
                cells,
                tuple(sorted(model.loop_index(x) for x in bridge)),
            )
            scheduled.append((order_key, bridge, loop, cells))
        credited_weight = Fraction(0)
        for order_key, bridge, loop, cells in sorted(scheduled):
            if loop not in gray:
                continue
            gray.remove(loop)
            colors[loop] = "green"
            credited_weight += Fraction(model.weights[loop])
            head = cells[0]
            assert head[l] == 0, "credited cell must sit inside the term's min-cut"
            signs = [c[l] for c in cells[1:]]
            assert all(s in (-1, 1) for s in signs), "covering cells must avoid the cut coordinate"
            assert 1 in signs and -1 in signs, "a bridge must reach both interior and exterior"
            entries.append(
                IndicatorEntry(
                    term_index=l,
                    cover_size=len(cells),
                    bridge_size=len(bridge),
                    cells=cells,
                    loop=loop,
                    bridge=bridge,
                )
            )
        if gray:
            raise StratificationError(
                f"min-cut loops {sorted(gray)} of {subsystem_label(subsystem)} "
                "were never credited by any minimal bridge"
            )
        assert credited_weight == cut.weight, "credited loop weights must add up to the cut weight"
        coloring[l] = colors
    support = frozenset(
        (e.term_index, e.cover_size, e.bridge_size, e.cells) for e in entries
    )
    return OracularIndicatorTable(
        entries=tuple(entries),
        support=support,
        coloring=coloring,
        partition=partition,
    )


@dataclass(frozen=True)
class TritContractionMap:
    """Map from LHS trit-strings to RHS trit-strings, defined on nonempty cells."""

    images: dict[Trits, Trits]
    length: int
    width: int

    def __post_init__(self) -> None:
        for cell, image in self.images.items():
            if len(cell) != self.length:
                raise CertificateError(f"cell {cell} does not have length {self.length}")
            if len(image) != self.width:
                raise CertificateError(f"image {image} does not have length {self.width}")
            if not all(t in (-1, 0, 1) for t in cell + image):
                raise CertificateError("trit values must be -1, 0 or 1")


def _rhs_cut_split(
    model: LinkModel,
    subsystem: Subsystem,
    zero_cells: list[Trits],
    partition: TritPartition,
    term_name: str,
):
    """Cut, interior and exterior induced for one RHS term by its zero cells."""
    cut_loops = frozenset().union(*(partition.cells[c] for c in zero_cells)) if zero_cells else frozenset()
    try:
        valid = is_valid_loop_cut(model, subsystem, cut_loops)
    except ValueError as exc:
        raise InconsistentAssignment(f"cut for {term_name} is unusable: {exc}") from exc
    if not valid:
        raise InconsistentAssignment(f"zero cells of {term_name} do not form a valid cut")
    inside = frozenset(model.external[i] for i in subsystem)
    blocks = _split_blocks(model, cut_loops)
    interior = frozenset().union(*(b for b in blocks if b & inside)) if blocks else frozenset()
    exterior = frozenset(model.loops) - cut_loops - interior
    if interior & model.external_loops != inside:
        raise InconsistentAssignment(
            f"interior externals for {term_name} differ from the term's parties"
        )
    return cut_loops, interior, exterior


def derive_rhs_assignment(
    model: LinkModel,
    ineq: LinearInequality,
    zeros,
    partition: TritPartition | None = None,
) -> TritContractionMap:
    """Complete a map from its zero cells: the zeros fix the RHS cuts, which fix all signs.

    `zeros` maps a cell's trit-string to the RHS term indices where the
    map is 0.  Every other (cell, term) entry becomes +1 or -1 depending
    on whether the cell lands in the induced interior or exterior;
    a cell straddling both is inconsistent.
    """
    if partition is None:
        partition = build_trit_partition(model, ineq)
    zeros = {tuple(cell): frozenset(rs) for cell, rs in zeros.items()}
    for cell, rs in zeros.items():
        if cell not in partition.cells:
            raise CertificateError(f"zeros reference the empty cell {cell}")
        if not rs <= set(range(len(ineq.rhs))):
            raise CertificateError(f"zeros for cell {cell} reference RHS terms out of range")
    images: dict[Trits, list[int]] = {cell: [0] * len(ineq.rhs) for cell in partition.cells}
    for r, subsystem in enumerate(ineq.rhs_subsystems):
        term_name = f"RHS term {r} ({subsystem_label(subsystem)})"
        zero_cells = [cell for cell in partition.cells if r in zeros.get(cell, frozenset())]
        _, interior, exterior = _rhs_cut_split(model, subsystem, zero_cells, partition, term_name)
        for cell, members in partition.cells.items():
            if cell in zero_cells:
                images[cell][r] = 0
            elif members <= interior:
                images[cell][r] = 1
            elif members <= exterior:
                images[cell][r] = -1
            else:
                raise InconsistentAssignment(
                    f"cell {cell} straddles the interior and exterior of {term_name}"
                )
    return TritContractionMap(
        images={cell: tuple(img) for cell, img in images.items()},
        length=partition.length,
        width=len(ineq.rhs),
    )


def union_cut_zero_assignment(partition: TritPartition) -> dict[Trits, set[int]]:
    """Zero cells for a single-RHS-term inequality: pool every LHS cut into the one RHS cut.

    This encodes the union-of-cuts argument behind subadditivity: removing
    everything that any LHS min-cut removes certainly separates the union
    of the LHS subsystems.
    """
    return {cell: {0} for cell in partition.cells if 0 in cell}


@dataclass(frozen=True)
class CertificateCheck:
    """Outcome of a certificate verification with diagnostics."""

    ok: bool
    reason: str | None = None
    violation: tuple | None = None
    diagnostics: dict = field(default_factory=dict)


def check_cut_contraction_certificate(
    model: LinkModel,
    ineq: LinearInequality,
    cmap: TritContractionMap,
    exhaustive: bool = False,
    sample_seed: int = 0,
) -> CertificateCheck:
    """Verify a trit-string map as an inequality certificate on this model.

    Three checks must pass:

    1. For every RHS term, the map's zero cells form a valid cut and the
       +1/-1 cells coincide with the induced interior/exterior.
    2. For every covering tuple in the indicator table's support (and,
       with `exhaustive`, every tuple of distinct nonempty cells), the
       weighted count of credited bridges on the LHS dominates what the
       map recycles into RHS cuts.
    3. The resulting weight chain holds numerically: total LHS min-cut
       weight >= total RHS cut weight >= total RHS entropy.

    A passing certificate therefore implies the inequality is true on
    this model; that implication is re-checked exactly rather than
    assumed.  Tuples outside the support satisfy check 2 with 0 >= 0 by
    construction; a seeded sample re-asserts this.
    """
    partition = build_trit_partition(model, ineq)
    undefined = [cell for cell in partition.cells if cell not in cmap.images]
    if undefined:
        raise CertificateError(f"map undefined on nonempty cells: {sorted(undefined)}")
    if cmap.length != partition.length or cmap.width != len(ineq.rhs):
        raise CertificateError("map dimensions do not match the inequality")

    # check 1: zeros induce valid cuts and the signs match their interior/exterior
    rhs_cuts: list[frozenset[str]] = []
    for r, subsystem in enumerate(ineq.rhs_subsystems):
        term_name = f"RHS term {r} ({subsystem_label(subsystem)})"
        zero_cells = [cell for cell in partition.cells if cmap.images[cell][r] == 0]
        try:
            cut_loops, interior, exterior = _rhs_cut_split(
                model, subsystem, zero_cells, partition, term_name
            )
        except InconsistentAssignment as exc:
            return CertificateCheck(ok=False, reason=str(exc))
        for cell, members in partition.cells.items():
            value = cmap.images[cell][r]
            if value == 0:
                continue
            if members <= interior:
                expected = 1
            elif members <= exterior:
                expected = -1
            else:
                return CertificateCheck(
                    ok=False,
                    reason=f"cell {cell} straddles the interior and exterior of {term_name}",
                )
            if value != expected:
                return CertificateCheck(
                    ok=False,
                    reason=(
                        f"cell {cell} is assigned {value} for {term_name} "
                        f"but lies in the {'interior' if expected == 1 else 'exterior'}"
                    ),
                )
        rhs_cuts.append(cut_loops)

    # check 2: per-tuple domination over the indicator support
    table = compute_oracular_indicator(model, ineq)
    alphas = ineq.lhs_coeffs
    betas = ineq.rhs_coeffs
    by_tuple: dict[tuple[int, int, tuple[Trits, ...]], set[int]] = {}
    for l, cover, size, cells in table.support:
        by_tuple.setdefault((cover, size, cells), set()).add(l)

    def tuple_sides(cover: int, size: int, cells: tuple[Trits, ...]):
        terms = by_tuple.get((cover, size, cells), set())
        total = len(terms)
        lhs_value = sum((alphas[l] for l in terms), Fraction(0))
        head_image = cmap.images[cells[0]]
        rhs_value = sum(
            (betas[r] for r in range(len(betas)) if head_image[r] == 0), Fraction(0)
        ) * total
        return lhs_value, rhs_value

    for (cover, size, cells) in by_tuple:
        lhs_value, rhs_value = tuple_sides(cover, size, cells)
        if lhs_value < rhs_value:
            return CertificateCheck(
                ok=False,
                reason="contraction condition violated on a covering tuple",
                violation=(cover, size, cells),
                diagnostics={"lhs": lhs_value, "rhs": rhs_value},
            )

    nonempty_cells = sorted(partition.cells)
    if exhaustive:
        for cover in range(3, len(nonempty_cells) + 1):
            for head in nonempty_cells:
                for rest in combinations([c for c in nonempty_cells if c != head], cover - 1):
                    cells = (head, *sorted(rest))
                    for size in range(cover, len(model.loops) + 1):
                        lhs_value, rhs_value = tuple_sides(cover, size, cells)
                        if lhs_value < rhs_value:
                            return CertificateCheck(
                                ok=False,
                                reason="contraction condition violated on a covering tuple",
                                violation=(cover, size, cells),
                                diagnostics={"lhs": lhs_value, "rhs": rhs_value},
                            )
    elif len(nonempty_cells) >= 3:
        rng = random.Random(sample_seed)
        for _ in range(50):
            cover = rng.randint(3, len(nonempty_cells))
            head = rng.choice(nonempty_cells)
            rest = rng.sample([c for c in nonempty_cells if c != head], cover - 1)
            cells = (head, *sorted(rest))
            size = rng.randint(cover, max(cover, len(model.loops)))
            if (cover, size, cells) in by_tuple:
                continue
            lhs_value, rhs_value = tuple_sides(cover, size, cells)
            assert lhs_value == 0 and rhs_value == 0, "zero-support tuples must be trivial"

    # check 3: exact weight chain
    lhs_total = sum(
        (alpha * cut.weight for alpha, cut in zip(alphas, partition.cuts)), Fraction(0)
    )
    rhs_cut_total = Fraction(0)
    rhs_entropy_total = Fraction(0)
    for r, (subsystem, beta) in enumerate(ineq.rhs):
        cut_weight = sum((Fraction(model.weights[x]) for x in rhs_cuts[r]), Fraction(0))
        entropy = link_entropy(model, subsystem)
        assert cut_weight >= entropy, "a valid cut can never undercut the min-cut"
        rhs_cut_total += beta * cut_weight
        rhs_entropy_total += beta * entropy
    diagnostics = {
        "lhs_cut_weight": lhs_total,
        "rhs_cut_weight": rhs_cut_total,
        "rhs_entropy": rhs_entropy_total,
    }
    if lhs_total < rhs_cut_total:
        return CertificateCheck(
            ok=False,
            reason="weight accounting failed: LHS min-cut weight below assembled RHS cut weight",
            diagnostics=diagnostics,
        )
    return CertificateCheck(ok=True, diagnostics=diagnostics)


def check_inequality_direct(model: LinkModel, ineq: LinearInequality) -> tuple[bool, Fraction, Fraction]:
    """Ground truth: evaluate both sides on the model's min-cut entropies."""
    if ineq.n != model.n:
        raise ValueError(f"party-count mismatch: inequality n={ineq.n}, model n={model.n}")
    lhs_value = sum((coeff * link_entropy(model, sub) for sub, coeff in ineq.lhs), Fraction(0))
    rhs_value = sum((coeff * link_entropy(model, sub) for sub, coeff in ineq.rhs), Fraction(0))
    return lhs_value >= rhs_value, lhs_value, rhs_value
