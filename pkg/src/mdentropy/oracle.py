"""Brute-force cover enumeration for small regions.

Covers are enumerated one by one by backtracking on the lowest uncovered
point, with the boundary behavior chosen per direction: tile (dimers stay
inside, nothing protrudes), wrap (the direction closes into a torus, an
extent of 2 giving a doubled edge and an extent of 1 no edge), or
protrude (dimers may stick out through that direction's faces).  The
geometry is rebuilt here directly from coordinates, independent of the
bitmask tables, so agreement between the two paths checks both.

The census records counts by number of dimers (wrapping and protruding
dimers included).  Capacity is 20 points; enumeration is exponential by
design.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .bounds import one_dim_counts
from .lattice import CapacityError, LatticeShape
from .matchcount import CoverTable, SectionKind
from .transfer import full_trace_power, quadratic_form_count

TILE = "tile"
WRAP = "wrap"
PROTRUDE = "protrude"
_MODES = (TILE, WRAP, PROTRUDE)

MAX_ORACLE_POINTS = 20

_NAMED = {
    "tiling": TILE,
    "periodic": WRAP,
    "protruding": PROTRUDE,
}


def resolve_boundary(dims, boundary) -> tuple[str, ...]:
    """Normalize a boundary request to one mode per direction.

    Accepts a named mode ("tiling", "periodic", "protruding") applied to
    every direction, a collection of 1-based direction numbers meaning
    wrap-these-protrude-the-rest, or an explicit per-direction mode tuple.
    """
    d = len(dims)
    if isinstance(boundary, str):
        if boundary not in _NAMED:
            raise ValueError(f"unknown boundary name {boundary!r}")
        return (_NAMED[boundary],) * d
    seq = tuple(boundary)
    if all(isinstance(x, int) and not isinstance(x, bool) for x in seq):
        wrap_dirs = set(seq)
        if not wrap_dirs <= set(range(1, d + 1)):
            raise ValueError(f"wrap directions {seq} outside 1..{d}")
        return tuple(WRAP if k in wrap_dirs else PROTRUDE for k in range(1, d + 1))
    if len(seq) == d and all(x in _MODES for x in seq):
        return seq
    raise ValueError(f"cannot interpret boundary {boundary!r} for {d} directions")


def _geometry(dims, modes):
    """Neighbor lists (as bit, index, multiplicity) and slots from coordinates."""
    d = len(dims)
    n = prod(dims)
    strides = []
    s = 1
    for m in dims:
        strides.append(s)
        s *= m
    coords = [1] * d
    neighbors: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    slots = [0] * n

    def add_edge(i, j, mult):
        neighbors[i].append((1 << j, j, mult))
        neighbors[j].append((1 << i, i, mult))

    for i in range(n):
        for k in range(d):
            m, mode, stride = dims[k], modes[k], strides[k]
            c = coords[k]
            if mode == WRAP:
                if m >= 3:
                    if c < m:
                        add_edge(i, i + stride, 1)
                    else:
                        add_edge(i, i - (m - 1) * stride, 1)
                elif m == 2 and c == 1:
                    add_edge(i, i + stride, 2)
            else:
                if c < m:
                    add_edge(i, i + stride, 1)
                if mode == PROTRUDE:
                    if c == 1:
                        slots[i] += 1
                    if c == m:
                        slots[i] += 1
        # advance mixed-radix coordinates, first direction fastest
        for k in range(d):
            if coords[k] < dims[k]:
                coords[k] += 1
                break
            coords[k] = 1
    return neighbors, slots


@dataclass
class CoverCensus:
    dims: tuple[int, ...]
    modes: tuple[str, ...]
    dimer_only: bool
    by_dimers: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.by_dimers.values())


def _search(n: int, neighbors, slots, mask: int, dimer_only: bool) -> dict[int, int]:
    """Unmemoized backtracking census by dimer count; exponential in covers."""
    by_dimers: dict[int, int] = {}
    monomer_ok = not dimer_only

    def rec(uncovered: int, dimers: int, weight: int):
        if not uncovered:
            by_dimers[dimers] = by_dimers.get(dimers, 0) + weight
            return
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        rest = uncovered ^ low
        if monomer_ok:
            rec(rest, dimers, weight)
        if slots[v]:
            rec(rest, dimers + 1, weight * slots[v])
        for wbit, _, mult in neighbors[v]:
            if rest & wbit:
                rec(rest ^ wbit, dimers + 1, weight * mult)

    rec(mask, 0, 1)
    return by_dimers


def _count(neighbors, slots, mask: int, monomer_ok: bool, memo: dict) -> int:
    """Memoized total count; reachable masks stay near the removal frontier."""
    if not mask:
        return 1
    cached = memo.get(mask)
    if cached is not None:
        return cached
    low = mask & -mask
    v = low.bit_length() - 1
    rest = mask ^ low
    base = (1 if monomer_ok else 0) + slots[v]
    total = base * _count(neighbors, slots, rest, monomer_ok, memo) if base else 0
    for wbit, _, mult in neighbors[v]:
        if rest & wbit:
            total += mult * _count(neighbors, slots, rest ^ wbit, monomer_ok, memo)
    memo[mask] = total
    return total


def _checked(dims, boundary):
    dims = tuple(int(m) for m in dims)
    if any(m < 1 for m in dims):
        raise ValueError(f"extents must be positive, got {dims}")
    n = prod(dims)
    if n > MAX_ORACLE_POINTS:
        raise CapacityError(f"{n} points exceed the {MAX_ORACLE_POINTS}-point oracle limit")
    return dims, n, resolve_boundary(dims, boundary)


def enumerate_covers(dims, boundary, dimer_only: bool = False) -> CoverCensus:
    """Census of covers of the whole region, split by dimer count."""
    dims, n, modes = _checked(dims, boundary)
    neighbors, slots = _geometry(dims, modes)
    by_dimers = _search(n, neighbors, slots, (1 << n) - 1, dimer_only)
    return CoverCensus(dims=dims, modes=modes, dimer_only=dimer_only, by_dimers=by_dimers)


def count_covers(dims, boundary, dimer_only: bool = False) -> int:
    """Total cover count of the whole region; memoized, fast at full capacity."""
    dims, n, modes = _checked(dims, boundary)
    neighbors, slots = _geometry(dims, modes)
    return _count(neighbors, slots, (1 << n) - 1, not dimer_only, {})


_KIND_MODES = {
    SectionKind.BOX: lambda d: (TILE,) * d,
    SectionKind.TORUS: lambda d: (WRAP,) * d,
    SectionKind.MIXED: lambda d: (WRAP,) + (PROTRUDE,) * (d - 1),
    SectionKind.PROTRUDING: lambda d: (PROTRUDE,) * d,
}


def count_subset_covers(dims, kind: SectionKind, mask: int, dimer_only: bool = False) -> int:
    """Covers of one vertex subset of a section, enumerated directly."""
    dims = tuple(int(m) for m in dims)
    n = prod(dims)
    if n > MAX_ORACLE_POINTS:
        raise CapacityError(f"{n} points exceed the {MAX_ORACLE_POINTS}-point oracle limit")
    if not 0 <= mask < (1 << n):
        raise ValueError("subset mask outside the section")
    neighbors, slots = _geometry(dims, _KIND_MODES[kind](len(dims)))
    return sum(_search(n, neighbors, slots, mask, dimer_only).values())


@dataclass
class IdentityCheck:
    name: str
    transfer_value: int
    oracle_value: int

    @property
    def ok(self) -> bool:
        return self.transfer_value == self.oracle_value


def verify_transfer_identities(section_dims, layers: int) -> list[IdentityCheck]:
    """Compare transfer traces and quadratic forms against direct enumeration.

    Traces pair with a wrapped layer direction, boundary-vector quadratic
    forms with a tiled one.  Mixed-kind checks only exist above two
    dimensions, where the kind differs from the torus kind.
    """
    section_dims = tuple(int(m) for m in section_dims)
    d = len(section_dims) + 1
    dims = (*section_dims, layers)
    if prod(dims) > MAX_ORACLE_POINTS:
        raise CapacityError(f"region {dims} exceeds the oracle limit")
    shape = LatticeShape(section_dims)
    checks: list[IdentityCheck] = []
    trace_cases = [
        (SectionKind.BOX, (TILE,) * (d - 1) + (WRAP,)),
        (SectionKind.TORUS, (WRAP,) * d),
        (SectionKind.PROTRUDING, (PROTRUDE,) * (d - 1) + (WRAP,)),
    ]
    form_cases = [
        (SectionKind.TORUS, (WRAP,) * (d - 1) + (TILE,)),
        (SectionKind.PROTRUDING, (PROTRUDE,) * (d - 1) + (TILE,)),
    ]
    if d == 3:
        trace_cases.append((SectionKind.MIXED, (WRAP, PROTRUDE, WRAP)))
        form_cases.append((SectionKind.MIXED, (WRAP, PROTRUDE, TILE)))
    for dimer_only in (False, True):
        tag = "dimer" if dimer_only else "full"
        for kind, modes in trace_cases:
            table = CoverTable(shape, kind, dimer_only)
            lhs = full_trace_power(table, layers)
            rhs = count_covers(dims, modes, dimer_only)
            checks.append(IdentityCheck(f"trace:{kind.value}:{tag}", lhs, rhs))
        if layers >= 2:
            for kind, modes in form_cases:
                table = CoverTable(shape, kind, dimer_only)
                lhs = quadratic_form_count(table, layers)
                rhs = count_covers(dims, modes, dimer_only)
                checks.append(IdentityCheck(f"form:{kind.value}:{tag}", lhs, rhs))
    return checks


# boxes whose inequality chains are checked, smallest to largest
_CHAIN_SHAPES = [(4,), (7,), (12,), (2, 2), (3, 2), (3, 3), (4, 3), (2, 2, 2), (3, 2, 2)]
_IDENTITY_SECTIONS = [(2,), (3,), (4,), (2, 2), (3, 2)]


def run_verification_suite(max_points: int = 20) -> tuple[bool, list[str]]:
    """Cross-validate counting paths; returns overall status and report lines."""
    if max_points > MAX_ORACLE_POINTS:
        raise CapacityError(f"suite capacity ends at {MAX_ORACLE_POINTS} points")
    lines: list[str] = []
    ok = True

    def report(name: str, good: bool, detail: str = ""):
        nonlocal ok
        ok = ok and good
        lines.append(f"{'ok  ' if good else 'FAIL'} {name}{' ' + detail if detail else ''}")

    # transfer identities against enumeration
    for section in _IDENTITY_SECTIONS:
        for layers in (1, 2, 3, 4):
            if prod(section) * layers > max_points:
                continue
            for check in verify_transfer_identities(section, layers):
                report(
                    f"identity {section}x{layers} {check.name}",
                    check.ok,
                    f"transfer={check.transfer_value} oracle={check.oracle_value}",
                )

    # 1-D closed forms
    for m in range(1, 16):
        if m > max_points:
            continue
        f, per, protr = one_dim_counts(m)
        got = (
            count_covers((m,), "tiling"),
            count_covers((m,), "periodic"),
            count_covers((m,), "protruding"),
        )
        report(f"one-dim m={m}", got == (f, per, protr), f"got={got} want={(f, per, protr)}")

    # the two oracle paths agree with each other
    for dims in [(4,), (3, 2), (2, 2, 2)]:
        for boundary in ("tiling", "periodic", "protruding"):
            census = enumerate_covers(dims, boundary).total
            fast = count_covers(dims, boundary)
            report(f"paths {dims} {boundary}", census == fast, f"{census} vs {fast}")

    # census feasibility: tilings exist for every dimer count up to floor(n/2)
    for dims in [(5,), (2, 3), (2, 2, 2)]:
        census = enumerate_covers(dims, "tiling")
        n = prod(dims)
        feasible = all(census.by_dimers.get(s, 0) >= 1 for s in range(n // 2 + 1))
        report(f"tiling census feasibility {dims}", feasible, str(dict(sorted(census.by_dimers.items()))))

    # growth chains: tilings <= periodic <= protruding <= padded tilings,
    # and dimer-only counts never exceed monomer-dimer counts
    for dims in _CHAIN_SHAPES:
        if prod(dims) > max_points:
            continue
        w0 = count_covers(dims, "tiling")
        wper = count_covers(dims, "periodic")
        w = count_covers(dims, "protruding")
        good = w0 <= wper <= w
        detail = f"tiling={w0} periodic={wper} protruding={w}"
        padded = tuple(m + 2 for m in dims)
        if prod(padded) <= max_points:
            wpad = count_covers(padded, "tiling")
            good = good and w <= wpad
            detail += f" padded={wpad}"
        tilde = count_covers(dims, "protruding", dimer_only=True)
        good = good and tilde <= w
        report(f"chain {dims}", good, detail)

    # relabeling invariance of periodic counts
    for a, b in [((2, 3), (3, 2)), ((2, 2, 3), (3, 2, 2)), ((2, 4), (4, 2))]:
        ca = count_covers(a, "periodic")
        cb = count_covers(b, "periodic")
        report(f"transpose {a}~{b}", ca == cb, f"{ca} vs {cb}")

    return ok, lines
