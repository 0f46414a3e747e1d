"""Checking identities at single points and over grids.

A grid is swept one block at a time, a block being every point of one
identity that shares ``(p, q)``. Inside a block the initial values
``(w0, w1)`` and ``(z0, z1)`` and the indices form the axes of numpy arrays.
Blocks are first compared modulo enough primes to certify exact equality
(see :mod:`.engine`); blocks that involve fractions, and blocks where some
point disagrees, are recomputed exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields, replace
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from ..algebra import Quaternion, as_rational
from ..errors import IndexConstraintError, MismatchedPQ
from ..sequences import HoradamParams
from .engine import BoundEval, ExactEval, Family, ModEval, NeedsExact, param_rows, primes_for_bound
from .registry import Identity, disputed_pairs, get

__all__ = [
    "INDEX_VARS",
    "GridSpec",
    "IdentityPoint",
    "IdentityReport",
    "IdStats",
    "GridResult",
    "check",
    "check_grid",
    "adjudicate",
]

INDEX_VARS = ("n", "m", "r", "s", "k")


# ---------------------------------------------------------------------------
# points and reports


def _params_json(prm: HoradamParams | None):
    return None if prm is None else prm.to_json()


def _params_from_json(obj) -> HoradamParams | None:
    if obj is None:
        return None
    return HoradamParams(*(int(obj[k]) for k in ("w0", "w1", "p", "q")))


@dataclass(frozen=True)
class IdentityPoint:
    """Parameters and indices at which one identity is evaluated.

    ``params`` is the W family. Identities built only from ``U``/``V`` read
    just ``p`` and ``q`` from it. ``second`` is the Z family of the
    two-family identities.
    """

    params: HoradamParams
    second: HoradamParams | None = None
    n: int | None = None
    m: int | None = None
    r: int | None = None
    s: int | None = None
    k: int | None = None

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def q(self) -> int:
        return self.params.q

    def indices(self) -> dict[str, int]:
        return {v: getattr(self, v) for v in INDEX_VARS if getattr(self, v) is not None}

    def sort_key(self) -> tuple:
        prm, sec = self.params, self.second
        key = [prm.p, prm.q, prm.w0, prm.w1]
        key += [0, 0, 0] if sec is None else [1, sec.w0, sec.w1]
        for v in INDEX_VARS:
            x = getattr(self, v)
            key += [0, 0] if x is None else [1, x]
        return tuple(key)

    def to_json(self) -> dict:
        out = {"params": _params_json(self.params)}
        if self.second is not None:
            out["second"] = _params_json(self.second)
        out.update(self.indices())
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "IdentityPoint":
        idx = {v: int(obj[v]) for v in INDEX_VARS if obj.get(v) is not None}
        return cls(_params_from_json(obj["params"]), _params_from_json(obj.get("second")), **idx)


@dataclass(frozen=True)
class IdentityReport:
    id: str
    point: IdentityPoint
    lhs: Quaternion
    rhs: Quaternion
    holds: bool

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "point": self.point.to_json(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "holds": self.holds,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "IdentityReport":
        return cls(
            obj["id"],
            IdentityPoint.from_json(obj["point"]),
            Quaternion.from_json(obj["lhs"]),
            Quaternion.from_json(obj["rhs"]),
            bool(obj["holds"]),
        )


# ---------------------------------------------------------------------------
# admissibility


def _violations(ident: Identity, ix: Mapping[str, np.ndarray], q: int) -> tuple[np.ndarray, list[tuple[str, np.ndarray]]]:
    """Boolean mask of admissible index combinations plus per-reason masks."""
    shape = np.broadcast(*ix.values()).shape if ix else ()
    ok = np.ones(shape, dtype=bool)
    reasons = []
    for var, lo in ident.minimum.items():
        bad = ix[var] < lo
        reasons.append((f"{var} < {lo}", bad & ok))
        ok &= ~bad
    if ident.parity is not None:
        var, par = ident.parity
        bad = ix[var] % 2 != par
        reasons.append((f"{var} must be {'even' if par == 0 else 'odd'}", bad & ok))
        ok &= ~bad
    if q == 0 and ident.needs_q is not None:
        bad = np.broadcast_to(np.asarray(ident.needs_q(ix), dtype=bool), shape)
        reasons.append(("needs q != 0", bad & ok))
        ok &= ~bad
    return ok, reasons


# ---------------------------------------------------------------------------
# single point


def _to_quaternion(value, pos=None, shape=None) -> Quaternion:
    """Quaternion at ``pos`` of a block value (or of a single-point value)."""
    comps = []
    for c in value.as_quaternion().c:
        if isinstance(c, np.ndarray):
            c = np.broadcast_to(c, shape)[pos] if pos is not None else c.reshape(-1)[0]
        comps.append(as_rational(c))
    return Quaternion(*comps)


def _single_families(ident: Identity, point: IdentityPoint) -> dict[str, Family]:
    p, q = point.p, point.q
    fams = {
        "U": Family([HoradamParams.pq_fibonacci(p, q)], 0),
        "V": Family([HoradamParams.pq_lucas(p, q)], 0),
        "W": Family([point.params], 0),
    }
    if point.second is not None:
        fams["Z"] = Family([point.second], 0)
    return fams


def check(identity_id: str, point: IdentityPoint) -> IdentityReport:
    """Evaluate both sides of one identity exactly at one point."""
    ident = get(identity_id)
    if ident.fixed_pq is not None and (point.p, point.q) != ident.fixed_pq:
        raise IndexConstraintError(f"{ident.id} is stated for (p, q) = {ident.fixed_pq} only")
    if ident.uses_z:
        if point.second is None:
            raise IndexConstraintError(f"{ident.id} needs a second parameter set")
        if not point.second.same_pq(point.params):
            raise MismatchedPQ(f"{ident.id}: both families must share (p, q)")
    given = point.indices()
    missing = [v for v in ident.vars if v not in given]
    if missing:
        raise IndexConstraintError(f"{ident.id} needs indices {', '.join(missing)}")
    ix = {v: np.asarray(given[v]) for v in ident.vars}
    ok, reasons = _violations(ident, ix, point.q)
    if not ok.all():
        why = next(reason for reason, bad in reasons if bad.any())
        raise IndexConstraintError(f"{ident.id}: {why} at {given}")
    ev = ExactEval(point.p, point.q, _single_families(ident, point))
    lhs, rhs = ident.fn(ev, **{v: given[v] for v in ident.vars})
    lq, rq = _to_quaternion(lhs), _to_quaternion(rhs)
    return IdentityReport(ident.id, point, lq, rq, lq == rq)


# ---------------------------------------------------------------------------
# grids


def _range_tuple(values) -> tuple[int, ...]:
    return tuple(sorted({int(v) for v in values}))


@dataclass(frozen=True)
class GridSpec:
    """Finite value sets for every parameter and index variable.

    ``hamilton_remark`` is only stated for ``p = q = 1`` and is evaluated
    there whatever ``p`` and ``q`` hold.
    """

    p: tuple[int, ...] = ()
    q: tuple[int, ...] = ()
    w0: tuple[int, ...] = ()
    w1: tuple[int, ...] = ()
    z0: tuple[int, ...] = ()
    z1: tuple[int, ...] = ()
    n: tuple[int, ...] = ()
    m: tuple[int, ...] = ()
    r: tuple[int, ...] = ()
    s: tuple[int, ...] = ()
    k: tuple[int, ...] = ()

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _range_tuple(getattr(self, f.name)))

    @classmethod
    def default(cls) -> "GridSpec":
        small = range(-2, 3)
        idx = range(1, 9)
        return cls(
            p=range(-3, 4),
            q=[x for x in range(-3, 4) if x != 0],
            w0=small,
            w1=small,
            z0=small,
            z1=small,
            n=idx,
            m=idx,
            r=idx,
            s=idx,
            k=range(0, 6),
        )

    def with_values(self, **values) -> "GridSpec":
        return replace(self, **values)

    def to_json(self) -> dict[str, list[int]]:
        return {f.name: list(getattr(self, f.name)) for f in fields(self)}


@dataclass
class IdStats:
    checked: int = 0
    held: int = 0
    failed: int = 0
    skipped: int = 0
    skip_reasons: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        out = {"checked": self.checked, "held": self.held, "failed": self.failed, "skipped": self.skipped}
        if self.skip_reasons:
            out["skip_reasons"] = dict(sorted(self.skip_reasons.items()))
        return out


@dataclass
class GridResult:
    failures: list[IdentityReport]
    stats: dict[str, IdStats]

    def ids(self, *, disputed: bool | None = None) -> list[str]:
        out = sorted(self.stats)
        if disputed is None:
            return out
        return [i for i in out if get(i).disputed == disputed]

    def totals(self, *, include_disputed: bool = False) -> dict[str, int]:
        keys = self.ids() if include_disputed else self.ids(disputed=False)
        tot = {"checked": 0, "held": 0, "failed": 0, "skipped": 0}
        for i in keys:
            st = self.stats[i]
            for name in tot:
                tot[name] += getattr(st, name)
        return tot

    @property
    def ok(self) -> bool:
        """No derivation-backed identity failed anywhere."""
        return self.totals()["failed"] == 0

    def failures_for(self, identity_id: str) -> list[IdentityReport]:
        return [f for f in self.failures if f.id == identity_id]

    def summary(self) -> dict:
        """Totals over derivation-backed identities, per-id counts and the typo verdicts."""
        out = dict(self.totals())
        out["per_id"] = {i: self.stats[i].to_json() for i in self.ids()}
        verdicts = adjudicate(self)
        if verdicts:
            out["adjudication"] = verdicts
        return out


class _Block:
    """One identity at one ``(p, q)``: row families, index arrays and metadata."""

    def __init__(self, ident: Identity, p: int, q: int, grid: GridSpec, idx: dict, shape, row_axes):
        self.ident, self.p, self.q = ident, p, q
        self.idx = idx
        self.shape = shape
        self.row_axes = row_axes  # family name -> (axis, params list)
        self.grid = grid

    def families(self) -> dict[str, Family]:
        p, q = self.p, self.q
        fams = {
            "U": Family([HoradamParams.pq_fibonacci(p, q)], 0),
            "V": Family([HoradamParams.pq_lucas(p, q)], 0),
        }
        ndim = len(self.shape)
        for name, (axis, plist) in self.row_axes.items():
            rows_shape = [1] * ndim
            rows_shape[axis] = len(plist)
            fams[name] = Family(plist, np.arange(len(plist)).reshape(rows_shape))
        return fams

    def evaluate(self, ev):
        return self.ident.fn(ev, **self.idx)

    def point_at(self, pos) -> IdentityPoint:
        params = {}
        for name, (axis, plist) in self.row_axes.items():
            params[name] = plist[pos[axis]]
        w = params.get("W", HoradamParams.pq_fibonacci(self.p, self.q))
        indices = {v: int(np.broadcast_to(a, self.shape)[pos]) for v, a in self.idx.items()}
        return IdentityPoint(w, params.get("Z"), **indices)


def _equal_modular(block: _Block, fams: dict[str, Family]) -> np.ndarray:
    """Exact equality mask via residues; raises NeedsExact when not applicable."""
    lb, rb = block.evaluate(BoundEval(block.p, block.q, fams))
    primes = primes_for_bound(lb.m + rb.m)
    if primes is None:
        raise NeedsExact("bound exceeds the prime table")
    ok = np.ones(block.shape, dtype=bool)
    for prime in primes:
        lhs, rhs = block.evaluate(ModEval(block.p, block.q, fams, prime))
        ok &= lhs.equal(rhs, block.shape)
    return ok


def _run_block(block: _Block, stats: IdStats, failures: list[IdentityReport]) -> None:
    fams = block.families()
    exact = None
    try:
        ok = _equal_modular(block, fams)
    except NeedsExact:
        exact = block.evaluate(ExactEval(block.p, block.q, fams))
        ok = exact[0].equal(exact[1], block.shape)
    total = int(ok.size)
    bad = np.argwhere(~ok)
    stats.checked += total
    stats.failed += len(bad)
    stats.held += total - len(bad)
    if len(bad) == 0:
        return
    if exact is None:
        exact = block.evaluate(ExactEval(block.p, block.q, fams))
    lhs, rhs = exact
    for pos in map(tuple, bad):
        lq = _to_quaternion(lhs, pos, block.shape)
        rq = _to_quaternion(rhs, pos, block.shape)
        failures.append(IdentityReport(block.ident.id, block.point_at(pos), lq, rq, False))


def _blocks(ident: Identity, grid: GridSpec, stats: IdStats):
    if ident.fixed_pq is not None:
        pq_pairs = [ident.fixed_pq]
    else:
        pq_pairs = list(product(grid.p, grid.q))
    row_specs = []
    if ident.uses_z:
        row_specs.append(("Z", grid.z0, grid.z1))
    if ident.uses_w:
        row_specs.append(("W", grid.w0, grid.w1))
    nrows = 1
    for _, a, b in row_specs:
        nrows *= len(a) * len(b)
    values = [np.asarray(getattr(grid, v), dtype=np.int64) for v in ident.vars]
    if nrows == 0 or any(len(v) == 0 for v in values):
        return
    mesh = np.meshgrid(*values, indexing="ij") if values else []
    flat = {v: a.ravel() for v, a in zip(ident.vars, mesh)}
    nrow_axes = len(row_specs)
    for p, q in pq_pairs:
        if ident.vars:
            ok, reasons = _violations(ident, flat, q)
        else:
            ok, reasons = np.ones((), dtype=bool), []
        for reason, bad in reasons:
            count = int(np.count_nonzero(bad)) * nrows
            if count:
                stats.skipped += count
                stats.skip_reasons[reason] += count
        if not ok.any():
            continue
        row_axes = {name: (axis, param_rows(p, q, a, b)) for axis, (name, a, b) in enumerate(row_specs)}
        idx = {}
        if ok.all():
            ndim = nrow_axes + len(values)
            for i, (v, vals) in enumerate(zip(ident.vars, values)):
                sh = [1] * ndim
                sh[nrow_axes + i] = len(vals)
                idx[v] = vals.reshape(sh)
            shape = tuple(len(row_axes[name][1]) for name, _, _ in row_specs) + tuple(len(v) for v in values)
        else:
            npts = int(np.count_nonzero(ok))
            sh = [1] * nrow_axes + [npts]
            for v in ident.vars:
                idx[v] = flat[v][ok].reshape(sh)
            shape = tuple(len(row_axes[name][1]) for name, _, _ in row_specs) + (npts,)
        yield _Block(ident, p, q, grid, idx, shape, row_axes)


def check_grid(ids: Iterable[str], grid: GridSpec) -> GridResult:
    """Check every identity in ``ids`` at every admissible grid point.

    Inadmissible points are counted as skipped with a reason. Failures come
    back sorted by identity id, then point.
    """
    idents = [get(i) for i in sorted(set(ids))]
    failures: list[IdentityReport] = []
    stats: dict[str, IdStats] = {}
    for ident in idents:
        st = stats[ident.id] = IdStats()
        found: list[IdentityReport] = []
        for block in _blocks(ident, grid, st):
            _run_block(block, st, found)
        found.sort(key=lambda f: f.point.sort_key())
        failures.extend(found)
    return GridResult(failures, stats)


def adjudicate(result: GridResult) -> dict:
    """Verdicts for the disputed identity pairs present in ``result``.

    For each pair, every variant records its counts, whether it held at every
    checked point, and its first counterexample if not. ``winner`` names the
    variant(s) that held everywhere.
    """
    verdicts = {}
    for group, variants in sorted(disputed_pairs().items()):
        present = {name: i for name, i in variants.items() if i in result.stats}
        if not present:
            continue
        entry: dict = {}
        holding = []
        for name, iid in sorted(present.items()):
            st = result.stats[iid]
            fails = result.failures_for(iid)
            holds = st.checked > 0 and st.failed == 0
            if holds:
                holding.append(name)
            entry[name] = {
                "id": iid,
                "checked": st.checked,
                "held": st.held,
                "failed": st.failed,
                "holds": holds,
                "counterexample": fails[0].to_json() if fails else None,
            }
        if len(holding) == 1:
            entry["winner"] = holding[0]
        elif len(holding) == 2:
            entry["winner"] = "both"
        else:
            entry["winner"] = "neither"
        entry["complete"] = len(present) == len(variants)
        verdicts[group] = entry
    return verdicts
