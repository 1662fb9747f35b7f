"""Permutation groups with a deterministic base and strong generating set.

Internally elements are 0-based image tables stored as ``bytes`` padded to
256 entries, so composition is one ``bytes.translate`` call.  Base points
are always the smallest labels not fixed so far, which makes orders,
transversals and element streams reproducible run to run.
"""

from __future__ import annotations

from .perm import Permutation, _IDENT256

DEFAULT_ELEMENTS_CAP = 10**6


class CapExceededError(RuntimeError):
    """Refusal to enumerate a group larger than the requested cap."""


def _compose(a, b):
    """Apply a then b (tables padded to 256)."""
    return a.translate(b)


def _pad(t):
    return t + _IDENT256[len(t):]


def _invert(t, degree):
    out = bytearray(degree)
    for i in range(degree):
        out[t[i]] = i
    return _pad(bytes(out))


class _Level:
    __slots__ = ("base", "gens", "orbit")

    def __init__(self, base):
        self.base = base
        self.gens = []    # strong generators fixing all earlier base points
        self.orbit = {}   # point -> (u, u_inv), u maps base to point


class PermGroup:
    """Group generated by permutations of a common degree.

    The BSGS is built lazily on the first query that needs it; afterwards
    the group is read-only.
    """

    def __init__(self, generators, degree=None, base=None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise ValueError("degree required for an empty generating set")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise ValueError(
                    f"mixed degrees: expected {degree}, found {g.degree}"
                )
        self.degree = degree
        self.generators = tuple(generators)
        self._initial_base = tuple(b - 1 for b in base) if base else ()
        self._levels = None
        self._order = None

    # -- BSGS construction -------------------------------------------------

    def _build(self):
        if self._levels is not None:
            return
        degree = self.degree
        ident = _IDENT256
        iprefix = ident[:degree]
        levels = []

        def is_ident(t):
            return t[:degree] == iprefix

        def smallest_moved(t):
            for i in range(degree):
                if t[i] != i:
                    return i
            raise AssertionError("identity cannot extend the base")

        def update_orbit(level):
            lv = levels[level]
            lv.orbit.clear()
            lv.orbit[lv.base] = (ident, ident)
            queue = [lv.base]
            qi = 0
            while qi < len(queue):
                pt = queue[qi]
                qi += 1
                u, _ = lv.orbit[pt]
                for s in lv.gens:
                    np = s[pt]
                    if np not in lv.orbit:
                        v = _pad(_compose(u, s))
                        lv.orbit[np] = (v, _invert(v, degree))
                        queue.append(np)

        def strip(t, start):
            for j in range(start, len(levels)):
                lv = levels[j]
                entry = lv.orbit.get(t[lv.base])
                if entry is None:
                    return t, j
                t = _pad(_compose(t, entry[1]))
            return t, len(levels)

        gens0 = []
        for g in self.generators:
            t = _pad(g._table)
            if not is_ident(t) and t not in gens0:
                gens0.append(t)
        for b in self._initial_base:
            levels.append(_Level(b))
        for t in gens0:
            if all(t[lv.base] == lv.base for lv in levels):
                levels.append(_Level(smallest_moved(t)))
        # a generator joins every level whose base prefix it fixes
        for t in gens0:
            for lv in levels:
                lv.gens.append(t)
                if t[lv.base] != lv.base:
                    break
        for i in range(len(levels)):
            update_orbit(i)

        # bottom-up verification: at each level every Schreier generator must
        # strip through the (already complete) deeper levels; residues become
        # strong generators exactly at the levels they fix into
        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            registered = None
            for pt in sorted(lv.orbit):
                u, _ = lv.orbit[pt]
                for s in lv.gens:
                    _, w_inv = lv.orbit[s[pt]]
                    sg = _pad(_compose(_compose(u, s), w_inv))
                    if is_ident(sg):
                        continue
                    residue, j = strip(sg, i + 1)
                    if is_ident(residue):
                        continue
                    if j == len(levels):
                        levels.append(_Level(smallest_moved(residue)))
                    for l in range(i + 1, j + 1):
                        levels[l].gens.append(residue)
                        update_orbit(l)
                    registered = j
                    break
                if registered is not None:
                    break
            i = registered if registered is not None else i - 1

        order = 1
        for lv in levels:
            order *= max(1, len(lv.orbit))
        self._levels = levels
        self._order = order

    # -- queries ------------------------------------------------------------

    def order(self):
        self._build()
        return self._order

    def base(self):
        self._build()
        return tuple(lv.base + 1 for lv in self._levels)

    def contains(self, p):
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} != {self.degree}")
        self._build()
        t = _pad(p._table)
        for lv in self._levels:
            entry = lv.orbit.get(t[lv.base])
            if entry is None:
                return False
            t = _pad(_compose(t, entry[1]))
        return t[: self.degree] == _IDENT256[: self.degree]

    def __contains__(self, p):
        return self.contains(p)

    def orbit(self, point):
        """Orbit of a 1-based point under the generators, as a sorted tuple."""
        if not 1 <= point <= self.degree:
            raise ValueError(f"point {point} outside 1..{self.degree}")
        seen = {point - 1}
        queue = [point - 1]
        tables = [g._table for g in self.generators]
        while queue:
            x = queue.pop()
            for t in tables:
                y = t[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(p + 1 for p in seen))

    def is_transitive(self):
        if self.degree == 0:
            return True
        return len(self.orbit(1)) == self.degree

    def point_stabilizer_order(self, point):
        return self.order() // len(self.orbit(point))

    def elements(self, cap=DEFAULT_ELEMENTS_CAP):
        """Every element exactly once; refuses groups larger than ``cap``."""
        n = self.order()
        if n > cap:
            raise CapExceededError(
                f"group order {n} exceeds enumeration cap {cap}"
            )
        degree = self.degree
        levels = self._levels

        def rec(i, acc):
            if i < 0:
                yield Permutation._from_table(acc, degree)
                return
            for pt in sorted(levels[i].orbit):
                u, _ = levels[i].orbit[pt]
                yield from rec(i - 1, _compose(acc, u))

        yield from rec(len(levels) - 1, _IDENT256)

    def all_generators_even(self):
        return all(g.is_even() for g in self.generators)


def group_from_generators(generators):
    """Group handle from a non-empty generating set of uniform degree."""
    generators = list(generators)
    if not generators:
        raise ValueError("generator list must be non-empty")
    return PermGroup(generators)
