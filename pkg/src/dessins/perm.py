"""Permutations of the edge-label set {1..e}.

Composition is left to right throughout: ``p * q`` (and ``compose(p, q)``)
applies ``p`` first, then ``q``.  The face permutation of a rotation pair
is therefore ``compose(tau, sigma)``.
"""

from __future__ import annotations

import itertools

_IDENT256 = bytes(range(256))

MAX_DEGREE = 255  # images are cached as bytes so labels must fit in one byte


class CycleParseError(ValueError):
    """Malformed cycle notation; ``position`` is the 0-based offset in the text."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CycleType:
    """Multiset of disjoint-cycle lengths, fixed points included, sorted ascending."""

    __slots__ = ("lengths", "total")

    def __init__(self, lengths):
        self.lengths = tuple(sorted(lengths))
        self.total = sum(self.lengths)

    def __eq__(self, other):
        if isinstance(other, CycleType):
            return self.lengths == other.lengths
        return self.lengths == tuple(other)

    def __hash__(self):
        return hash(self.lengths)

    def __iter__(self):
        return iter(self.lengths)

    def __len__(self):
        return len(self.lengths)

    def __repr__(self):
        return f"CycleType({list(self.lengths)})"


class Permutation:
    """A bijection of {1..degree}, immutable.

    ``images[i]`` is the image of label ``i + 1``; all labels are 1-based at
    the interface.  ``_table`` caches the 0-based image bytes padded to 256
    entries so that composition is a single ``bytes.translate``.
    """

    __slots__ = ("degree", "images", "_table")

    def __init__(self, images):
        images = tuple(images)
        degree = len(images)
        if degree > MAX_DEGREE:
            raise ValueError(f"degree {degree} exceeds supported maximum {MAX_DEGREE}")
        seen = [False] * degree
        for v in images:
            if not isinstance(v, int) or not 1 <= v <= degree:
                raise ValueError(f"image {v!r} outside 1..{degree}")
            if seen[v - 1]:
                raise ValueError(f"image {v} repeated; not a bijection")
            seen[v - 1] = True
        self.degree = degree
        self.images = images
        self._table = bytes(v - 1 for v in images) + _IDENT256[degree:]

    @classmethod
    def _from_table(cls, table, degree):
        """Trusted constructor from 0-based bytes (no validation)."""
        p = object.__new__(cls)
        p.degree = degree
        p.images = tuple(b + 1 for b in table[:degree])
        p._table = bytes(table[:degree]) + _IDENT256[degree:]
        return p

    def __call__(self, label):
        if not 1 <= label <= self.degree:
            raise ValueError(f"label {label} outside 1..{self.degree}")
        return self.images[label - 1]

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def is_identity(self):
        return all(v == i + 1 for i, v in enumerate(self.images))

    def inverse(self):
        table = bytearray(self.degree)
        for i in range(self.degree):
            table[self._table[i]] = i
        return Permutation._from_table(bytes(table), self.degree)

    def conjugate(self, g):
        return conjugate(self, g)

    def cycles(self, include_fixed=False):
        """Disjoint cycles, each starting at its least label, sorted by least label."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self.images[start - 1]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self.images[nxt - 1]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        return cycle_type(self)

    def is_even(self):
        return is_even(self)


def identity(degree):
    return Permutation(range(1, degree + 1))


def compose(p, q):
    """Apply ``p`` first, then ``q`` (the juxtaposition "pq")."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation._from_table(p._table[: p.degree].translate(q._table), p.degree)


def conjugate(p, g):
    """g^-1 p g; same cycle type as ``p``."""
    if p.degree != g.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {g.degree}")
    return compose(compose(g.inverse(), p), g)


def cycle_type(p):
    seen = [False] * p.degree
    lengths = []
    for i in range(p.degree):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p._table[j]
            n += 1
        lengths.append(n)
    return CycleType(lengths)


def is_even(p):
    return sum(n - 1 for n in cycle_type(p)) % 2 == 0


def parse_cycles(text, degree):
    """Parse disjoint-cycle notation like ``(1,2,3)(4,5)``; ``()`` is the identity.

    Labels omitted from the text are fixed points.  Whitespace is ignored.
    """
    images = list(range(1, degree + 1))
    used = [False] * degree
    pos = 0
    n = len(text)

    def skip_ws(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    if pos == n:
        raise CycleParseError("empty permutation text", pos)
    saw_cycle = False
    while pos < n:
        pos = skip_ws(pos)
        if pos == n:
            break
        if text[pos] != "(":
            raise CycleParseError(f"expected '(' but found {text[pos]!r}", pos)
        pos += 1
        cyc = []
        pos = skip_ws(pos)
        if pos < n and text[pos] == ")" and not cyc:
            if saw_cycle or cyc:
                raise CycleParseError("empty cycle", pos)
            # "()" must stand alone as the identity
            pos = skip_ws(pos + 1)
            if pos != n:
                raise CycleParseError("text after identity '()'", pos)
            return Permutation(images)
        while True:
            pos = skip_ws(pos)
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            if pos == start:
                raise CycleParseError("expected a label", pos)
            label = int(text[start:pos])
            if not 1 <= label <= degree:
                raise CycleParseError(f"label {label} outside 1..{degree}", start)
            if used[label - 1]:
                raise CycleParseError(f"label {label} repeated", start)
            used[label - 1] = True
            cyc.append(label)
            pos = skip_ws(pos)
            if pos == n:
                raise CycleParseError("unterminated cycle", pos)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise CycleParseError(f"expected ',' or ')' but found {text[pos]!r}", pos)
        saw_cycle = True
        for i, label in enumerate(cyc):
            images[label - 1] = cyc[(i + 1) % len(cyc)]
    return Permutation(images)


def format_cycles(p):
    """Canonical text: cycles by least element, rotated to start there; identity is "()"."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(v) for v in cyc) + ")" for cyc in cycles)


def random_permutation(degree, rng):
    """Uniform random permutation from an externally seeded ``random.Random``."""
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(images)


def all_permutations(degree):
    """Every permutation of the given degree, in lexicographic image order."""
    for images in itertools.permutations(range(1, degree + 1)):
        yield Permutation(images)
