"""Finite magmas as multiplication tables.

A table of order n holds entries[a][b] = index of the product a*b, with the
row indexing the left factor.  Everything downstream (commuting graphs,
constructions, searches) works on these tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAGMA = "magma"
SEMIGROUP = "semigroup"
MONOID = "monoid"
GROUP = "group"

_CLASS_RANK = {MAGMA: 0, SEMIGROUP: 1, MONOID: 2, GROUP: 3}


class TableError(Exception):
    pass


class MalformedTable(TableError):
    pass


class NotASemigroup(TableError):
    pass


class NotAGroup(TableError):
    pass


class NotASubgroup(TableError):
    pass


class NotNormal(TableError):
    pass


class NotAbelian(TableError):
    pass


class CayleyTable:
    """Immutable n-by-n multiplication table over element indices 0..n-1."""

    def __init__(self, entries, labels=None):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedTable(f"expected a nonempty square table, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise MalformedTable("table entries must be element indices in [0, n)")
        arr.setflags(write=False)
        self.entries = arr
        self.order = n
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise MalformedTable(f"{len(self.labels)} labels for {n} elements")
        self._class = None

    def mul(self, a, b):
        return int(self.entries[a, b])

    def label(self, a):
        return self.labels[a] if self.labels is not None else str(a)

    def row(self, a):
        return tuple(int(v) for v in self.entries[a])

    def __eq__(self, other):
        return isinstance(other, CayleyTable) and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"CayleyTable(order={self.order})"


def check_associativity(table):
    """Return None if associative, else the lexicographically first (a, b, c)
    with (ab)c != a(bc)."""
    m = table.entries
    for a in range(table.order):
        # left[b, c] = (ab)c, right[b, c] = a(bc); one slice keeps memory at n^2
        left = m[m[a], :]
        right = m[a, m]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)
            b, c = (int(v) for v in bad[0])
            return (a, b, c)
    return None


def is_associative(table):
    return check_associativity(table) is None


def identity_of(table):
    """Index of the two-sided identity, or None."""
    m = table.entries
    ids = np.arange(table.order)
    for e in range(table.order):
        if np.array_equal(m[e], ids) and np.array_equal(m[:, e], ids):
            return e
    return None


def classify_magma(table):
    """Strongest of magma/semigroup/monoid/group whose axioms the table satisfies."""
    if table._class is not None:
        return table._class
    cls = MAGMA
    if is_associative(table):
        cls = SEMIGROUP
        e = identity_of(table)
        if e is not None:
            cls = MONOID
            # associative + identity + every row and column a permutation => group
            m = table.entries
            ids = np.arange(table.order)
            rows_ok = np.array_equal(np.sort(m, axis=1), np.tile(ids, (table.order, 1)))
            cols_ok = np.array_equal(np.sort(m, axis=0), np.tile(ids[:, None], (1, table.order)))
            if rows_ok and cols_ok:
                cls = GROUP
    table._class = cls
    return cls


def is_at_least(table, cls):
    return _CLASS_RANK[classify_magma(table)] >= _CLASS_RANK[cls]


def require_group(table):
    if classify_magma(table) != GROUP:
        raise NotAGroup("operation requires a group table")


def centre(table):
    """Elements commuting with every element."""
    m = table.entries
    mask = (m == m.T).all(axis=1)
    return frozenset(int(v) for v in np.nonzero(mask)[0])


def centraliser(table, elements):
    """Elements commuting with every member of the given set."""
    m = table.entries
    idx = sorted(elements)
    for a in idx:
        if not 0 <= a < table.order:
            raise MalformedTable(f"element {a} out of range")
    if not idx:
        return frozenset(range(table.order))
    mask = np.ones(table.order, dtype=bool)
    for a in idx:
        mask &= m[:, a] == m[a, :]
    return frozenset(int(v) for v in np.nonzero(mask)[0])


def inverses(table):
    """inverses[a] = the two-sided inverse of a; requires a group."""
    require_group(table)
    e = identity_of(table)
    m = table.entries
    inv = [0] * table.order
    for a in range(table.order):
        inv[a] = int(np.nonzero(m[a] == e)[0][0])
    return inv


def normaliser(table, elements):
    """{x : x^-1 A x = A}; requires a group."""
    require_group(table)
    inv = inverses(table)
    aset = frozenset(elements)
    m = table.entries
    out = []
    for x in range(table.order):
        xi = inv[x]
        if frozenset(int(m[int(m[xi, a]), x]) for a in aset) == aset:
            out.append(x)
    return frozenset(out)


def element_orders(table):
    """orders[a] = multiplicative order of a; requires a group."""
    require_group(table)
    e = identity_of(table)
    m = table.entries
    orders = []
    for a in range(table.order):
        x, k = a, 1
        while x != e:
            x = int(m[x, a])
            k += 1
        orders.append(k)
    return orders


def opposite(table):
    """Same elements with reversed multiplication a*b := ba."""
    return CayleyTable(table.entries.T, labels=table.labels)


def unitize(table):
    """Adjoin a fresh two-sided identity as the last element; requires a semigroup."""
    if not is_at_least(table, SEMIGROUP):
        raise NotASemigroup("unitize requires an associative table")
    n = table.order
    out = np.empty((n + 1, n + 1), dtype=np.int64)
    out[:n, :n] = table.entries
    out[n, :] = np.arange(n + 1)
    out[:, n] = np.arange(n + 1)
    labels = None
    if table.labels is not None:
        labels = table.labels + ("1",)
    return CayleyTable(out, labels=labels)


def is_subgroup(table, elements):
    require_group(table)
    sub = frozenset(elements)
    if not sub:
        return False
    e = identity_of(table)
    if e not in sub:
        return False
    m = table.entries
    inv = inverses(table)
    return all(int(m[a, b]) in sub for a in sub for b in sub) and all(inv[a] in sub for a in sub)


def is_normal(table, elements):
    if not is_subgroup(table, elements):
        raise NotASubgroup("not a subgroup")
    sub = frozenset(elements)
    inv = inverses(table)
    m = table.entries
    for x in range(table.order):
        xi = inv[x]
        if any(int(m[int(m[xi, a]), x]) not in sub for a in sub):
            return False
    return True


def quotient_by_normal_subgroup(table, elements):
    """Group table on the cosets of a verified normal subgroup."""
    require_group(table)
    if not is_normal(table, elements):
        raise NotNormal("subgroup is not normal")
    sub = sorted(elements)
    m = table.entries
    n = table.order
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        reps.append(x)
        for a in sub:
            coset_of[int(m[x, a])] = idx
    k = len(reps)
    out = [[coset_of[int(m[reps[i], reps[j]])] for j in range(k)] for i in range(k)]
    labels = tuple(f"[{table.label(r)}]" for r in reps)
    return CayleyTable(out, labels=labels)


@dataclass(frozen=True)
class EquivalenceCertificate:
    """A verified bijection between two tables.

    kind is "isomorphism" (map(ab) = map(a)map(b)) or "antiisomorphism"
    (map(ab) = map(b)map(a)); mapping[a] is the image of a.
    """

    kind: str
    mapping: tuple

    def inverted(self):
        inv = [0] * len(self.mapping)
        for a, b in enumerate(self.mapping):
            inv[b] = a
        return EquivalenceCertificate(self.kind, tuple(inv))


def certificate_holds(cert, t1, t2):
    n = t1.order
    if t2.order != n or sorted(cert.mapping) != list(range(n)):
        return False
    f = cert.mapping
    m1, m2 = t1.entries, t2.entries
    if cert.kind == "isomorphism":
        return all(f[m1[a, b]] == m2[f[a], f[b]] for a in range(n) for b in range(n))
    return all(f[m1[a, b]] == m2[f[b], f[a]] for a in range(n) for b in range(n))


def _seed_keys(table):
    n = table.order
    m = table.entries
    keys = []
    for x in range(n):
        row = tuple(sorted(np.bincount(m[x], minlength=n).tolist()))
        col = tuple(sorted(np.bincount(m[:, x], minlength=n).tolist()))
        keys.append((int(m[x, x]) == x, row, col))
    return keys


def _joint_partition(t1, t2):
    """Colour the elements of both tables with shared canonical colour ids,
    refining by the multiset of (colour of y, colour of xy, colour of yx);
    matching colours are then comparable across the two tables."""

    def renumber(k1, k2):
        order = {k: i for i, k in enumerate(sorted(set(k1) | set(k2)))}
        return [order[k] for k in k1], [order[k] for k in k2]

    c1, c2 = renumber(_seed_keys(t1), _seed_keys(t2))
    m1 = t1.entries.tolist()
    m2 = t2.entries.tolist()
    while True:
        k1 = [
            (c1[x], tuple(sorted((c1[y], c1[m1[x][y]], c1[m1[y][x]]) for y in range(t1.order))))
            for x in range(t1.order)
        ]
        k2 = [
            (c2[x], tuple(sorted((c2[y], c2[m2[x][y]], c2[m2[y][x]]) for y in range(t2.order))))
            for x in range(t2.order)
        ]
        n1, n2 = renumber(k1, k2)
        if len(set(n1) | set(n2)) == len(set(c1) | set(c2)):
            return n1, n2
        c1, c2 = n1, n2


def _find_isomorphism(t1, t2):
    n = t1.order
    c1, c2 = _joint_partition(t1, t2)
    from collections import Counter

    if Counter(c1) != Counter(c2):
        return None
    m1, m2 = t1.entries.tolist(), t2.entries.tolist()
    mapping = [-1] * n
    used = [False] * n
    by_color2 = {}
    for y, c in enumerate(c2):
        by_color2.setdefault(c, []).append(y)

    def close(pairs):
        """Force images of products of mapped elements; return trail or None."""
        trail = []
        queue = list(pairs)
        while queue:
            a = queue.pop()
            fa = mapping[a]
            for b in range(n):
                fb = mapping[b]
                if fb < 0:
                    continue
                for p, q in ((m1[a][b], m2[fa][fb]), (m1[b][a], m2[fb][fa])):
                    fp = mapping[p]
                    if fp >= 0:
                        if fp != q:
                            return trail, False
                    else:
                        if used[q] or c1[p] != c2[q]:
                            return trail, False
                        mapping[p] = q
                        used[q] = True
                        trail.append(p)
                        queue.append(p)
        return trail, True

    def undo(trail):
        for p in trail:
            used[mapping[p]] = False
            mapping[p] = -1

    def extend():
        pending = [a for a in range(n) if mapping[a] < 0]
        if not pending:
            return True
        # most constrained first: smallest candidate class
        a = min(pending, key=lambda x: (len(by_color2[c1[x]]), x))
        for b in by_color2[c1[a]]:
            if used[b]:
                continue
            mapping[a] = b
            used[b] = True
            trail, ok = close([a])
            if ok and extend():
                return True
            undo(trail)
            mapping[a] = -1
            used[b] = False
        return False

    if extend():
        return tuple(mapping)
    return None


def find_equivalence(t1, t2, allow_anti=False):
    """Search for an isomorphism (or, if allowed, an anti-isomorphism) between
    two tables; returns a verified EquivalenceCertificate or None."""
    if t1.order != t2.order:
        return None
    f = _find_isomorphism(t1, t2)
    if f is not None:
        cert = EquivalenceCertificate("isomorphism", f)
        assert certificate_holds(cert, t1, t2)
        return cert
    if allow_anti:
        f = _find_isomorphism(t1, opposite(t2))
        if f is not None:
            cert = EquivalenceCertificate("antiisomorphism", f)
            assert certificate_holds(cert, t1, t2)
            return cert
    return None


def relabel_table(table, perm):
    """Apply an element bijection: new[p(a)][p(b)] = p(old[a][b])."""
    n = table.order
    if sorted(perm) != list(range(n)):
        raise MalformedTable("not a permutation")
    out = np.empty_like(table.entries)
    m = table.entries
    for a in range(n):
        for b in range(n):
            out[perm[a], perm[b]] = perm[int(m[a, b])]
    labels = None
    if table.labels is not None:
        new = [""] * n
        for a in range(n):
            new[perm[a]] = table.labels[a]
        labels = tuple(new)
    return CayleyTable(out, labels=labels)


def parse_table(text):
    """Parse the table text format: optional '#' comments, a 'magma <n>' header,
    n rows of n indices, optional trailing 'labels <n names>'."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedTable("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "magma":
        raise MalformedTable(f"expected 'magma <n>' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise MalformedTable(f"bad order {head[1]!r}") from None
    if n <= 0:
        raise MalformedTable("order must be positive")
    if len(lines) < 1 + n:
        raise MalformedTable(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1 : 1 + n]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise MalformedTable(f"non-integer entry in row {ln!r}") from None
        if len(row) != n:
            raise MalformedTable(f"row {ln!r} has {len(row)} entries, expected {n}")
        rows.append(row)
    labels = None
    rest = lines[1 + n :]
    if rest:
        toks = rest[0].split()
        if toks[0] != "labels" or len(rest) > 1:
            raise MalformedTable("unexpected trailing content")
        if len(toks) != n + 1:
            raise MalformedTable(f"expected {n} labels, got {len(toks) - 1}")
        labels = toks[1:]
    return CayleyTable(rows, labels=labels)


def format_table(table, comment=None):
    out = []
    if comment:
        for ln in comment.splitlines():
            out.append(f"# {ln}")
    out.append(f"magma {table.order}")
    for a in range(table.order):
        out.append(" ".join(str(v) for v in table.row(a)))
    if table.labels is not None:
        out.append("labels " + " ".join(table.labels))
    return "\n".join(out) + "\n"


def read_table(path):
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def write_table(path, table, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_table(table, comment=comment))
