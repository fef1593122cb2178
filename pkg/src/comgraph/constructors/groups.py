"""Constructions of the finite groups used throughout: cyclic and abelian
products, the dihedral/semidihedral/quaternion 2-group families, symmetric and
alternating groups, matrix groups over small fields, and semidirect products.

Every builder returns a verified group table of the stated order.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from ..tables import (
    GROUP,
    CayleyTable,
    NotAbelian,
    TableError,
    centre,
    classify_magma,
    identity_of,
    quotient_by_normal_subgroup,
    read_table,
)


class BadGroupSpec(TableError):
    pass


class JNotFound(TableError):
    pass


class InvalidAction(TableError):
    pass


class GF:
    """Arithmetic tables for GF(q), q prime or 4 or 9; elements are 0..q-1
    with 0 and 1 the usual identities."""

    def __init__(self, q):
        if q in (4, 9):
            p = 2 if q == 4 else 3
            self.q, self.p = q, p
            pairs = [(hi, lo) for hi in range(p) for lo in range(p)]
            enc = {(hi, lo): hi * p + lo for hi, lo in pairs}
            self.add_t = [[0] * q for _ in range(q)]
            self.mul_t = [[0] * q for _ in range(q)]
            for a1, a0 in pairs:
                for b1, b0 in pairs:
                    i, j = enc[(a1, a0)], enc[(b1, b0)]
                    self.add_t[i][j] = enc[((a1 + b1) % p, (a0 + b0) % p)]
                    # modulus x^2 + x + 1 over GF(2); x^2 + 1 over GF(3)
                    if q == 4:
                        hi = (a1 * b0 + a0 * b1 + a1 * b1) % 2
                        lo = (a0 * b0 + a1 * b1) % 2
                    else:
                        hi = (a1 * b0 + a0 * b1) % 3
                        lo = (a0 * b0 - a1 * b1) % 3
                    self.mul_t[i][j] = enc[(hi, lo)]
        else:
            for d in range(2, q):
                if q % d == 0:
                    raise BadGroupSpec(f"GF({q}) not supported")
            self.q, self.p = q, q
            self.add_t = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul_t = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.neg_t = [next(b for b in range(self.q) if self.add_t[a][b] == 0) for a in range(self.q)]
        self.inv_t = [0] + [next(b for b in range(1, self.q) if self.mul_t[a][b] == 1) for a in range(1, self.q)]
        # Frobenius x -> x^p generates the subfield automorphisms
        self.frob_t = [self._pow(a, self.p) for a in range(self.q)]

    def _pow(self, a, k):
        out = 1
        for _ in range(k):
            out = self.mul_t[out][a]
        return out

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a][b]


def _mat_mul(f, a, b):
    return (
        f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
        f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
        f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
        f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
    )


def _mat_det(f, a):
    return f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2]))


def _mat_inv(f, a):
    d = f.inv_t[_mat_det(f, a)]
    return (
        f.mul(d, a[3]),
        f.mul(d, f.neg_t[a[1]]),
        f.mul(d, f.neg_t[a[2]]),
        f.mul(d, a[0]),
    )


def _table_from_elements(elements, mul, labels=None):
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rows = [[index[mul(elements[i], elements[j])] for j in range(n)] for i in range(n)]
    return CayleyTable(rows, labels=labels)


def _verified(table, order, what):
    if table.order != order:
        raise BadGroupSpec(f"{what}: built order {table.order}, expected {order}")
    if classify_magma(table) != GROUP:
        raise BadGroupSpec(f"{what}: table is not a group")
    return table


def cyclic(n):
    if n < 1:
        raise BadGroupSpec("cyclic group needs n >= 1")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return _verified(CayleyTable(rows), n, f"Z_{n}")


def abelian_product(orders):
    """Direct product of cyclic groups of the given orders."""
    orders = list(orders)
    if not orders or any(d < 1 for d in orders):
        raise BadGroupSpec("orders must be positive")
    elements = list(product(*[range(d) for d in orders]))

    def mul(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, orders))

    n = len(elements)
    table = _table_from_elements(elements, mul)
    return _verified(table, n, "x".join(f"Z_{d}" for d in orders))


def dihedral(order):
    """Dihedral group of the given even order >= 4 (order 4 gives Z_2 x Z_2)."""
    if order < 4 or order % 2:
        raise BadGroupSpec("dihedral order must be even and >= 4")
    n = order // 2

    def mul(x, y):
        i, e = x
        j, d = y
        return ((i + j) % n if e == 0 else (i - j) % n, e ^ d)

    elements = [(i, e) for e in (0, 1) for i in range(n)]
    return _verified(_table_from_elements(elements, mul), order, f"D_{order}")


def semidihedral(order):
    """Semidihedral group of order 2^k >= 8: b a b = a^(n/2 - 1) with n = 2^(k-1)."""
    k = order.bit_length() - 1
    if order != 1 << k or order < 8:
        raise BadGroupSpec("semidihedral order must be a power of two, >= 8")
    n = order // 2
    r = n // 2 - 1

    def mul(x, y):
        i, e = x
        j, d = y
        return ((i + j) % n if e == 0 else (i + r * j) % n, e ^ d)

    elements = [(i, e) for e in (0, 1) for i in range(n)]
    return _verified(_table_from_elements(elements, mul), order, f"SD_{order}")


def generalized_quaternion(order):
    """Generalised quaternion group of order 4n >= 8: b^2 = a^n, b a b^-1 = a^-1."""
    if order < 8 or order % 4:
        raise BadGroupSpec("generalised quaternion order must be a multiple of 4, >= 8")
    m = order // 2

    def mul(x, y):
        i, e = x
        j, d = y
        if e == 0:
            return ((i + j) % m, d)
        if d == 0:
            return ((i - j) % m, 1)
        return ((i - j + m // 2) % m, 0)

    elements = [(i, e) for e in (0, 1) for i in range(m)]
    return _verified(_table_from_elements(elements, mul), order, f"Q_{order}")


def _perm_label(p):
    return "(" + " ".join(str(v) for v in p) + ")"


def symmetric(n):
    if not 1 <= n <= 6:
        raise BadGroupSpec("symmetric group supported for n <= 6")
    elements = sorted(permutations(range(n)))

    def mul(p, q):
        return tuple(q[p[i]] for i in range(n))

    labels = [_perm_label(p) for p in elements]
    return _verified(_table_from_elements(elements, mul, labels), math.factorial(n), f"S_{n}")


def _parity(p):
    seen = [False] * len(p)
    sign = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        sign ^= (length - 1) & 1
    return sign


def alternating(n):
    if not 1 <= n <= 6:
        raise BadGroupSpec("alternating group supported for n <= 6")
    elements = sorted(p for p in permutations(range(n)) if _parity(p) == 0)

    def mul(p, q):
        return tuple(q[p[i]] for i in range(n))

    labels = [_perm_label(p) for p in elements]
    order = max(1, math.factorial(n) // 2)
    return _verified(_table_from_elements(elements, mul, labels), order, f"A_{n}")


def _mat_label(m):
    return f"{m[0]},{m[1]};{m[2]},{m[3]}"


@functools.lru_cache(maxsize=None)
def special_linear(q):
    """SL(2,q) for q in {2,3,4,5,7,9}, by enumerating matrices of determinant one."""
    if q not in (2, 3, 4, 5, 7, 9):
        raise BadGroupSpec(f"SL(2,{q}) not in the supported range")
    f = GF(q)
    elements = [m for m in product(range(q), repeat=4) if _mat_det(f, m) == 1]
    table = _table_from_elements(elements, lambda a, b: _mat_mul(f, a, b), [_mat_label(m) for m in elements])
    return _verified(table, q * (q * q - 1), f"SL(2,{q})")


@functools.lru_cache(maxsize=None)
def general_linear_3():
    """GL(2,3): all invertible 2x2 matrices over GF(3)."""
    f = GF(3)
    elements = [m for m in product(range(3), repeat=4) if _mat_det(f, m) != 0]
    table = _table_from_elements(elements, lambda a, b: _mat_mul(f, a, b), [_mat_label(m) for m in elements])
    return _verified(table, 48, "GL(2,3)")


@functools.lru_cache(maxsize=None)
def projective_special_linear_7():
    """PSL(2,7) as SL(2,7) modulo its centre {I, -I}."""
    sl = special_linear(7)
    table = quotient_by_normal_subgroup(sl, centre(sl))
    return _verified(table, 168, "PSL(2,7)")


@functools.lru_cache(maxsize=None)
def group_j():
    """The order-48 group with a unique involution that extends SL(2,3) but is
    not GL(2,3), found inside the semilinear group of GF(9)^2.

    Elements of the ambient group are pairs (matrix, frobenius flag) composing
    as (A,i)(B,j) = (A^(sigma^j) B, i+j).  SL(2,3) embeds via GF(3) inside
    GF(9); the search scans the 11520 ambient elements for one that normalises
    the copy of SL(2,3), squares into it, and adjoins no new involution, then
    returns the resulting index-two extension.
    """
    f = GF(9)

    def frob_mat(m):
        return tuple(f.frob_t[x] for x in m)

    def mul(x, y):
        (a, i), (b, j) = x, y
        return (_mat_mul(f, frob_mat(a) if j else a, b), (i + j) % 2)

    def inv(x):
        a, i = x
        b = frob_mat(a) if i else a
        return (_mat_inv(f, b), i)

    sub3 = (0, 1, 2)
    s_elems = [
        (m, 0) for m in product(sub3, repeat=4) if _mat_det(f, m) == 1
    ]
    if len(s_elems) != 24:
        raise JNotFound("embedded SL(2,3) has the wrong size")
    s_set = frozenset(s_elems)
    gens = [((1, 1, 0, 1), 0), ((0, 1, 2, 0), 0)]
    closure = set(gens)
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(x, g)
            if y not in closure:
                closure.add(y)
                frontier.append(y)
    if closure != s_set:
        raise JNotFound("chosen generators do not span the embedded SL(2,3)")
    ident = ((1, 0, 0, 1), 0)

    for frob in (0, 1):
        for m in product(range(9), repeat=4):
            if _mat_det(f, m) == 0:
                continue
            g = (m, frob)
            if g in s_set:
                continue
            gi = inv(g)
            if any(mul(mul(g, h), gi) not in s_set for h in gens):
                continue
            if mul(g, g) not in s_set:
                continue
            if any(mul(sg, sg) == ident for sg in (mul(s, g) for s in s_elems)):
                continue
            elements = s_elems + [mul(s, g) for s in s_elems]
            table = _table_from_elements(sorted(elements), mul)
            if classify_magma(table) != GROUP or table.order != 48:
                continue
            if len(centre(table)) != 2:
                continue
            return table
    raise JNotFound("no suitable extension of SL(2,3) found")


@dataclass(frozen=True)
class ActionMap:
    """An action of the group H (domain) on the group N (target) by
    automorphisms: images[h] is the permutation of N's elements applied by h.

    Composition convention: images[h1 * h2] = images[h1] after images[h2],
    i.e. images[h1h2][x] = images[h1][images[h2][x]].
    """

    domain: CayleyTable
    target: CayleyTable
    images: tuple


def validate_action(action):
    h, n = action.domain, action.target
    if classify_magma(h) != GROUP or classify_magma(n) != GROUP:
        raise InvalidAction("action requires group tables")
    if len(action.images) != h.order:
        raise InvalidAction("one image permutation per element of the acting group")
    ids = list(range(n.order))
    for im in action.images:
        if sorted(im) != ids:
            raise InvalidAction("image is not a permutation")
        for a in range(n.order):
            for b in range(n.order):
                if im[n.mul(a, b)] != n.mul(im[a], im[b]):
                    raise InvalidAction("image is not an automorphism")
    e = identity_of(h)
    if list(action.images[e]) != ids:
        raise InvalidAction("identity must act trivially")
    for h1 in range(h.order):
        for h2 in range(h.order):
            im12 = action.images[h.mul(h1, h2)]
            f1, f2 = action.images[h1], action.images[h2]
            if any(im12[x] != f1[f2[x]] for x in range(n.order)):
                raise InvalidAction("images do not compose like the acting group")
    return action


def semidirect_product(n_table, h_table, action):
    """Group on pairs (n, h), indexed n*|H| + h, with
    (n1, h1)(n2, h2) = (n1 * images[h1](n2), h1 h2)."""
    validate_action(action)
    if action.domain != h_table:
        raise InvalidAction("action domain does not match H")
    if action.target != n_table:
        raise InvalidAction("action target does not match N")
    nn, nh = n_table.order, h_table.order
    p = np.array(action.images, dtype=np.int64)
    nm, hm = n_table.entries, h_table.entries
    acted = p  # acted[h1, n2]
    npart = nm[np.arange(nn)[:, None, None], acted[None, :, :]]  # (n1, h1, n2)
    total = npart[:, :, :, None] * nh + hm[None, :, None, :]
    table = CayleyTable(total.reshape(nn * nh, nn * nh))
    return _verified(table, nn * nh, "semidirect product")


def inversion_action(a_table):
    """Z_2 acting on an abelian group by x -> x^-1."""
    if classify_magma(a_table) != GROUP:
        raise NotAbelian("inversion acts on an abelian group")
    if not np.array_equal(a_table.entries, a_table.entries.T):
        raise NotAbelian("inversion is only an automorphism of abelian groups")
    from ..tables import inverses

    inv = tuple(inverses(a_table))
    ident = tuple(range(a_table.order))
    return ActionMap(domain=cyclic(2), target=a_table, images=(ident, inv))


def inversion_extension(a_table):
    """A x| Z_2 with the nontrivial element inverting A."""
    action = inversion_action(a_table)
    return semidirect_product(a_table, action.domain, action)


def cyclic_action(n, h, multiplier):
    """Z_h acting on Z_n with the generator sending x to multiplier * x."""
    target, domain = cyclic(n), cyclic(h)
    images = []
    m = 1
    for _ in range(h):
        images.append(tuple((m * x) % n for x in range(n)))
        m = (m * multiplier) % n
    if m != 1:
        raise InvalidAction(f"multiplier {multiplier} has order not dividing {h} mod {n}")
    return ActionMap(domain=domain, target=target, images=tuple(images))


def natural_module(copies=1):
    """The additive group GF(4)^2 (elementary abelian of order 16), or a direct
    product of several copies."""
    if copies < 1:
        raise BadGroupSpec("need at least one copy")
    return abelian_product([2] * (4 * copies))


def natural_module_action(copies=1):
    """SL(2,4) acting on GF(4)^(2*copies) as matrices on column vectors,
    diagonally across copies."""
    h = special_linear(4)
    n = natural_module(copies)
    f = GF(4)
    # vector (u, v) over GF(4) <-> bits (u1, u0, v1, v0) of the Z_2^4 encoding
    def decode(x):
        bits = [(x >> (3 - i)) & 1 for i in range(4)]
        return bits[0] * 2 + bits[1], bits[2] * 2 + bits[3]

    def encode(u, v):
        return ((u >> 1) << 3) | ((u & 1) << 2) | ((v >> 1) << 1) | (v & 1)

    mats = [m for m in product(range(4), repeat=4) if _mat_det(f, m) == 1]
    images = []
    for m in mats:
        a, b, c, d = m
        block = [0] * 16
        for x in range(16):
            u, v = decode(x)
            block[x] = encode(f.add(f.mul(a, u), f.mul(b, v)), f.add(f.mul(c, u), f.mul(d, v)))
        perm = [0] * n.order
        for combo in product(range(16), repeat=copies):
            src = 0
            dst = 0
            for part in combo:
                src = src * 16 + part
                dst = dst * 16 + block[part]
            perm[src] = dst
        images.append(tuple(perm))
    return ActionMap(domain=h, target=n, images=tuple(images))


def parse_action(text, domain, target):
    """Parse the action text format: '#' comments, a header 'action <|H|> <|N|>',
    then |H| lines, line i holding the image permutation of element i."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidAction("empty action file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "action":
        raise InvalidAction(f"expected 'action <|H|> <|N|>', got {lines[0]!r}")
    try:
        h_order, n_order = int(head[1]), int(head[2])
    except ValueError:
        raise InvalidAction("bad sizes in action header") from None
    if h_order != domain.order or n_order != target.order:
        raise InvalidAction(
            f"action is {head[1]}x{head[2]} but groups have orders {domain.order}, {target.order}"
        )
    if len(lines) != 1 + h_order:
        raise InvalidAction(f"expected {h_order} permutation lines, found {len(lines) - 1}")
    images = []
    for ln in lines[1:]:
        try:
            perm = tuple(int(tok) for tok in ln.split())
        except ValueError:
            raise InvalidAction(f"non-integer entry in {ln!r}") from None
        if len(perm) != n_order:
            raise InvalidAction(f"permutation line has {len(perm)} entries, expected {n_order}")
        images.append(perm)
    return validate_action(ActionMap(domain=domain, target=target, images=tuple(images)))


def format_action(action, comment=None):
    out = []
    if comment:
        for ln in comment.splitlines():
            out.append(f"# {ln}")
    out.append(f"action {action.domain.order} {action.target.order}")
    for perm in action.images:
        out.append(" ".join(str(v) for v in perm))
    return "\n".join(out) + "\n"


def read_action(path, domain, target):
    with open(path, encoding="utf-8") as fh:
        return parse_action(fh.read(), domain, target)


def write_action(path, action, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_action(action, comment=comment))


def _parse_orders(text):
    try:
        return [int(tok) for tok in text.split("x")]
    except ValueError:
        raise BadGroupSpec(f"bad order list {text!r}") from None


@functools.lru_cache(maxsize=None)
def build_group(spec):
    """Build a group from a spec string.

    Accepted forms: cyclic:N, abelian:AxBx..., dihedral:N, semidihedral:N,
    quaternion:N, symmetric:N, alternating:N, sl2:Q, gl2:3, psl2:7, j,
    invext:AxBx... (inversion extension of the abelian product),
    cyclicext:N:H:M (Z_N x| Z_H, generator acting by x -> M x),
    sl24ext[:T] (GF(4)^(2T) x| SL(2,4)), file:PATH.
    """
    spec = spec.strip()
    if spec == "j":
        return group_j()
    if spec == "gl2:3":
        return general_linear_3()
    if spec == "psl2:7":
        return projective_special_linear_7()
    if spec == "sl24ext":
        spec = "sl24ext:1"
    if ":" not in spec:
        raise BadGroupSpec(f"unknown group spec {spec!r}")
    kind, arg = spec.split(":", 1)
    if kind == "file":
        table = read_table(arg)
        if classify_magma(table) != GROUP:
            raise BadGroupSpec(f"{arg}: table is not a group")
        return table
    if kind == "abelian":
        return abelian_product(_parse_orders(arg))
    if kind == "invext":
        return inversion_extension(abelian_product(_parse_orders(arg)))
    if kind == "cyclicext":
        try:
            n, h, m = (int(tok) for tok in arg.split(":"))
        except ValueError:
            raise BadGroupSpec(f"cyclicext needs N:H:M, got {arg!r}") from None
        act = cyclic_action(n, h, m)
        return semidirect_product(act.target, act.domain, act)
    if kind == "sl24ext":
        t = int(arg)
        return semidirect_product(natural_module(t), special_linear(4), natural_module_action(t))
    makers = {
        "cyclic": cyclic,
        "dihedral": dihedral,
        "semidihedral": semidihedral,
        "quaternion": generalized_quaternion,
        "symmetric": symmetric,
        "alternating": alternating,
        "sl2": special_linear,
    }
    if kind in makers:
        try:
            n = int(arg)
        except ValueError:
            raise BadGroupSpec(f"bad size {arg!r}") from None
        return makers[kind](n)
    raise BadGroupSpec(f"unknown group spec {spec!r}")


def catalog_names(include_large=True):
    """Spec strings for the stock of constructed groups exercised by the
    verification suites."""
    names = [
        "cyclic:6",
        "abelian:2x4",
        "abelian:3x3",
        "dihedral:8",
        "dihedral:16",
        "dihedral:32",
        "semidihedral:16",
        "semidihedral:32",
        "quaternion:8",
        "quaternion:16",
        "quaternion:32",
        "symmetric:3",
        "symmetric:4",
        "alternating:4",
        "alternating:5",
        "sl2:2",
        "sl2:3",
        "sl2:4",
        "sl2:5",
        "gl2:3",
        "j",
        "invext:3",
        "invext:5",
        "invext:7",
        "invext:9",
        "invext:3x3",
        "invext:15",
        "cyclicext:7:3:2",
    ]
    if include_large:
        names += ["sl2:7", "sl2:9", "psl2:7", "sl24ext:1"]
    return names
