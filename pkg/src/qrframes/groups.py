"""Finite groups, their actions on finite point sets, and subset transforms.

Elements are encoded as integers ``0..order-1`` with ``0`` the identity.
"""

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import NotAGroup, UnknownPoint, UnsupportedPreset


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table.

    Use :func:`verify_group` or :func:`make_preset` to construct one; the
    constructor itself does not check the group laws.
    """

    cayley: np.ndarray
    inverse: np.ndarray
    name: str = "custom"

    @property
    def order(self):
        return int(self.cayley.shape[0])

    @property
    def elements(self):
        return range(self.order)

    def mul(self, g, h):
        return int(self.cayley[g, h])

    def inv(self, g):
        return int(self.inverse[g])

    def is_abelian(self):
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def same_as(self, other):
        """True if both groups have identical Cayley tables."""
        return other is self or (
            isinstance(other, FiniteGroup)
            and np.array_equal(self.cayley, other.cayley))

    def generators(self):
        """A small generating set, chosen greedily in element order."""
        gens, reached = [], {0}
        for g in self.elements:
            if g in reached:
                continue
            gens.append(g)
            frontier = list(reached)
            while frontier:
                x = frontier.pop()
                for h in gens:
                    y = int(self.cayley[x, h])
                    if y not in reached:
                        reached.add(y)
                        frontier.append(y)
        return tuple(gens)

    def inverse_subset(self, X):
        """``{g : g^{-1} in X}``."""
        return frozenset(self.inv(x) for x in X)

    def to_dict(self):
        return {"order": self.order, "cayley": self.cayley.tolist()}

    def __repr__(self):
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


def verify_group(cayley, name="custom"):
    """Check the group laws on a Cayley table and return a :class:`FiniteGroup`.

    Raises
    ------
    NotAGroup
        With the failing law and a witness tuple of element indices.
    """
    try:
        t = np.asarray(cayley, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup("shape") from exc
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise NotAGroup("shape")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if bad.size:
        raise NotAGroup("closure", bad[0])
    idx = np.arange(n)
    for g in range(n):
        if t[0, g] != g or t[g, 0] != g:
            raise NotAGroup("identity", (g,))
    inverse = np.empty(n, dtype=np.int64)
    for g in range(n):
        cand = np.flatnonzero((t[g] == 0) & (t[:, g] == 0))
        if cand.size == 0:
            raise NotAGroup("inverse", (g,))
        inverse[g] = cand[0]
    # (gh)k against g(hk) for all triples at once
    lhs = t[t[:, :, None], idx[None, None, :]]
    rhs = t[idx[:, None, None], t[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise NotAGroup("associativity", bad[0])
    t.setflags(write=False)
    inverse.setflags(write=False)
    return FiniteGroup(t, inverse, name)


def cyclic(n):
    n = int(n)
    if n < 1:
        raise UnsupportedPreset(f"cyclic(n) needs n >= 1, got {n}")
    i = np.arange(n)
    return verify_group((i[:, None] + i[None, :]) % n, f"cyclic({n})")


def dihedral(n):
    """Dihedral group of order ``2n``; element ``k + n*s`` is ``r^k s^s``."""
    n = int(n)
    if n < 1:
        raise UnsupportedPreset(f"dihedral(n) needs n >= 1, got {n}")
    order = 2 * n
    t = np.empty((order, order), dtype=np.int64)
    for g in range(order):
        a, i = g % n, g // n
        for h in range(order):
            b, j = h % n, h // n
            # s r^b = r^{-b} s
            k = (a + (-b if i else b)) % n
            t[g, h] = k + n * ((i + j) % 2)
    return verify_group(t, f"dihedral({n})")


def symmetric3():
    """Permutations of three letters, composed as ``(p q)(x) = p(q(x))``."""
    perms = sorted(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    t = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    return verify_group(t, "symmetric3")


def quaternion8():
    """Quaternion group; elements ``1, i, j, k, -1, -i, -j, -k``."""
    # unit products: table[a][b] = (sign, unit) for units 1,i,j,k
    unit = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    t = np.empty((8, 8), dtype=np.int64)
    for g in range(8):
        for h in range(8):
            s, u = unit[g % 4][h % 4]
            if (g >= 4) != (h >= 4):
                s = -s
            t[g, h] = u + (4 if s < 0 else 0)
    return verify_group(t, "quaternion8")


_PRESET_ALIASES = {
    "z": "cyclic", "c": "cyclic", "cyclic": "cyclic",
    "d": "dihedral", "dihedral": "dihedral",
    "s3": "symmetric3", "symmetric3": "symmetric3",
    "q8": "quaternion8", "quaternion8": "quaternion8",
}


def make_preset(name, n=None):
    """Build a preset group.

    ``name`` may be ``"cyclic"``, ``"dihedral"``, ``"symmetric3"`` or
    ``"quaternion8"`` with ``n`` given separately, or a compact string such as
    ``"cyclic(3)"``, ``"cyclic:3"``, ``"Z3"``, ``"D4"``, ``"S3"``, ``"Q8"``.
    """
    if not isinstance(name, str):
        raise UnsupportedPreset(f"preset name must be a string, got {name!r}")
    key = name.strip().lower().replace(" ", "")
    if n is None:
        for sep in ("(", ":"):
            if sep in key:
                key, _, rest = key.partition(sep)
                rest = rest.rstrip(")")
                try:
                    n = int(rest)
                except ValueError:
                    raise UnsupportedPreset(f"bad preset parameter in {name!r}") from None
                break
    if key not in _PRESET_ALIASES and key[:1] in ("z", "c", "d") and key[1:].isdigit():
        key, n = key[:1], int(key[1:])
    family = _PRESET_ALIASES.get(key)
    if family == "cyclic":
        if n is None:
            raise UnsupportedPreset("cyclic preset needs n")
        return cyclic(n)
    if family == "dihedral":
        if n is None:
            raise UnsupportedPreset("dihedral preset needs n")
        return dihedral(n)
    if family == "symmetric3":
        return symmetric3()
    if family == "quaternion8":
        return quaternion8()
    raise UnsupportedPreset(f"unknown group preset {name!r}")


def group_from_dict(obj):
    """Build a group from ``{"order", "cayley"}`` or ``{"preset": ...}``."""
    if isinstance(obj, str):
        return make_preset(obj)
    if "preset" in obj:
        return make_preset(obj["preset"], obj.get("n"))
    g = verify_group(obj["cayley"])
    if "order" in obj and int(obj["order"]) != g.order:
        raise NotAGroup("shape")
    return g


@dataclass(frozen=True, eq=False)
class GSpace:
    """A finite transitive G-space.

    ``action[g, i]`` is the index of ``g . points[i]``.
    """

    group: FiniteGroup
    points: tuple
    action: np.ndarray
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    @property
    def size(self):
        return len(self.points)

    def index(self, x):
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownPoint(x) from None

    def act(self, g, x):
        return self.points[self.action[g, self.index(x)]]

    def is_principal(self):
        """True if this is the group acting on itself by left multiplication."""
        return (self.points == tuple(range(self.group.order))
                and np.array_equal(self.action, self.group.cayley))


def make_gspace(group, points, action):
    """Validate an action table and return a :class:`GSpace`.

    Checks identity, compatibility ``g.(h.x) = (gh).x`` and transitivity.
    """
    pts = tuple(points)
    a = np.asarray(action, dtype=np.int64)
    n = len(pts)
    if a.shape != (group.order, n) or ((a < 0) | (a >= n)).any():
        raise ValueError("action table must have shape (order, npoints) with valid indices")
    if not np.array_equal(a[0], np.arange(n)):
        raise ValueError("identity must act trivially")
    for g in group.elements:
        for h in group.elements:
            if not np.array_equal(a[g, a[h]], a[group.mul(g, h)]):
                raise ValueError(f"action is not compatible at g={g}, h={h}")
    if set(a[:, 0].tolist()) != set(range(n)):
        raise ValueError("action is not transitive")
    a.setflags(write=False)
    return GSpace(group, pts, a)


def left_self_space(group):
    """The group acting on itself by left multiplication."""
    return GSpace(group, tuple(range(group.order)), group.cayley)


def transform_subset(space, g, X):
    """``g.X = {g.x : x in X}``.

    Raises
    ------
    UnknownPoint
        If an element of ``X`` is not a point of ``space``.
    """
    return frozenset(space.act(g, x) for x in X)


def inverse_subset(group, X):
    """``X^{-1} = {g : g^{-1} in X}``."""
    return group.inverse_subset(X)


def uniform_measure(group, X):
    return len(set(X)) / group.order
