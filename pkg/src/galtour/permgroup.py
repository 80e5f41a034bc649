"""Finite permutation-group engine.

Everything downstream (field lattices, towers, dissociation) reduces to
explicit computations in small permutation groups: closure, subgroup
enumeration, normality, normal/subnormal closures, quotients and
isomorphism testing.  All values are immutable after construction and can
be shared freely between workers.

Conventions:
  * points are 0-based internally; cycle notation in text I/O is 1-based;
  * the canonical order on group elements is lexicographic on image
    tuples, which puts the identity first;
  * a subgroup's canonical identity is the sorted tuple of element
    indices into its parent's canonical element order.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Optional, Sequence

CLOSURE_BOUND = 10_000
SUBGROUP_ENUM_BOUND = 384
ISOMORPHISM_BOUND = 200
ASSOC_CHECK_BOUND = 200


class PermGroupError(Exception):
    """Invalid input to a group operation."""


class BoundExceeded(PermGroupError):
    """A configured size bound was exceeded."""


# ---------------------------------------------------------------------------
# permutations


class Permutation:
    """A permutation of {0..degree-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PermGroupError(f"not a bijection on 0..{len(images)-1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def order(self) -> int:
        n = 1
        p = self
        while not p.is_identity():
            p = compose(p, self)
            n += 1
        return n

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycles()!r}, degree={self.degree})"

    # 1-based disjoint-cycle text, identity rendered "()"
    def cycles(self) -> str:
        seen = [False] * self.degree
        parts = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            parts.append("(" + " ".join(str(p + 1) for p in cyc) + ")")
        return "".join(parts) if parts else "()"

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse 1-based disjoint cycle notation, e.g. ``(1 2 3)(4 5)``."""
        text = text.strip()
        if text in ("()", "", "e", "id"):
            return cls.identity(degree)
        if not re.fullmatch(r"(\s*\(\s*\d+(?:[\s,]+\d+)*\s*\)\s*)+", text):
            raise PermGroupError(f"bad cycle notation: {text!r}")
        images = list(range(degree))
        touched = set()
        for part in re.findall(r"\(([^()]*)\)", text):
            pts = [int(tok) - 1 for tok in re.split(r"[\s,]+", part.strip()) if tok]
            if any(p < 0 or p >= degree for p in pts):
                raise PermGroupError(f"point out of range 1..{degree} in {text!r}")
            if len(set(pts)) != len(pts) or touched & set(pts):
                raise PermGroupError(f"repeated point in {text!r}")
            touched |= set(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(x) = p(q(x))."""
    if p.degree != q.degree:
        raise PermGroupError(f"degree mismatch: {p.degree} != {q.degree}")
    qi = q.images
    pi = p.images
    return Permutation(tuple(pi[qi[x]] for x in range(len(pi))))


# ---------------------------------------------------------------------------
# groups


class Group:
    """A finite permutation group with a fixed canonical element order.

    ``elements`` is sorted lexicographically by image tuple, so the
    identity always has index 0.  A full multiplication table over element
    indices is built lazily and cached.
    """

    __slots__ = ("degree", "generators", "elements", "order", "_index",
                 "_table", "_inv", "_orders")

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 elements: Sequence[Permutation]):
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", tuple(generators))
        object.__setattr__(self, "elements", tuple(sorted(elements)))
        object.__setattr__(self, "order", len(self.elements))
        object.__setattr__(self, "_index",
                           {p.images: i for i, p in enumerate(self.elements)})
        object.__setattr__(self, "_table", None)
        object.__setattr__(self, "_inv", None)
        object.__setattr__(self, "_orders", None)
        if self.elements[0].images != tuple(range(degree)):
            raise PermGroupError("identity missing from element set")

    def __setattr__(self, *a):
        raise AttributeError("Group is immutable")

    def __repr__(self) -> str:
        return f"Group(degree={self.degree}, order={self.order})"

    def index_of(self, p: Permutation) -> int:
        try:
            return self._index[p.images]
        except KeyError:
            raise PermGroupError(f"{p!r} is not an element of this group") from None

    def __contains__(self, p: Permutation) -> bool:
        return isinstance(p, Permutation) and p.images in self._index

    @property
    def table(self) -> list:
        if self._table is None:
            elems = self.elements
            idx = self._index
            tab = [
                [idx[tuple(p.images[q.images[x]] for x in range(self.degree))]
                 for q in elems]
                for p in elems
            ]
            object.__setattr__(self, "_table", tab)
        return self._table

    @property
    def inverses(self) -> list:
        if self._inv is None:
            inv = [0] * self.order
            tab = self.table
            for i in range(self.order):
                for j in range(self.order):
                    if tab[i][j] == 0:
                        inv[i] = j
                        break
            object.__setattr__(self, "_inv", inv)
        return self._inv

    def mult(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def element_orders(self) -> tuple:
        if self._orders is None:
            out = []
            tab = self.table
            for i in range(self.order):
                n, x = 1, i
                while x != 0:
                    x = tab[x][i]
                    n += 1
                out.append(n)
            object.__setattr__(self, "_orders", tuple(out))
        return self._orders

    # subgroup constructors ------------------------------------------------

    def subgroup(self, indices: Iterable[int]) -> "Subgroup":
        return Subgroup(self, indices)

    def generated_subgroup(self, indices: Iterable[int]) -> "Subgroup":
        """Subgroup generated by the given element indices."""
        gens = sorted(set(indices))
        tab = self.table
        closed = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = tab[x][g]
                if y not in closed:
                    closed.add(y)
                    frontier.append(y)
        return Subgroup(self, closed, _checked=True)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), _checked=True)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order), _checked=True)


def generate(degree: int, generators: Sequence[Permutation],
             bound: int = CLOSURE_BOUND) -> Group:
    """Close a generator set under composition; error beyond ``bound``."""
    for g in generators:
        if g.degree != degree:
            raise PermGroupError(f"generator degree {g.degree} != {degree}")
    ident = Permutation.identity(degree)
    elements = {ident.images: ident}
    frontier = [ident]
    gens = list(generators)
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = compose(p, g)
            if q.images not in elements:
                if len(elements) >= bound:
                    raise BoundExceeded(
                        f"closure exceeds bound {bound} (degree {degree})")
                elements[q.images] = q
                frontier.append(q)
    return Group(degree, generators, list(elements.values()))


def group_to_text(G: Group) -> str:
    """Serialize in the shared text format: degree line + generator lines."""
    lines = [f"degree: {G.degree}"]
    lines += [g.cycles() for g in G.generators] or ["()"]
    return "\n".join(lines) + "\n"


def group_from_text(text: str, bound: int = CLOSURE_BOUND) -> Group:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].lower().startswith("degree"):
        raise PermGroupError("first line must be 'degree: N'")
    m = re.fullmatch(r"degree\s*:\s*(\d+)", lines[0].lower())
    if not m:
        raise PermGroupError(f"bad degree line: {lines[0]!r}")
    degree = int(m.group(1))
    gens = [Permutation.from_cycles(ln, degree) for ln in lines[1:]]
    return generate(degree, gens or [Permutation.identity(degree)], bound=bound)


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of a :class:`Group`, identified by its canonical key.

    The canonical key is the sorted tuple of element indices into the
    parent's canonical element order; equality and hashing are bit-exact
    on it.  ``mask`` is the same set as a bitmask, for O(1) inclusion
    tests.
    """

    __slots__ = ("parent", "key", "indices", "mask", "order", "_gens")

    def __init__(self, parent: Group, indices: Iterable[int], _checked=False):
        key = tuple(sorted(set(indices)))
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "indices", frozenset(key))
        object.__setattr__(self, "mask", sum(1 << i for i in key))
        object.__setattr__(self, "order", len(key))
        object.__setattr__(self, "_gens", None)
        if not _checked:
            self._validate()

    def _validate(self):
        if not self.key or self.key[0] != 0:
            raise PermGroupError("subgroup must contain the identity (index 0)")
        if any(i < 0 or i >= self.parent.order for i in self.key):
            raise PermGroupError("element index out of range")
        tab = self.parent.table
        for i in self.key:
            for j in self.key:
                if tab[i][j] not in self.indices:
                    raise PermGroupError("element set not closed under composition")

    def __setattr__(self, *a):
        raise AttributeError("Subgroup is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.key == self.key)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.key))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def __le__(self, other: "Subgroup") -> bool:
        self._same_parent(other)
        return self.mask & other.mask == self.mask

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def _same_parent(self, other: "Subgroup"):
        if other.parent is not self.parent:
            raise PermGroupError("subgroups have different parent groups")

    def sort_key(self) -> tuple:
        """Canonical subgroup order: by order, then element-index tuple."""
        return (self.order, self.key)

    def gens(self) -> tuple:
        """A small generating set (greedy, deterministic), as indices."""
        if self._gens is None:
            chosen: list[int] = []
            span = {0}
            tab = self.parent.table
            for i in self.key:
                if i in span:
                    continue
                chosen.append(i)
                frontier = list(span)
                span.add(i)
                frontier.append(i)
                while frontier:
                    x = frontier.pop()
                    for g in chosen:
                        y = tab[x][g]
                        if y not in span:
                            span.add(y)
                            frontier.append(y)
                if len(span) == self.order:
                    break
            object.__setattr__(self, "_gens", tuple(chosen))
        return self._gens

    def permutations(self) -> tuple:
        return tuple(self.parent.elements[i] for i in self.key)


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    A._same_parent(B)
    return Subgroup(A.parent, A.indices & B.indices, _checked=True)


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by A union B."""
    A._same_parent(B)
    if A <= B:
        return B
    if B <= A:
        return A
    return A.parent.generated_subgroup(A.gens() + B.gens())


def is_normal(A: Subgroup, B: Subgroup) -> bool:
    """True iff A is normal in B; requires A <= B."""
    A._same_parent(B)
    if not A <= B:
        raise PermGroupError("is_normal requires nested subgroups A <= B")
    tab = A.parent.table
    inv = A.parent.inverses
    for b in B.gens():
        bi = inv[b]
        for a in A.gens():
            if tab[tab[b][a]][bi] not in A.indices:
                return False
    return True


def normal_closure(H: Subgroup, B: Subgroup) -> Subgroup:
    """Smallest N with H <= N <= B and N normal in B."""
    H._same_parent(B)
    if not H <= B:
        raise PermGroupError("normal_closure requires H <= B")
    G = H.parent
    tab = G.table
    inv = G.inverses
    conjugators = B.gens()
    gens = list(H.gens()) or [0]
    current = G.generated_subgroup(gens)
    while True:
        new = []
        for b in conjugators:
            bi = inv[b]
            for a in gens:
                c = tab[tab[b][a]][bi]
                if c not in current.indices:
                    new.append(c)
        if not new:
            return current
        gens.extend(new)
        current = G.generated_subgroup(gens)


def subnormal_closure(H: Subgroup, B: Subgroup) -> tuple:
    """Iterate normal closures down from B to a fixpoint S.

    Returns ``(S, chain)`` where chain is B = S_0 |> S_1 |> ... |> S_k = S,
    each term normal in the one before; S is the smallest subgroup of B
    containing H that is subnormal in B.
    """
    H._same_parent(B)
    if not H <= B:
        raise PermGroupError("subnormal_closure requires H <= B")
    chain = [B]
    current = B
    while True:
        nxt = normal_closure(H, current)
        if nxt == current:
            return current, chain
        chain.append(nxt)
        current = nxt


def all_subgroups(G: Group, bound: int = SUBGROUP_ENUM_BOUND) -> list:
    """Every subgroup of G, canonically sorted.

    Bottom-up: all cyclic subgroups, then pairwise joins to a fixpoint.
    Every subgroup is the join of its cyclic subgroups, so the fixpoint
    set is complete.
    """
    if G.order > bound:
        raise BoundExceeded(f"|G| = {G.order} exceeds enumeration bound {bound}")
    tab = G.table
    found: dict[tuple, Subgroup] = {}
    for i in range(G.order):
        cyc = {0}
        x = i
        while x != 0:
            cyc.add(x)
            x = tab[x][i]
        sg = Subgroup(G, cyc, _checked=True)
        found.setdefault(sg.key, sg)
    fresh = list(found.values())
    while fresh:
        batch, fresh = fresh, []
        pool = list(found.values())
        for A in batch:
            for B in pool:
                if A.mask & B.mask in (A.mask, B.mask):
                    continue  # nested: join is the bigger one, already present
                J = join(A, B)
                if J.key not in found:
                    found[J.key] = J
                    fresh.append(J)
    return sorted(found.values(), key=Subgroup.sort_key)


# ---------------------------------------------------------------------------
# abstract groups (quotients) and isomorphism


class AbstractGroup:
    """A finite group given by its full multiplication table.

    Labels are 0..order-1 with the identity at 0.  The table is checked
    for identity, inverses and the Latin-square property at construction;
    associativity is verified when the order is within ``assoc_bound``.
    """

    __slots__ = ("order", "table", "_inv", "_orders")

    def __init__(self, table: Sequence[Sequence[int]],
                 assoc_bound: int = ASSOC_CHECK_BOUND):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_inv", None)
        object.__setattr__(self, "_orders", None)
        full = set(range(n))
        if any(len(row) != n for row in table):
            raise PermGroupError("table is not square")
        if any(table[0][j] != j or table[j][0] != j for j in range(n)):
            raise PermGroupError("label 0 is not an identity")
        for i in range(n):
            if set(table[i]) != full or {table[j][i] for j in range(n)} != full:
                raise PermGroupError("table is not a Latin square")
        for i in range(n):
            if not any(table[i][j] == 0 for j in range(n)):
                raise PermGroupError(f"label {i} has no inverse")
        if n <= assoc_bound:
            for a, b, c in itertools.product(range(n), repeat=3):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise PermGroupError("table is not associative")

    def __setattr__(self, *a):
        raise AttributeError("AbstractGroup is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, AbstractGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"AbstractGroup(order={self.order})"

    def inv(self, i: int) -> int:
        if self._inv is None:
            inv = [0] * self.order
            for i2 in range(self.order):
                for j in range(self.order):
                    if self.table[i2][j] == 0:
                        inv[i2] = j
                        break
            object.__setattr__(self, "_inv", tuple(inv))
        return self._inv[i]

    def element_orders(self) -> tuple:
        if self._orders is None:
            out = []
            for i in range(self.order):
                n, x = 1, i
                while x != 0:
                    x = self.table[x][i]
                    n += 1
                out.append(n)
            object.__setattr__(self, "_orders", tuple(out))
        return self._orders

    def iso_invariant(self) -> tuple:
        """(order, sorted element-order multiset): cheap isomorphism filter."""
        return (self.order, tuple(sorted(self.element_orders())))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i]
                   for i in range(self.order) for j in range(i + 1, self.order))

    def is_cyclic(self) -> bool:
        return self.order in self.element_orders()


def quotient(B: Subgroup, N: Subgroup) -> AbstractGroup:
    """B/N as an abstract group on canonical coset representatives.

    The representative of each coset is its minimal element in the
    parent's canonical order; cosets are labeled in increasing order of
    representative, which puts the identity coset at label 0.
    """
    if not is_normal(N, B):
        raise PermGroupError("quotient requires N normal in B")
    G = B.parent
    tab = G.table
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for i in B.key:  # ascending, so the first member seen is the minimum
        if i in coset_of:
            continue
        rep_label = len(reps)
        reps.append(i)
        for n in N.key:
            coset_of[tab[i][n]] = rep_label
    q = len(reps)
    table = [[coset_of[tab[reps[a]][reps[b]]] for b in range(q)] for a in range(q)]
    return AbstractGroup(table)


def _min_generating_set(A: AbstractGroup) -> tuple:
    """Greedy generating set by ascending label: small, not always minimum."""
    chosen: list[int] = []
    span = {0}
    for i in range(A.order):
        if i in span:
            continue
        chosen.append(i)
        frontier = list(span)
        span.add(i)
        frontier.append(i)
        while frontier:
            x = frontier.pop()
            for g in chosen:
                for y in (A.table[x][g], A.table[g][x]):
                    if y not in span:
                        span.add(y)
                        frontier.append(y)
        if len(span) == A.order:
            break
    return tuple(chosen)


def _close_homomorphism(A: AbstractGroup, B: AbstractGroup,
                        gens: Sequence[int], images: Sequence[int]) -> Optional[tuple]:
    """Extend gen |-> image to all of A; None on any inconsistency."""
    phi = {0: 0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, h in zip(gens, images):
            y = A.table[x][g]
            w = B.table[phi[x]][h]
            if y in phi:
                if phi[y] != w:
                    return None
            else:
                phi[y] = w
                frontier.append(y)
    if len(phi) != A.order:
        return None  # gens do not generate A (cannot happen for our gens)
    out = tuple(phi[i] for i in range(A.order))
    if len(set(out)) != A.order:
        return None
    # full homomorphism check; the closure above only covers a spanning tree
    for a in range(A.order):
        for b in range(A.order):
            if out[A.table[a][b]] != B.table[out[a]][out[b]]:
                return None
    return out


def are_isomorphic(G1: AbstractGroup, G2: AbstractGroup,
                   bound: int = ISOMORPHISM_BOUND) -> Optional[tuple]:
    """An explicit isomorphism as a label map G1 -> G2, or None.

    Backtracking on images of a greedy generating set of G1, pruned by
    element order.  Deterministic: candidates are tried in label order,
    the first isomorphism found is returned.
    """
    if G1.order > bound or G2.order > bound:
        raise BoundExceeded(f"order exceeds isomorphism bound {bound}")
    if G1.iso_invariant() != G2.iso_invariant():
        return None
    gens = _min_generating_set(G1)
    if not gens:  # trivial group
        return (0,)
    ord1 = G1.element_orders()
    ord2 = G2.element_orders()
    candidates = [
        tuple(j for j in range(G2.order) if ord2[j] == ord1[g]) for g in gens
    ]

    def backtrack(k: int, images: list) -> Optional[tuple]:
        if k == len(gens):
            return _close_homomorphism(G1, G2, gens, images)
        for j in candidates[k]:
            images.append(j)
            found = backtrack(k + 1, images)
            if found is not None:
                return found
            images.pop()
        return None

    return backtrack(0, [])


def _span(A: AbstractGroup, gens: Sequence[int]) -> set:
    """Label set of the subgroup generated by ``gens`` in the table group."""
    closed = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = A.table[x][g]
            if y not in closed:
                closed.add(y)
                frontier.append(y)
    return closed


def is_simple(A: AbstractGroup, bound: int = ISOMORPHISM_BOUND) -> bool:
    """True iff A has no proper nontrivial normal subgroup.

    Checks that the normal closure of every non-identity element is the
    whole group; the trivial group is not simple.
    """
    if A.order > bound:
        raise BoundExceeded(f"order exceeds bound {bound}")
    if A.order == 1:
        return False
    t = A.table
    n = A.order
    for g in range(1, n):
        gens = [g]
        sub = _span(A, gens)
        while len(sub) < n:
            new = [c for a in range(n) for s in gens
                   if (c := t[t[a][s]][A.inv(a)]) not in sub]
            if not new:
                break
            gens.extend(sorted(set(new)))
            sub = _span(A, gens)
        if len(sub) != n:
            return False
    return True


@lru_cache(maxsize=4096)
def _iso_cached(t1: tuple, t2: tuple) -> Optional[tuple]:
    return are_isomorphic(AbstractGroup(t1), AbstractGroup(t2))


def isomorphism(G1: AbstractGroup, G2: AbstractGroup) -> Optional[tuple]:
    """Memoized :func:`are_isomorphic` (tables are hashable)."""
    return _iso_cached(G1.table, G2.table)
