"""Based root data, Weyl groups, Kostant representatives, invariant inner product.

Lattices are realized inside an ambient Z^r.  The character lattice is the
quotient of Z^r by the span of declared relation vectors; weights are stored
as ambient vectors (half-integers allowed) and compared through the exact
orthogonal projection onto the complement of the relation span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .exactnum import Rat

WEYL_CLOSURE_BOUND = 10**6

Vec = tuple[Fraction, ...]


class DatumError(ValueError):
    """A based-root-datum axiom failed to hold."""


def _vec(values) -> Vec:
    return tuple(Fraction(v) for v in values)


def _dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _mat_vec(m, v) -> Vec:
    return tuple(_dot(row, v) for row in m)


def _mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def _identity(r):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(r)) for i in range(r))


def _mat_inverse(m):
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(m)
    aug = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise DatumError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [c * inv for c in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [c - f * d for c, d in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class Weight:
    """Ambient vector representing a character-lattice element of its datum.

    Equality is modulo the datum's relation span; the canonical form is the
    image under the datum's projection map.
    """

    datum: "BasedRootDatum"
    vec: Vec

    def __post_init__(self):
        if len(self.vec) != self.datum.rank:
            raise DatumError(
                f"weight arity {len(self.vec)} does not match rank {self.datum.rank}"
            )

    def canonical(self) -> Vec:
        cached = object.__getattribute__(self, "__dict__").get("_canonical")
        if cached is None:
            cached = self.datum.project(self.vec)
            object.__setattr__(self, "_canonical", cached)
        return cached

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.datum, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.datum, tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> "Weight":
        return Weight(self.datum, tuple(-a for a in self.vec))

    def __rmul__(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(self.datum, tuple(c * a for a in self.vec))

    def pair(self, covec) -> Fraction:
        """Pairing with a cocharacter vector (exact dot product)."""
        return _dot(self.vec, _vec(covec))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.canonical())

    def _check(self, other: "Weight") -> None:
        if self.datum is not other.datum:
            raise DatumError("weights belong to different based root data")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Weight):
            return NotImplemented
        return self.datum is other.datum and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((id(self.datum), self.canonical()))

    def __repr__(self):
        entries = " ".join(str(c) for c in self.vec)
        return f"Weight({entries})"


@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on the ambient character lattice, with sign."""

    datum: "BasedRootDatum"
    matrix: tuple[tuple[int, ...], ...]
    sign: int

    def act(self, w: Weight) -> Weight:
        if w.datum is not self.datum:
            raise DatumError("weight belongs to a different datum")
        return Weight(self.datum, _mat_vec(self.matrix, w.vec))

    def act_vec(self, v) -> Vec:
        return _mat_vec(self.matrix, _vec(v))

    @cached_property
    def inverse_matrix(self):
        return tuple(
            tuple(int(c) for c in row) for row in _mat_inverse(self.matrix)
        )

    def act_inverse_vec(self, v) -> Vec:
        return _mat_vec(self.inverse_matrix, _vec(v))

    def coact_exponents(self, k: tuple[int, ...]) -> tuple[int, ...]:
        """Induced action on torsion-element exponent vectors."""
        cols = list(zip(*self.inverse_matrix))
        return tuple(int(_dot(col, k)) for col in cols)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.datum is not self.datum:
            raise DatumError("mixed data")
        prod = _mat_mul(self.matrix, other.matrix)
        m = tuple(tuple(int(c) for c in row) for row in prod)
        return WeylElement(self.datum, m, self.sign * other.sign)

    def is_identity(self) -> bool:
        return self.matrix == tuple(
            tuple(1 if i == j else 0 for j in range(self.datum.rank))
            for i in range(self.datum.rank)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.datum is other.datum and self.matrix == other.matrix

    def __hash__(self):
        return hash((id(self.datum), self.matrix))


@dataclass(frozen=True)
class LeviDescriptor:
    """Root-subset data for a cuspidal Levi subgroup.

    Index lists refer to positive roots of the owning datum; both signs of
    each listed root belong to the subsystem.  Imaginary roots span the part
    seen by the elliptic torus, real roots the split directions.
    """

    name: str
    imaginary_indices: tuple[int, ...]
    real_indices: tuple[int, ...]
    dim_a_quot: int


class BasedRootDatum:
    """Roots, coroots and lattice data for one reductive group.

    roots/coroots are ambient integer vectors; the first half of the root
    list is positive (each negative root is the exact negation of its
    positive partner, in the same order).
    """

    def __init__(
        self,
        name: str,
        rank: int,
        char_relations=(),
        cochar_kernel=(),
        roots=(),
        coroots=(),
        simple_indices=(),
        inner_matrix=None,
        central_exponents=None,
    ):
        self.name = name
        self.rank = rank
        self.char_relations = tuple(_vec(v) for v in char_relations)
        self.cochar_kernel = tuple(_vec(v) for v in cochar_kernel)
        self._root_vecs = tuple(_vec(v) for v in roots)
        self._coroot_vecs = tuple(_vec(v) for v in coroots)
        self.simple_indices = tuple(simple_indices)
        self.inner_matrix = (
            _identity(rank)
            if inner_matrix is None
            else tuple(tuple(Fraction(c) for c in row) for row in inner_matrix)
        )
        self.central_exponents = (
            None if central_exponents is None else tuple(int(c) for c in central_exponents)
        )
        self._sub_cache: dict = {}
        self.validate()

    # -- lattice ---------------------------------------------------------

    @cached_property
    def projection(self):
        """Orthogonal projector killing the relation span, exact over Q."""
        if not self.char_relations:
            return _identity(self.rank)
        b_cols = self.char_relations
        gram = tuple(tuple(_dot(u, v) for v in b_cols) for u in b_cols)
        gram_inv = _mat_inverse(gram)
        r = self.rank
        proj = [[Fraction(1 if i == j else 0) for j in range(r)] for i in range(r)]
        for a, u in enumerate(b_cols):
            for b, v in enumerate(b_cols):
                c = gram_inv[a][b]
                if c:
                    for i in range(r):
                        for j in range(r):
                            proj[i][j] -= c * u[i] * v[j]
        return tuple(tuple(row) for row in proj)

    def project(self, v) -> Vec:
        return _mat_vec(self.projection, _vec(v))

    @cached_property
    def bilinear(self):
        """Matrix of the invariant form pulled back through the projection."""
        proj = self.projection
        return _mat_mul(proj, _mat_mul(self.inner_matrix, proj))

    def weight(self, values) -> Weight:
        return Weight(self, _vec(values))

    # -- roots -----------------------------------------------------------

    def root(self, i: int) -> Weight:
        return Weight(self, self._root_vecs[i])

    def coroot(self, i: int) -> Vec:
        return self._coroot_vecs[i]

    @property
    def num_roots(self) -> int:
        return len(self._root_vecs)

    @property
    def positive_count(self) -> int:
        return len(self._root_vecs) // 2

    @property
    def positive_indices(self) -> range:
        return range(self.positive_count)

    def positive_roots(self) -> list[Weight]:
        return [self.root(i) for i in self.positive_indices]

    @cached_property
    def _root_table(self):
        table = {}
        for i, v in enumerate(self._root_vecs):
            table[self.project(v)] = i
        return table

    def find_root(self, vec) -> int | None:
        return self._root_table.get(self.project(vec))

    def is_positive_root_vec(self, vec) -> bool:
        i = self.find_root(vec)
        if i is None:
            raise DatumError("vector is not a root of this datum")
        return i < self.positive_count

    # -- invariants ------------------------------------------------------

    def validate(self) -> None:
        r = self.rank
        for v in self.char_relations + self.cochar_kernel + self._root_vecs + self._coroot_vecs:
            if len(v) != r:
                raise DatumError(f"vector arity {len(v)} does not match rank {r}")
        if len(self._root_vecs) != len(self._coroot_vecs):
            raise DatumError("roots and coroots must be paired")
        if len(self._root_vecs) % 2 != 0:
            raise DatumError("roots must come in opposite pairs")
        n = self.positive_count
        for i in range(n):
            neg = tuple(-c for c in self._root_vecs[i])
            if self._root_vecs[n + i] != neg:
                raise DatumError(f"root {n + i} is not the negation of root {i}")
            cneg = tuple(-c for c in self._coroot_vecs[i])
            if self._coroot_vecs[n + i] != cneg:
                raise DatumError(f"coroot {n + i} is not the negation of coroot {i}")
        for i, (a, av) in enumerate(zip(self._root_vecs, self._coroot_vecs)):
            if _dot(a, av) != 2:
                raise DatumError(f"pairing <alpha, alpha^vee> != 2 at root {i}")
        for rel in self.char_relations:
            for i, av in enumerate(self._coroot_vecs):
                if _dot(rel, av) != 0:
                    raise DatumError(f"relation vector does not annihilate coroot {i}")
        for idx in self.simple_indices:
            if not (0 <= idx < n):
                raise DatumError(f"simple-root index {idx} is not a positive-root index")
        for row in self.inner_matrix:
            if len(row) != r:
                raise DatumError("inner-product matrix must be rank x rank")
        for i in range(r):
            for j in range(r):
                if self.inner_matrix[i][j] != self.inner_matrix[j][i]:
                    raise DatumError("inner-product matrix must be symmetric")
        if self._root_vecs:
            self._validate_positivity()
            self._validate_reflections()

    def _validate_positivity(self) -> None:
        # every positive root must be a nonnegative rational combination of simples
        simples = [self.project(self._root_vecs[i]) for i in self.simple_indices]
        if not simples:
            raise DatumError("nonempty root set requires simple roots")
        for i in self.positive_indices:
            coeffs = _solve_in_span(simples, self.project(self._root_vecs[i]))
            if coeffs is None or any(c < 0 for c in coeffs):
                raise DatumError(
                    f"root {i} is not a nonnegative combination of the simple roots"
                )

    def _validate_reflections(self) -> None:
        for s in self.simple_indices:
            refl = self.simple_reflection(s)
            for i in range(self.num_roots):
                if self.find_root(refl.act_vec(self._root_vecs[i])) is None:
                    raise DatumError(
                        f"simple reflection {s} does not permute the root set"
                    )

    # -- inner product and q ----------------------------------------------

    def inner(self, lam: Weight, mu: Weight) -> Rat:
        """Invariant inner product, well-defined on relation classes."""
        if lam.datum is not self or mu.datum is not self:
            raise DatumError("weights belong to a different based root datum")
        return _dot(lam.vec, _mat_vec(self.bilinear, mu.vec))

    @cached_property
    def _root_forms(self):
        """Per-root row of the bilinear form: inner(root_i, mu) = row . mu.vec."""
        return tuple(_mat_vec(self.bilinear, v) for v in self._root_vecs)

    def root_inner(self, i: int, mu: Weight) -> Rat:
        return _dot(self._root_forms[i], mu.vec)

    def q_value(self) -> int:
        """Half of (number of positive roots + dimension of their span)."""
        dim = _rank_of([self.project(v) for v in self._root_vecs])
        twice = self.positive_count + dim
        if twice % 2 != 0:
            raise DatumError("q is not an integer; malformed datum")
        return twice // 2

    @cached_property
    def _rho(self) -> Weight:
        total = [Fraction(0)] * self.rank
        for i in self.positive_indices:
            for j, c in enumerate(self._root_vecs[i]):
                total[j] += c
        return Weight(self, tuple(c / 2 for c in total))

    def half_sum_positive(self) -> Weight:
        return self._rho

    def is_dominant(self, lam: Weight) -> bool:
        return self.dominance_violation(lam) is None

    def dominance_violation(self, lam: Weight) -> int | None:
        for s in self.simple_indices:
            if self.root_inner(s, lam) < 0:
                return s
        return None

    # -- Weyl group --------------------------------------------------------

    def simple_reflection(self, i: int) -> WeylElement:
        return self.reflection(i)

    def reflection(self, i: int) -> WeylElement:
        """Reflection in root i: x -> x - <x, alpha_i^vee> alpha_i."""
        alpha = self._root_vecs[i]
        covec = self._coroot_vecs[i]
        r = self.rank
        m = tuple(
            tuple(
                int((1 if j == k else 0) - alpha[j] * covec[k])
                for k in range(r)
            )
            for j in range(r)
        )
        elt = WeylElement(self, m, -1)
        return elt

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        """Full Weyl group, identity first, each element carrying its sign."""
        idm = tuple(tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank))
        identity = WeylElement(self, idm, 1)
        if not self._root_vecs:
            return (identity,)
        gens = [self.reflection(i) for i in self.simple_indices]
        seen = {identity.matrix: identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = s * g
                    if h.matrix not in seen:
                        if len(seen) >= WEYL_CLOSURE_BOUND:
                            raise DatumError(
                                "Weyl closure exceeded the safety bound; datum is not finite"
                            )
                        seen[h.matrix] = h
                        nxt.append(h)
            frontier = nxt
        elements = [identity] + [e for m, e in seen.items() if m != identity.matrix]
        return tuple(
            WeylElement(self, e.matrix, self._sign_by_inversions(e)) for e in elements
        )

    def _sign_by_inversions(self, elt: WeylElement) -> int:
        flips = 0
        for i in self.positive_indices:
            if not self.is_positive_root_vec(elt.act_vec(self._root_vecs[i])):
                flips += 1
        return -1 if flips % 2 else 1

    # -- subsystems --------------------------------------------------------

    def sub_datum(self, positive_indices, name: str | None = None) -> "BasedRootDatum":
        """Closed subsystem spanned by the given positive roots of this datum."""
        key = (tuple(positive_indices), name)
        cached = self._sub_cache.get(key)
        if cached is not None:
            return cached
        pos = list(dict.fromkeys(positive_indices))
        for i in pos:
            if not (0 <= i < self.positive_count):
                raise DatumError(f"index {i} is not a positive-root index")
        roots = [self._root_vecs[i] for i in pos] + [
            tuple(-c for c in self._root_vecs[i]) for i in pos
        ]
        coroots = [self._coroot_vecs[i] for i in pos] + [
            tuple(-c for c in self._coroot_vecs[i]) for i in pos
        ]
        simple = _simples_within(self, pos)
        sub = BasedRootDatum(
            name or f"{self.name}[{','.join(map(str, pos))}]",
            self.rank,
            self.char_relations,
            self.cochar_kernel,
            roots,
            coroots,
            simple,
            self.inner_matrix,
            self.central_exponents,
        )
        self._sub_cache[key] = sub
        return sub

    def levi_sub_data(self, levi: LeviDescriptor) -> tuple["BasedRootDatum", "BasedRootDatum"]:
        """(L, M) sub-data for a Levi descriptor: real and imaginary subsystems."""
        return (
            self.sub_datum(levi.real_indices, f"{self.name}:{levi.name}:real"),
            self.sub_datum(levi.imaginary_indices, f"{self.name}:{levi.name}:imag"),
        )

    def __repr__(self):
        return f"BasedRootDatum({self.name!r}, rank={self.rank}, roots={self.num_roots})"


def _simples_within(datum: BasedRootDatum, pos: list[int]) -> list[int]:
    """Indices (into the new positive list) of subsystem simple roots."""
    keys = [datum.project(datum._root_vecs[i]) for i in pos]
    simple = []
    for k, target in enumerate(keys):
        decomposable = any(
            tuple(a + b for a, b in zip(keys[i], keys[j])) == target
            for i in range(len(pos))
            for j in range(len(pos))
        )
        if not decomposable:
            simple.append(k)
    return simple


def _rank_of(vectors) -> int:
    rows = [list(v) for v in vectors if any(c != 0 for c in v)]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _solve_in_span(basis: list[Vec], target: Vec):
    """Coefficients expressing target in the given basis, or None."""
    if not basis:
        return None if any(c != 0 for c in target) else []
    rows = [[basis[j][i] for j in range(len(basis))] + [target[i]] for i in range(len(target))]
    n = len(basis)
    rank = 0
    pivots = []
    for col in range(n):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [c * inv for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    coeffs = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        coeffs[col] = rows[r][n]
    # consistency: rows beyond the rank must be reduced to zero
    for r in range(rank, len(rows)):
        if rows[r][n] != 0:
            return None
    # the solution must actually reproduce the target (pivotless columns stay 0)
    for i in range(len(target)):
        if sum((coeffs[j] * basis[j][i] for j in range(n)), Fraction(0)) != target[i]:
            return None
    return coeffs


# -- module-level operation surface -------------------------------------------


def weyl_group(datum: BasedRootDatum) -> tuple[WeylElement, ...]:
    return datum.weyl_group


def half_sum_positive(datum: BasedRootDatum) -> Weight:
    return datum.half_sum_positive()


def q_value(datum: BasedRootDatum) -> int:
    return datum.q_value()


def inner(datum: BasedRootDatum, lam: Weight, mu: Weight) -> Rat:
    return datum.inner(lam, mu)


@lru_cache(maxsize=None)
def kostant_set(datum: BasedRootDatum, levi: LeviDescriptor) -> tuple[WeylElement, ...]:
    """Elements w with w^-1(alpha) > 0 for every positive real or imaginary root."""
    checked = sorted(set(levi.real_indices) | set(levi.imaginary_indices))
    out = []
    for w in datum.weyl_group:
        ok = True
        for i in checked:
            if not datum.is_positive_root_vec(w.act_inverse_vec(datum._root_vecs[i])):
                ok = False
                break
        if ok:
            out.append(w)
    out.sort(key=lambda w: not w.is_identity())
    return tuple(out)


@lru_cache(maxsize=None)
def builtin(name: str) -> BasedRootDatum:
    """Load one of the shipped group definitions by name (singleton per name)."""
    from . import groupdef

    return groupdef.load_group(name).to_datum()


@lru_cache(maxsize=None)
def builtin_levis(name: str) -> dict[str, LeviDescriptor]:
    from . import groupdef

    return groupdef.load_group(name).levi_descriptors()
