"""Six-vertex model on a square lattice with domain-wall boundaries.

A state assigns an orientation to every edge so that each vertex has exactly
two arrows in and two arrows out (the ice rule).  Edges are stored as
booleans: h[i][j] is the horizontal edge left of vertex (i, j) with True
meaning "points right"; v[i][j] is the vertical edge above vertex (i, j)
with True meaning "points up".  Rows are counted from the top, so for a
square lattice of n vertices per row h has shape n x (n+1) and v has shape
(n+1) x n.

Domain-wall boundary conditions: boundary horizontal arrows point in
(leftmost right, rightmost left) and boundary vertical arrows point out
(top up, bottom down).

The six vertex kinds, by (left, right, top, bottom) edge booleans:

    ALPHA   (T,T,T,T)    ALPHA_P (F,F,F,F)
    BETA    (T,T,F,F)    BETA_P  (F,F,T,T)
    GAMMA   (T,F,T,F)    GAMMA_P (F,T,F,T)

Trigonometric weights with spectral parameter phi and crossing parameter eta:

    alpha = alpha' = sin(eta/2 - phi) / sin(eta)
    beta  = beta'  = sin(eta/2 + phi) / sin(eta)
    gamma = gamma' = 1
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import (CrossingParameterError, DegenerateCrossingError,
                     InvalidStateError, SizeGuardError)
from .numutil import rel_residual, stable_sum

MAX_ENUM_N = 7
ETA_COMBINATORIAL = 2.0 * math.pi / 3.0


class VertexKind(Enum):
    ALPHA = "alpha"
    ALPHA_P = "alpha_prime"
    BETA = "beta"
    BETA_P = "beta_prime"
    GAMMA = "gamma"
    GAMMA_P = "gamma_prime"

    @property
    def is_gamma(self) -> bool:
        return self in (VertexKind.GAMMA, VertexKind.GAMMA_P)


_KIND_FROM_EDGES = {
    (True, True, True, True): VertexKind.ALPHA,
    (False, False, False, False): VertexKind.ALPHA_P,
    (True, True, False, False): VertexKind.BETA,
    (False, False, True, True): VertexKind.BETA_P,
    (True, False, True, False): VertexKind.GAMMA,
    (False, True, False, True): VertexKind.GAMMA_P,
}


@dataclass(frozen=True)
class SixVertexState:
    """Edge orientations of one ice state; vertex kinds are derived on demand."""

    h: tuple[tuple[bool, ...], ...]
    v: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        rows = len(self.h)
        if rows == 0 or len(self.v) != rows + 1:
            raise InvalidStateError("edge arrays have inconsistent shapes")
        cols = len(self.v[0])
        if cols == 0 or any(len(r) != cols + 1 for r in self.h) or any(len(r) != cols for r in self.v):
            raise InvalidStateError("edge arrays have inconsistent shapes")
        for i in range(rows):
            for j in range(cols):
                if self.edges_at(i, j) not in _KIND_FROM_EDGES:
                    raise InvalidStateError(f"ice rule violated at vertex ({i}, {j})")

    @property
    def nrows(self) -> int:
        return len(self.h)

    @property
    def ncols(self) -> int:
        return len(self.v[0])

    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise InvalidStateError("state is not square")
        return self.nrows

    def edges_at(self, i: int, j: int) -> tuple[bool, bool, bool, bool]:
        """(left, right, top, bottom) edge booleans at 0-based vertex (i, j)."""
        return (self.h[i][j], self.h[i][j + 1], self.v[i][j], self.v[i + 1][j])

    def kind_at(self, i: int, j: int) -> VertexKind:
        return _KIND_FROM_EDGES[self.edges_at(i, j)]

    def kind_matrix(self) -> tuple[tuple[VertexKind, ...], ...]:
        return tuple(tuple(self.kind_at(i, j) for j in range(self.ncols))
                     for i in range(self.nrows))

    def satisfies_dwbc(self) -> bool:
        n_r, n_c = self.nrows, self.ncols
        return (all(self.h[i][0] for i in range(n_r))
                and not any(self.h[i][n_c] for i in range(n_r))
                and all(self.v[0][j] for j in range(n_c))
                and not any(self.v[n_r][j] for j in range(n_c)))

    def gamma_counts_odd(self) -> bool:
        """Odd number of gamma-type vertices in every row and every column."""
        kinds = self.kind_matrix()
        for i in range(self.nrows):
            if sum(kinds[i][j].is_gamma for j in range(self.ncols)) % 2 == 0:
                return False
        for j in range(self.ncols):
            if sum(kinds[i][j].is_gamma for i in range(self.nrows)) % 2 == 0:
                return False
        return True

    def to_json_obj(self) -> list[list[str]]:
        return [[k.value for k in row] for row in self.kind_matrix()]

    def sort_key(self):
        return (self.h, self.v)


@lru_cache(maxsize=None)
def _enumerate_dwbc(n: int) -> tuple[SixVertexState, ...]:
    states: list[SixVertexState] = []

    def fill_row(i: int, v_in: tuple[bool, ...], h_rows: list, v_rows: list) -> None:
        if i == n:
            if not any(v_in):
                states.append(SixVertexState(h=tuple(h_rows), v=tuple(v_rows) + (v_in,)))
            return

        def fill_vertex(j: int, left: bool, hrow: list, vout: list) -> None:
            if j == n:
                if not left:  # rightmost horizontal arrow must point in (left)
                    fill_row(i + 1, tuple(vout), h_rows + [tuple(hrow) + (left,)],
                             v_rows + [v_in])
                return
            top = v_in[j]
            n_in = (1 if left else 0) + (0 if top else 1)
            for right in (False, True):
                for bottom in (False, True):
                    if n_in + (0 if right else 1) + (1 if bottom else 0) == 2:
                        fill_vertex(j + 1, right, hrow + [left], vout + [bottom])

        fill_vertex(0, True, [], [])

    fill_row(0, tuple([True] * n), [], [])
    states.sort(key=SixVertexState.sort_key)
    return tuple(states)


def enumerate_dwbc_states(n: int) -> list[SixVertexState]:
    """All domain-wall ice states on the n x n lattice, in row-major
    lexicographic edge order.  Counts follow the alternating-sign-matrix
    sequence 1, 2, 7, 42, 429, ...
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise SizeGuardError(f"n = {n} outside the enumeration guard 1..{MAX_ENUM_N}")
    return list(_enumerate_dwbc(n))


@dataclass(frozen=True)
class SpectralAssignment:
    """Line rapidities: chi for horizontal lines (top first), psi for vertical
    lines (left first), plus the crossing parameter eta."""

    chi: tuple[complex, ...]
    psi: tuple[complex, ...]
    eta: complex = ETA_COMBINATORIAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", tuple(complex(x) for x in self.chi))
        object.__setattr__(self, "psi", tuple(complex(x) for x in self.psi))
        object.__setattr__(self, "eta", complex(self.eta))
        if len(self.chi) != len(self.psi):
            raise ValueError("chi and psi must have equal length")

    @property
    def n(self) -> int:
        return len(self.chi)

    def replace_chi(self, k: int, value: complex) -> "SpectralAssignment":
        """New assignment with chi_k (1-based) replaced."""
        chi = list(self.chi)
        chi[k - 1] = value
        return SpectralAssignment(chi=tuple(chi), psi=self.psi, eta=self.eta)

    def shift_chi(self, k: int, delta: complex) -> "SpectralAssignment":
        return self.replace_chi(k, self.chi[k - 1] + delta)

    def shift_psi(self, k: int, delta: complex) -> "SpectralAssignment":
        psi = list(self.psi)
        psi[k - 1] += delta
        return SpectralAssignment(chi=self.chi, psi=tuple(psi), eta=self.eta)

    def drop(self, k: int, l: int) -> "SpectralAssignment":
        """Remove chi_k and psi_l (1-based), for the reduced-lattice side of
        the recursion relations."""
        chi = tuple(x for i, x in enumerate(self.chi) if i != k - 1)
        psi = tuple(x for i, x in enumerate(self.psi) if i != l - 1)
        return SpectralAssignment(chi=chi, psi=psi, eta=self.eta)


def weight6v(kind: VertexKind, phi: complex, eta: complex) -> complex:
    """Trigonometric vertex weight at spectral parameter phi."""
    s = cmath.sin(eta)
    if abs(s) < 1e-12:
        raise DegenerateCrossingError(f"sin(eta) ~ 0 at eta = {eta}")
    if kind in (VertexKind.ALPHA, VertexKind.ALPHA_P):
        return cmath.sin(eta / 2 - phi) / s
    if kind in (VertexKind.BETA, VertexKind.BETA_P):
        return cmath.sin(eta / 2 + phi) / s
    return 1.0 + 0j


def _weight_table(assign: SpectralAssignment) -> dict[VertexKind, list[list[complex]]]:
    n = assign.n
    table = {}
    for kind in VertexKind:
        table[kind] = [[weight6v(kind, assign.chi[i] - assign.psi[j], assign.eta)
                        for j in range(n)] for i in range(n)]
    return table


def partition_function_6v(assign: SpectralAssignment) -> complex:
    """Domain-wall partition function: sum over ice states of the product of
    vertex weights at chi_i - psi_j.  Symmetric separately in the chi and in
    the psi variables; the empty lattice has Z_0 = 1."""
    n = assign.n
    if n == 0:
        return 1.0 + 0j
    table = _weight_table(assign)
    terms = []
    for state in enumerate_dwbc_states(n):
        w = 1.0 + 0j
        for i in range(n):
            for j in range(n):
                w *= table[state.kind_at(i, j)][i][j]
        terms.append(w)
    return stable_sum(terms)


def F_n_6v(assign: SpectralAssignment) -> complex:
    """Partition function dressed with the antisymmetrizing sine prefactor:

        F_n = prod_{i<j} sin(chi_i - chi_j) * prod_{i,j} sin(chi_i - psi_j)
              * prod_{i<j} sin(psi_i - psi_j) * Z_n
    """
    n = assign.n
    if n == 0:
        return 1.0 + 0j
    pre = 1.0 + 0j
    for i in range(n):
        for j in range(i + 1, n):
            pre *= cmath.sin(assign.chi[i] - assign.chi[j])
            pre *= cmath.sin(assign.psi[i] - assign.psi[j])
    for i in range(n):
        for j in range(n):
            pre *= cmath.sin(assign.chi[i] - assign.psi[j])
    return pre * partition_function_6v(assign)


def _require_combinatorial_eta(eta: complex) -> None:
    if abs(eta - ETA_COMBINATORIAL) > 1e-12:
        raise CrossingParameterError(
            f"functional sums require eta = 2*pi/3, got eta = {eta}")


def functional_sum_6v(assign: SpectralAssignment, k: int, side: str = "chi",
                      shift_sign: int | None = None) -> complex:
    """Three-term sum of F_n over 2*pi/3 shifts of one rapidity.

    side="chi" shifts chi_k by +2*pi*s/3, side="psi" shifts psi_k by
    -2*pi*s/3 (s = 0, 1, 2).  Both sums vanish identically at eta = 2*pi/3;
    shift_sign overrides the shift direction (the psi-side sum vanishes with
    either sign for this model).
    """
    _require_combinatorial_eta(assign.eta)
    if not 1 <= k <= assign.n:
        raise IndexError(f"k = {k} outside 1..{assign.n}")
    if side not in ("chi", "psi"):
        raise ValueError("side must be 'chi' or 'psi'")
    sign = shift_sign if shift_sign is not None else (1 if side == "chi" else -1)
    terms = _functional_terms_6v(assign, k, side, sign)
    return stable_sum(terms)


def _functional_terms_6v(assign, k, side, sign):
    terms = []
    for s in range(3):
        delta = sign * ETA_COMBINATORIAL * s
        shifted = assign.shift_chi(k, delta) if side == "chi" else assign.shift_psi(k, delta)
        terms.append(F_n_6v(shifted))
    return terms


def functional_residual_6v(assign: SpectralAssignment, k: int, side: str = "chi",
                           shift_sign: int | None = None) -> float:
    """|S| normalized by the largest of the three summands."""
    _require_combinatorial_eta(assign.eta)
    sign = shift_sign if shift_sign is not None else (1 if side == "chi" else -1)
    terms = _functional_terms_6v(assign, k, side, sign)
    return rel_residual(stable_sum(terms), 0.0, scale=max(abs(t) for t in terms))


def check_recursion_6v(assign: SpectralAssignment, k: int, l: int, sign: int,
                       form: str = "Z") -> float:
    """Relative residual of a reduce-by-one recursion at chi_k pinned to psi_l.

    form="Z": pin chi_k = psi_l + sign*eta/2; then

        Z_n = sin(eta)^{2-2n} * prod_{i!=k} sin(chi_i - psi_l + sign*eta/2)
              * prod_{i!=l} sin(psi_l - psi_i + sign*eta) * Z_{n-1}

    valid at any non-degenerate eta.  form="F": pin chi_k = psi_l + sign*pi/3
    with eta = 2*pi/3; then

        F_n = sign * (-1)^{n-k+l-1} * 4^{2-2n} * sin(2*pi/3)^{3-2n}
              * prod_{i!=k} sin(3(psi_l - chi_i)) * prod_{i!=l} sin(3(psi_l - psi_i))
              * F_{n-1}

    The (-1)^{n-k+l-1} sign carries the parity of moving the pinned pair to
    the corner through the antisymmetric prefactor; at k = l = n it reduces
    to (-1)^{n-1}.
    """
    n = assign.n
    if not (1 <= k <= n and 1 <= l <= n):
        raise IndexError(f"(k, l) = ({k}, {l}) outside 1..{n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if form not in ("Z", "F"):
        raise ValueError("form must be 'Z' or 'F'")
    eta = assign.eta

    if form == "Z":
        pinned = assign.replace_chi(k, assign.psi[l - 1] + sign * eta / 2)
        lhs = partition_function_6v(pinned)
        pre = cmath.sin(eta) ** (2 - 2 * n)
        for i in range(n):
            if i != k - 1:
                pre *= cmath.sin(pinned.chi[i] - assign.psi[l - 1] + sign * eta / 2)
        for i in range(n):
            if i != l - 1:
                pre *= cmath.sin(assign.psi[l - 1] - assign.psi[i] + sign * eta)
        rhs = pre * partition_function_6v(pinned.drop(k, l))
        return rel_residual(lhs, rhs)

    _require_combinatorial_eta(eta)
    pinned = assign.replace_chi(k, assign.psi[l - 1] + sign * math.pi / 3)
    lhs = F_n_6v(pinned)
    pre = (sign * (-1) ** (n - k + l - 1) * 4.0 ** (2 - 2 * n)
           * cmath.sin(ETA_COMBINATORIAL) ** (3 - 2 * n))
    for i in range(n):
        if i != k - 1:
            pre *= cmath.sin(3 * (assign.psi[l - 1] - pinned.chi[i]))
    for i in range(n):
        if i != l - 1:
            pre *= cmath.sin(3 * (assign.psi[l - 1] - assign.psi[i]))
    rhs = pre * F_n_6v(pinned.drop(k, l))
    return rel_residual(lhs, rhs)


def trig_cubic_residual(phi: complex) -> float:
    """Residual of sin(phi) sin(phi + pi/3) sin(phi + 2pi/3) = sin(3 phi)/4."""
    lhs = (cmath.sin(phi) * cmath.sin(phi + math.pi / 3)
           * cmath.sin(phi + 2 * math.pi / 3))
    return rel_residual(lhs, cmath.sin(3 * phi) / 4.0)
