"""Nearest-neighbor spin lattices and the anisotropic Heisenberg Hamiltonian.

Sites are indexed row-major: on a rows x cols grid, qubit i = row * cols + col.
Boundaries are open; couplings are uniform per direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .pauli import PauliSum, PauliTerm


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry and couplings of a 1D chain or 2D open rectangular grid."""

    dimension: int
    extents: tuple[int, ...]
    Jx: float = 0.5
    Jy: float = 1.25
    Jz: float = 2.0
    hx: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "extents", tuple(int(e) for e in self.extents))
        if self.dimension not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.dimension}")
        if len(self.extents) != self.dimension:
            raise ValueError("extents length must equal dimension")
        if any(e < 1 for e in self.extents):
            raise ValueError("extents must be positive")
        if self.n_sites < 2:
            raise ValueError("lattice needs at least 2 sites")

    @property
    def n_sites(self) -> int:
        n = 1
        for e in self.extents:
            n *= e
        return n

    def site_index(self, *coords: int) -> int:
        if self.dimension == 1:
            return coords[0]
        row, col = coords
        return row * self.extents[1] + col

    def site_coords(self, i: int) -> tuple[int, ...]:
        if self.dimension == 1:
            return (i,)
        cols = self.extents[1]
        return (i // cols, i % cols)


def nearest_neighbor_pairs(lattice: LatticeSpec) -> list[tuple[int, int]]:
    """Undirected nearest-neighbor pairs (i < j) under open boundaries.

    1D pairs come in chain order; 2D lists all horizontal bonds (row-major)
    followed by all vertical bonds.
    """
    if lattice.dimension == 1:
        n = lattice.extents[0]
        return [(i, i + 1) for i in range(n - 1)]
    rows, cols = lattice.extents
    pairs = []
    for r in range(rows):
        for c in range(cols - 1):
            pairs.append((lattice.site_index(r, c), lattice.site_index(r, c + 1)))
    for r in range(rows - 1):
        for c in range(cols):
            pairs.append((lattice.site_index(r, c), lattice.site_index(r + 1, c)))
    return pairs


def build_heisenberg(lattice: LatticeSpec) -> PauliSum:
    """H = sum_alpha J_alpha sum_<ij> s^a_i s^a_j + hx sum_i s^x_i.

    Terms are ordered pair-by-pair (x, y, z couplings per bond), then the
    transverse-field terms site-by-site; zero-coefficient terms are dropped.
    """
    terms = []
    for i, j in nearest_neighbor_pairs(lattice):
        for alpha, coupling in (("X", lattice.Jx), ("Y", lattice.Jy), ("Z", lattice.Jz)):
            if coupling != 0.0:
                terms.append(PauliTerm(coupling, ((i, alpha), (j, alpha))))
    if lattice.hx != 0.0:
        for i in range(lattice.n_sites):
            terms.append(PauliTerm(lattice.hx, ((i, "X"),)))
    return PauliSum(tuple(terms))


def magnetization_x(lattice: LatticeSpec) -> PauliSum:
    """Total transverse magnetization sum_i s^x_i, as an alternative observable."""
    return PauliSum(tuple(PauliTerm(1.0, ((i, "X"),)) for i in range(lattice.n_sites)))
