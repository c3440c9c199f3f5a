"""Euler characteristics and Hodge numbers of branched double covers.

For a nef-partition on a reflexive polytope the cover Y -> X is branched
along the union of the nef divisors and the toric boundary.  Its Euler
characteristic is governed by the lattice volume of the pyramid Lambda over
the Cayley polytope of the part polytopes:

    chi(Y) = chi(X) + (-1)^n * vol(Lambda),   vol(Lambda) = chi(X_dual),

and the identity vol(Lambda) = chi(X_dual) is asserted — its failure signals
a violated smoothness hypothesis.  Hodge numbers off the middle degree are
inherited from the toric base; middle-degree numbers follow from chi in
dimensions 2 and 3.
"""

from dataclasses import dataclass, field

from .errors import FracmirrorError, SmoothnessError
from .polytope import cayley_polytope, pyramid_over

__all__ = [
    "CoverTopology",
    "HodgeTable",
    "euler_mpcp",
    "dk_intersection_euler",
    "euler_double_cover",
    "euler_snc_union_oracle",
    "hodge_numbers",
]


def euler_mpcp(delta):
    """Euler characteristic of the crepant-resolved toric variety of delta.

    Equals the normalized volume of the polar dual (the number of maximal
    cones in a unimodular triangulation of its face fan).
    """
    return delta.polar_dual().normalized_volume()


def dk_intersection_euler(part_polytopes, n):
    """chi of the open intersection D_1 ∩ ... ∩ D_r ∩ T inside the torus.

    Alternating sum over nonempty index subsets I of the normalized volumes
    of the pyramids over the Cayley polytopes of the chosen parts; each
    volume is taken in the affine span of its pyramid.
    """
    parts = list(part_polytopes)
    if not parts:
        raise ValueError("need at least one divisor polytope")
    if any(P.ambient_dim != n for P in parts):
        raise ValueError("part polytopes must live in rank-n lattice")
    r = len(parts)
    total = 0
    for mask in range(1, 1 << r):
        chosen = [parts[i] for i in range(r) if mask >> i & 1]
        size = len(chosen)
        lam = pyramid_over(cayley_polytope(chosen))
        total += (-1) ** (n + size) * lam.normalized_volume()
    return total


@dataclass(frozen=True)
class HodgeTable:
    """Hodge numbers of the cover as a {(p, q): value} table."""

    table: dict
    complete: bool = True
    note: str | None = None

    def get(self, p, q):
        return self.table.get((p, q))

    def to_json(self):
        return {
            "h": {f"{p},{q}": v for (p, q), v in sorted(self.table.items())},
            "complete": self.complete,
            "note": self.note,
        }


def hodge_numbers(data, chi):
    """Hodge numbers of the double cover Y with Euler characteristic chi.

    Off-middle numbers are those of the smooth toric base, with
    h^{1,1} = (#boundary lattice points of the dual polytope) - n; the middle
    row comes from chi in dimensions 2 and 3.  For n > 3 the off-middle part
    is returned with ``complete=False``.
    """
    n = data.delta.ambient_dim
    rays = data.delta.polar_dual().boundary_lattice_point_count()
    h11 = rays - n
    table = {}
    if n == 2:
        table[(0, 0)] = table[(2, 2)] = 1
        table[(1, 0)] = table[(0, 1)] = table[(2, 1)] = table[(1, 2)] = 0
        table[(2, 0)] = table[(0, 2)] = 1
        table[(1, 1)] = chi - 4
        return HodgeTable(table)
    if n == 3:
        for p in range(4):
            for q in range(4):
                if p + q != 3:
                    table[(p, q)] = 0
        table[(0, 0)] = table[(3, 3)] = 1
        table[(1, 1)] = table[(2, 2)] = h11
        if chi % 2 != 0:
            raise FracmirrorError("odd Euler characteristic for a threefold")
        h21 = h11 - chi // 2
        table[(3, 0)] = table[(0, 3)] = 1
        table[(2, 1)] = table[(1, 2)] = h21
        return HodgeTable(table)
    # n > 3: only the inherited off-middle entries are known here
    for p in range(n + 1):
        for q in range(n + 1):
            if p + q != n and p != q:
                table[(p, q)] = 0
    table[(0, 0)] = table[(n, n)] = 1
    table[(1, 1)] = table[(n - 1, n - 1)] = h11
    return HodgeTable(table, complete=False, note="middle Hodge numbers not determined")


@dataclass(frozen=True)
class CoverTopology:
    """Topological data of the dual pair of branched double covers."""

    n: int
    chi_X: int
    chi_X_dual: int
    vol_Lambda: int
    vol_Lambda_dual: int
    chi_Y: int
    chi_Y_dual: int
    hodge: HodgeTable = field(compare=False)
    hodge_dual: HodgeTable = field(compare=False)

    def to_json(self):
        return {
            "n": self.n,
            "chi_X": self.chi_X,
            "chi_X_dual": self.chi_X_dual,
            "vol_Lambda": self.vol_Lambda,
            "vol_Lambda_dual": self.vol_Lambda_dual,
            "chi_Y": self.chi_Y,
            "chi_Y_dual": self.chi_Y_dual,
            "hodge": self.hodge.to_json(),
            "hodge_dual": self.hodge_dual.to_json(),
        }


def euler_double_cover(data):
    """Full topological test for a nef-partition: chi's, vol(Lambda), Hodge.

    Raises :class:`SmoothnessError` when vol(Lambda) differs from the Euler
    characteristic of the mirror toric variety on either side.
    """
    n = data.delta.ambient_dim
    chi_X = euler_mpcp(data.delta)
    chi_X_dual = euler_mpcp(data.nabla)
    lam = pyramid_over(cayley_polytope(data.parts_delta))
    vol_lambda = lam.normalized_volume()
    if vol_lambda != chi_X_dual:
        raise SmoothnessError(
            f"vol(Λ) ≠ χ(X∨): {vol_lambda} != {chi_X_dual}; "
            "smoothness hypothesis violated"
        )
    dual = data.dual_data()
    lam_dual = pyramid_over(cayley_polytope(dual.parts_delta))
    vol_lambda_dual = lam_dual.normalized_volume()
    if vol_lambda_dual != chi_X:
        raise SmoothnessError(
            f"vol(Λ) ≠ χ(X∨) on the dual side: {vol_lambda_dual} != {chi_X}; "
            "smoothness hypothesis violated"
        )
    chi_Y = chi_X + (-1) ** n * chi_X_dual
    chi_Y_dual = chi_X_dual + (-1) ** n * chi_X
    return CoverTopology(
        n=n,
        chi_X=chi_X,
        chi_X_dual=chi_X_dual,
        vol_Lambda=vol_lambda,
        vol_Lambda_dual=vol_lambda_dual,
        chi_Y=chi_Y,
        chi_Y_dual=chi_Y_dual,
        hodge=hodge_numbers(data, chi_Y),
        hodge_dual=hodge_numbers(dual, chi_Y_dual),
    )


def euler_snc_union_oracle(chi_X, strata):
    """Inclusion–exclusion cross-check: chi(D) of an SNC union and chi(Y).

    ``strata`` maps frozensets (or tuples) of component labels to the Euler
    characteristic of the corresponding intersection; empty intersections
    must be listed with value 0.  Returns ``(chi_D, chi_Y)`` with
    chi(Y) = 2*chi(X) - chi(D).
    """
    table = {}
    for key, value in strata.items():
        if isinstance(key, (str, int)):
            key = (key,)
        table[frozenset(key)] = int(value)
    components = sorted({c for key in table for c in key}, key=str)
    if not components:
        return 0, 2 * chi_X
    missing = []
    r = len(components)
    chi_D = 0
    for mask in range(1, 1 << r):
        subset = frozenset(components[i] for i in range(r) if mask >> i & 1)
        if subset not in table:
            missing.append("∩".join(str(c) for c in sorted(subset, key=str)))
            continue
        chi_D += (-1) ** (len(subset) + 1) * table[subset]
    if missing:
        raise FracmirrorError(
            "strata table is missing intersections: " + ", ".join(sorted(missing))
        )
    return chi_D, 2 * chi_X - chi_D
