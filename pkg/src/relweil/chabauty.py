"""Dimension and rank bookkeeping for Chabauty on relative Weil restrictions.

Ranks are inputs (from descent computations done elsewhere); this module
only combines them. For ``h: C -> B_L`` over an extension of degree ``n`` the
restriction's Jacobian contains an abelian subvariety ``F`` of dimension
``n*g(C) - (n-1)*g(B)`` and Mordell-Weil rank
``mw_L(C) - (mw_L(B_L) - mw_K(B))``; Chabauty applies when that rank is
below the genus of the restriction.
"""

import math
from dataclasses import asdict, dataclass, field

from relweil.errors import NegativeDimension, NegativeRank, PreconditionError

GENUS_ONE_NOTE = (
    "g(C) = 1: infinitely many points with rational image require C to be "
    "L-isogenous to an elliptic curve over K of positive rank; the isogeny "
    "quotient is not constructed here."
)
GENUS_ZERO_NOTE = (
    "g(C) = 0: the restriction may be rational (see the degree-two "
    "parametrization and the degree-three fiber-type analysis); finiteness "
    "is not implied."
)


@dataclass(frozen=True)
class ChabautyInput:
    n: int
    g_C: int
    g_B: int
    mw_L_C: int
    mw_L_BL: int
    mw_K_B: int
    genus_Ch: int
    degrees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 1:
            raise PreconditionError("extension degree n must be at least 1")
        if min(self.g_C, self.g_B) < 0:
            raise PreconditionError("genera must be nonnegative")
        if min(self.mw_L_C, self.mw_L_BL, self.mw_K_B) < 0:
            raise PreconditionError("ranks must be nonnegative")
        if self.mw_L_BL < self.mw_K_B:
            raise PreconditionError("rank over L cannot be smaller than rank over K")
        if any(d < 1 for d in self.degrees):
            raise PreconditionError("map degrees must be positive")
        if self.degrees and len(self.degrees) != self.n:
            raise PreconditionError(f"expected {self.n} map degrees, got {len(self.degrees)}")


@dataclass(frozen=True)
class IsogenyData:
    d: int
    multipliers: tuple
    kernel_dim: int
    torsion_modulus: int


@dataclass
class ChabautyReport:
    dim_F: int
    rank_F: int
    chabauty_applicable: bool
    faltings_finite: bool
    isogeny: IsogenyData
    genus_escape: str = None
    warnings: list = field(default_factory=list)

    def as_dict(self):
        return asdict(self)


def subvariety_dim(n, g_C, g_B):
    if n < 1 or g_C < 0 or g_B < 0:
        raise PreconditionError("need n >= 1 and nonnegative genera")
    dim = n * g_C - (n - 1) * g_B
    if dim < 0:
        raise NegativeDimension(f"n*g(C) - (n-1)*g(B) = {dim} < 0")
    return dim


def mw_rank_F(mw_L_C, mw_L_BL, mw_K_B):
    rank = mw_L_C - (mw_L_BL - mw_K_B)
    if rank < 0:
        raise NegativeRank(f"rank {mw_L_C} - ({mw_L_BL} - {mw_K_B}) = {rank} < 0")
    return rank


def isogeny_data(degrees, n, g_B):
    degrees = [int(x) for x in degrees]
    if not degrees or min(degrees) < 1:
        raise PreconditionError("map degrees must be positive")
    if n < 1 or g_B < 0:
        raise PreconditionError("need n >= 1 and g(B) >= 0")
    d = math.prod(degrees)
    return IsogenyData(d, tuple(d // di for di in degrees), (n - 1) * g_B, d)


def applicability_report(inp):
    dim = subvariety_dim(inp.n, inp.g_C, inp.g_B)
    rank = mw_rank_F(inp.mw_L_C, inp.mw_L_BL, inp.mw_K_B)
    iso = isogeny_data(inp.degrees or (1,) * inp.n, inp.n, inp.g_B)
    if dim != inp.n * inp.g_C - iso.kernel_dim:
        raise ArithmeticError("dimension and kernel dimension are inconsistent")
    report = ChabautyReport(
        dim_F=dim,
        rank_F=rank,
        chabauty_applicable=rank < inp.genus_Ch,
        faltings_finite=inp.g_C >= 2,
        isogeny=iso,
    )
    if inp.g_C == 1:
        report.genus_escape = GENUS_ONE_NOTE
    elif inp.g_C == 0:
        report.genus_escape = GENUS_ZERO_NOTE
    if inp.genus_Ch < 0:
        report.warnings.append(
            "negative arithmetic genus: the restriction is disconnected; the "
            "Chabauty condition must be checked on each component"
        )
    if not inp.degrees:
        report.warnings.append("map degrees not given; isogeny multipliers assume degree 1")
    return report
