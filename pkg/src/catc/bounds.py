"""Closed-form facet-count arithmetic for the semi-linear lower bound.

Gale's evenness formula gives the facet count of the cyclic polytope
C(n, 2m) (hull of n moment-curve points in R^{2m}, n > 2m) as
binom(n-m, m) + binom(n-m-1, m-1).  Projecting C(4m+1, 2m) to the first
2m coordinates yields C(4m+1, m), whose facet count grows exponentially,
while the facet bound ties the squared limit-computation cost from above;
the table below makes the resulting super-polynomial cost growth explicit.

All arithmetic is exact big-integer; facet enumeration of actual polytopes
is deliberately not implemented (a small stored fixture cross-checks the
formula in the tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def cyclic_polytope_facets(n, m):
    """binom(n-m, m) + binom(n-m-1, m-1), valid for n > 2m >= 2."""
    if m < 1 or n <= 2 * m:
        raise DomainError(f"cyclic polytope formula needs n > 2m >= 2, got "
                          f"n={n}, m={m}")
    return math.comb(n - m, m) + math.comb(n - m - 1, m - 1)


@dataclass(frozen=True)
class GrowthRow:
    m: int
    preimage_cost_bound: int  # facets of the preimage C(4m+1, 2m)
    projected_facets: int  # facets of the projection C(4m+1, m)
    facet_lower_bound_on_cost: int  # ceil(sqrt(projected_facets))

    def as_dict(self):
        return {
            "m": self.m,
            "preimageCostBound": self.preimage_cost_bound,
            "projectedFacets": self.projected_facets,
            "facetLowerBoundOnCost": self.facet_lower_bound_on_cost,
        }


def sl_growth_table(m_max):
    """One row per m: exponential projected facets vs the isqrt cost bound.

    Note: the source material quotes the preimage facet count as 4m, but
    its own formula evaluates to 4m + 1; the formula value is reported here
    and the discrepancy is only flagged (see the tests), never asserted.
    """
    if not 1 <= m_max <= 30:
        raise DomainError("m_max must lie in 1..30")
    rows = []
    for m in range(1, m_max + 1):
        pre = cyclic_polytope_facets(4 * m + 1, 2 * m)
        proj = cyclic_polytope_facets(4 * m + 1, m)
        lower = math.isqrt(proj - 1) + 1 if proj > 0 else 0
        rows.append(GrowthRow(m, pre, proj, lower))
    return rows


# Direct-substitution values the paper states for the preimage, kept so the
# documentation and tests can flag the off-by-one without asserting it.
def paper_preimage_claim(m):
    return 4 * m
