"""Search policy for the d(Gamma) upper bound on split tori.

The exact linear algebra lives in :mod:`multlattice`; this module decides
which subtori to try, splits block-diagonal problems into independent
factors, picks canonical witnesses and records an audit trail.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError
from .multlattice import (
    ExponentMatrix,
    SubspaceCandidate,
    candidate_levels,
    candidate_term,
    gamma_rank,
)

DEFAULT_BOX = 2
DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class SearchPolicy:
    box: int = DEFAULT_BOX
    include_joins: bool = True
    max_candidates: int = DEFAULT_CAP
    threads: int = 1

    def __post_init__(self):
        if self.box < 1:
            raise DomainError("box bound B must be >= 1")
        if self.max_candidates < 2:
            raise DomainError("candidate cap must admit at least the zero and full lattices")


@dataclass
class SearchAudit:
    candidates: int = 0
    per_dim: dict[int, int] = field(default_factory=dict)
    first_box: int = 1
    blocks: int = 1

    def to_json(self) -> dict:
        return {
            "candidates": self.candidates,
            "per_dim": {str(k): v for k, v in sorted(self.per_dim.items())},
            "first_box": self.first_box,
            "blocks": self.blocks,
        }


def coordinate_blocks(M: ExponentMatrix) -> list[tuple[list[int], list[int]]]:
    """Split coordinates and generators into connected blocks.

    Coordinate i and generator j are linked when g_j has a non-torsion
    i-th coordinate.  Coordinates touched by no generator form singleton
    blocks with no generators; pure-torsion generators are dropped.
    """
    parent = list(range(M.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    touched = []
    for g in M.gens:
        coords = [i for i, sv in enumerate(g) if sv.exps]
        touched.append(coords)
        for a, b in zip(coords, coords[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for i in range(M.n):
        groups.setdefault(find(i), []).append(i)
    blocks = []
    for root in sorted(groups):
        coords = groups[root]
        gens = [j for j, c in enumerate(touched) if c and find(c[0]) == root]
        blocks.append((coords, gens))
    return blocks


def _search_block(M: ExponentMatrix, policy: SearchPolicy) -> tuple[int, SubspaceCandidate, SearchAudit]:
    levels = candidate_levels(M, policy.box, policy.include_joins, policy.max_candidates)
    ordered = sorted(levels)
    if policy.threads > 1:
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            terms = list(pool.map(lambda V: candidate_term(M, V), ordered))
    else:
        terms = [candidate_term(M, V) for V in ordered]
    bound = min(terms)
    witness = ordered[terms.index(bound)]
    audit = SearchAudit(candidates=len(ordered))
    for V in ordered:
        audit.per_dim[V.dim] = audit.per_dim.get(V.dim, 0) + 1
    audit.first_box = min(levels[V] for V, t in zip(ordered, terms) if t == bound)
    return bound, witness, audit


def _embed(V: SubspaceCandidate, coords: list[int], n: int) -> list[list[int]]:
    rows = []
    for r in V.basis:
        row = [0] * n
        for c, x in zip(coords, r):
            row[c] = x
        rows.append(row)
    return rows


def search_d_upper(M: ExponentMatrix, policy: SearchPolicy | None = None
                   ) -> tuple[int, SubspaceCandidate, SearchAudit]:
    """Upper bound for d(Gamma) on G_m^n with canonical witness and audit.

    Block-diagonal problems are solved per block and the witnesses summed:
    the infimum for a product is attained by a product subgroup, so the
    product candidate family loses nothing.  Within a block, ties go to the
    least (dim, HNF) candidate.
    """
    policy = policy or SearchPolicy()
    n = M.n
    if gamma_rank(M) == 0:
        audit = SearchAudit(candidates=1, per_dim={0: 1}, first_box=1, blocks=0)
        return 0, SubspaceCandidate.zero(n), audit
    total = 0
    rows: list[list[int]] = []
    audit = SearchAudit(candidates=0, first_box=1, blocks=0)
    for coords, gens in coordinate_blocks(M):
        if not gens:
            continue
        sub = M.subset(gens).project(coords)
        bound, witness, sub_audit = _search_block(sub, policy)
        total += bound
        rows.extend(_embed(witness, coords, n))
        audit.blocks += 1
        audit.candidates += sub_audit.candidates
        for d, c in sub_audit.per_dim.items():
            audit.per_dim[d] = audit.per_dim.get(d, 0) + c
        audit.first_box = max(audit.first_box, sub_audit.first_box)
    witness = SubspaceCandidate.from_rows(rows, n) if rows else SubspaceCandidate.zero(n)
    return total, witness, audit
