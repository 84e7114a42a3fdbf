"""Reproduction harness for the worked examples (``verify-paper``)."""

from __future__ import annotations

from dataclasses import dataclass

from . import reference as ref
from .action import SemilinearMap, automorphism_group, closure, is_automorphism
from .codes import (
    analyze,
    desarguesian_spread,
    is_spread,
    lift,
    lifted_block_map,
    min_rank_distance,
    rank_automorphisms,
    spread_aut_order,
    spread_automorphism_generators,
)
from .field import field_make
from .isometry import isometric
from .linalg import DEFAULT_CAP, MatrixGF, enumerate_gl, gl_order
from .poly import PolyGF


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def spread_checks(q: int, cap: int, jobs: int, full_scan: bool) -> list[Check]:
    d = ref.spread_data(q)
    F, poly = d["field"], d["poly"]
    tag = f"spread_q{q}"
    out = []
    C = desarguesian_spread(F, 2, 4, poly)
    listing = ref.spread_listing(q)
    same_order = list(C.words) == list(listing.words)
    out.append(Check(f"{tag}.codewords", C == listing and same_order,
                     f"{len(C)} codewords, listing order {'matches' if same_order else 'differs'}"))
    out.append(Check(f"{tag}.is_spread", is_spread(C), f"cardinality (q^4-1)/(q^2-1) = {(q**4 - 1) // (q**2 - 1)}"))
    rep = analyze(C)
    out.append(Check(f"{tag}.min_distance", rep.min_subspace_distance == 4,
                     f"min d_S = {rep.min_subspace_distance}"))
    gens = d["generators"]
    ok = [is_automorphism(C, g) for g in gens]
    out.append(Check(f"{tag}.generators_preserve", all(ok), f"{sum(ok)}/{len(gens)} generators are automorphisms"))
    G = closure(gens, cap)
    expected = ref.SPREAD_AUT_ORDER[q]
    out.append(Check(f"{tag}.closure_order", G.order == expected and not G.truncated, f"order {G.order}"))
    A = automorphism_group(C, "linear", "brute", cap=cap, jobs=jobs)
    out.append(Check(f"{tag}.brute_aut_order", A.order == expected,
                     f"order {A.order} over {A.notes['candidates']} candidates in GL_4({q})"))
    out.append(Check(f"{tag}.closure_equals_brute", G.keys == A.keys, "generated group equals the full stabilizer"
                     if G.keys == A.keys else "sets differ"))
    if full_scan:
        B = automorphism_group(C, "linear", "brute", cap=cap, jobs=jobs, prune=False)
        out.append(Check(f"{tag}.unpruned_scan", B.keys == A.keys,
                         f"order {B.order}, every candidate tested on complete matrices"))
    return out


def lift_checks(cap: int, jobs: int) -> list[Check]:
    R = ref.rank_code()
    C = lift(R)
    out = [Check("lifted.min_rank_distance", min_rank_distance(R) == 1, f"min d_R = {min_rank_distance(R)}")]
    rep = analyze(C)
    out.append(Check("lifted.min_distance", rep.min_subspace_distance == 2, f"min d_S = {rep.min_subspace_distance}"))
    A = automorphism_group(C, "linear", "brute", cap=cap, jobs=jobs)
    out.append(Check("lifted.brute_aut_order", A.order == ref.LIFTED_AUT_ORDER,
                     f"order {A.order} over {A.notes['candidates']} candidates in GL_4(2)"))
    RA = rank_automorphisms(R, cap)
    expected = {MatrixGF.from_rows(x, R.field) for x in ref.RANK_CODE_AUT}
    out.append(Check("lifted.rank_automorphisms", RA == expected, f"{len(RA)} matrices, unitriangular"
                     if RA == expected else f"{sorted(m.to_rows() for m in RA)}"))
    # block maps diag(I_2, X) in Aut(lift R), found two ways: inside the brute group, and by direct test
    in_group = {X for X in enumerate_gl(R.m, R.field, cap) if SemilinearMap(lifted_block_map(R.k, X)) in A}
    direct = {X for X in enumerate_gl(R.m, R.field, cap) if is_automorphism(C, SemilinearMap(lifted_block_map(R.k, X)))}
    out.append(Check("lifted.block_stabilizer_equals_rank_aut", in_group == direct == RA,
                     f"{len(in_group)} block maps over all {gl_order(R.m, R.field.q)} X in GL_2(2)"))
    gens = ref.lifted_generators()
    G = closure(gens, cap)
    out.append(Check("lifted.generators", all(is_automorphism(C, g) for g in gens) and G.keys == A.keys,
                     f"printed generators close to order {G.order}"))
    return out


def formula_checks(cap: int) -> list[Check]:
    out = []
    for q, got in ref.SPREAD_AUT_ORDER.items():
        f = spread_aut_order(q, 2, 4)
        out.append(Check(f"formula.q{q}_k2_n4", f == got, f"k prod (q^n - q^(ki)) = {f}"))
    F = field_make(2)
    poly = PolyGF([1, 1, 1], F)
    C = desarguesian_spread(F, 2, 6, poly)
    gens = spread_automorphism_generators(F, 2, 6, poly)
    G = automorphism_group(C, "linear", "verify", gens, cap=cap)
    f = spread_aut_order(2, 2, 6)
    out.append(Check("formula.q2_k2_n6", G.order == f == 362880 and len(C) == 21,
                     f"closure of {len(gens)} construction generators has order {G.order}, formula {f}, "
                     f"every element preserves the {len(C)}-word spread"))
    return out


def isometry_checks(cap: int, jobs: int) -> list[Check]:
    F = field_make(3)
    C1 = desarguesian_spread(F, 2, 4, PolyGF([2, 1, 1], F))
    C2 = desarguesian_spread(F, 2, 4, PolyGF([2, 2, 1], F))
    w = isometric(C1, C2, "linear", cap=cap, jobs=jobs)
    ok = bool(w.found) and w.map is not None and C1.apply(w.map) == C2
    detail = f"witness {w.map.A.to_rows()} re-verified" if ok else w.certificate
    return [Check("isometry.desarguesian_q3", ok, detail)]


def verify_paper(cap: int = DEFAULT_CAP, jobs: int = 1, full_scan: bool = False) -> list[Check]:
    checks: list[Check] = []
    checks += spread_checks(2, cap, jobs, full_scan)
    checks += spread_checks(3, cap, jobs, full_scan)
    checks += lift_checks(cap, jobs)
    checks += formula_checks(cap)
    checks += isometry_checks(cap, jobs)
    return checks
