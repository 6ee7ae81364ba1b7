"""Empirical verification that the fixed-point data survives Markov moves.

Both sides of every move are solved independently from scratch; nothing is
assumed from the invariance theorem being checked.  Classes are transported
by the explicit coordinate change of the move and matched by fingerprint and
alignment, comparing indices classwise and the signed counts in total.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .braids import (
    BraidWord,
    cancel_adjacent_inverses,
    is_knot_closure,
    markov_conjugate,
    markov_stabilize,
)
from .configurations import Configuration, fingerprint, gauge_fix, hurwitz_apply
from .fixedpoints import DEGENERATE, FixedPointRecord, SolverConfig, solve_fixed_points
from .quaternions import align

TRANSPORT_TOL = 1e-7
MAX_WALK_STRANDS = 5


@dataclasses.dataclass(frozen=True)
class MarkovAudit:
    """Result of checking one Markov move.

    ``passed`` holds exactly when the signed counts agree, the transport is a
    bijection on classes matching indices, and no transported class sits
    further than TRANSPORT_TOL from its partner.
    """

    move: str
    lambda_before: int | None
    lambda_after: int | None
    matched_classes: int
    max_transport_distance: float
    passed: bool
    reason: str = ""


def _lambda_of(records: list[FixedPointRecord]) -> int | None:
    if any(r.index == DEGENERATE for r in records):
        return None
    return sum(r.index for r in records)


def _match_transported(
    transported: list[tuple[Configuration, int | str]],
    targets: list[FixedPointRecord],
) -> tuple[int, float, bool, str]:
    """Greedy fingerprint matching of transported classes against solved ones.

    Returns (matched count, max alignment distance, indices agree, reason).
    """
    used = set()
    matched = 0
    max_dist = 0.0
    indices_ok = True
    reason = ""
    for config, idx in transported:
        fp = fingerprint(config)
        best, best_gap = None, None
        for k, rec in enumerate(targets):
            if k in used:
                continue
            gap = float(np.max(np.abs(fp - rec.fingerprint))) if len(fp) else 0.0
            if best_gap is None or gap < best_gap:
                best, best_gap = k, gap
        if best is None:
            reason = "unmatched transported class"
            continue
        rec = targets[best]
        _, dist = align(config.vectors, rec.config.vectors)
        if dist > TRANSPORT_TOL:
            reason = f"transport distance {dist:.3e} exceeds {TRANSPORT_TOL}"
            continue
        used.add(best)
        matched += 1
        max_dist = max(max_dist, dist)
        if idx != rec.index:
            indices_ok = False
            reason = "classwise index mismatch"
    return matched, max_dist, indices_ok, reason


def _audit(
    move: str,
    before: list[FixedPointRecord],
    after: list[FixedPointRecord],
    transported: list[tuple[Configuration, int | str]],
) -> MarkovAudit:
    lam_b, lam_a = _lambda_of(before), _lambda_of(after)
    if lam_b is None or lam_a is None:
        return MarkovAudit(move, lam_b, lam_a, 0, float("inf"), False, "degenerate")
    matched, max_dist, indices_ok, reason = _match_transported(transported, after)
    passed = (
        lam_b == lam_a
        and matched == len(before) == len(after)
        and indices_ok
        and max_dist <= TRANSPORT_TOL
    )
    if passed:
        reason = ""
    elif not reason:
        reason = "class counts or signed counts differ"
    return MarkovAudit(move, lam_b, lam_a, matched, max_dist, passed, reason)


def verify_type1(b: BraidWord, xi: BraidWord, cfg: SolverConfig | None = None) -> MarkovAudit:
    """Audit conjugation invariance: b against xi^-1 b xi.

    Fixed classes of b are carried to fixed classes of the conjugated word by
    the Hurwitz action of xi (the coordinate change of the move, under the
    left-to-right letter convention used throughout).
    """
    cfg = cfg or SolverConfig()
    conj = markov_conjugate(b, xi)
    before = solve_fixed_points(b, cfg)
    after = solve_fixed_points(conj, cfg)
    transported = []
    for rec in before:
        moved = hurwitz_apply(xi.letters, rec.config.vectors)
        transported.append((Configuration(moved), rec.index))
    return _audit(
        f"type I: [{b}] conjugated by [{xi}]",
        before,
        after,
        transported,
    )


def verify_type2(b: BraidWord, sign: int, cfg: SolverConfig | None = None) -> MarkovAudit:
    """Audit stabilization invariance: b in B_n against sigma_n^sign b in B_{n+1}.

    A fixed class X of b stabilizes to (X_1, ..., X_n, beta(X)_n): the new
    entry repeats the image of the last one, which for an exact fixed point
    is X_n itself.  The embedded classes must exhaust the classes of the
    stabilized word.
    """
    cfg = cfg or SolverConfig()
    if not is_knot_closure(b):
        raise ValueError("type II audit needs a knot closure")
    stab = markov_stabilize(b, sign)
    before = solve_fixed_points(b, cfg)
    after = solve_fixed_points(stab, cfg)
    transported = []
    for rec in before:
        image = hurwitz_apply(b.letters, rec.config.vectors)
        vecs = np.vstack([rec.config.vectors, image[-1]])
        transported.append((Configuration(vecs), rec.index))
    return _audit(
        f"type II: [{b}] stabilized with sign {sign:+d}",
        before,
        after,
        transported,
    )


def _destabilizable(b: BraidWord) -> int | None:
    """Word position of the unique top-column letter, if there is exactly one."""
    if b.strands < 2:
        return None
    top = b.strands - 1
    positions = [p for p, g in enumerate(b.letters) if abs(g) == top]
    if len(positions) == 1:
        return positions[0]
    return None


def random_markov_walk(
    b: BraidWord,
    steps: int,
    rng_seed: int = 0,
    cfg: SolverConfig | None = None,
) -> list[MarkovAudit]:
    """Apply a random sequence of Markov moves, auditing every step.

    Moves: conjugation by short random words, stabilization (strand count
    capped), and destabilization when the top column occurs exactly once
    (general destabilization detection is out of scope).  Destabilization is
    performed as a conjugation rotating the top letter to the front, followed
    by the inverse stabilization; both parts are audited.
    """
    cfg = cfg or SolverConfig()
    if not is_knot_closure(b):
        raise ValueError("random walk needs a knot closure")
    rng = np.random.default_rng(rng_seed)
    current = b
    audits: list[MarkovAudit] = []
    for _ in range(steps):
        n = current.strands
        moves = ["conj"]
        if n < MAX_WALK_STRANDS:
            moves.append("stab")
        destab_pos = _destabilizable(current)
        if destab_pos is not None and n >= 3:
            moves.append("destab")
        move = moves[rng.integers(len(moves))]
        if move == "conj":
            length = int(rng.integers(1, 3))
            gens = [g for i in range(1, n) for g in (i, -i)]
            letters = tuple(gens[rng.integers(len(gens))] for _ in range(length))
            xi = BraidWord(n, letters)
            audits.append(verify_type1(current, xi, cfg))
            current = cancel_adjacent_inverses(markov_conjugate(current, xi))
        elif move == "stab":
            sign = 1 if rng.integers(2) else -1
            audits.append(verify_type2(current, sign, cfg))
            current = markov_stabilize(current, sign)
        else:
            pos = destab_pos
            if pos != 0:
                xi = BraidWord(n, current.letters[:pos])
                audits.append(verify_type1(current, xi, cfg))
                current = BraidWord(n, current.letters[pos:] + current.letters[:pos])
            top_letter = current.letters[0]
            small = BraidWord(n - 1, current.letters[1:])
            sign = 1 if top_letter > 0 else -1
            audit = verify_type2(small, sign, cfg)
            audits.append(
                dataclasses.replace(
                    audit,
                    move=f"type II inverse: [{current}] destabilized to [{small}]",
                )
            )
            current = small
    return audits
