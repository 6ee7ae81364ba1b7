"""Dev-time sweep of the Seifert-matrix linking conventions.

Selects the convention constants in invariants.py by validating, for many
knot-closure words: det(V - tV^T) equals the Burau-route Alexander polynomial
after normalization, det(V - V^T) = 1, the right trefoil has signature -2,
and signature is odd under mirroring.
"""

import itertools
import random

import braidrep.invariants as inv
from braidrep.braids import BraidWord, enumerate_words, is_knot_closure
from braidrep.invariants import (
    alexander,
    det_int,
    seifert_alexander,
    seifert_matrix,
    signature,
)


def battery_words():
    words = []
    # every B_2 / B_3 word up to moderate length whose closure is a knot,
    # deterministically subsampled
    for n, lengths, keep in ((2, (3, 5, 7), 1), (3, (4, 5, 6, 7), 7)):
        for ln in lengths:
            for i, b in enumerate(enumerate_words(n, ln)):
                if i % keep:
                    continue
                if is_knot_closure(b) and all(
                    c in {abs(g) for g in b.letters} for c in range(1, n)
                ):
                    words.append(b)
    rng = random.Random(7)
    for _ in range(200):
        n = rng.choice([4, 5])
        ln = rng.randint(n, 12)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(ln)
        )
        b = BraidWord(n, letters)
        if is_knot_closure(b) and all(
            c in {abs(g) for g in b.letters} for c in range(1, n)
        ):
            words.append(b)
    return words


def check_word(b):
    V = seifert_matrix(b)
    size = len(V)
    skew = [[V[i][j] - V[j][i] for j in range(size)] for i in range(size)]
    if det_int(skew) != 1:
        return f"det(V - V^T) != 1 for [{b}]"
    if seifert_alexander(b) != alexander(b):
        return f"alexander mismatch for [{b}]"
    return None


def check_signature_conventions(words):
    tref = BraidWord(2, (1, 1, 1))
    if signature(tref) != -2:
        return "trefoil signature is not -2"
    for b in words[::5]:
        if signature(b) != -signature(b.mirror()):
            return f"mirror antisymmetry fails for [{b}]"
        if signature(b) % 2 != 0:
            return f"odd signature for [{b}]"
    return None


def sweep():
    words = battery_words()
    probe = words[:: max(len(words) // 40, 1)]
    print(f"{len(words)} battery words, {len(probe)} probe words")

    modes = ["hi_of_left", "lo_of_right", "plus", "minus"]
    combos = []
    for same in (1, -1):
        for m1, d1, s1 in itertools.product(modes, (1, -1), (False, True)):
            for m2, d2, s2 in itertools.product(modes, (1, -1), (False, True)):
                combos.append((same, (m1, d1, s1), (m2, d2, s2)))
    print(f"{len(combos)} conventions to try")

    survivors = []
    for combo in combos:
        inv._SAME_COLUMN_DELTA = combo[0]
        inv._INTERLEAVE_FIRST = combo[1]
        inv._INTERLEAVE_SECOND = combo[2]
        ok = True
        for b in probe:
            try:
                if check_word(b) is not None:
                    ok = False
                    break
            except Exception:
                ok = False
                break
        if ok and check_signature_conventions(probe) is None:
            survivors.append(combo)
    print(f"{len(survivors)} survive the probe set:")
    for c in survivors:
        print("   ", c)

    full = []
    for combo in survivors:
        inv._SAME_COLUMN_DELTA = combo[0]
        inv._INTERLEAVE_FIRST = combo[1]
        inv._INTERLEAVE_SECOND = combo[2]
        bad = None
        for b in words:
            bad = check_word(b)
            if bad:
                break
        bad = bad or check_signature_conventions(words)
        if bad:
            print(f"combo {combo} fails full battery: {bad}")
        else:
            full.append(combo)
    print(f"{len(full)} survive the full battery:")
    for c in full:
        print("   ", c)


if __name__ == "__main__":
    sweep()
