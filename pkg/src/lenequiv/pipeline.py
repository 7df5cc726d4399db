"""Construction and verification of length-equivalent curve pairs.

The self family comes from a self-intersection witness g of a curve alpha:

    left  = alpha^n * (g alpha g^-1)
    right = (g alpha g^-1)^n * alpha

Conjugating right by g^-1 and rotating shows right ~ alpha^n * alpha^(g^-1),
so the pair is also the general family at (beta, g, h) = (alpha, g, g^-1).
Equal length for every metric follows from the exact trace identity
tr(A^n B) = tr(B^n A) on the equal-trace locus; non-conjugacy and
not-conjugate-to-inverse are exact cyclic-word decisions, independent of
any representation.  Filling is tested against enumerated simple classes:
a "yes" is evidence at the stated bound, never a completeness claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateInputError, HypothesisViolationError
from .intersections import (
    IntersectionRecord,
    stabilized_count_detail,
    stabilized_self_count_detail,
)
from .trace_poly import verify_trace_identity
from .word_algebra import (
    Word,
    are_conjugate,
    compose,
    conjugate,
    cyclic_normal_form,
    enumerate_reduced_words,
    invert,
    is_conjugate_to_inverse,
    is_proper_power,
    power,
    word_sort_key,
)
from .sl2 import translation_length


@dataclass(frozen=True)
class CurvePair:
    left: Word
    right: Word
    n: int
    provenance: tuple  # ("self", alpha, g) | ("general", alpha, beta, g, h)


@dataclass
class EquivalenceVerdict:
    equal_length_numeric: bool
    max_deviation: float
    equal_length_symbolic: bool
    nonconjugate: bool
    not_conjugate_to_inverse: bool
    filling_left: str = "skipped"
    filling_right: str = "skipped"
    n_observed: Optional[int] = None

    @property
    def length_equivalent(self) -> bool:
        return (
            self.equal_length_numeric
            and self.equal_length_symbolic
            and self.nonconjugate
            and self.not_conjugate_to_inverse
        )


def _witness_word(record_or_word) -> Word:
    if isinstance(record_or_word, IntersectionRecord):
        return record_or_word.witness
    return record_or_word


def build_pair_self(alpha: Word, record, n: int) -> CurvePair:
    """The pair (alpha^n alpha^g, (alpha^g)^n alpha) for a self-intersection
    witness g."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    g = _witness_word(record)
    conj_copy = conjugate(alpha, g)
    left = compose(power(alpha, n), conj_copy)
    right = compose(power(conj_copy, n), alpha)
    return CurvePair(left, right, n, ("self", alpha, g))


def build_pair_general(alpha: Word, beta: Word, g: Word, h: Word, n: int) -> CurvePair:
    """The pair (alpha^n beta^g, alpha^n beta^h) for an equal-term witness
    pair; re-checks the hypothesis <alpha beta^g> = <alpha beta^h>."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if g.letters == h.letters:
        raise DegenerateInputError("degenerate pair: g = h gives left = right")
    term_g = compose(alpha, conjugate(beta, g))
    term_h = compose(alpha, conjugate(beta, h))
    if not are_conjugate(term_g, term_h):
        raise HypothesisViolationError("<alpha beta^g> and <alpha beta^h> are not conjugate")
    left = compose(power(alpha, n), conjugate(beta, g))
    right = compose(power(alpha, n), conjugate(beta, h))
    return CurvePair(left, right, n, ("general", alpha, beta, g, h))


def check_equal_length(pair: CurvePair, reps, tol: float = 1e-9):
    """(equal within tol, max relative deviation) of the two translation
    lengths over every representation."""
    max_dev = 0.0
    for rep in reps:
        tau_left = translation_length(rep.evaluate(pair.left))
        tau_right = translation_length(rep.evaluate(pair.right))
        dev = abs(tau_left - tau_right) / max(tau_left, tau_right)
        max_dev = max(max_dev, dev)
    return max_dev <= tol, max_dev


def check_equal_length_symbolic(pair: CurvePair, reps, tol: float = 1e-9) -> bool:
    """Metric-free half of the equal-length verdict.

    The exact part is the trace identity tr(A^n B) = tr(B^n A) on the
    equal-trace locus.  The per-representation part checks the trace
    equalities that place the pair on that locus: for the self family
    tr(alpha) = tr(alpha^g); for the general family tr(beta^g) = tr(beta^h)
    and tr(alpha beta^g) = tr(alpha beta^h).  Together they pin the two
    Fricke evaluations to the same point for every n at once.
    """
    if not verify_trace_identity(pair.n):
        return False
    kind = pair.provenance[0]
    for rep in reps:
        if kind == "self":
            _, alpha, g = pair.provenance
            t1 = abs(rep.evaluate(alpha).trace())
            t2 = abs(rep.evaluate(conjugate(alpha, g)).trace())
            if abs(t1 - t2) / max(t1, t2) > tol:
                return False
        else:
            _, alpha, beta, g, h = pair.provenance
            bg, bh = conjugate(beta, g), conjugate(beta, h)
            for u, v in ((bg, bh), (compose(alpha, bg), compose(alpha, bh))):
                t1 = abs(rep.evaluate(u).trace())
                t2 = abs(rep.evaluate(v).trace())
                if abs(t1 - t2) / max(t1, t2) > tol:
                    return False
    return True


def check_nonconjugate(pair: CurvePair) -> tuple[bool, bool]:
    """(left not conjugate to right, left not conjugate to right^-1).
    Exact, metric-independent."""
    return (
        not are_conjugate(pair.left, pair.right),
        not is_conjugate_to_inverse(pair.left, pair.right),
    )


def find_min_N(alpha: Word, record, n_max: int):
    """Least N with both non-conjugacy verdicts passing for every n in
    (N, n_max]; returns (N or None, per-n table).  The table rows are
    (n, nonconjugate, not_conjugate_to_inverse); nothing is extrapolated
    beyond n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    table = []
    failures = []
    for n in range(1, n_max + 1):
        pair = build_pair_self(alpha, record, n)
        nonconj, not_inv = check_nonconjugate(pair)
        table.append((n, nonconj, not_inv))
        if not (nonconj and not_inv):
            failures.append(n)
    if not failures:
        # the n = 1 pair is conjugate by construction, so this branch is
        # unreachable for genuine self records; kept for safety
        return (1 if n_max >= 2 else None), table
    n_observed = max(failures)
    if n_observed >= n_max:
        return None, table
    return n_observed, table


def _unoriented_class_key(w: Word) -> str:
    k1 = cyclic_normal_form(w)
    k2 = cyclic_normal_form(invert(w))
    return min(k1.key, k2.key, key=lambda s: (len(s), s))


def simple_candidates(rep, bound: int):
    """Simple (zero self-intersection) primitive classes of word length
    <= bound, one representative per unoriented conjugacy class, sorted.
    Cached per representation and bound."""
    cache = getattr(rep, "_simple_cache", None)
    if cache is None:
        cache = {}
        rep._simple_cache = cache
    if bound in cache:
        return cache[bound]
    seen: dict[str, Word] = {}
    for letters in enumerate_reduced_words(rep.rank, bound):
        w = Word(letters)
        cnf = cyclic_normal_form(w)
        if len(cnf.letters) != len(letters):
            continue  # keep only cyclically reduced representatives
        key = _unoriented_class_key(w)
        if key in seen:
            continue
        proper, _, _ = is_proper_power(w)
        if proper:
            continue
        seen[key] = Word(cnf.letters)
    out = []
    for key in sorted(seen, key=lambda s: (len(s), s)):
        z = seen[key]
        count, _ = stabilized_self_count_detail(z, rep)
        if count == 0:
            out.append(z)
    cache[bound] = out
    return out


def _is_peripheral(z: Word, peripherals) -> bool:
    zk = _unoriented_class_key(z)
    return any(zk == _unoriented_class_key(p) for p in peripherals)


def is_filling(w: Word, rep, scc_word_bound: int):
    """Filling verdict {"yes" | "no" | "inconclusive"} with details.

    "no" comes with an explicit witness: an essential non-peripheral
    simple class disjoint from w.  "yes" means every essential
    non-peripheral simple class found at scc_word_bound and at
    scc_word_bound + 1 intersects w, and the candidate enumeration itself
    was nonempty at both bounds — evidence at the bound, not a proof.
    Returns (verdict, witnesses, candidate_table).
    """
    w = Word(cyclic_normal_form(w).letters)
    if w.is_identity:
        raise DegenerateInputError("the identity is not a curve")
    peripherals = rep.peripheral_words()
    if peripherals is None:
        raise DegenerateInputError("peripheral classes unknown for this representation")
    witnesses = []
    table = []
    seen_keys = set()
    nonempty = True
    for bound in (scc_word_bound, scc_word_bound + 1):
        candidates = simple_candidates(rep, bound)
        if not candidates:
            nonempty = False
        for z in candidates:
            zk = _unoriented_class_key(z)
            if zk in seen_keys:
                continue
            seen_keys.add(zk)
            peripheral = _is_peripheral(z, peripherals)
            if zk == _unoriented_class_key(w):
                count = 0  # z is simple, so its class meets <w> = <z> nowhere transversally
            else:
                count, _ = stabilized_count_detail(z, w, rep)
            table.append({"class": str(z), "peripheral": peripheral, "count": count})
            if not peripheral and count == 0:
                witnesses.append(z)
    if witnesses:
        witnesses.sort(key=lambda z: word_sort_key(z.letters))
        return "no", witnesses, table
    if not nonempty:
        return "inconclusive", [], table
    return "yes", [], table


def verify_filling_pairs(alpha: Word, record, n_range, rep, scc_word_bound: int = 4):
    """Per-n filling verdicts for both members of the self pair.

    Requires is_filling(alpha) = "yes" first; the returned context table
    lists every simple candidate z with its intersection count i(z, alpha)
    and the threshold 2*i(z, alpha)."""
    verdict, _, alpha_table = is_filling(alpha, rep, scc_word_bound)
    if verdict != "yes":
        raise DegenerateInputError("alpha is not verified filling (verdict %r)" % verdict)
    context = [
        {"class": row["class"], "peripheral": row["peripheral"], "count": row["count"],
         "threshold": 2 * row["count"]}
        for row in alpha_table
    ]
    rows = []
    lo, hi = n_range
    for n in range(lo, hi + 1):
        pair = build_pair_self(alpha, record, n)
        left_v, _, _ = is_filling(pair.left, rep, scc_word_bound)
        right_v, _, _ = is_filling(pair.right, rep, scc_word_bound)
        rows.append({"n": n, "filling_left": left_v, "filling_right": right_v})
    return {"context": context, "rows": rows}


def assemble_verdict(
    pair_builder,
    reps,
    n: int,
    tol: float = 1e-9,
    filling_bound: Optional[int] = None,
) -> EquivalenceVerdict:
    """Full verdict for the pair at one n over a family of representations."""
    pair = pair_builder(n)
    ok_num, max_dev = check_equal_length(pair, reps, tol)
    ok_sym = check_equal_length_symbolic(pair, reps, tol)
    nonconj, not_inv = check_nonconjugate(pair)
    verdict = EquivalenceVerdict(
        equal_length_numeric=ok_num,
        max_deviation=max_dev,
        equal_length_symbolic=ok_sym,
        nonconjugate=nonconj,
        not_conjugate_to_inverse=not_inv,
    )
    if filling_bound is not None and reps:
        verdict.filling_left = is_filling(pair.left, reps[0], filling_bound)[0]
        verdict.filling_right = is_filling(pair.right, reps[0], filling_bound)[0]
    return verdict
