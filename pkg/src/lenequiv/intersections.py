"""Intersection points of closed geodesics via crossing axis translates.

A self-intersection of the geodesic of alpha corresponds to a double coset
<alpha> g <alpha> whose translate g.A_alpha crosses A_alpha; the two branch
views g and g^-1 describe the same point on the surface, so self keys are
canonicalized over both.  A mutual intersection of alpha and beta is a
double coset <alpha> h <beta> with A_alpha crossing h.A_beta.

Each record carries the crossing coordinate along A_alpha folded into the
fundamental period [0, tau_alpha), i.e. the in-window lift's position; the
coset key alone decides identity, so the count never depends on which lift
of a point the word ball reached first.  Completeness is heuristic-by-
stabilization: counts are accepted when two successive word-length bounds
agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CertificationError,
    DegenerateInputError,
    DegeneracyError,
    InconclusiveEnumerationError,
)
from .sl2 import Axis, HPoint, axes_cross, axis, axis_coordinate, crossing_point_and_sign, mobius, same_axis
from .word_algebra import (
    Word,
    compose,
    cyclic_normal_form,
    cyclic_reduce,
    invert,
    is_proper_power,
    power,
    word_sort_key,
)

_EDGE_SNAP = 1e-9
STABILIZE_START = 4
STABILIZE_CAP = 12


@dataclass(frozen=True)
class IntersectionRecord:
    witness: Word
    point: HPoint
    sign: int
    coset_key: str
    axis_position: float  # crossing coordinate folded into [0, tau_alpha)


def _double_coset_min(g: Word, left: Word, right: Word) -> Word:
    """Minimal word in { left^i g right^j } by (length, letter order).

    Exhaustive search of the orbit's bounded sublevel set.  In the Cayley
    tree the length of left^i g right^j is jointly convex in (i, j), so a
    straight descent path from g to the global minimum stays at most one
    combined step above len(g); every word on it fits under the cap below,
    and the breadth search visits the whole capped region.
    """
    moves_left = (left, invert(left))
    moves_right = (right, invert(right))
    cap = len(g.letters) + len(left.letters) + len(right.letters)
    seen = {g.letters}
    queue = [g]
    best = g
    best_key = word_sort_key(g.letters)
    while queue:
        x = queue.pop()
        nearby = [compose(u, x) for u in moves_left]
        nearby += [compose(x, w) for w in moves_right]
        nearby += [compose(u, compose(x, w)) for u in moves_left for w in moves_right]
        for cand in nearby:
            if len(cand.letters) > cap or cand.letters in seen:
                continue
            seen.add(cand.letters)
            queue.append(cand)
            key = word_sort_key(cand.letters)
            if key < best_key:
                best, best_key = cand, key
    return best


def self_coset_key(g: Word, alpha: Word) -> str:
    """Canonical key over <alpha> g <alpha> and <alpha> g^-1 <alpha>."""
    m1 = _double_coset_min(g, alpha, alpha)
    m2 = _double_coset_min(invert(g), alpha, alpha)
    return str(min((m1, m2), key=lambda w: word_sort_key(w.letters)))


def mutual_coset_key(h: Word, alpha: Word, beta: Word) -> str:
    return str(_double_coset_min(h, alpha, beta))


def _require_cyclically_reduced(w: Word, name: str):
    if w.is_identity:
        raise DegenerateInputError("%s must be a nonempty word" % name)
    if cyclic_reduce(w).letters != w.letters:
        raise DegenerateInputError("%s must be cyclically reduced" % name)


def _require_certified(rep):
    if rep.certificate is None:
        raise CertificationError("representation carries no ping-pong certificate")


def _is_power_of(g: Word, alpha: Word) -> bool:
    la, lg = len(alpha.letters), len(g.letters)
    if lg == 0:
        return True
    if lg % la:
        return False
    k = lg // la
    return g.letters in (power(alpha, k).letters, power(alpha, -k).letters)


def _folded_position(ax: Axis, p: HPoint) -> float:
    """Crossing coordinate folded into the fundamental period [0, tau).

    Lifts of one surface point sit at s + k*tau exactly, so folding the
    coordinate of whichever lift was found (the numerically healthiest one
    the ball produced) yields the in-window representative's coordinate.
    Deduplication is by double coset; the coordinate is reporting data.
    """
    s = axis_coordinate(ax, p)
    tau = ax.translation_length
    s -= tau * math.floor(s / tau)
    if s <= _EDGE_SNAP or tau - s <= _EDGE_SNAP:
        s = 0.0
    return s


def self_intersections(alpha: Word, rep, word_bound: int) -> list[IntersectionRecord]:
    """One record per self-intersection point of the closed geodesic of alpha.

    Enumerates witnesses g with |g| <= word_bound, g not a power of alpha,
    whose translate axis crosses A_alpha; deduplicates over the double
    action g -> alpha^i g alpha^j and over the branch swap g -> g^-1, and
    reports each point at its fundamental-period coordinate.
    """
    _require_cyclically_reduced(alpha, "alpha")
    _require_certified(rep)
    proper, _, _ = is_proper_power(alpha)
    if proper:
        raise DegenerateInputError("alpha must not be a proper power")
    m_alpha = rep.evaluate(alpha)
    ax = axis(m_alpha)
    tau = ax.translation_length
    found: dict[str, IntersectionRecord] = {}
    for letters, m_g in rep.ball(word_bound):
        g = Word(letters)
        if _is_power_of(g, alpha):
            continue
        translate = Axis(mobius(m_g, ax.repelling), mobius(m_g, ax.attracting), tau)
        if same_axis(ax, translate):
            continue
        try:
            if not axes_cross(ax, translate):
                continue
            p, sign = crossing_point_and_sign(ax, translate)
        except DegeneracyError:
            continue  # boundary-scale lift; the coset's healthy lifts still count it
        s = _folded_position(ax, p)
        key = self_coset_key(g, alpha)
        if key not in found:
            found[key] = IntersectionRecord(
                witness=_key_to_word(key), point=p, sign=sign, coset_key=key, axis_position=s
            )
    return sorted(found.values(), key=lambda r: word_sort_key(r.witness.letters))


def _key_to_word(key: str) -> Word:
    from .word_algebra import parse_word

    return parse_word(key)


def mutual_intersections(alpha: Word, beta: Word, rep, word_bound: int) -> list[IntersectionRecord]:
    """One record per intersection point of the geodesics of alpha and beta.

    Routed to self_intersections when beta is alpha's class; rejects
    beta ~ alpha^-1 (the bracket construction excludes inverse classes).
    """
    _require_cyclically_reduced(alpha, "alpha")
    _require_cyclically_reduced(beta, "beta")
    _require_certified(rep)
    if cyclic_normal_form(beta) == cyclic_normal_form(alpha):
        return self_intersections(alpha, rep, word_bound)
    if cyclic_normal_form(beta) == cyclic_normal_form(invert(alpha)):
        raise DegenerateInputError("beta is conjugate to alpha^-1")
    m_alpha = rep.evaluate(alpha)
    ax = axis(m_alpha)
    ax_beta = axis(rep.evaluate(beta))
    found: dict[str, IntersectionRecord] = {}
    for letters, m_h in rep.ball(word_bound, include_identity=True):
        h = Word(letters)
        translate = Axis(
            mobius(m_h, ax_beta.repelling), mobius(m_h, ax_beta.attracting), ax_beta.translation_length
        )
        if same_axis(ax, translate):
            continue
        try:
            if not axes_cross(ax, translate):
                continue
            p, sign = crossing_point_and_sign(ax, translate)
        except DegeneracyError:
            continue  # boundary-scale lift; the coset's healthy lifts still count it
        s = _folded_position(ax, p)
        key = mutual_coset_key(h, alpha, beta)
        if key not in found:
            found[key] = IntersectionRecord(
                witness=_key_to_word(key), point=p, sign=sign, coset_key=key, axis_position=s
            )
    return sorted(found.values(), key=lambda r: word_sort_key(r.witness.letters))


def stabilized_count_detail(
    alpha: Word,
    beta: Word,
    rep,
    start: int = STABILIZE_START,
    cap: int = STABILIZE_CAP,
) -> tuple[int, int]:
    """(count, bound) where the count agrees at bound-1 and bound."""
    counts = []
    prev = None
    for bound in range(start, cap + 1):
        cur = len(mutual_intersections(alpha, beta, rep, bound))
        counts.append(cur)
        if prev is not None and cur == prev:
            return cur, bound
        prev = cur
    raise InconclusiveEnumerationError(
        "intersection count did not stabilize by bound %d" % cap, cap=cap, counts=counts
    )


def stabilized_count(alpha: Word, beta: Word, rep, start: int = STABILIZE_START, cap: int = STABILIZE_CAP) -> int:
    return stabilized_count_detail(alpha, beta, rep, start=start, cap=cap)[0]


def stabilized_self_count_detail(
    alpha: Word, rep, start: int = STABILIZE_START, cap: int = STABILIZE_CAP
) -> tuple[int, int]:
    counts = []
    prev = None
    for bound in range(start, cap + 1):
        cur = len(self_intersections(alpha, rep, bound))
        counts.append(cur)
        if prev is not None and cur == prev:
            return cur, bound
        prev = cur
    raise InconclusiveEnumerationError(
        "self-intersection count did not stabilize by bound %d" % cap, cap=cap, counts=counts
    )
