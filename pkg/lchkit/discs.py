"""\
Admissible disks of a resolved plat front and the Chekanov-Eliashberg
differential.

A disk is traced by the positions (l, u) of its lower and upper boundary
strands. It is born at a left cusp, is carried through the crossings one at a
time, and dies either at a crossing where its two boundary strands meet (the
positive corner) or at the right cusp it closes up on. At a crossing the upper
boundary may turn onto the other strand (an upper negative corner) when it
would otherwise be pushed up, and likewise for the lower boundary. Every right
cusp additionally bounds the small lobe disk with no negative corners.

The negative word of a disk lists its upper corners from right to left
followed by its lower corners from left to right, which is the order met when
walking the boundary counterclockwise from the positive corner.

@author: lchkit developers
@license: GPL-3
"""

import json
import logging
from collections import namedtuple, Counter

from . import LCHError
from .diagram import reeb_chords, maslov_number, RIGHT_CUSP
from .dga import FreeDGA, FormalSum, DegreeError


class ActionError(LCHError):
    "Disk violates the action (height) certificate."
    pass


DiskWord = namedtuple('DiskWord', ['positive', 'negatives', 'witness'])


def _forward_step(state, i):
    """\
    Successor states of a partial disk at a crossing between positions C{i}
    and C{i + 1}, as (state, corner) pairs with corner C{'U'}, C{'L'} or
    C{None}; C{None} in place of the list means the disk closes here.
    """
    l, u = state
    if (l, u) == (i, i + 1):
        return None
    if u == i and l < i:
        return [((l, i + 1), None), ((l, i), 'U')]
    if u == i + 1 and l < i:
        return [((l, i), None)]
    if l == i + 1 and u > i + 1:
        return [((i, u), None), ((i + 1, u), 'L')]
    if l == i and u > i + 1:
        return [((i + 1, u), None)]
    return [(state, None)]


def _backward_step(state, i):
    """\
    Predecessor states at a crossing between positions C{i} and C{i + 1}.
    """
    l, u = state
    if u == i + 1 and l < i:
        return [((l, i), None)]
    if u == i and l < i:
        return [((l, i), 'U'), ((l, i + 1), None)]
    if l == i and u > i + 1:
        return [((i + 1, u), None)]
    if l == i + 1 and u > i + 1:
        return [((i + 1, u), 'L'), ((i, u), None)]
    if (l, u) == (i, i + 1):
        return []
    return [(state, None)]


def _sweep_forward(f, names):
    disks = []
    k = len(f.word)
    partial = [((2 * c + 1, 2 * c + 2), (), (), ((2 * c + 1, 2 * c + 2),))
               for c in range(f.n_cusps)]
    for j, i in enumerate(f.word):
        advanced = []
        for state, upper, lower, trace in partial:
            successors = _forward_step(state, i)
            if successors is None:
                disks.append(DiskWord(names[j], tuple(reversed(upper)) + lower,
                                      trace))
                continue
            for nxt, corner in successors:
                advanced.append((nxt,
                                 corner == 'U' and upper + (names[j],) or upper,
                                 corner == 'L' and lower + (names[j],) or lower,
                                 trace + (nxt,)))
        partial = advanced
    for state, upper, lower, trace in partial:
        l, u = state
        if l % 2 == 1 and u == l + 1:
            disks.append(DiskWord(names[k + l // 2],
                                  tuple(reversed(upper)) + lower, trace))
    for c in range(f.n_cusps):
        disks.append(DiskWord(names[k + c], (), ()))
    return disks


def _sweep_backward(f, names):
    disks = []
    k = len(f.word)
    starts = [(j, (i, i + 1)) for j, i in enumerate(f.word)]
    starts += [(k, (2 * c + 1, 2 * c + 2)) for c in range(f.n_cusps)]
    for end, state in starts:
        positive = end < k and names[end] or names[k + state[0] // 2]
        partial = [(state, (), (), (state,))]
        for j in range(end - 1, -1, -1):
            i = f.word[j]
            receded = []
            for st, upper, lower, trace in partial:
                for prv, corner in _backward_step(st, i):
                    receded.append((prv,
                                    corner == 'U' and upper + (names[j],) or upper,
                                    corner == 'L' and lower + (names[j],) or lower,
                                    (prv,) + trace))
            partial = receded
        for st, upper, lower, trace in partial:
            l, u = st
            if l % 2 == 1 and u == l + 1:
                disks.append(DiskWord(positive, upper + tuple(reversed(lower)),
                                      trace))
    for c in range(f.n_cusps):
        disks.append(DiskWord(names[k + c], (), ()))
    return disks


def disk_action(f, disk, chords=None):
    """\
    Energy of a disk: the length of its positive chord less the lengths of
    its negative chords. Every honest disk has positive action.

    @param f: The front.
    @type f: L{FrontWord}
    @param disk: The disk.
    @type disk: L{DiskWord}
    @rtype: C{int}
    """
    by_id = dict((c.id, c) for c in (chords or reeb_chords(f)))
    return by_id[disk.positive].height - \
        sum(by_id[g].height for g in disk.negatives)


def check_action(f, disk, chords=None):
    """\
    @raise ActionError: If the disk does not have positive action.
    """
    if disk_action(f, disk, chords) <= 0:
        raise ActionError('disk at %s with word %s is not action-positive'
                          % (disk.positive, ' '.join(disk.negatives)))


def all_disks(f, reverse=False):
    """\
    Every admissible disk of the front, checked for degree and action.

    @param f: The front.
    @type f: L{FrontWord}
    @param reverse: Sweep right to left instead.
    @type reverse: C{bool}
    @return: Disks sorted by positive chord, then witness.
    @rtype: C{list} of L{DiskWord}
    @raise DegreeError: If a disk is not of index one.
    @raise ActionError: If a disk breaks the height certificate.
    """
    chords = reeb_chords(f)
    names = [c.id for c in chords]
    by_id = dict((c.id, c) for c in chords)
    modulus = maslov_number(f)
    disks = (reverse and _sweep_backward or _sweep_forward)(f, names)
    for disk in disks:
        top = by_id[disk.positive]
        total = sum(by_id[g].degree for g in disk.negatives)
        gap = top.degree - 1 - total
        if (modulus and gap % modulus) or (not modulus and gap):
            raise DegreeError('disk at %s with word %s has wrong degree'
                              % (disk.positive, ' '.join(disk.negatives)))
        check_action(f, disk, chords)
    order = dict((name, n) for n, name in enumerate(names))
    return sorted(disks, key=lambda disk: (order[disk.positive], disk.witness))


def enumerate_disks(f, a):
    """\
    Admissible disks with positive corner at a chord, ordered by witness.

    @param f: The front.
    @type f: L{FrontWord}
    @param a: Chord id or chord.
    @type a: C{str} or L{ReebChord}
    @rtype: C{list} of L{DiskWord}
    """
    name = getattr(a, 'id', a)
    if name not in [c.id for c in reeb_chords(f)]:
        raise KeyError('no chord %s in front %s' % (name, f))
    disks = [disk for disk in all_disks(f) if disk.positive == name]
    logging.debug('chord %s: %d disks', name, len(disks))
    return disks


def sweeps_agree(f):
    """\
    Whether the left-to-right and right-to-left sweeps find the same multiset
    of disks.
    """
    forward = Counter(all_disks(f))
    backward = Counter(all_disks(f, reverse=True))
    return forward == backward


def differential(f):
    """\
    Chekanov-Eliashberg algebra of the front over F2.

    @param f: The front.
    @type f: L{FrontWord}
    @return: The DGA on the Reeb chords, d^2 = 0 verified.
    @rtype: L{FreeDGA}
    """
    chords = reeb_chords(f)
    words = dict((c.id, []) for c in chords)
    for disk in all_disks(f):
        words[disk.positive].append(disk.negatives)
    boundary = dict((g, FormalSum(w)) for g, w in words.items())
    logging.info('front %s: %d generators, %d disks', f, len(chords),
                 sum(len(w) for w in words.values()))
    return FreeDGA([(c.id, c.degree) for c in chords], boundary,
                   maslov_number(f))


def cusp_chords(f):
    return [c.id for c in reeb_chords(f) if c.kind == RIGHT_CUSP]


def disk_to_json(disk):
    return {'positive': disk.positive, 'negatives': list(disk.negatives),
            'witness': [list(s) for s in disk.witness]}


def disks_as_json_lines(f):
    """\
    One JSON object per disk, for auditing.

    @rtype: C{list} of C{str}
    """
    return [json.dumps(disk_to_json(disk), sort_keys=True)
            for disk in all_disks(f)]
