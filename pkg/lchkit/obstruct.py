"""\
Decision procedures for exact Lagrangian cobordisms between Legendrian
knots, run on computed Legendrian contact homology.

@author: lchkit developers
@license: GPL-3
"""

import logging
from collections import namedtuple
from itertools import product

from .augment import enumerate_augmentations
from .linhom import lch_class_set, PoincarePolynomial


OBSTRUCTED = 'obstructed'
NOT_OBSTRUCTED = 'not_obstructed_by_this_test'

PAIR = 'pair'
DUALITY = 'duality'
MAYER_VIETORIS = 'mayer_vietoris'


class BettiVector(object):
    """\
    Candidate Betti numbers of a cobordism or of one of its ends.
    """
    def __init__(self, dims=None, n=1):
        """\
        Constructor.

        @param dims: Dimension in each degree.
        @type dims: C{dict}
        @param n: Dimension of the Legendrian.
        @type n: C{int}
        """
        dims = dims or {}
        self.n = n
        self._dims = {}
        for k, b in dims.items():
            k, b = int(k), int(b)
            if b < 0:
                raise ValueError('negative Betti number in degree %d' % k)
            if not 0 <= k <= n + 1:
                raise ValueError('degree %d outside [0, %d]' % (k, n + 1))
            if b:
                self._dims[k] = b

    def __getitem__(self, k):
        return self._dims.get(k, 0)

    def total(self):
        return sum(self._dims.values())

    def is_sphere(self):
        return self.n > 0 and self._dims == {0: 1, self.n: 1}

    def __eq__(self, other):
        return isinstance(other, BettiVector) and self._dims == other._dims

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(tuple(sorted(self._dims.items())))

    def __repr__(self):
        return 'BettiVector(%r)' % self._dims

    def to_json(self):
        return dict(('%d' % k, b) for k, b in sorted(self._dims.items()))


def circle(n=1):
    """\
    Betti numbers of the n-sphere.
    """
    return BettiVector({0: 1, n: 1}, n)


ObstructionVerdict = namedtuple('ObstructionVerdict', ['direction', 'status',
                                                       'witness'])


def _verdict(direction, source, target):
    missing = [p for p in source.classes if p not in target.classes]
    if not missing:
        return ObstructionVerdict(direction, NOT_OBSTRUCTED, None)
    return ObstructionVerdict(direction, OBSTRUCTED,
                              min(missing, key=PoincarePolynomial.key))


def concordance_obstruction(dA, dB, graded=True, names=('A', 'B')):
    """\
    Obstruct exact Lagrangian concordances between two knots in both
    directions.

    A concordance from A to B forces every bilinearised homology of A to
    occur for B, so a class of A missing from B rules it out. The test is
    sound but not complete.

    @param dA: Algebra of the first knot.
    @type dA: L{FreeDGA}
    @param dB: Algebra of the second knot.
    @type dB: L{FreeDGA}
    @return: Verdicts for A to B and for B to A.
    @rtype: C{tuple} of L{ObstructionVerdict}
    """
    setA, setB = lch_class_set(dA, graded), lch_class_set(dB, graded)
    forward = _verdict('%s->%s' % names, setA, setB)
    backward = _verdict('%s->%s' % tuple(reversed(names)), setB, setA)
    logging.info('concordance %s: %s; %s: %s', forward.direction,
                 forward.status, backward.direction, backward.status)
    return forward, backward


EndoReport = namedtuple('EndoReport', ['hypothesis', 'forced_betti',
                                       'injective', 'surjective',
                                       'homology_cylinder', 'statements'])


def endocobordism_constraints(d, lambda_betti, graded=True):
    """\
    Facts forced on every exact Lagrangian cobordism from a knot to itself.

    @param d: Algebra of the knot.
    @type d: L{FreeDGA}
    @param lambda_betti: Betti numbers of the Legendrian.
    @type lambda_betti: L{BettiVector}
    @rtype: L{EndoReport}
    """
    if not enumerate_augmentations(d, graded):
        return EndoReport(False, None, None, None, None,
                          ['hypothesis fails: the algebra has no '
                           'augmentation; no constraint'])
    statements = [
        'dim H_k(Sigma) = dim H_k(Lambda) = %s for every k'
        % ', '.join('%d:%d' % (k, lambda_betti[k])
                    for k in range(lambda_betti.n + 1)),
        '(i-, i+): H(Lambda) -> H(Sigma) + H(Sigma) is injective',
        'i+ + i-: H(Lambda) + H(Lambda) -> H(Sigma) is surjective',
        'Sigma is orientable when Lambda is']
    cylinder = lambda_betti.is_sphere()
    if cylinder:
        statements.append('Sigma is a homology cylinder: H(Sigma, Lambda) = 0')
    return EndoReport(True, BettiVector(lambda_betti.to_json(), lambda_betti.n),
                      True, True, cylinder, statements)


LESFeasibility = namedtuple('LESFeasibility', ['feasible', 'nodes', 'ranks',
                                               'cut'])


def les_nodes(lch_minus, lch_plus, candidate, mode, boundary=None):
    """\
    Terms of the three-periodic exact sequence in the order they occur,
    clipped to the degrees where some term can be nonzero plus one.

    @param lch_minus: Bilinearised cohomology of the negative end.
    @type lch_minus: L{PoincarePolynomial}
    @param lch_plus: Bilinearised cohomology of the positive end.
    @type lch_plus: L{PoincarePolynomial}
    @param candidate: Betti numbers of the cobordism (relative to its
        negative end in C{pair} mode).
    @type candidate: L{BettiVector}
    @param mode: L{PAIR}, L{DUALITY} or L{MAYER_VIETORIS}.
    @type mode: C{str}
    @param boundary: Betti numbers of the negative end, for
        L{MAYER_VIETORIS} (default: a circle).
    @type boundary: L{BettiVector}
    @return: (label, dimension) pairs.
    @rtype: C{list}
    """
    n = candidate.n
    boundary = boundary or circle(n)
    degrees = set(lch_minus.degrees) | set(lch_plus.degrees)
    degrees |= set(n + 1 - j for j in range(n + 2))
    degrees |= set(n - j for j in range(n + 2))
    degrees |= set(n - 1 - j for j in list(degrees))
    low, high = min(degrees) - 1, max(degrees) + 1
    nodes = []
    for k in range(low, high + 1):
        if mode == PAIR:
            nodes += [('H_%d(S,S-)' % (n + 1 - k), candidate[n + 1 - k]),
                      ('LCH^%d(L-)' % k, lch_minus.dim(k)),
                      ('LCH^%d(L+)' % k, lch_plus.dim(k))]
        elif mode == DUALITY:
            nodes += [('LCH^%d(L+)' % k, lch_plus.dim(k)),
                      ('LCH_%d(L-)' % (n - k - 1),
                       lch_minus.dim(n - k - 1)),
                      ('H_%d(S)' % (n - k - 1), candidate[n - k - 1])]
        elif mode == MAYER_VIETORIS:
            nodes += [('H_%d(L-)' % (n - k), boundary[n - k]),
                      ('LCH^%d(L-)+H_%d(S)' % (k, n - k),
                       lch_minus.dim(k) + candidate[n - k]),
                      ('LCH^%d(L+)' % k, lch_plus.dim(k))]
        else:
            raise ValueError('unknown mode %s' % mode)
    return nodes


def solve_ranks(dims):
    """\
    Ranks of the maps of an exact sequence with the given term dimensions.

    Exactness at a term of dimension a_j forces a_j = r_(j-1) + r_j, where
    r_j is the rank of the map leaving it; the ranks vanish before the
    first term, so they are determined one after another.

    @return: The ranks, and the index of the first failing term (or
        C{None}).
    @rtype: C{tuple}
    """
    ranks = []
    previous = 0
    for j, a in enumerate(dims):
        r = a - previous
        if r < 0:
            return ranks, j
        ranks.append(r)
        previous = r
    if previous:
        return ranks, len(dims) - 1
    return ranks, None


def les_feasibility(lch_minus, lch_plus, candidate, mode, boundary=None):
    """\
    Decide whether an exact sequence with the given terms can exist.

    @return: Verdict with a rank assignment as certificate, or the term
        where the rank equations first fail.
    @rtype: L{LESFeasibility}
    """
    nodes = les_nodes(lch_minus, lch_plus, candidate, mode, boundary)
    ranks, failure = solve_ranks([a for _, a in nodes])
    if failure is None:
        result = LESFeasibility(True, nodes, ranks, None)
    else:
        label, a = nodes[failure]
        result = LESFeasibility(False, nodes, ranks,
                                'rank equations fail at %s (dimension %d)'
                                % (label, a))
    logging.info('%s sequence feasible: %s', mode, result.feasible)
    return result


def brute_force_ranks(dims):
    """\
    All nonnegative rank assignments satisfying the exactness equations,
    by exhaustive search; for cross-checking small instances.

    @rtype: C{list} of C{tuple}
    """
    found = []
    for ranks in product(*[range(a + 1) for a in dims]):
        if all(dims[j] == (j and ranks[j - 1] or 0) + ranks[j]
               for j in range(len(dims))) and (not ranks or not ranks[-1]):
            found.append(ranks)
    return found
