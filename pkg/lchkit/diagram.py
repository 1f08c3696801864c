"""\
Plat-position fronts of Legendrian knots.

A front is given by an even number of horizontal strands, closed off by a
column of left cusps pairing positions (1, 2), (3, 4), ... and a matching
column of right cusps, with a word of crossings in between. Positions are
numbered from the bottom; crossing C{i} exchanges the strands at positions
C{i} and C{i + 1}. Each strand is a single arc of the front and is labelled
C{Sj} by the position C{j} it occupies at the left cusps.

Text grammar::

    strands=4; [2,2,2]
    strands=4; [2,2,2]; orient=3

and its mapping mirror C{{"strands": 4, "word": [2, 2, 2], "orient": 3}}.

@author: lchkit developers
@license: GPL-3
"""

import re
import logging
from collections import namedtuple

import yaml

from . import InputError, LCHError


class FrontSyntaxError(InputError):
    "Front text does not follow the plat-word grammar."
    pass

class RangeError(InputError):
    "Crossing position out of range for the strand count."
    pass

class TopologyError(InputError):
    "Front closes up to more than one component."
    pass

class PotentialError(LCHError):
    "Maslov potential is inconsistent around the knot (diagram bug)."
    pass


ClassicalInvariants = namedtuple('ClassicalInvariants', ['tb', 'rot'])

ReebChord = namedtuple('ReebChord', ['id', 'degree', 'kind', 'position',
                                     'height'])

CROSSING = 'front_crossing'
RIGHT_CUSP = 'right_cusp'


class FrontWord(object):
    """\
    Plat-position front.

    Instances are validated on construction and never change afterwards.
    """
    def __init__(self, n_strands, word, orient=None):
        """\
        Constructor.

        @param n_strands: Number of strands between the cusp columns.
        @type n_strands: C{int}
        @param word: Crossing positions, left to right.
        @type word: C{list} of C{int}
        @param orient: Label of the strand oriented rightwards (default: the
            topmost strand).
        @type orient: C{int}
        """
        if isinstance(n_strands, bool) or not isinstance(n_strands, int) \
        or n_strands < 2 or n_strands % 2:
            raise RangeError('strand count must be an even integer >= 2, '
                             'got %r' % (n_strands,))
        word = tuple(word)
        for i in word:
            if isinstance(i, bool) or not isinstance(i, int):
                raise FrontSyntaxError('crossing %r is not an integer' % (i,))
            if not 1 <= i < n_strands:
                raise RangeError('crossing index %d invalid for %d strands'
                                 % (i, n_strands))
        if orient is None:
            orient = n_strands
        if isinstance(orient, bool) or not isinstance(orient, int) \
        or not 1 <= orient <= n_strands:
            raise RangeError('orientation seed %r invalid for %d strands'
                             % (orient, n_strands))
        self._n = n_strands
        self._word = word
        self._orient = orient
        self._layers = self._sweep()
        components = self._count_components()
        if components != 1:
            raise TopologyError('front has %d components' % components)

    @property
    def n_strands(self):
        return self._n

    @property
    def word(self):
        return self._word

    @property
    def orient(self):
        return self._orient

    @property
    def n_cusps(self):
        """\
        Number of right (equivalently, left) cusps.
        """
        return self._n // 2

    def layer(self, j):
        """\
        Strand labels by position immediately left of crossing C{j}.

        @param j: Crossing index, 0-based; C{len(word)} gives the arrangement
            at the right cusps.
        @type j: C{int}
        @rtype: C{tuple} of C{int}
        """
        return self._layers[j]

    @property
    def right_pairs(self):
        """\
        (lower, upper) strand labels meeting at each right cusp, bottom to top.
        """
        final = self._layers[-1]
        return [(final[2 * k], final[2 * k + 1]) for k in range(self.n_cusps)]

    @property
    def left_pairs(self):
        return [(2 * k + 1, 2 * k + 2) for k in range(self.n_cusps)]

    def _sweep(self):
        arrangement = list(range(1, self._n + 1))
        layers = [tuple(arrangement)]
        for i in self._word:
            arrangement[i - 1], arrangement[i] = arrangement[i], arrangement[i - 1]
            layers.append(tuple(arrangement))
        return layers

    def _count_components(self):
        parent = dict((s, s) for s in range(1, self._n + 1))
        def find(s):
            while parent[s] != s:
                parent[s] = parent[parent[s]]
                s = parent[s]
            return s
        for a, b in self.left_pairs + self.right_pairs:
            parent[find(a)] = find(b)
        return len(set(find(s) for s in parent))

    def __eq__(self, other):
        return isinstance(other, FrontWord) and self._n == other._n and \
            self._word == other._word and self._orient == other._orient

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self._n, self._word, self._orient))

    def __str__(self):
        text = 'strands=%d; [%s]' % (self._n, ','.join(str(i) for i in self._word))
        if self._orient != self._n:
            text += '; orient=%d' % self._orient
        return text

    def __repr__(self):
        return 'FrontWord(%d, %r, orient=%d)' % (self._n, list(self._word),
                                                 self._orient)

    def to_mapping(self):
        return {'strands': self._n, 'word': list(self._word),
                'orient': self._orient}


_GRAMMAR = re.compile(r'^\s*strands\s*=\s*(-?\d+)\s*;\s*\[([^\]]*)\]\s*'
                      r'(?:;\s*orient\s*=\s*(-?\d+)\s*)?;?\s*$')


def front_from_mapping(data):
    """\
    Build a front from a parsed mapping with keys C{strands}, C{word} and
    optionally C{orient}.

    @param data: The mapping.
    @type data: C{dict}
    @rtype: L{FrontWord}
    """
    if not isinstance(data, dict):
        raise FrontSyntaxError('front mapping expected, got %s'
                               % type(data).__name__)
    try:
        strands = data['strands']
        word = data['word']
    except KeyError as e:
        raise FrontSyntaxError('front mapping lacks key %s' % e)
    if not isinstance(word, list):
        raise FrontSyntaxError('word must be a list')
    return FrontWord(strands, word, data.get('orient'))


def parse_front(text):
    """\
    Parse a front from the plat-word grammar or its JSON/YAML mirror.

    @param text: The front description.
    @type text: C{str}
    @return: The validated front.
    @rtype: L{FrontWord}
    """
    stripped = text.strip()
    if stripped.startswith('{'):
        try:
            data = yaml.safe_load(stripped)
        except yaml.YAMLError as e:
            raise FrontSyntaxError('unreadable front mapping: %s' % e)
        return front_from_mapping(data)
    match = _GRAMMAR.match(stripped)
    if not match:
        raise FrontSyntaxError('cannot parse front %r' % text)
    strands = int(match.group(1))
    body = match.group(2).strip()
    word = []
    if body:
        for token in body.split(','):
            token = token.strip()
            if not re.match(r'^-?\d+$', token):
                raise FrontSyntaxError('bad crossing token %r' % token)
            word.append(int(token))
    orient = None
    if match.group(3) is not None:
        orient = int(match.group(3))
    return FrontWord(strands, word, orient)


def strand_directions(f):
    """\
    Direction of travel along each strand: +1 rightwards, -1 leftwards.

    The seed strand is oriented rightwards; directions alternate at every
    cusp.

    @rtype: C{dict}
    """
    partner_left = {}
    for a, b in f.left_pairs:
        partner_left[a], partner_left[b] = b, a
    partner_right = {}
    for a, b in f.right_pairs:
        partner_right[a], partner_right[b] = b, a
    direction = {f.orient: 1}
    strand = f.orient
    while True:
        if direction[strand] == 1:
            nxt = partner_right[strand]
            sign = -1
        else:
            nxt = partner_left[strand]
            sign = 1
        if nxt in direction:
            break
        direction[nxt] = sign
        strand = nxt
    return direction


def crossing_signs(f):
    """\
    Sign of each front crossing: +1 when both strands travel the same way.

    @rtype: C{list} of C{int}
    """
    direction = strand_directions(f)
    signs = []
    for j, i in enumerate(f.word):
        lower, upper = f.layer(j)[i - 1], f.layer(j)[i]
        signs.append(direction[lower] == direction[upper] and 1 or -1)
    return signs


def classical_invariants(f):
    """\
    Thurston-Bennequin and rotation numbers of a front.

    @param f: The front.
    @type f: L{FrontWord}
    @rtype: L{ClassicalInvariants}
    """
    direction = strand_directions(f)
    tb = sum(crossing_signs(f)) - f.n_cusps
    down = up = 0
    for lower, upper in f.right_pairs:
        if direction[upper] == 1:
            down += 1
        else:
            up += 1
    for lower, upper in f.left_pairs:
        if direction[upper] == -1:
            down += 1
        else:
            up += 1
    return ClassicalInvariants(tb, (down - up) // 2)


def _cusp_relations(f):
    # (lower, upper) pairs with mu(upper) = mu(lower) + 1
    return f.left_pairs + f.right_pairs


def maslov_number(f):
    """\
    Twice the absolute rotation number, read off from the potential defect
    accumulated once around the knot.
    """
    return _propagate(f)[1]


def _propagate(f):
    edges = {}
    for lower, upper in _cusp_relations(f):
        edges.setdefault(lower, []).append((upper, 1))
        edges.setdefault(upper, []).append((lower, -1))
    value = {f.orient: 0}
    previous = None
    strand = f.orient
    defect = 0
    for _ in range(f.n_strands):
        # walk the cycle, never stepping straight back
        choices = [(s, d) for s, d in edges[strand] if s != previous]
        if not choices:
            choices = edges[strand][1:]
        nxt, step = choices[0]
        if nxt in value:
            defect = abs(value[strand] + step - value[nxt])
            break
        value[nxt] = value[strand] + step
        previous, strand = strand, nxt
    return value, defect


def maslov_potential(f):
    """\
    Maslov potential of every strand.

    The potential rises by one from the lower to the upper branch of every
    cusp and vanishes on the seed strand. With rotation number r it is taken
    mod 2r; when r = 0 the values are integers.

    @param f: The front.
    @type f: L{FrontWord}
    @return: Mapping from strand label (C{'S1'}, ...) to potential.
    @rtype: C{dict}
    @raise PotentialError: If the potential fails a cusp relation.
    """
    value, modulus = _propagate(f)
    rot = classical_invariants(f).rot
    if modulus != 2 * abs(rot):
        raise PotentialError('potential defect %d disagrees with rotation '
                             'number %d' % (modulus, rot))
    if modulus:
        value = dict((s, v % modulus) for s, v in value.items())
    for lower, upper in _cusp_relations(f):
        diff = value[upper] - value[lower] - 1
        if (modulus and diff % modulus) or (not modulus and diff):
            raise PotentialError('cusp relation fails between S%d and S%d'
                                 % (lower, upper))
    return dict(('S%d' % s, value[s]) for s in sorted(value))


#: Factor by which the spacing between neighbouring strands grows across each
#: crossing column of a stretched front.
SPREAD = 2


def strand_heights(f):
    """\
    z-coordinates of the strands in each layer of the stretched front.

    Layer C{j} lies just left of crossing C{j + 1}; the last layer lies just
    left of the right cusps. Strands in a layer are evenly spaced and the
    spacing grows by L{SPREAD} across every crossing column, so the front fans
    out to the right. The two strands of a crossing meet at equal height
    inside its column, and the two branches of a right cusp close a lobe whose
    gap is the spacing of the last layer.

    @param f: The front.
    @type f: L{FrontWord}
    @return: One C{dict} per layer, strand label to height.
    @rtype: C{list} of C{dict}
    """
    heights = []
    for j in range(len(f.word) + 1):
        spacing = SPREAD ** j
        heights.append(dict((strand, (p + 1) * spacing)
                            for p, strand in enumerate(f.layer(j))))
    return heights


def reeb_chords(f):
    """\
    Graded Reeb chords of the resolved front.

    One chord per crossing (C{c1}, C{c2}, ... left to right) with degree the
    potential of the upper strand minus that of the lower strand just left of
    the crossing, then one chord of degree 1 per right cusp (C{a1}, C{a2},
    ... bottom to top). A crossing chord is as long as the gap its two strands
    close inside the crossing column, a cusp chord as long as its lobe (see
    L{strand_heights}).

    @param f: The front.
    @type f: L{FrontWord}
    @rtype: C{list} of L{ReebChord}
    @raise PotentialError: If a crossing's degree parity disagrees with its
        sign.
    """
    potential = maslov_potential(f)
    modulus = maslov_number(f)
    heights = strand_heights(f)
    signs = crossing_signs(f)
    chords = []
    for j, i in enumerate(f.word):
        lower, upper = f.layer(j)[i - 1], f.layer(j)[i]
        degree = potential['S%d' % upper] - potential['S%d' % lower]
        if modulus:
            degree %= modulus
        if (degree % 2 == 0) != (signs[j] == 1):
            raise PotentialError('crossing %d has degree %d but sign %+d'
                                 % (j + 1, degree, signs[j]))
        chords.append(ReebChord('c%d' % (j + 1), degree, CROSSING, j + 1,
                                heights[j][upper] - heights[j][lower]))
    final = heights[-1]
    for k, (lower, upper) in enumerate(f.right_pairs):
        degree = modulus and 1 % modulus or 1
        chords.append(ReebChord('a%d' % (k + 1), degree, RIGHT_CUSP, k + 1,
                                final[upper] - final[lower]))
    logging.debug('front %s: %d chords', f, len(chords))
    return chords
