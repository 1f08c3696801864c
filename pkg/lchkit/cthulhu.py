"""\
Four-block Cthulhu complexes of pairs of exact Lagrangian cobordisms.

A complex has four graded bases: C{Cplus} (chords at the positive ends),
C{CFplus} and C{CFminus} (intersection points of positive and negative
action) and C{Cminus} (chords at the negative ends). Degrees are stored
unshifted; the total degree adds 2 on C{Cplus}, 1 on C{Cminus} and 0 on the
intersection points, and the total differential raises it by one.

Blocks are named C{d_XY} for the component from group C{Y} into group C{X},
the groups being C{p} (Cplus), C{0} (CFplus and CFminus) and C{m} (Cminus).
Their unshifted degrees are::

    d_pp  1    d_p0 -1    d_pm  0
               d_00  1    d_0m  2
               d_m0  0    d_mm  1

while C{d_0p} and C{d_mp} must vanish. With filtration levels Cplus 0,
CFplus 1, Cminus 2, CFminus 3 the differential never raises the level.

JSON format::

    {"Cplus": [{"id": "g", "deg": 1}],
     "CFplus": [{"id": "p", "deg": 2}, {"id": "q", "deg": 3}],
     "Cminus": [{"id": "h", "deg": 1}],
     "CFminus": [],
     "d_pm": [["g", "h"]], "d_0m": [["q", "h"]], "d_p0": [["g", "p"]]}

Each block is a list of [row id, column id] pairs with F2 coefficient one;
repeated pairs cancel. Points may instead be listed under C{CF} with an
C{action} field of C{"+"} (the default) or C{"-"}.

@author: lchkit developers
@license: GPL-3
"""

import logging
from collections import namedtuple

import numpy as np
import yaml

from . import InputError, VerdictError
from . import gf2
from .dga import DegreeError, ChainMapViolation
from .linhom import GradedComplex, NotAComplex, homology, COHOMOLOGICAL


class SchemaError(InputError):
    "Cthulhu data does not follow the JSON schema."
    pass

class StructureError(InputError):
    "Block that must vanish is nonzero."
    pass

class ModeError(InputError):
    "Long exact sequence requested for the wrong kind of pair."
    pass

class NotExact(VerdictError):
    "Sequence fails to be exact."
    def __init__(self, message, node=None, report=None):
        super(NotExact, self).__init__(message)
        self.node = node
        self.report = report

class ConeStructureViolation(VerdictError):
    "Concatenated complex is not the expected mapping cone."
    pass


LEVELS = ('Cplus', 'CFplus', 'Cminus', 'CFminus')
SHIFTS = {'Cplus': 2, 'CFplus': 0, 'Cminus': 1, 'CFminus': 0}
GROUPS = {'p': ('Cplus',), '0': ('CFplus', 'CFminus'), 'm': ('Cminus',)}
BLOCK_DEGREES = {'d_pp': 1, 'd_p0': -1, 'd_pm': 0, 'd_00': 1, 'd_0m': 2,
                 'd_m0': 0, 'd_mm': 1}
FORBIDDEN = ('d_0p', 'd_mp')
DIRECTED = 'directed'
V_SHAPED = 'v_shaped'


class CthulhuComplex(object):
    """\
    Cthulhu complex: four graded bases and one total F2 matrix.

    The total matrix is indexed by the bases in the order C{Cplus},
    C{CFplus}, C{Cminus}, C{CFminus}.
    """
    def __init__(self, bases, matrix):
        """\
        Constructor.

        @param bases: Ordered (id, unshifted degree) pairs for each of
            L{LEVELS}; missing levels are empty.
        @type bases: C{dict}
        @param matrix: Total differential.
        @type matrix: C{numpy.ndarray}
        @raise SchemaError: If ids repeat or the matrix has the wrong shape.
        @raise StructureError: If an entry raises the filtration level.
        @raise DegreeError: If an entry does not raise total degree by one.
        """
        for name in bases:
            if name not in LEVELS:
                raise SchemaError('unknown basis %s' % name)
        self.bases = dict((name, [(str(g), int(d)) for g, d in
                                  bases.get(name, [])]) for name in LEVELS)
        self.ids = []
        self.degrees = []
        self.total_degrees = []
        self.levels = []
        self.blocks = []
        for level, name in enumerate(LEVELS):
            for g, d in self.bases[name]:
                self.ids.append(g)
                self.degrees.append(d)
                self.total_degrees.append(d + SHIFTS[name])
                self.levels.append(level)
                self.blocks.append(name)
        self.index = dict((g, j) for j, g in enumerate(self.ids))
        if len(self.index) != len(self.ids):
            raise SchemaError('generator ids repeat')
        n = len(self.ids)
        self.matrix = gf2.asmatrix(matrix, shape=(n, n))
        if self.matrix.shape != (n, n):
            raise SchemaError('matrix shape %s does not fit %d generators'
                              % (self.matrix.shape, n))
        for r, c in zip(*np.nonzero(self.matrix)):
            if self.levels[r] > self.levels[c]:
                raise StructureError('entry %s -> %s maps %s into %s'
                                     % (self.ids[c], self.ids[r],
                                        self.blocks[c], self.blocks[r]))
            if self.total_degrees[r] != self.total_degrees[c] + 1:
                raise DegreeError('entry %s -> %s changes total degree by %d'
                                  % (self.ids[c], self.ids[r],
                                     self.total_degrees[r]
                                     - self.total_degrees[c]))

    def __len__(self):
        return len(self.ids)

    def indices(self, *names):
        """\
        Positions of the generators of the named levels.
        """
        return [j for j, b in enumerate(self.blocks) if b in names]

    def group(self, key):
        return self.indices(*GROUPS[key])

    def basis(self, *names):
        return [(self.ids[j], self.degrees[j]) for j in self.indices(*names)]

    def block(self, key):
        """\
        Block matrix C{d_XY}, rows in group C{X}, columns in group C{Y}.
        """
        rows, cols = self.group(key[2]), self.group(key[3])
        return self.matrix[np.ix_(rows, cols)].copy()

    def ordered(self, keys='p0m'):
        """\
        Generator ids and differential in the group order C{keys}.
        """
        idx = [j for key in keys for j in self.group(key)]
        return [self.ids[j] for j in idx], self.matrix[np.ix_(idx, idx)].copy()

    def is_empty(self, name):
        return not self.bases[name]

    def to_json(self):
        data = dict((name, [{'id': g, 'deg': d} for g, d in self.bases[name]])
                    for name in LEVELS)
        for key in sorted(BLOCK_DEGREES):
            rows, cols = self.group(key[2]), self.group(key[3])
            entries = []
            for i in rows:
                for j in cols:
                    if self.matrix[i, j]:
                        entries.append([self.ids[i], self.ids[j]])
            if entries:
                data[key] = entries
        return data


def _read_basis(entries, name):
    try:
        return [(e['id'], e['deg']) for e in entries]
    except (KeyError, TypeError) as e:
        raise SchemaError('malformed %s basis: %s' % (name, e))


def load(data):
    """\
    Load a Cthulhu complex from its JSON-compatible mapping or text.

    @param data: Mapping, or JSON/YAML text.
    @type data: C{dict} or C{str}
    @rtype: L{CthulhuComplex}
    @raise SchemaError: On malformed data.
    @raise StructureError: If a forbidden block is nonzero.
    @raise DegreeError: If a block entry has the wrong degree.
    """
    if isinstance(data, str):
        try:
            data = yaml.safe_load(data)
        except yaml.YAMLError as e:
            raise SchemaError('unreadable Cthulhu data: %s' % e)
    if not isinstance(data, dict):
        raise SchemaError('Cthulhu data must be a mapping')
    known = set(LEVELS) | set(BLOCK_DEGREES) | set(FORBIDDEN) | \
        set(['CF', 'name'])
    for key in data:
        if key not in known:
            raise SchemaError('unknown key %s' % key)
    bases = dict((name, _read_basis(data.get(name) or [], name))
                 for name in LEVELS)
    for point in data.get('CF') or []:
        action = str(point.get('action', '+'))
        if action not in ('+', '-'):
            raise SchemaError('action of %s must be + or -' % point.get('id'))
        target = action == '+' and 'CFplus' or 'CFminus'
        bases[target] += _read_basis([point], 'CF')
    for key in FORBIDDEN:
        if data.get(key):
            raise StructureError('block %s must vanish' % key)
    group = {}
    degree = {}
    for name in LEVELS:
        for g, d in bases[name]:
            for key, members in GROUPS.items():
                if name in members:
                    group[str(g)] = key
            degree[str(g)] = int(d)
    entries = []
    for key, shift in sorted(BLOCK_DEGREES.items()):
        for entry in data.get(key) or []:
            try:
                row, col = [str(x) for x in entry]
            except (TypeError, ValueError):
                raise SchemaError('%s entry %r is not a [row, col] pair'
                                  % (key, entry))
            if group.get(row) != key[2] or group.get(col) != key[3]:
                raise SchemaError('%s entry %s <- %s is outside the block'
                                  % (key, row, col))
            if degree[row] - degree[col] != shift:
                raise DegreeError('%s entry %s <- %s has degree %d, expected '
                                  '%d' % (key, row, col,
                                          degree[row] - degree[col], shift))
            entries.append((row, col))
    c = CthulhuComplex(bases, np.zeros((0, 0)))
    M = np.zeros((len(c), len(c)), dtype=np.uint8)
    for row, col in entries:
        M[c.index[row], c.index[col]] ^= 1
    c = CthulhuComplex(bases, M)
    logging.debug('loaded Cthulhu complex with blocks %s',
                  ', '.join('%s:%d' % (n, len(c.bases[n])) for n in LEVELS))
    return c


def total_homology(c):
    """\
    Dimension of the homology of the total complex in each total degree.

    @rtype: C{dict}
    """
    dims = {}
    ranks = {}
    for k in sorted(set(c.total_degrees)):
        cols = [j for j in range(len(c)) if c.total_degrees[j] == k]
        ranks[k] = gf2.rank(c.matrix[:, cols])
    for k in ranks:
        n = sum(1 for d in c.total_degrees if d == k)
        dims[k] = n - ranks[k] - ranks.get(k - 1, 0)
    return dict((k, n) for k, n in dims.items() if n)


VerifyReport = namedtuple('VerifyReport', ['d_squared', 'acyclic',
                                           'homology'])


def verify(c):
    """\
    Check d^2 = 0 and acyclicity of the total complex.

    @rtype: L{VerifyReport}
    """
    d_squared = gf2.is_zero(gf2.matmul(c.matrix, c.matrix))
    dims = d_squared and total_homology(c) or {}
    report = VerifyReport(d_squared, d_squared and not dims, dims)
    logging.info('Cthulhu verify: d^2 = 0 %s, acyclic %s', report.d_squared,
                 report.acyclic)
    return report


def block_homology(c, name):
    """\
    Homology of one level with its own differential, in total degrees.

    @rtype: L{PoincarePolynomial}
    """
    idx = c.indices(name)
    basis = [(c.ids[j], c.total_degrees[j]) for j in idx]
    return homology(GradedComplex(basis, c.matrix[np.ix_(idx, idx)],
                                  COHOMOLOGICAL))


class SpectralSequenceReport(object):
    """\
    Page dimensions of the spectral sequence of the level filtration.

    @ivar pages: Mapping from page number to C{{(level, degree): dim}}.
    @ivar collapse: Whether the last page vanishes.
    """
    def __init__(self, pages, e1_matches_blocks):
        self.pages = pages
        self.e1_matches_blocks = e1_matches_blocks
        last = pages[max(pages)]
        self.collapse = not any(last.values())

    def total(self, r):
        return sum(self.pages[r].values())

    def dim(self, r, level, degree):
        return self.pages[r].get((level, degree), 0)

    def monotone(self):
        for r in sorted(self.pages)[:-1]:
            for key, n in self.pages[r + 1].items():
                if n > self.pages[r].get(key, 0):
                    return False
        return True

    def to_json(self):
        return {'pages': dict(('E%d' % r, [{'level': LEVELS[p], 'degree': k,
                                            'dim': n}
                                           for (p, k), n in
                                           sorted(self.pages[r].items()) if n])
                              for r in self.pages),
                'collapse': self.collapse,
                'e1_matches_blocks': self.e1_matches_blocks}


def _filtered_cycles(c, p, r, k):
    """\
    Chains of total degree C{k} at levels at most C{p} whose differential
    lies at levels at most C{p - r}, as columns in the full basis.
    """
    n = len(c)
    cols = [j for j in range(n) if c.total_degrees[j] == k and
            c.levels[j] <= p]
    if not cols:
        return gf2.zeros(n, 0)
    rows = [i for i in range(n) if c.levels[i] > p - r]
    N = gf2.nullspace(c.matrix[np.ix_(rows, cols)])
    Z = gf2.zeros(n, N.shape[1])
    Z[cols, :] = N
    return Z


def spectral_sequence(c, pages=4):
    """\
    Spectral sequence of the filtration by level.

    With four levels the differential of page r shifts the level by r, so
    the fourth page is the last one that can change.

    @param c: The complex.
    @type c: L{CthulhuComplex}
    @param pages: Number of pages to compute.
    @type pages: C{int}
    @rtype: L{SpectralSequenceReport}
    @raise NotAComplex: If d^2 != 0.
    """
    if not gf2.is_zero(gf2.matmul(c.matrix, c.matrix)):
        raise NotAComplex('Cthulhu differential does not square to zero')
    degrees = sorted(set(c.total_degrees))
    result = {}
    for r in range(1, pages + 1):
        page = {}
        for p in range(len(LEVELS)):
            for k in degrees:
                Z = _filtered_cycles(c, p, r, k)
                if not Z.shape[1]:
                    continue
                below = _filtered_cycles(c, p - 1, r - 1, k)
                hit = gf2.matmul(c.matrix, _filtered_cycles(c, p + r - 1,
                                                            r - 1, k - 1))
                page[(p, k)] = gf2.rank(Z) - gf2.span_rank(below, hit)
        result[r] = page
        logging.debug('E%d: total dimension %d', r, sum(page.values()))
    e1 = result[1]
    matches = True
    for p, name in enumerate(LEVELS):
        h = block_homology(c, name)
        for k in degrees:
            if h.dim(k) != e1.get((p, k), 0):
                matches = False
    return SpectralSequenceReport(result, matches)


class LESReport(object):
    """\
    Three-term long exact sequence of a directed or V-shaped pair.

    The terms are X (the subcomplex), Y and Z (the top quotient); the maps
    are f: H^k(Z) -> H^k+1(Y), g: H^k(Y) -> H^k+1(X) and the connecting
    map h: H^k(X) -> H^k-1(Z).
    """
    def __init__(self, mode, names, dims, ranks):
        self.mode = mode
        self.names = names
        self.dims = dims
        self.ranks = ranks
        self.failures = self._failures()
        self.exact = not self.failures
        if mode == DIRECTED:
            self.lch_map_isomorphism = self._isomorphism('g', 'Y', 'X', 1)
        else:
            self.lch_map_isomorphism = self._isomorphism('h', 'X', 'Z', -1)

    def dim(self, term, k):
        return self.dims[term].get(k, 0)

    def rank(self, f, k):
        return self.ranks[f].get(k, 0)

    def degrees(self):
        found = set()
        for term in 'XYZ':
            found.update(self.dims[term])
        if not found:
            return []
        return list(range(min(found) - 1, max(found) + 2))

    def _failures(self):
        failures = []
        for k in self.degrees():
            checks = (('X', self.rank('g', k - 1) + self.rank('h', k)),
                      ('Y', self.rank('f', k - 1) + self.rank('g', k)),
                      ('Z', self.rank('h', k + 1) + self.rank('f', k)))
            for term, expected in checks:
                if self.dim(term, k) != expected:
                    failures.append('H^%d(%s)' % (k, self.names[term]))
        return failures

    def _isomorphism(self, f, source, target, step):
        return all(self.rank(f, k) == self.dim(source, k) ==
                   self.dim(target, k + step) for k in self.degrees())

    def sequence(self):
        """\
        Nodes in the order met along the sequence, with the rank of the
        outgoing map.
        """
        rows = []
        for k in self.degrees():
            rows.append(('H^%d(%s)' % (k, self.names['Z']), self.dim('Z', k),
                         self.rank('f', k)))
            rows.append(('H^%d(%s)' % (k + 1, self.names['Y']),
                         self.dim('Y', k + 1), self.rank('g', k + 1)))
            rows.append(('H^%d(%s)' % (k + 2, self.names['X']),
                         self.dim('X', k + 2), self.rank('h', k + 2)))
        return rows

    def to_json(self):
        return {'mode': self.mode,
                'terms': dict(self.names),
                'sequence': [{'node': node, 'dim': n, 'rank_out': r}
                             for node, n, r in self.sequence()],
                'exact': self.exact,
                'failures': list(self.failures),
                'lch_map_isomorphism': self.lch_map_isomorphism}


def _degree_columns(c, idx, k):
    return [j for j in idx if c.total_degrees[j] == k]


def _block_cycles(c, idx, k):
    cols = _degree_columns(c, idx, k)
    if not cols:
        return gf2.zeros(len(c), 0)
    N = gf2.nullspace(c.matrix[np.ix_(idx, cols)])
    Z = gf2.zeros(len(c), N.shape[1])
    Z[cols, :] = N
    return Z


def _boundaries(c, idx, k):
    """\
    Boundaries of degree C{k} inside one term, restricted to its rows.
    """
    cols = _degree_columns(c, idx, k - 1)
    return c.matrix[np.ix_(idx, cols)]


def _induced_rank(c, source, target, k):
    cycles = _block_cycles(c, source, k)
    image = gf2.matmul(c.matrix, cycles)[target, :]
    B = _boundaries(c, target, k + 1)
    return gf2.span_rank(image, B) - gf2.span_rank(B)


def _connecting_rank(c, X, YZ, Z, k):
    cols = [j for j in range(len(c)) if c.total_degrees[j] == k - 1]
    if not cols:
        return 0
    N = gf2.nullspace(c.matrix[np.ix_(YZ, cols)])
    W = gf2.zeros(len(c), N.shape[1])
    W[cols, :] = N
    B = _boundaries(c, Z, k - 1)
    return gf2.span_rank(W[Z, :], B) - gf2.span_rank(B)


def extract_les(c, mode):
    """\
    Long exact sequence of a directed or V-shaped pair.

    A directed pair (no C{CFplus}) gives the sequence of C{Cplus},
    C{Cminus}, C{CFminus}; a V-shaped pair (no C{CFminus}) that of
    C{Cplus}, C{CFplus}, C{Cminus}.

    @param c: The complex.
    @type c: L{CthulhuComplex}
    @param mode: L{DIRECTED} or L{V_SHAPED}.
    @type mode: C{str}
    @rtype: L{LESReport}
    @raise ModeError: If the pair is not of the requested kind.
    @raise NotExact: If exactness fails at some node.
    """
    if mode == DIRECTED:
        if not c.is_empty('CFplus'):
            raise ModeError('directed pair must have no CFplus points')
        names = {'X': 'Cplus', 'Y': 'Cminus', 'Z': 'CFminus'}
    elif mode == V_SHAPED:
        if not c.is_empty('CFminus'):
            raise ModeError('V-shaped pair must have no CFminus points')
        names = {'X': 'Cplus', 'Y': 'CFplus', 'Z': 'Cminus'}
    else:
        raise ModeError('unknown mode %s' % mode)
    if not gf2.is_zero(gf2.matmul(c.matrix, c.matrix)):
        raise NotAComplex('Cthulhu differential does not square to zero')
    X, Y, Z = [c.indices(names[t]) for t in 'XYZ']
    degrees = sorted(set(c.total_degrees))
    dims = {}
    for term, idx in (('X', X), ('Y', Y), ('Z', Z)):
        h = block_homology(c, names[term])
        dims[term] = dict((k, h.dim(k)) for k in h.degrees)
    span = list(range(min(degrees or [0]) - 2, max(degrees or [0]) + 3))
    ranks = {'f': {}, 'g': {}, 'h': {}}
    for k in span:
        ranks['f'][k] = _induced_rank(c, Z, Y, k)
        ranks['g'][k] = _induced_rank(c, Y, X, k)
        ranks['h'][k] = _connecting_rank(c, X, Y + Z, Z, k)
    report = LESReport(mode, names, dims, ranks)
    logging.info('%s LES: exact %s, map between ends bijective %s', mode,
                 report.exact, report.lch_map_isomorphism)
    if not report.exact:
        raise NotExact('exactness fails at %s' % report.failures[0],
                       report.failures[0], report)
    return report


class ConcatenationData(object):
    """\
    Two pairs of cobordisms sharing their middle ends, with the auxiliary
    counts needed to glue them.

    The lower pair V has positive ends equal to the negative ends of the
    upper pair W; write M for this middle basis. The auxiliary maps are
    the banana map C{b}: M -> M (degree -1), C{delta_m0}: CF(W) -> M
    (degree 0), C{delta_0p}: M -> CF(V) (degree 1) and C{delta_mp}:
    M -> Cminus(V) (degree 0).
    """
    def __init__(self, lower, upper, b=None, delta_m0=None, delta_0p=None,
                 delta_mp=None):
        """\
        Constructor.

        @param lower: The complex of V.
        @type lower: L{CthulhuComplex}
        @param upper: The complex of W.
        @type upper: L{CthulhuComplex}
        @raise SchemaError: If the middle bases disagree or a map has the
            wrong shape.
        @raise StructureError: If the middle differentials disagree.
        """
        if lower.basis('Cplus') != upper.basis('Cminus'):
            raise SchemaError('positive ends of the lower pair differ from '
                              'negative ends of the upper pair')
        if not np.array_equal(lower.block('d_pp'), upper.block('d_mm')):
            raise StructureError('middle differentials disagree')
        self.lower = lower
        self.upper = upper
        m, w0 = len(lower.group('p')), len(upper.group('0'))
        v0, vm = len(lower.group('0')), len(lower.group('m'))
        self.b = self._matrix(b, (m, m), 'b')
        self.delta_m0 = self._matrix(delta_m0, (m, w0), 'delta_m0')
        self.delta_0p = self._matrix(delta_0p, (v0, m), 'delta_0p')
        self.delta_mp = self._matrix(delta_mp, (vm, m), 'delta_mp')

    @staticmethod
    def _matrix(M, shape, name):
        if M is None:
            return gf2.zeros(*shape)
        M = gf2.asmatrix(M, shape=shape)
        if M.shape != shape:
            raise SchemaError('%s has shape %s, expected %s'
                              % (name, M.shape, shape))
        return M


_AUX = {'b': ('p', 'p', -1), 'delta_m0': ('p', '0', 0),
        'delta_0p': ('0', 'p', 1), 'delta_mp': ('m', 'p', 0)}


def load_concatenation(data):
    """\
    Load concatenation data: the complexes under C{lower} and C{upper} and
    the auxiliary maps C{b}, C{delta_m0}, C{delta_0p} and C{delta_mp} as
    sparse [row id, column id] lists.

    @rtype: L{ConcatenationData}
    """
    if isinstance(data, str):
        try:
            data = yaml.safe_load(data)
        except yaml.YAMLError as e:
            raise SchemaError('unreadable concatenation data: %s' % e)
    if not isinstance(data, dict):
        raise SchemaError('concatenation data must be a mapping')
    for key in data:
        if key not in set(['lower', 'upper', 'name']) | set(_AUX):
            raise SchemaError('unknown key %s' % key)
    try:
        lower, upper = load(data['lower']), load(data['upper'])
    except KeyError as e:
        raise SchemaError('concatenation data lacks %s' % e)
    # row and column owners: middle chords from the lower complex, CF(W)
    # from the upper one, CF(V) and Cminus(V) from the lower one
    owner = {'p': (lower, 'p'), '0w': (upper, '0'), '0v': (lower, '0'),
             'm': (lower, 'm')}
    layout = {'b': ('p', 'p'), 'delta_m0': ('p', '0w'),
              'delta_0p': ('0v', 'p'), 'delta_mp': ('m', 'p')}
    maps = {}
    for key, (rkey, ckey) in layout.items():
        rc, rg = owner[rkey]
        cc, cg = owner[ckey]
        rows = [rc.ids[j] for j in rc.group(rg)]
        cols = [cc.ids[j] for j in cc.group(cg)]
        M = gf2.zeros(len(rows), len(cols))
        for entry in data.get(key) or []:
            try:
                row, col = [str(x) for x in entry]
                i, j = rows.index(row), cols.index(col)
            except (TypeError, ValueError):
                raise SchemaError('%s entry %r is outside the map' % (key, entry))
            shift = _AUX[key][2]
            got = rc.degrees[rc.index[row]] - cc.degrees[cc.index[col]]
            if got != shift:
                raise DegreeError('%s entry %s <- %s has degree %d, expected '
                                  '%d' % (key, row, col, got, shift))
            M[i, j] ^= 1
        maps[key] = M
    return ConcatenationData(lower, upper, **maps)


def _concatenated_blocks(cd):
    """\
    Differential of the glued complex in the block order (W+, W0, V0, V-).
    """
    V, W = cd.lower, cd.upper
    bd = gf2.matmul(cd.b, cd.delta_m0)
    Wpp, Wp0, Wpm = W.block('d_pp'), W.block('d_p0'), W.block('d_pm')
    W00, W0m = W.block('d_00'), W.block('d_0m')
    Vp0, Vpm = V.block('d_p0'), V.block('d_pm')
    V00, V0m, Vm0, Vmm = V.block('d_00'), V.block('d_0m'), V.block('d_m0'), \
        V.block('d_mm')
    wp, w0 = len(W.group('p')), len(W.group('0'))
    rows = [
        [Wpp, Wp0 ^ gf2.matmul(Wpm, bd), gf2.matmul(Wpm, Vp0),
         gf2.matmul(Wpm, Vpm)],
        [gf2.zeros(w0, wp), W00 ^ gf2.matmul(W0m, bd), gf2.matmul(W0m, Vp0),
         gf2.matmul(W0m, Vpm)],
        [gf2.zeros(len(V.group('0')), wp),
         gf2.matmul(cd.delta_0p, cd.delta_m0), V00, V0m],
        [gf2.zeros(len(V.group('m')), wp),
         gf2.matmul(cd.delta_mp, cd.delta_m0), Vm0, Vmm]]
    ids = [W.ids[j] for j in W.group('p') + W.group('0')] + \
        [V.ids[j] for j in V.group('0') + V.group('m')]
    return ids, np.vstack([np.hstack(row) for row in rows])


def _permutation(source_ids, target_ids):
    """\
    Matrix taking coordinates in C{source_ids} order to C{target_ids}.
    """
    P = gf2.zeros(len(target_ids), len(source_ids))
    where = dict((g, j) for j, g in enumerate(source_ids))
    for i, g in enumerate(target_ids):
        P[i, where[g]] = 1
    return P


def concatenate(cd):
    """\
    Cthulhu complex of the concatenated pair.

    @param cd: The gluing data.
    @type cd: L{ConcatenationData}
    @rtype: L{CthulhuComplex}
    @raise StructureError: If the glued differential breaks the filtration.
    @raise SchemaError: If the two pieces share intersection point ids.
    """
    V, W = cd.lower, cd.upper
    bases = {'Cplus': W.bases['Cplus'],
             'CFplus': W.bases['CFplus'] + V.bases['CFplus'],
             'Cminus': V.bases['Cminus'],
             'CFminus': W.bases['CFminus'] + V.bases['CFminus']}
    ids, D = _concatenated_blocks(cd)
    glued = CthulhuComplex(bases, np.zeros((0, 0)))
    P = _permutation(ids, glued.ids)
    return CthulhuComplex(bases, gf2.matmul(P, D, P.T))


def transfer_map(v, w):
    """\
    Transfer map from the complex of V to that of V glued below W.

    @param v: The lower complex.
    @type v: L{CthulhuComplex}
    @param w: The upper complex.
    @type w: L{CthulhuComplex}
    @return: Matrix with rows in the glued storage order and columns in the
        storage order of C{v}.
    @rtype: C{numpy.ndarray}
    """
    if v.basis('Cplus') != w.basis('Cminus'):
        raise SchemaError('positive ends of the lower pair differ from '
                          'negative ends of the upper pair')
    wp, w0 = len(w.group('p')), len(w.group('0'))
    m, v0, vm = len(v.group('p')), len(v.group('0')), len(v.group('m'))
    Phi = np.vstack([
        np.hstack([w.block('d_pm'), gf2.zeros(wp, v0 + vm)]),
        np.hstack([w.block('d_0m'), gf2.zeros(w0, v0 + vm)]),
        np.hstack([gf2.zeros(v0 + vm, m), gf2.identity(v0 + vm)])])
    rows = [w.ids[j] for j in w.group('p') + w.group('0')] + \
        [v.ids[j] for j in v.group('0') + v.group('m')]
    cols = [v.ids[j] for j in v.group('p') + v.group('0') + v.group('m')]
    glued = _glued_ids(v, w)
    return gf2.matmul(_permutation(rows, glued), Phi,
                      _permutation(v.ids, cols))


def _glued_ids(v, w):
    def ids(c, name):
        return [g for g, _ in c.bases[name]]
    return ids(w, 'Cplus') + ids(w, 'CFplus') + ids(v, 'CFplus') + \
        ids(v, 'Cminus') + ids(w, 'CFminus') + ids(v, 'CFminus')


def cotransfer_map(cd):
    """\
    Co-transfer map from the glued complex to the complex of W.

    @rtype: C{numpy.ndarray}
    """
    V, W = cd.lower, cd.upper
    wp, w0 = len(W.group('p')), len(W.group('0'))
    v0, vm = len(V.group('0')), len(V.group('m'))
    m = len(W.group('m'))
    Phi = np.vstack([
        np.hstack([gf2.identity(wp + w0), gf2.zeros(wp + w0, v0 + vm)]),
        np.hstack([gf2.zeros(m, wp), gf2.matmul(cd.b, cd.delta_m0),
                   V.block('d_p0'), V.block('d_pm')])])
    cols = [W.ids[j] for j in W.group('p') + W.group('0')] + \
        [V.ids[j] for j in V.group('0') + V.group('m')]
    rows = [W.ids[j] for j in W.group('p') + W.group('0') + W.group('m')]
    return gf2.matmul(_permutation(rows, W.ids), Phi,
                      _permutation(_glued_ids(V, W), cols))


def is_chain_map(Phi, source, target):
    return np.array_equal(gf2.matmul(Phi, source.matrix),
                          gf2.matmul(target.matrix, Phi))


def is_identity(Phi):
    return Phi.shape[0] == Phi.shape[1] and \
        np.array_equal(Phi, gf2.identity(Phi.shape[0]))


ConcatenationReport = namedtuple('ConcatenationReport', [
    'd_squared', 'middle_identity', 'transfer_chain_map',
    'cotransfer_chain_map', 'transfer_identity', 'cotransfer_identity',
    'psi_involution', 'cone_structure'])


def _cone_check(cd):
    """\
    Conjugate the glued complex plus the cone of the identity of M by Psi
    and compare with the mapping cone of a map from Cth(W) to Cth(V).

    @return: Whether Psi squares to the identity and whether the conjugate
        has the cone shape with diagonal blocks d^W and d^V.
    @rtype: C{tuple}
    """
    V, W = cd.lower, cd.upper
    ids, D = _concatenated_blocks(cd)
    n = len(ids)
    m = len(V.group('p'))
    Wmm, Vpp = W.block('d_mm'), V.block('d_pp')
    # coordinates: glued complex, then M as W- (A), then M as V+ (B)
    A = list(range(n, n + m))
    B = list(range(n + m, n + 2 * m))
    size = n + 2 * m
    Dt = gf2.zeros(size, size)
    Dt[:n, :n] = D
    Dt[np.ix_(A, A)] = Wmm
    Dt[np.ix_(B, B)] = Vpp
    Dt[np.ix_(B, A)] = gf2.identity(m)
    wp, w0 = len(W.group('p')), len(W.group('0'))
    v0 = len(V.group('0'))
    Psi = gf2.identity(size)
    Psi[np.ix_(list(range(wp)), B)] = W.block('d_pm')
    Psi[np.ix_(list(range(wp, wp + w0)), B)] = W.block('d_0m')
    F = np.hstack([gf2.zeros(m, wp), gf2.matmul(cd.b, cd.delta_m0),
                   V.block('d_p0'), V.block('d_pm')])
    Psi[np.ix_(A, list(range(n)))] = F
    involution = is_identity(gf2.matmul(Psi, Psi))
    if not involution:
        return False, False
    Dbar = gf2.matmul(Psi, Dt, Psi)
    w_part = list(range(wp + w0)) + A
    v_part = B + list(range(wp + w0, n))
    _, dW = W.ordered()
    _, dV = V.ordered()
    cone = gf2.is_zero(Dbar[np.ix_(w_part, v_part)]) and \
        np.array_equal(Dbar[np.ix_(w_part, w_part)], dW) and \
        np.array_equal(Dbar[np.ix_(v_part, v_part)], dV)
    return True, cone


def middle_identity(cd):
    """\
    Whether the negative-end differential of W on CF(W) is the one the
    gluing forces on it.
    """
    V, W = cd.lower, cd.upper
    bd = gf2.matmul(cd.b, cd.delta_m0)
    forced = gf2.matmul(bd, W.block('d_00')) ^ \
        gf2.matmul(V.block('d_p0'), cd.delta_0p, cd.delta_m0) ^ \
        gf2.matmul(V.block('d_pm'), cd.delta_mp, cd.delta_m0) ^ \
        gf2.matmul(W.block('d_mm'), bd)
    return np.array_equal(forced, W.block('d_m0'))


def verify_concatenation(cd):
    """\
    Check the transfer and co-transfer maps and the cone structure of a
    concatenation.

    @param cd: The gluing data.
    @type cd: L{ConcatenationData}
    @rtype: L{ConcatenationReport}
    @raise NotAComplex: If a constituent does not square to zero.
    @raise ChainMapViolation: If a transfer map is not a chain map.
    @raise ConeStructureViolation: If Psi is not its own inverse or the
        conjugated complex is not a mapping cone.
    """
    for c in (cd.lower, cd.upper):
        if not verify(c).d_squared:
            raise NotAComplex('constituent does not square to zero')
    glued = concatenate(cd)
    d_squared = verify(glued).d_squared
    forward = transfer_map(cd.lower, cd.upper)
    backward = cotransfer_map(cd)
    if not is_chain_map(forward, cd.lower, glued):
        raise ChainMapViolation('transfer map is not a chain map')
    if not is_chain_map(backward, glued, cd.upper):
        raise ChainMapViolation('co-transfer map is not a chain map')
    involution, cone = _cone_check(cd)
    if not involution:
        raise ConeStructureViolation('Psi is not its own inverse')
    if not cone:
        raise ConeStructureViolation('glued complex is not the mapping cone')
    report = ConcatenationReport(d_squared, middle_identity(cd), True, True,
                                 is_identity(forward), is_identity(backward),
                                 involution, cone)
    logging.info('concatenation verified: %s', report)
    return report


def composition_holds(v, lower_data, upper_data):
    """\
    Check that transferring through two glued pieces in turn equals
    transferring through their concatenation.

    @param v: The bottom complex.
    @type v: L{CthulhuComplex}
    @param lower_data: Gluing of C{v} below the middle piece U.
    @type lower_data: L{ConcatenationData}
    @param upper_data: Gluing of U below the top piece U'.
    @type upper_data: L{ConcatenationData}
    @rtype: C{bool}
    """
    u, u_top = upper_data.lower, upper_data.upper
    vu = concatenate(lower_data)
    uu = concatenate(upper_data)
    stepwise = gf2.matmul(transfer_map(vu, u_top), transfer_map(v, u))
    direct = transfer_map(v, uu)
    if _glued_ids(vu, u_top) != _glued_ids(v, uu):
        return False
    return np.array_equal(stepwise, direct)
