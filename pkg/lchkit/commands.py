"""\
Standard library of interface commands.

Commands are functions decorated with C{@command} and taking three positional
arguments: a reference to the session object, a list of strings comprising
the command arguments, and a string specifying the return value format from
the following:

  - C{json} - one JSON object with sorted keys and a C{version} field
  - C{csv} - comma-delimited rows, the first one carrying the version
  - C{text} - human-readable text format (can include newlines)

Commands may raise any type of exception, but these will be re-raised as
L{CommandError} carrying the process exit code: 2 for input errors, 3 for an
exhausted search budget and 1 for negative verdicts.

Custom commands may be added simply by importing the C{@command} decorator from
this module and wrapping an appropriately-formed base function.

@author: lchkit developers
@license: GPL-3
"""

import re
import csv
import json
from io import StringIO

from . import __version__, InputError, VerdictError
from .diagram import classical_invariants, maslov_number, reeb_chords
from .discs import all_disks, disk_to_json, disks_as_json_lines
from .dga import check_d_squared, euler_characteristic
from .augment import enumerate_augmentations, enumerate_matrix_reps, \
    inflate, BudgetExceeded
from .linhom import lch_class_set, duality_report, PoincarePolynomial, \
    table_rows
from .obstruct import concordance_obstruction, endocobordism_constraints, \
    les_feasibility, BettiVector, circle, OBSTRUCTED, NOT_OBSTRUCTED, PAIR, \
    DUALITY, MAYER_VIETORIS
from . import cthulhu as cth


RESPONSES = ('json', 'csv', 'text')

commands = {}

class CommandError(Exception):
    "Command failed (usually non-fatal)."
    def __init__(self, message, code=1, output=None):
        super(CommandError, self).__init__(message)
        self.code = code
        self.output = output


def exit_code(e):
    """\
    Process exit code for an exception raised by a command.

    @rtype: C{int}
    """
    if isinstance(e, BudgetExceeded):
        return 3
    if isinstance(e, VerdictError):
        return 1
    if isinstance(e, (InputError, EnvironmentError, ValueError, KeyError,
                      IndexError)):
        return 2
    return 1


def command(f):
    def wrapped(ex, args, response='json'):
        assert response in RESPONSES
        try:
            return f(ex, args, response)
        except CommandError as e:
            raise e
        except Exception as e:
            raise CommandError('%s: %s' % (type(e).__name__, e), exit_code(e))
    wrapped.__doc__ = f.__doc__
    commands[f.__name__.replace('_', '-')] = wrapped
    return wrapped


def version():
    return '%d.%d.%d' % __version__[0:3]


def respond(response, result, rows=(), lines=()):
    """\
    Render a command result in the requested format.

    @param result: JSON-compatible mapping.
    @type result: C{dict}
    @param rows: Table rows for C{csv}.
    @type rows: C{list} of C{list}
    @param lines: Lines for C{text}.
    @type lines: C{list} of C{str}
    @rtype: C{str}
    """
    if response == 'json':
        result = dict(result)
        result['version'] = version()
        return json.dumps(result, sort_keys=True, indent=2)
    elif response == 'csv':
        out = StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['version', version()])
        writer.writerows(rows)
        return out.getvalue().rstrip('\n')
    else:
        return '\n'.join(lines)


def _flag(value):
    return value and 'yes' or 'no'


def _polynomial_json(p):
    return {'polynomial': str(p), 'dims': p.to_json()}


_LITERAL = re.compile(r'^(0|-?\d+:\d+(,-?\d+:\d+)*)$')


def parse_dims(text):
    """\
    Parse a sparse C{degree:dim,...} list (C{0} for none).

    @rtype: C{dict}
    """
    if not _LITERAL.match(text):
        raise InputError('bad degree:dim list %r' % text)
    if text == '0':
        return {}
    dims = {}
    for item in text.split(','):
        k, n = item.split(':')
        dims[int(k)] = dims.get(int(k), 0) + int(n)
    return dims


@command
def invariants(ex, args, response):
    """\
    Classical invariants and graded Reeb chords of a front.

    usage: %s front
    """
    f = ex.parser.front(args[0])
    inv = classical_invariants(f)
    chords = reeb_chords(f)
    result = {'front': str(f), 'tb': inv.tb, 'rot': inv.rot,
              'maslov_number': maslov_number(f),
              'chords': [{'id': c.id, 'degree': c.degree, 'kind': c.kind,
                          'position': c.position} for c in chords]}
    rows = [['tb', inv.tb], ['rot', inv.rot], ['chord', 'degree', 'kind']]
    rows += [[c.id, c.degree, c.kind] for c in chords]
    lines = ['front %s' % f, 'tb %d' % inv.tb, 'rot %d' % inv.rot]
    lines += ['%-4s degree %d (%s)' % (c.id, c.degree, c.kind)
              for c in chords]
    return respond(response, result, rows, lines)


@command
def dga(ex, args, response):
    """\
    Chekanov-Eliashberg algebra of a front, or a DGA read from file.

    usage: %s source
    """
    d, f = ex.parser.algebra(args[0])
    ok, _ = check_d_squared(d)
    result = d.to_json()
    result.update({'d_squared': ok, 'euler_characteristic':
                   euler_characteristic(d)})
    rows = [['generator', 'degree', 'boundary']]
    rows += [[g, d.degree(g), repr(d.boundary(g))]
             for g in d.emission_order()]
    lines = ['d%s = %r' % (g, d.boundary(g)) for g in d.emission_order()]
    if ex.config.emit_disks and f is not None:
        result['disks'] = [disk_to_json(disk) for disk in all_disks(f)]
        lines += disks_as_json_lines(f)
    return respond(response, result, rows, lines)


@command
def augs(ex, args, response):
    """\
    Augmentations of an algebra into F2.

    usage: %s source
    """
    d, _ = ex.parser.algebra(args[0])
    found = enumerate_augmentations(d, ex.config.graded)
    result = {'graded': ex.config.graded, 'count': len(found),
              'augmentations': [eps.to_json() for eps in found]}
    rows = [['index'] + d.generators]
    rows += [[i] + list(eps.key()) for i, eps in enumerate(found)]
    lines = ['%d augmentations' % len(found)]
    lines += ['e%d: %s' % (i, ' '.join('%s=%d' % (g, eps[g])
                                       for g in d.generators))
              for i, eps in enumerate(found)]
    return respond(response, result, rows, lines)


def _reps_result(d, k, reps, graded, truncated):
    scalars = set(inflate(eps, k) for eps in enumerate_augmentations(d, graded))
    return {'k': k, 'graded': graded, 'count': len(reps),
            'truncated': truncated,
            'contains_inflations': scalars <= set(reps),
            'representations': [rho.to_json() for rho in reps]}


@command
def reps(ex, args, response):
    """\
    Representations of an algebra into k x k matrices over F2.

    usage: %s source [k]
    """
    d, _ = ex.parser.algebra(args[0])
    k = int(args[1]) if len(args) > 1 else ex.config.k
    try:
        found = enumerate_matrix_reps(d, k, ex.config.budget, ex.config.graded)
    except BudgetExceeded as e:
        result = _reps_result(d, k, e.partial, ex.config.graded, True)
        raise CommandError('BudgetExceeded: %s' % e, 3,
                           respond(response, result,
                                   [['count', len(e.partial)]],
                                   ['%d representations before the budget '
                                    'ran out' % len(e.partial)]))
    result = _reps_result(d, k, found, ex.config.graded, False)
    rows = [['index', 'generator', 'matrix']]
    for i, rho in enumerate(found):
        rows += [[i, g, ' '.join(str(x) for x in rho[g].flatten())]
                 for g in d.generators]
    lines = ['%d representations of dimension %d' % (len(found), k)]
    if result['contains_inflations']:
        lines.append('every augmentation occurs as a scalar representation')
    return respond(response, result, rows, lines)


@command
def lch(ex, args, response):
    """\
    Algebra, augmentations and bilinearised homology of every pair.

    usage: %s source
    """
    d, _ = ex.parser.algebra(args[0])
    classes = lch_class_set(d, ex.config.graded)
    result = {'dga': d.to_json(), 'graded': ex.config.graded,
              'augmentations': len(classes.augmentations),
              'table': [dict(_polynomial_json(p), left=i, right=j)
                        for i, j, p in classes.table],
              'classes': [str(p) for p in classes.sorted_classes()]}
    rows = [['left', 'right', 'dims']] + [list(r) for r in table_rows(classes)]
    lines = ['%d augmentations' % len(classes.augmentations)]
    lines += ['(e%d, e%d): %s' % (i, j, p) for i, j, p in classes.table]
    lines.append('classes: {%s}' % ', '.join(str(p) for p in
                                             classes.sorted_classes()))
    return respond(response, result, rows, lines)


@command
def lch_set(ex, args, response):
    """\
    Set of bilinearised homologies, with multiplicities.

    usage: %s source
    """
    d, _ = ex.parser.algebra(args[0])
    classes = lch_class_set(d, ex.config.graded)
    counts = classes.multiset
    entries = [dict(_polynomial_json(p), multiplicity=counts[p])
               for p in classes.sorted_classes()]
    result = {'graded': ex.config.graded, 'classes': entries}
    rows = [['polynomial', 'multiplicity']]
    rows += [[e['polynomial'], e['multiplicity']] for e in entries]
    lines = ['%s (x%d)' % (e['polynomial'], e['multiplicity'])
             for e in entries]
    return respond(response, result, rows, lines)


@command
def duality(ex, args, response):
    """\
    Duality and fundamental class checks of each linearised homology.

    usage: %s source
    """
    d, _ = ex.parser.algebra(args[0])
    report = duality_report(d, ex.config.graded)
    entries = [dict(_polynomial_json(row.polynomial), index=row.index,
                    sabloff=row.sabloff, fundamental=row.fundamental)
               for row in report]
    holds = all(row.sabloff and row.fundamental for row in report)
    result = {'graded': ex.config.graded, 'rows': entries, 'holds': holds}
    rows = [['index', 'polynomial', 'sabloff', 'fundamental']]
    rows += [[row.index, str(row.polynomial), row.sabloff, row.fundamental]
             for row in report]
    lines = ['e%d: %s  duality %s  fundamental class %s'
             % (row.index, row.polynomial, _flag(row.sabloff),
                _flag(row.fundamental)) for row in report]
    output = respond(response, result, rows, lines)
    if not holds:
        raise CommandError('duality fails for some augmentation', 1, output)
    return output


@command
def concordance(ex, args, response):
    """\
    Obstruct exact Lagrangian concordances in both directions.

    usage: %s source_a source_b
    """
    dA, _ = ex.parser.algebra(args[0])
    dB, _ = ex.parser.algebra(args[1])
    verdicts = concordance_obstruction(dA, dB, ex.config.graded,
                                       (args[0], args[1]))
    entries = []
    for v in verdicts:
        entry = {'direction': v.direction, 'status': v.status,
                 'witness': None}
        if v.witness is not None:
            entry['witness'] = _polynomial_json(v.witness)
        entries.append(entry)
    result = {'graded': ex.config.graded, 'verdicts': entries}
    rows = [['direction', 'status', 'witness']]
    rows += [[v.direction, v.status, v.witness is not None and
              str(v.witness) or ''] for v in verdicts]
    lines = ['%s: %s%s' % (v.direction, v.status, v.witness is not None and
                           ' (witness %s)' % v.witness or '')
             for v in verdicts]
    return respond(response, result, rows, lines)


@command
def endo_constraints(ex, args, response):
    """\
    Constraints on exact Lagrangian cobordisms from a knot to itself.

    usage: %s source [degree:betti,...]
    """
    d, _ = ex.parser.algebra(args[0])
    betti = len(args) > 1 and BettiVector(parse_dims(args[1])) or circle()
    report = endocobordism_constraints(d, betti, ex.config.graded)
    result = {'hypothesis': report.hypothesis,
              'forced_betti': None if report.forced_betti is None else
              report.forced_betti.to_json(),
              'injective': report.injective, 'surjective': report.surjective,
              'homology_cylinder': report.homology_cylinder,
              'statements': list(report.statements)}
    rows = [['statement']] + [[s] for s in report.statements]
    return respond(response, result, rows, list(report.statements))


def _classes(ex, source):
    if _LITERAL.match(source):
        return [PoincarePolynomial(parse_dims(source))]
    d, _ = ex.parser.algebra(source)
    return lch_class_set(d, ex.config.graded).sorted_classes()


@command
def les_check(ex, args, response):
    """\
    Check whether the exact sequence of a candidate cobordism can exist, for
    every class of the positive end against every class of the negative end.
    Ends are sources or literal degree:dim lists.

    usage: %s pair|duality|mayer_vietoris minus plus [degree:betti,...] [degree:betti,...]
    """
    mode = args[0]
    if mode not in (PAIR, DUALITY, MAYER_VIETORIS):
        raise InputError('unknown mode %s' % mode)
    minus, plus = _classes(ex, args[1]), _classes(ex, args[2])
    candidate = BettiVector(len(args) > 3 and parse_dims(args[3]) or {})
    boundary = len(args) > 4 and BettiVector(parse_dims(args[4])) or None
    checks = []
    obstructed = False
    for p in plus:
        feasible = False
        for m in minus:
            r = les_feasibility(m, p, candidate, mode, boundary)
            feasible = feasible or r.feasible
            checks.append({'minus': str(m), 'plus': str(p),
                           'feasible': r.feasible, 'ranks': r.ranks,
                           'cut': r.cut,
                           'nodes': [{'node': label, 'dim': a}
                                     for label, a in r.nodes]})
        obstructed = obstructed or not feasible
    status = obstructed and OBSTRUCTED or NOT_OBSTRUCTED
    result = {'mode': mode, 'candidate': candidate.to_json(),
              'checks': checks, 'status': status}
    rows = [['minus', 'plus', 'feasible', 'cut']]
    rows += [[c['minus'], c['plus'], c['feasible'], c['cut'] or '']
             for c in checks]
    lines = ['%s -> %s: %s' % (c['minus'], c['plus'], c['feasible'] and
                               'feasible' or c['cut']) for c in checks]
    lines.append(status)
    return respond(response, result, rows, lines)


def _cthulhu_verify(ex, args, response):
    report = cth.verify(ex.parser.cthulhu(args[0]))
    result = {'action': 'verify', 'd_squared': report.d_squared,
              'acyclic': report.acyclic,
              'homology': dict(('%d' % k, n)
                               for k, n in sorted(report.homology.items()))}
    rows = [['d_squared', report.d_squared], ['acyclic', report.acyclic]]
    lines = ['d^2 = 0: %s' % _flag(report.d_squared),
             'acyclic: %s' % _flag(report.acyclic)]
    output = respond(response, result, rows, lines)
    if not report.d_squared:
        raise CommandError('differential does not square to zero', 1, output)
    if not report.acyclic:
        raise CommandError('complex is not acyclic', 1, output)
    return output


def _cthulhu_ss(ex, args, response):
    c = ex.parser.cthulhu(args[0])
    pages = int(args[1]) if len(args) > 1 else 4
    report = cth.spectral_sequence(c, pages)
    acyclic = cth.verify(c).acyclic
    result = report.to_json()
    result.update({'action': 'ss', 'acyclic': acyclic,
                   'consistent': acyclic == report.collapse})
    rows = [['page', 'level', 'degree', 'dim']]
    for r in sorted(report.pages):
        rows += [[r, cth.LEVELS[p], k, n]
                 for (p, k), n in sorted(report.pages[r].items()) if n]
    lines = ['E%d: total %d' % (r, report.total(r)) for r in sorted(report.pages)]
    lines.append('collapse: %s' % _flag(report.collapse))
    return respond(response, result, rows, lines)


def _les_output(response, report):
    result = dict(report.to_json(), action='les')
    rows = [['node', 'dim', 'rank_out']] + [list(r) for r in report.sequence()]
    lines = ['%s  dim %d  rank %d' % r for r in report.sequence()]
    lines.append('exact: %s' % _flag(report.exact))
    lines.append('map between ends bijective: %s'
                 % _flag(report.lch_map_isomorphism))
    return respond(response, result, rows, lines)


def _cthulhu_les(ex, args, response):
    c = ex.parser.cthulhu(args[0])
    try:
        report = cth.extract_les(c, args[1])
    except cth.NotExact as e:
        raise CommandError('NotExact: %s' % e, 1,
                           _les_output(response, e.report))
    return _les_output(response, report)


def _cthulhu_concat(ex, args, response):
    cd = ex.parser.concatenation(args[0])
    report = cth.verify_concatenation(cd)
    result = dict(report._asdict(), action='concat',
                  glued=cth.concatenate(cd).to_json())
    if len(args) > 1:
        upper = ex.parser.concatenation(args[1])
        result['composition'] = cth.composition_holds(cd.lower, cd, upper)
    rows = [[key, value] for key, value in sorted(result.items())
            if isinstance(value, bool)]
    lines = ['%s: %s' % (key, _flag(value)) for key, value in rows]
    output = respond(response, result, rows, lines)
    if result.get('composition') is False:
        raise CommandError('transfer maps do not compose', 1, output)
    return output


cthulhu_actions = {'verify':    _cthulhu_verify,
                   'ss':        _cthulhu_ss,
                   'les':       _cthulhu_les,
                   'concat':    _cthulhu_concat}


@command
def cthulhu(ex, args, response):
    """\
    Verify Cthulhu data: d^2 = 0 and acyclicity, the spectral sequence
    pages, the long exact sequence of a directed or V-shaped pair, or a
    concatenation (with an optional second gluing to check composition).

    usage: %s verify|ss|les|concat file [pages|directed|v_shaped|file]
    """
    try:
        action = cthulhu_actions[args[0]]
    except KeyError:
        raise InputError('unknown action %s' % args[0])
    return action(ex, args[1:], response)
