#!/usr/bin/env python

import sys
import logging
from optparse import OptionParser

from lchkit import InputError
from lchkit.commands import commands
from lchkit.interface import Session, RunConfig, load_config


def tool_main(argv=None, stdout=sys.stdout, stderr=sys.stderr):
    parser = OptionParser(usage='%%prog [options] command [argument]*\n\n'
        'commands: %s' % ', '.join(sorted(commands)))
    parser.add_option('-c', '--conf', dest='conf', default='',
        help='custom configuration file to load')
    parser.add_option('-g', '--graded', dest='graded', default=None,
        action='store_true', help='graded augmentations only (default)')
    parser.add_option('-u', '--ungraded', dest='graded',
        action='store_false', help='allow augmentations of any degree')
    parser.add_option('-k', dest='k', type='int', default=None,
        help='matrix size for representations')
    parser.add_option('--emit-disks', dest='emit_disks', default=None,
        action='store_true', help='include the disks of a front')
    parser.add_option('-f', '--format', dest='format', default=None,
        help='output format: json, csv or text')
    parser.add_option('-b', '--budget', dest='budget', type='int',
        default=None, help='node budget of the representation search')
    parser.add_option('-v', '--verbose', dest='verbose', default=False,
        action='store_true', help='log debugging output')
    opts, args = parser.parse_args(argv)
    logging.basicConfig(level=(opts.verbose and logging.DEBUG or
                               logging.WARNING))
    if not args:
        stderr.write('no command given\n')
        return 2
    try:
        config = RunConfig.from_config(load_config(opts.conf or None),
            subcommand=args[0], paths=args[1:], graded=opts.graded, k=opts.k,
            emit_disks=opts.emit_disks, format=opts.format,
            budget=opts.budget)
    except (InputError, EnvironmentError, ValueError) as e:
        stderr.write('%s: %s\n' % (type(e).__name__, e))
        return 2
    code, output, message = Session(config).run()
    if output:
        stdout.write(output + '\n')
    if message:
        stderr.write(message + '\n')
    return code


if __name__ == '__main__':
    sys.exit(tool_main())
