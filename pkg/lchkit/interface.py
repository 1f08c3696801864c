"""\
Run configuration and command sessions.

@author: lchkit developers
@license: GPL-3
"""

import os
import shlex
import logging
import pkg_resources

import yaml

from . import InputError
from . import commands
from .yamlparser import YAMLParser


def load_config(filename=None):
    """\
    Load the option defaults from a YAML file, or from the bundled
    C{config.yaml} if none is given.

    @param filename: The configuration file.
    @type filename: C{str}
    @rtype: C{dict}
    """
    if filename:
        with open(filename) as f:
            config = yaml.safe_load(f)
    else:
        config = yaml.safe_load(pkg_resources.resource_string(__name__,
                                'resources/config.yaml'))
    return config or {}


class RunConfig(object):
    """\
    A single command invocation with its options.
    """
    def __init__(self, subcommand=None, paths=(), graded=True, k=2,
                 emit_disks=False, format='json', budget=200000):
        """\
        Constructor.

        @param subcommand: Command name (see L{commands}).
        @type subcommand: C{str}
        @param paths: Command arguments, mostly input sources.
        @type paths: C{list} of C{str}
        @param graded: Restrict to graded augmentations.
        @type graded: C{bool}
        @param k: Matrix size for representations.
        @type k: C{int}
        @param emit_disks: Include the disks in algebra output.
        @type emit_disks: C{bool}
        @param format: Response format.
        @type format: C{str}
        @param budget: Node budget of the representation search.
        @type budget: C{int}
        """
        if subcommand is not None and subcommand not in commands.commands:
            raise InputError('invalid command %s' % subcommand)
        if format not in commands.RESPONSES:
            raise InputError('unknown output format %s' % format)
        if int(k) < 1:
            raise InputError('matrix size must be positive')
        if int(budget) < 1:
            raise InputError('budget must be positive')
        self.subcommand = subcommand
        self.paths = list(paths)
        self.graded = bool(graded)
        self.k = int(k)
        self.emit_disks = bool(emit_disks)
        self.format = format
        self.budget = int(budget)

    @classmethod
    def from_config(cls, config, environ=None, **overrides):
        """\
        Build from configuration defaults, the C{LCH_BUDGET} environment
        variable and explicit overrides, later sources winning. Overrides
        of C{None} are ignored.

        @param config: Parsed configuration file.
        @type config: C{dict}
        @param environ: Environment (default: C{os.environ}).
        @type environ: C{dict}
        @rtype: L{RunConfig}
        """
        if environ is None:
            environ = os.environ
        options = {}
        for key, default in [('graded', True), ('k', 2), ('emit_disks', False),
                             ('format', 'json'), ('budget', 200000)]:
            try:
                options[key] = config[key]
            except KeyError:
                options[key] = default
        if environ.get('LCH_BUDGET'):
            try:
                options['budget'] = int(environ['LCH_BUDGET'])
            except ValueError:
                raise InputError('LCH_BUDGET must be an integer')
        for key, value in overrides.items():
            if value is not None:
                options[key] = value
        return cls(**options)


class Session(object):
    """\
    Session class.

    A L{Session} holds the run configuration and an input parser, and
    executes command strings against them.
    """
    def __init__(self, config=None, basepath='.'):
        """\
        Constructor.

        @param config: Run configuration (default: bundled defaults).
        @type config: L{RunConfig}
        @param basepath: Directory input paths are resolved against.
        @type basepath: C{str}
        """
        self.config = config or RunConfig.from_config(load_config(), {})
        self.parser = YAMLParser(basepath)

    def execute(self, cmd, response=None):
        """\
        Execute a command.

        @param cmd: The command string (or argument list) to execute.
        @type cmd: C{str} or C{list}
        @param response: Response format (default: the configured one).
        @type response: C{str}
        @return: The return string of the command.
        @rtype: C{str}
        """
        if isinstance(cmd, str):
            cmd = shlex.split(cmd)
        cmd, args = cmd[0], cmd[1:]
        if cmd not in commands.commands:
            raise commands.CommandError('invalid command', 2)
        logging.debug('executing %s %s', cmd, ' '.join(args))
        try:
            return commands.commands[cmd](self, args,
                                          response=response or
                                          self.config.format)
        except commands.CommandError as e:
            es = str(e)
            if commands.commands[cmd].__doc__:
                for line in commands.commands[cmd].__doc__.split('\n'):
                    line = line.strip(' ')
                    if line.startswith('usage'):
                        es += '\n' + line % cmd
                        break
            raise commands.CommandError(es, e.code, e.output)

    def run(self):
        """\
        Run the configured command.

        @return: Exit code, standard output text and error message.
        @rtype: C{tuple}
        """
        if self.config.subcommand is None:
            return 2, None, 'no command given'
        try:
            output = self.execute([self.config.subcommand] + self.config.paths)
        except commands.CommandError as e:
            return e.code, e.output, str(e)
        return 0, output, None
