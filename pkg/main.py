import argparse
from dataclasses import dataclass
import os
import re
import sys

from settings import *
from calculus import frac_derivative, frac_integral
from chain import chain_rule_I, chain_rule_II
from errors import EmptyRange, InvalidAlpha, TsFracError, UsageError
from expressions.functions import ExprFn
from inequalities import (
    SHAPES,
    cauchy_schwarz,
    conjugate,
    hermite_hadamard,
    holder,
    jensen,
    minkowski,
    reversed_holder,
    reversed_holder_swapped,
)
from reports import document, render_records, render_rows, to_json
from scales.scale_parser import NUMBER, parse_scale
from trials import draw_trials, run_trial

logger = logging.getLogger('tsfrac')

ALPHA_RANGE = re.compile(rf'^\s*({NUMBER.pattern})\s*:\s*({NUMBER.pattern})\s*:\s*({NUMBER.pattern})\s*$')
VERIFY_KINDS = ('holder', 'cs', 'rholder', 'minkowski', 'jensen', 'hh', 'all')
SWEEP_OPERATORS = ('deriv', 'integ', 'chain1', 'chain2')


@dataclass(frozen=True)
class Outcome:
    """
    Result of one command, ready to be written.

    :var command: Command name as shown in the JSON document
    :var results: Result dicts
    :var table: Table rendering of the results
    :var violated: True when an inequality report is not satisfied
    """

    command: str
    results: list
    table: str
    violated: bool = False


def parse_alpha_range(text):
    """
    Expand an order range 'start:step:stop' into its values.

    :param text: Range text, stop included when it is hit up to rounding
    :return: The orders
    :rtype: list
    """
    match = ALPHA_RANGE.match(text)
    if match is None:
        raise InvalidAlpha(f'alpha range must look like start:step:stop, got {text!r}')
    start, step, stop = (float(match.group(i)) for i in (1, 2, 3))
    if not step > 0:
        raise InvalidAlpha(f'alpha range step must be positive, got {step!r}')
    if stop < start:
        raise EmptyRange(f'alpha range {text!r} is empty')
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [float(round(start + step * k, 12)) for k in range(count)]


def resolve_seed(seed):
    if seed is None:
        text = os.environ.get(SEED_ENV_VAR)
        if text is None:
            return DEFAULT_SEED
        try:
            seed = int(text)
        except ValueError:
            raise UsageError(f'{SEED_ENV_VAR} must be an unsigned integer, got {text!r}') from None
    if seed < 0:
        raise UsageError(f'seed must be an unsigned integer, got {seed!r}')
    return seed


def build_parser():
    """
    Command-line parser with one subcommand per operator.

    :return: The parser
    :rtype: argparse.ArgumentParser
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--scale', default='Z:1..5', help='time scale, e.g. "Z:1..10" or "union(R:0..1;set:{2,3})"')
    common.add_argument('--alpha', type=float, default=1.0, help='order in (0, 1]')
    common.add_argument('--f', default='t', help='function f of t')
    common.add_argument('--g', default='1', help='function g of t')
    common.add_argument('--h', default='1', help='weight h of t')
    common.add_argument('--w', default='1', help='function w (outer function of chain2, weight of hh)')
    common.add_argument('--nu', default='t', help='strictly increasing inner function of chain2')
    common.add_argument('--at', type=float, default=None, help='point t, defaults to the scale minimum')
    common.add_argument('--from', dest='lower', type=float, default=None, help='lower bound, defaults to the scale minimum')
    common.add_argument('--to', dest='upper', type=float, default=None, help='upper bound, defaults to the scale maximum')
    common.add_argument('--epsilon', type=float, default=1e-6, help='tolerance of the chain2 hypothesis check')
    common.add_argument('--samples', type=int, default=HYPOTHESIS_SAMPLES, help='consecutive radii of the hypothesis check')
    common.add_argument('--output', choices=('table', 'json'), default='table')
    common.add_argument('--seed', type=int, default=None, help=f'seed of randomized trials, falls back to {SEED_ENV_VAR}')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug logging')

    parser = argparse.ArgumentParser(prog='tsfrac', description='Fractional calculus on time scales.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('deriv', parents=[common], help='alpha-fractional derivative at a point')
    commands.add_parser('integ', parents=[common], help='alpha-fractional integral over a range')
    commands.add_parser('chain1', parents=[common], help='both sides of chain rule I for f o g')
    commands.add_parser('chain2', parents=[common], help='both sides of chain rule II for w o nu')

    verify = commands.add_parser('verify', parents=[common], help='evaluate an integral inequality')
    verify.add_argument('kind', choices=VERIFY_KINDS)
    verify.add_argument('--p', type=float, default=2.0, help='exponent; rholder takes p < 0, or 0 < p < 1 for the q < 0 branch')
    verify.add_argument('--shape', choices=SHAPES, default='auto', help='convexity of f for jensen and hh')
    verify.add_argument('--trials', type=int, default=10, help='randomized trials of "verify all"')

    sweep = commands.add_parser('sweep', parents=[common], help='evaluate an operator over a range of orders')
    sweep.add_argument('operator', choices=SWEEP_OPERATORS)
    sweep.add_argument('--alphas', required=True, help='order range start:step:stop')
    return parser


class Application:
    """
    Command-line front end: parses the mini-languages, dispatches to the operators and writes tables or JSON.

    :var args: Parsed command-line arguments
    :var seed: Resolved seed for randomized commands
    """

    def __init__(self, args):
        """
        :param args: Parsed command-line arguments
        """
        self.args = args
        self.seed = None
        self.on_init()

    def on_init(self):
        """
        Configure logging to stderr at the requested verbosity.
        """
        level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(self.args.verbose, 2)]
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
        logging.getLogger().setLevel(level)

    @property
    def scale(self):
        return parse_scale(self.args.scale)

    def function(self, name):
        return ExprFn.parse(getattr(self.args, name))

    def point(self, scale):
        return scale.min if self.args.at is None else self.args.at

    def bounds(self, scale):
        lower = scale.min if self.args.lower is None else self.args.lower
        upper = scale.max if self.args.upper is None else self.args.upper
        return lower, upper

    def config(self):
        """Run configuration as written into JSON documents."""
        config = {key: value for key, value in vars(self.args).items() if key not in ('verbose', 'output', 'seed')}
        if self.seed is not None:
            config['seed'] = self.seed
        return config

    # Operators
    def derivative(self, alpha):
        scale = self.scale
        t = self.point(scale)
        result = frac_derivative(self.function('f'), scale, t, alpha)
        return {'t': scale.locate(t), **result.to_dict()}

    def integral(self, alpha):
        scale = self.scale
        a, b = self.bounds(scale)
        result = frac_integral(self.function('f'), scale, a, b, alpha)
        return {'a': scale.locate(a), 'b': scale.locate(b), 'alpha': alpha, **result.to_dict()}

    def first_chain_rule(self, alpha):
        scale = self.scale
        return chain_rule_I(self.function('f'), self.function('g'), scale, self.point(scale), alpha).to_dict()

    def second_chain_rule(self, alpha):
        scale = self.scale
        report = chain_rule_II(
            self.function('w'), self.function('nu'), scale, self.point(scale), alpha, self.args.epsilon, self.args.samples
        )
        return report.to_dict()

    def inequality(self):
        args = self.args
        scale = self.scale
        a, b = self.bounds(scale)
        f, g, h, w = (self.function(name) for name in ('f', 'g', 'h', 'w'))
        if args.kind == 'holder':
            return holder(f, g, h, scale, a, b, args.alpha, args.p)
        if args.kind == 'cs':
            return cauchy_schwarz(f, g, h, scale, a, b, args.alpha)
        if args.kind == 'rholder':
            # 0 < p < 1 means q < 0, the branch with f and g exchanged
            if 0 < args.p < 1:
                return reversed_holder_swapped(f, g, h, scale, a, b, args.alpha, conjugate(args.p))
            return reversed_holder(f, g, h, scale, a, b, args.alpha, args.p)
        if args.kind == 'minkowski':
            return minkowski(f, g, h, scale, a, b, args.alpha, args.p)
        if args.kind == 'jensen':
            return jensen(f, g, h, scale, a, b, args.alpha, args.shape)
        return hermite_hadamard(f, w, scale, a, b, args.alpha, args.shape)

    # Commands
    def run_deriv(self):
        results = [self.derivative(self.args.alpha)]
        return Outcome('deriv', results, render_records(results))

    def run_integ(self):
        results = [self.integral(self.args.alpha)]
        return Outcome('integ', results, render_records(results))

    def run_chain1(self):
        results = [self.first_chain_rule(self.args.alpha)]
        return Outcome('chain1', results, render_records(results))

    def run_chain2(self):
        results = [self.second_chain_rule(self.args.alpha)]
        return Outcome('chain2', results, render_records(results))

    def run_verify(self):
        """
        Evaluate one inequality, or every inequality on randomized trials for 'all'.
        """
        if self.args.kind != 'all':
            report = self.inequality()
            results = [report.to_dict()]
            return Outcome(f'verify {self.args.kind}', results, render_records(results), not report.satisfied)

        if self.args.trials < 1:
            raise UsageError(f'--trials must be at least 1, got {self.args.trials}')
        self.seed = resolve_seed(self.args.seed)
        results, rows = [], []
        for trial in draw_trials(self.args.trials, self.seed):
            for report in run_trial(trial):
                results.append({'trial': trial.to_dict(), **report.to_dict()})
                rows.append({'trial': trial.index, 'kind': report.kind, 'lhs': report.lhs, 'rhs': report.rhs,
                             'slack': report.slack, 'satisfied': report.satisfied})
        violated = not all(row['satisfied'] for row in rows)
        logger.info('%d reports from %d trials, %s', len(rows), self.args.trials, 'violations found' if violated else 'all satisfied')
        columns = ('trial', 'kind', 'lhs', 'rhs', 'slack', 'satisfied')
        return Outcome('verify all', results, render_rows(rows, columns), violated)

    def run_sweep(self):
        """
        Evaluate the chosen operator once per order of the range.
        """
        operator = self.args.operator
        evaluate = {
            'deriv': self.derivative,
            'integ': self.integral,
            'chain1': self.first_chain_rule,
            'chain2': self.second_chain_rule,
        }[operator]

        rows = []
        for alpha in parse_alpha_range(self.args.alphas):
            result = evaluate(alpha)
            if operator in ('deriv', 'integ'):
                rows.append({'alpha': alpha, 'value': result['value']})
            else:
                row = {'alpha': alpha, 'lhs': result['lhs'], 'rhs': result['rhs'], 'abs_gap': result['abs_gap']}
                if operator == 'chain2':
                    row['hypothesis_ok'] = result['hypothesis_ok']
                rows.append(row)
        return Outcome(f'sweep {operator}', rows, render_rows(rows, tuple(rows[0])))

    def run(self):
        """
        Execute the command and write its output.

        :return: Process exit code
        :rtype: int
        """
        try:
            outcome = getattr(self, f'run_{self.args.command}')()
        except TsFracError as error:
            print(f'error: {type(error).__name__}: {error}', file=sys.stderr)
            return error.exit_code

        if self.args.output == 'json':
            print(to_json(document(outcome.command, self.config(), outcome.results)))
        else:
            print(outcome.table)
        return EXIT_VIOLATION if outcome.violated else EXIT_OK


def main(argv=None):
    """
    Entry point of the command line.

    :param argv: Arguments without the program name, defaults to sys.argv[1:]
    :return: Process exit code
    :rtype: int
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code
    return Application(args).run()


if __name__ == '__main__':
    sys.exit(main())
