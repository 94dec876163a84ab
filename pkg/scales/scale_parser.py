import re

from settings import *
from errors import ScaleSyntaxError
from scales.segments import ContinuousInterval, FiniteSet, GeometricLattice, UniformLattice
from scales.time_scale import TimeScale

NUMBER = re.compile(r'[+-]?(?:\d+(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?')
INTEGER = re.compile(r'[+-]?\d+')


class ScaleParser:
    """
    Recursive-descent parser for the scale mini-language.

    Grammar (whitespace is ignored everywhere)::

        scale := 'union(' scale (';' scale)* ')' | atom
        atom  := 'Z:' int '..' int
               | 'h:' num ':' num '..' num
               | 'q:' num ':' int '..' int
               | 'set:{' num (',' num)* '}'
               | 'R:' num '..' num

    :var text: Source text with whitespace removed
    :var position: Index of the next unread character
    """

    def __init__(self, text):
        self.text = re.sub(r'\s+', '', text)
        self.position = 0

    def parse(self):
        if not self.text:
            raise ScaleSyntaxError('empty scale text')
        segments = self.scale()
        if self.position != len(self.text):
            self.fail('unexpected trailing text')
        return TimeScale(sorted(segments, key=lambda segment: segment.lo))

    def fail(self, message):
        raise ScaleSyntaxError(f'{message} at offset {self.position} in {self.text!r}')

    def accept(self, literal):
        if self.text.startswith(literal, self.position):
            self.position += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.accept(literal):
            self.fail(f'expected {literal!r}')

    def match(self, pattern, what):
        found = pattern.match(self.text, self.position)
        if not found:
            self.fail(f'expected {what}')
        self.position = found.end()
        return found.group()

    def number(self):
        return float(self.match(NUMBER, 'a number'))

    def integer(self):
        return int(self.match(INTEGER, 'an integer'))

    def scale(self):
        """
        Parse one scale expression.

        :return: Flat list of segments; nested unions are flattened
        :rtype: list
        """
        if self.accept('union('):
            segments = self.scale()
            while self.accept(';'):
                segments += self.scale()
            self.expect(')')
            return segments
        return [self.atom()]

    def atom(self):
        if self.accept('Z:'):
            first = self.integer()
            self.expect('..')
            last = self.integer()
            if last < first:
                self.fail('integer range must be increasing')
            return UniformLattice(float(first), 1.0, last - first + 1)

        if self.accept('h:'):
            step = self.number()
            self.expect(':')
            first = self.number()
            self.expect('..')
            last = self.number()
            if step <= 0 or last < first:
                self.fail('lattice needs a positive step and an increasing range')
            count = int(math.floor((last - first) / step + 1e-9)) + 1
            return UniformLattice(first, step, count)

        if self.accept('q:'):
            base = self.number()
            self.expect(':')
            first = self.integer()
            self.expect('..')
            last = self.integer()
            return GeometricLattice(base, first, last)

        if self.accept('set:{'):
            values = [self.number()]
            while self.accept(','):
                values.append(self.number())
            self.expect('}')
            return FiniteSet(tuple(values))

        if self.accept('R:'):
            lower = self.number()
            self.expect('..')
            upper = self.number()
            return ContinuousInterval(lower, upper)

        self.fail('expected a scale (Z:, h:, q:, set:, R: or union)')


def parse_scale(text):
    """
    Parse scale mini-language text into a TimeScale.

    :param text: Text such as 'Z:1..10' or 'union(R:0..1;set:{2,3})'
    :return: The parsed time scale
    :rtype: TimeScale
    """
    return ScaleParser(text).parse()
