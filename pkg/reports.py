import json

from settings import *

TABLE_DIGITS = 12
"""Significant digits of numbers in table output."""


def format_json_number(value):
    """
    Render a float with JSON_SIGNIFICANT_DIGITS significant digits.

    Non-finite values have no JSON literal and are written as the strings "inf", "-inf" and "nan".

    :param value: Number
    :return: JSON text of the number
    :rtype: str
    """
    value = float(value)
    if math.isnan(value):
        return '"nan"'
    if math.isinf(value):
        return '"inf"' if value > 0 else '"-inf"'
    return format(value, f'.{JSON_SIGNIFICANT_DIGITS}g')


def to_json(value, indent=2, level=0):
    """
    Serialize nested dicts, lists and scalars deterministically.

    Dict keys keep their insertion order; floats use format_json_number.

    :param value: Data to serialize
    :param indent: Spaces per nesting level
    :param level: Current nesting level
    :return: JSON text
    :rtype: str
    """
    if value is None or isinstance(value, (bool, np.bool_)):
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_json_number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)

    padding = ' ' * (indent * (level + 1))
    closing = ' ' * (indent * level)
    if isinstance(value, dict):
        if not value:
            return '{}'
        items = [f'{padding}{json.dumps(str(k), ensure_ascii=False)}: {to_json(v, indent, level + 1)}' for k, v in value.items()]
        return '{\n' + ',\n'.join(items) + '\n' + closing + '}'
    if isinstance(value, (list, tuple)):
        if not value:
            return '[]'
        items = [padding + to_json(v, indent, level + 1) for v in value]
        return '[\n' + ',\n'.join(items) + '\n' + closing + ']'
    raise TypeError(f'cannot serialize {type(value).__name__}')


def document(command, config, results):
    """
    Top-level JSON object of one run.

    :param command: Command name, such as 'deriv' or 'verify all'
    :param config: Run configuration
    :param results: List of result dicts
    :return: The document with keys command, config, results, version
    :rtype: dict
    """
    return {'command': command, 'config': dict(config), 'results': list(results), 'version': VERSION}


def format_cell(value):
    if value is None:
        return '-'
    if isinstance(value, (bool, np.bool_)):
        return 'yes' if value else 'no'
    if isinstance(value, (float, np.floating)):
        return format(float(value), f'.{TABLE_DIGITS}g')
    return str(value)


def flatten(result, prefix=''):
    rows = []
    for key, value in result.items():
        name = f'{prefix}{key}'
        if isinstance(value, dict):
            rows.extend(flatten(value, prefix=name + '.'))
        else:
            rows.append((name, format_cell(value)))
    return rows


def render_records(results):
    """
    Render result dicts as aligned key/value blocks, one block per result.

    :param results: List of (possibly nested) result dicts
    :return: Table text
    :rtype: str
    """
    blocks = []
    for result in results:
        rows = flatten(result)
        width = max((len(name) for name, _ in rows), default=0)
        blocks.append('\n'.join(f'{name.ljust(width)}  {cell}' for name, cell in rows))
    return '\n\n'.join(blocks)


def render_rows(rows, columns):
    """
    Render flat rows as a table with a header line.

    :param rows: List of dicts holding every column
    :param columns: Column names in display order
    :return: Table text
    :rtype: str
    """
    cells = [[format_cell(row[column]) for column in columns] for row in rows]
    widths = [max([len(column)] + [len(line[i]) for line in cells]) for i, column in enumerate(columns)]
    lines = ['  '.join(column.ljust(width) for column, width in zip(columns, widths))]
    lines.extend('  '.join(cell.ljust(width) for cell, width in zip(line, widths)) for line in cells)
    return '\n'.join(line.rstrip() for line in lines)
