import json
import math

import pytest

from .io import OutputWriter, Table, format_cell, jsonable


def test_format_cell():
    assert format_cell(True) == 'true'
    assert format_cell(False) == 'false'
    assert format_cell(0.1) == '0.1'
    assert format_cell(math.inf) == 'inf'
    assert format_cell(-math.inf) == '-inf'
    assert format_cell(math.nan) == 'nan'
    assert format_cell(3) == '3'
    assert format_cell('ln_k') == 'ln_k'


def test_jsonable():
    assert jsonable({'a': [1.0, math.inf, (-math.inf, 2)]}) == {'a': [1.0, 'inf', ['-inf', 2]]}


def test_table_row_width():
    table = Table('rate', ['n', 't'])
    table.append(1, 0.5)
    with pytest.raises(ValueError, match='expected 2'):
        table.append(1)


def test_writer_csv(tmp_path):
    table = Table('rv-check', ['n', 'semigroup', 'x'])
    table.append(1, True, math.inf)
    out = tmp_path / 't.csv'
    with OutputWriter(str(out), 'csv') as writer:
        writer.write_table(table)
    assert out.read_bytes() == b'n,semigroup,x\n1,true,inf\n'


def test_writer_json(tmp_path):
    table = Table('rate', ['n', 'rate'])
    table.append(2, -math.inf)
    out = tmp_path / 't.json'
    with OutputWriter(str(out), 'json') as writer:
        writer.write_table(table)
    text = out.read_text(encoding='UTF-8')
    assert text.endswith('}\n')
    assert json.loads(text) == {'columns': ['n', 'rate'], 'command': 'rate', 'rows': [[2, '-inf']]}


def test_writer_stdout(capsys):
    with OutputWriter(None, 'json') as writer:
        writer.write_report({'b': 1, 'a': None})
    assert capsys.readouterr().out == '{\n  "a": null,\n  "b": 1\n}\n'


def test_writer_bad_format():
    with pytest.raises(ValueError, match='format'):
        OutputWriter(None, 'xml')
