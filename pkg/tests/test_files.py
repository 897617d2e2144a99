import json

import numpy as np
import pandas as pd
import pytest

from utils.errors import OutputError
from utils.files import COLORMAP, ppm_bytes, to_json, write_csv, write_json, write_ppm


class TestCsv:
    def test_layout(self, tmp_path):
        path = tmp_path / 'nested' / 'table.csv'
        frame = pd.DataFrame({'n': [1, 2], 'value': [1 / 3, 2.0]})
        write_csv(frame, str(path))
        assert path.read_bytes() == b"n,value\n1,0.333333333333333\n2,2\n"

    def test_stdout(self, capsys):
        write_csv(pd.DataFrame({'a': [0.5]}))
        assert capsys.readouterr().out == "a\n0.5\n"

    def test_unwritable_target(self, tmp_path):
        with pytest.raises(OutputError):
            write_csv(pd.DataFrame({'a': [1]}), str(tmp_path))


class TestJson:
    def test_numpy_values(self):
        payload = {'x': np.float64(0.5), 'n': np.int64(3), 'ok': np.bool_(True), 'grid': np.arange(3), 'pair': (1, 2)}
        assert json.loads(to_json(payload)) == {'x': 0.5, 'n': 3, 'ok': True, 'grid': [0, 1, 2], 'pair': [1, 2]}

    def test_key_order_is_kept(self, tmp_path):
        path = tmp_path / 'report.json'
        write_json({'b': 1, 'a': 2}, str(path))
        assert path.read_text().index('"b"') < path.read_text().index('"a"')

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            to_json({'x': object()})


class TestPpm:
    def test_header_and_size(self):
        values = np.arange(12, dtype=float).reshape(3, 4)
        data = ppm_bytes(values)
        header = b"P6\n3 4\n255\n"
        assert data.startswith(header)
        assert len(data) == len(header) + 3 * 4 * 3

    def test_orientation(self):
        values = np.zeros((2, 2))
        values[1, 0] = 1.0
        data = ppm_bytes(values)
        pixels = np.frombuffer(data[len(b"P6\n2 2\n255\n"):], dtype=np.uint8).reshape(2, 2, 3)
        # largest s, smallest k: right column, bottom row
        assert (pixels[1, 1] == COLORMAP[255]).all()
        assert (pixels[0, 0] == COLORMAP[0]).all()

    def test_constant_field(self):
        data = ppm_bytes(np.ones((4, 4)))
        assert len(data) == len(b"P6\n4 4\n255\n") + 48

    def test_colormap(self):
        assert COLORMAP.shape == (256, 3)
        assert COLORMAP.dtype == np.uint8
        assert tuple(COLORMAP[0]) == (68, 1, 84)
        assert tuple(COLORMAP[-1]) == (253, 231, 37)

    def test_rejects_non_matrix(self):
        with pytest.raises(ValueError):
            ppm_bytes(np.zeros(4))

    def test_write(self, tmp_path):
        path = tmp_path / 'field.ppm'
        write_ppm(np.eye(8), str(path))
        assert path.read_bytes().startswith(b"P6\n8 8\n255\n")
