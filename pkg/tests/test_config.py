import pytest

from utils.config import (THREADS_ENV, parse_bool, parse_entry, parse_float_list, parse_probe, read_config_file,
                          resolve_settings, worker_count)
from utils.errors import UsageError


class TestParsers:
    def test_float_list(self):
        assert parse_float_list('0.1, 1,10') == [0.1, 1.0, 10.0]
        assert parse_float_list([1, 2]) == [1.0, 2.0]

    @pytest.mark.parametrize('text', ['', ',', '1,abc'])
    def test_float_list_errors(self, text):
        with pytest.raises(UsageError):
            parse_float_list(text)

    @pytest.mark.parametrize('text, expected', [('yes', True), ('0', False), ('True', True), (False, False)])
    def test_bool(self, text, expected):
        assert parse_bool(text) is expected

    def test_entry_is_zero_based(self):
        assert parse_entry('4,4') == (3, 3)
        assert parse_entry('1,2') == (0, 1)

    @pytest.mark.parametrize('text', ['0,1', '5,1', '1', 'a,b'])
    def test_entry_errors(self, text):
        with pytest.raises(UsageError):
            parse_entry(text)

    def test_probe(self):
        assert parse_probe('0.5,-1') == (0.5, -1.0)
        with pytest.raises(UsageError):
            parse_probe('1;2')


class TestResolveSettings:
    def test_defaults(self):
        config = resolve_settings('sweep', {})
        assert config.n_max == 4
        assert config.eps == [1.0]
        assert not config.physical
        assert config.format is None

    def test_flags_override_file(self):
        config = resolve_settings('sweep', {'n_max': '7'}, {'n_max': 3, 'grid_points': 128})
        assert config.n_max == 7
        assert config.grid_points == 128

    def test_mixing_parameter_modes(self):
        with pytest.raises(UsageError):
            resolve_settings('field', {'eps': '1', 'eB': '2'})

    def test_physical_mode(self):
        config = resolve_settings('field', {'eB': '2.0', 'kz': '1.0'})
        assert config.physical
        params = config.param_sets()
        assert len(params) == 1
        assert params[0].eB == 2.0
        assert params[0].m == 1.0

    def test_physical_mode_needs_coupling(self):
        with pytest.raises(UsageError):
            resolve_settings('field', {'m': '2.0'})

    def test_parameter_grid(self):
        config = resolve_settings('sweep', {'eps': '0.1,1', 'kappa': '0,1,100'})
        assert len(config.param_sets()) == 6

    @pytest.mark.parametrize('flags', [
        {'n': '0'}, {'r': '3'}, {'spin': 'x'}, {'eps': '-1'}, {'kappa': '-1'}, {'grid_points': '8'},
        {'quantity': 'energy'}, {'format': 'xml'}, {'tolerance_scale': '0'}, {'threads': '-2'}, {'n': 'two'},
    ])
    def test_validation(self, flags):
        with pytest.raises(UsageError):
            resolve_settings('sweep', flags)

    def test_unknown_command(self):
        with pytest.raises(UsageError):
            resolve_settings('plot', {})


class TestConfigFile:
    def test_read(self, tmp_path):
        path = tmp_path / 'run.cfg'
        path.write_text("# sweep settings\nn-max = 6\neps = 0.1, 1  # two regimes\nwith_quadrature = yes\n")
        values = read_config_file(str(path))
        assert values == {'n_max': 6, 'eps': [0.1, 1.0], 'with_quadrature': True}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / 'run.cfg'
        path.write_text("colour = red\n")
        with pytest.raises(UsageError):
            read_config_file(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            read_config_file(str(tmp_path / 'absent.cfg'))

    def test_malformed(self, tmp_path):
        path = tmp_path / 'run.cfg'
        path.write_text("just some words\n")
        with pytest.raises(UsageError):
            read_config_file(str(path))


class TestWorkerCount:
    def test_flag_wins(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, '3')
        assert worker_count(2) == 2

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, '3')
        assert worker_count() == 3

    def test_zero_means_all_cores(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert worker_count() == -1
        assert worker_count(0) == -1

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, 'many')
        with pytest.raises(UsageError):
            worker_count()
