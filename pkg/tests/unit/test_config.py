"""Tests for the lab configuration layer: flag > environment > yaml > default."""

import os

import pytest

from sortlab import config
from sortlab.config.config import args_to_config_path, get, put, var


@pytest.fixture
def config_file(tmp_path):
    path = str(tmp_path / 'lab.yaml')
    put(data={'patterns': '21', 'ceiling': 9, 'format': 'JSON', 'logging level': 'info'}, path=path)
    config.use(path)
    return path


class TestYamlHelpers:

    def test_missing_file_reads_empty(self, tmp_path):
        assert get(path=str(tmp_path / 'absent.yaml')) == {}

    def test_put_then_get(self, tmp_path):
        path = put(data={'threads': 3}, path=str(tmp_path / 'nested' / 'c.yaml'))
        assert os.path.exists(path)
        assert get(path=path) == {'threads': 3}

    def test_non_mapping_rejected(self, tmp_path):
        path = tmp_path / 'list.yaml'
        path.write_text('- 1\n- 2\n')
        with pytest.raises(ValueError):
            get(path=str(path))

    def test_config_path(self):
        root = lambda *args: '/'.join(['lab', *args])  # noqa: E731
        assert args_to_config_path(root=root) == 'lab/config/config.yaml'
        assert args_to_config_path('ci', root=root) == 'lab/config/ci.yaml'
        assert args_to_config_path('ci.yml', root=root) == 'lab/config/ci.yml'

    def test_env_names(self, monkeypatch):
        monkeypatch.setenv('SORTLAB_LOGGING_LEVEL', 'debug')
        assert var('logging level') == 'debug'


class TestPrecedence:

    def test_defaults(self):
        assert config.patterns() == '123,132'
        assert config.reportFormat() == 'csv'
        assert config.loggingLevel() == 'warning'
        assert config.threads() is None
        assert config.ceiling() is None
        assert config.out() is None
        assert config.archive() is None

    def test_file_over_default(self, config_file):
        assert config.patterns() == '21'
        assert config.ceiling() == 9
        assert config.reportFormat() == 'json'
        assert config.loggingLevel() == 'info'

    def test_environment_over_file(self, config_file, monkeypatch):
        monkeypatch.setenv('SORTLAB_PATTERNS', '231,321')
        monkeypatch.setenv('SORTLAB_CEILING', '7')
        assert config.patterns() == '231,321'
        assert config.ceiling() == 7

    def test_flag_over_environment(self, config_file, monkeypatch):
        monkeypatch.setenv('SORTLAB_PATTERNS', '231,321')
        assert config.patterns('123') == '123'
        assert config.ceiling(12) == 12

    def test_empty_environment_is_ignored(self, config_file, monkeypatch):
        monkeypatch.setenv('SORTLAB_PATTERNS', '')
        assert config.patterns() == '21'

    def test_use_none_restores_default_file(self, config_file):
        config.use(None)
        assert config.current() == get(path=config.root('config', 'config.yaml'))
