import pytest

from linlog.config import Config, ConfigError, parse_config, parse_config_text


def test_defaults():
    cfg = Config()
    assert cfg.C0 == 2 and cfg.float_precision_bits == 80
    assert cfg.window(1) == 2 * 2**6
    assert cfg.constants().C0 == 2


def test_table_and_top_level():
    a = parse_config_text("[constants]\nC0 = 3\n")
    b = parse_config_text("C0 = 3\n")
    assert a == b and a.window(2) == 3 * 3**6


def test_rule_string_means_default():
    assert parse_config_text('c5 = "(g+1) C0^6"').c5 is None
    assert parse_config_text("c5 = 7").window(3) == 7.0


def test_unknown_key_has_line():
    with pytest.raises(ConfigError, match=r"cfg.toml:3: unknown key 'bogus'"):
        parse_config_text("C0 = 2\n\nbogus = 1\n", "cfg.toml")


def test_invariant_violation_has_line():
    with pytest.raises(ConfigError, match=r"x.toml:2: C0 must be >= 2"):
        parse_config_text("c_thm = 1.0\nC0 = 1\n", "x.toml")


@pytest.mark.parametrize("text", ["C0 = 2.5", "C0 = true", "c_thm = 'big'", "float_precision_bits = 32", "C0 = ["])
def test_rejected(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_env_var(tmp_path, monkeypatch):
    f = tmp_path / "c.toml"
    f.write_text("C0 = 4\n")
    monkeypatch.setenv("LINLOG_CONFIG", str(f))
    assert parse_config().C0 == 4
    monkeypatch.delenv("LINLOG_CONFIG")
    assert parse_config() == Config()


def test_missing_file():
    with pytest.raises(ConfigError):
        parse_config("/nonexistent/linlog.toml")


def test_exit_code():
    assert ConfigError.exit_code == 78
