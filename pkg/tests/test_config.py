import pytest

from app.config import BUNDLED_CORPUS, Settings, get_settings


def test_config_singleton():
    """测试配置单例模式"""
    settings1 = get_settings()
    settings2 = get_settings()

    assert settings1 is settings2
    assert settings1.APP_NAME == settings2.APP_NAME


def test_config_default_values():
    """测试配置默认值"""
    settings = Settings(_env_file=None)  # 不加载 .env 文件

    assert settings.APP_NAME == "Knot Group Workbench"
    assert settings.APP_ENV == "development"
    assert settings.DEBUG is False
    assert settings.LOG_LEVEL == "WARNING"
    assert settings.TIETZE_BUDGET == 400
    assert settings.HOMCOUNT_LOG_BUDGET == 40.0
    assert settings.DEFAULT_GROUPS == ["S3", "D4", "A4", "S4"]
    assert settings.CORPUS_DIR is None
    assert BUNDLED_CORPUS.name == "corpus.json"


def test_config_properties_with_defaults():
    """测试使用默认值的配置属性"""
    settings = Settings(_env_file=None)

    assert settings.log_level_value == "WARNING"


def test_debug_forces_debug_logging():
    """DEBUG 模式强制 DEBUG 日志"""
    settings = Settings(_env_file=None, DEBUG=True, LOG_LEVEL="ERROR")
    assert settings.log_level_value == "DEBUG"


def test_default_groups_parsing():
    """测试有限群列表解析"""
    from_string = Settings(_env_file=None, DEFAULT_GROUPS="S3, A4")
    assert from_string.DEFAULT_GROUPS == ["S3", "A4"]

    from_json = Settings(_env_file=None, DEFAULT_GROUPS='["D4", "S4"]')
    assert from_json.DEFAULT_GROUPS == ["D4", "S4"]


def test_env_overrides(monkeypatch: pytest.MonkeyPatch):
    """环境变量覆盖"""
    monkeypatch.setenv("TIETZE_BUDGET", "12")
    monkeypatch.setenv("VERIFY_SEED", "99")
    settings = Settings(_env_file=None)
    assert settings.TIETZE_BUDGET == 12
    assert settings.VERIFY_SEED == 99


def test_production_validation():
    """测试生产环境验证"""
    with pytest.raises(ValueError, match="DEBUG must be False in production"):
        Settings(_env_file=None, APP_ENV="production", DEBUG=True)

    assert Settings(_env_file=None, APP_ENV="production").DEBUG is False


def test_budget_bounds():
    """预算必须为正"""
    with pytest.raises(ValueError):
        Settings(_env_file=None, TIETZE_BUDGET=0)
    with pytest.raises(ValueError, match="DEFAULT_GROUPS"):
        Settings(_env_file=None, DEFAULT_GROUPS=[])
