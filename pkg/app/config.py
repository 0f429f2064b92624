"""
应用配置模块

使用 Pydantic Settings V2 管理配置
"""

from functools import lru_cache
import json
from pathlib import Path
from typing import Annotated, Self

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


# 内置语料
BUNDLED_CORPUS = Path(__file__).resolve().parent / "data" / "corpus.json"


class Settings(BaseSettings):
    """
    应用配置

    支持从环境变量和 .env 文件加载配置
    """

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
        env_nested_delimiter="__",
        validate_default=True,
    )

    # ============ 应用 ============
    APP_NAME: str = "Knot Group Workbench"
    APP_ENV: Annotated[str, Field(pattern=r"^(development|staging|production)$")] = "development"
    DEBUG: bool = False

    # ============ 日志 ============
    LOG_LEVEL: Annotated[str, Field(pattern=r"^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")] = "WARNING"
    LOG_FORMAT: str = "%(asctime)s | %(levelname)-8s | %(name)s:%(funcName)s:%(lineno)d - %(message)s"
    LOG_DATEFMT: str = "%Y-%m-%d %H:%M:%S"

    # ============ 语料 ============
    CORPUS_DIR: Path | None = None

    # ============ 化简 ============
    TIETZE_BUDGET: int = Field(default=400, gt=0)

    # ============ 同态计数 ============
    HOMCOUNT_LOG_BUDGET: float = Field(default=40.0, gt=0)
    HOMCOUNT_NODE_LIMIT: int = Field(default=5_000_000, gt=0)
    HOMCOUNT_WORKERS: int = Field(default=1, ge=1)
    DEFAULT_GROUPS: list[str] = ["S3", "D4", "A4", "S4"]

    # ============ 验证 ============
    VERIFY_MOVES: int = Field(default=50, ge=0)
    VERIFY_SEED: int = 7
    VERIFY_MAX_CROSSINGS: int = Field(default=8, ge=1)
    COUNTEREXAMPLE_BUDGET: int = Field(default=20_000, gt=0)
    COUNTEREXAMPLE_WORD_LENGTH: int = Field(default=6, ge=1)

    # ============ 验证器 ============

    @field_validator("DEFAULT_GROUPS", mode="before")
    @classmethod
    def parse_groups(cls, v: str | list[str]) -> list[str]:
        """解析默认有限群列表"""
        if isinstance(v, str):
            try:
                return list(json.loads(v))
            except json.JSONDecodeError:
                return [x.strip() for x in v.split(",") if x.strip()]
        return v

    @model_validator(mode="after")
    def validate_production(self) -> Self:
        """生产环境验证"""
        if self.APP_ENV == "production" and self.DEBUG:
            raise ValueError("DEBUG must be False in production")
        if not self.DEFAULT_GROUPS:
            raise ValueError("DEFAULT_GROUPS must name at least one finite group")
        return self

    # ============ 属性 ============

    @property
    def log_level_value(self) -> str:
        """DEBUG 模式强制 DEBUG 日志级别"""
        return "DEBUG" if self.DEBUG else self.LOG_LEVEL


@lru_cache
def get_settings() -> Settings:
    """获取配置单例"""
    return Settings()


settings = get_settings()
