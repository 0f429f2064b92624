from collections.abc import Callable
from typing import Any

import orjson
import pytest

from app.config import Settings
from app.core.embedding import realize_diagram
from app.core.gauss import parse_gauss
from app.corpus import CorpusManager
from app.main import main
from app.models.diagram import Diagram
from app.services.verification import VerificationService
from app.services.workbench import KnotService


TREFOIL = "O1+,U2+,O3+,U1+,O2+,U3+"
FIGURE_EIGHT = "O1+,U2-,O3-,U1+,O4+,U3-,O2-,U4+"
VIRTUAL_TREFOIL = "O1+,O2+,U1+,U2+"
KINK = "O1+,U1+"


@pytest.fixture
def settings() -> Settings:
    """测试配置：不加载 .env，只用 S3"""
    return Settings(_env_file=None, DEFAULT_GROUPS=["S3"], VERIFY_MOVES=6)


@pytest.fixture
def knot_service(settings: Settings) -> KnotService:
    """工作台服务"""
    return KnotService(settings, CorpusManager())


@pytest.fixture
def verification_service(knot_service: KnotService) -> VerificationService:
    return VerificationService(knot_service)


@pytest.fixture
def unknot() -> Diagram:
    return Diagram()


@pytest.fixture
def kink() -> Diagram:
    return realize_diagram(parse_gauss(KINK))


@pytest.fixture
def trefoil() -> Diagram:
    return realize_diagram(parse_gauss(TREFOIL))


@pytest.fixture
def figure_eight() -> Diagram:
    return realize_diagram(parse_gauss(FIGURE_EIGHT))


@pytest.fixture
def virtual_trefoil() -> Diagram:
    return realize_diagram(parse_gauss(VIRTUAL_TREFOIL))


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., tuple[int, dict[str, Any]]]:
    """执行 CLI 并解析 JSON 输出"""

    def run(*argv: str) -> tuple[int, dict[str, Any]]:
        code = main([*argv, "--json"])
        out = capsys.readouterr().out
        return code, orjson.loads(out)

    return run
