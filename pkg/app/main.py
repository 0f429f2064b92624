"""
命令行入口

日志配置、子命令分发，以及异常到错误 JSON 与退出码的转换
"""

from argparse import ArgumentParser
from collections.abc import Sequence
import logging
import sys
from typing import Any

import orjson
from pydantic import BaseModel, ValidationError

from app.cli.router import cli_router
from app.config import settings
from app.core.exceptions import AppException
from app.schemas.common import ErrorDetail, ErrorResponse, ResponseModel


# 日志配置
logging.basicConfig(
    level=settings.log_level_value,
    format=settings.LOG_FORMAT,
    datefmt=settings.LOG_DATEFMT,
)
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def create_parser() -> ArgumentParser:
    """
    解析器工厂函数

    便于测试直接检查参数
    """
    return cli_router.build_parser(
        prog="knotwb",
        description=f"{settings.APP_NAME}: virtual knot diagrams, automorphism-twisted group "
                    "presentations and their invariants",
    )


def _render_text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return [f"{pad}{', '.join(str(v) for v in value)}"]
        lines = []
        for item in value:
            lines.append(f"{pad}-")
            lines.extend(_render_text(item, indent + 1))
        return lines
    return [f"{pad}{value}"]


def emit(payload: BaseModel, as_json: bool) -> None:
    data = payload.model_dump(mode="json", exclude_none=True)
    if as_json:
        sys.stdout.write(orjson.dumps(data, option=orjson.OPT_INDENT_2).decode() + "\n")
    else:
        sys.stdout.write("\n".join(_render_text(data)) + "\n")


def _error(code: str, message: str, details: list[dict[str, Any]] | None = None) -> ErrorResponse:
    return ErrorResponse(error=ErrorDetail(code=code, message=message, details=details))


def main(argv: Sequence[str] | None = None) -> int:
    """执行子命令并返回退出码：0 通过，1 验证失败，2 输入错误，3 内部错误"""
    args = create_parser().parse_args(argv)
    logger.debug("🚀 %s %s", settings.APP_NAME, args.command)
    as_json = args.json

    try:
        result = args.handler(args)
    except AppException as exc:
        logger.warning("❌ %s: %s", exc.code, exc.detail)
        emit(_error(exc.code, exc.detail), as_json)
        return exc.exit_code
    except ValidationError as exc:
        details = [
            {"field": ".".join(str(x) for x in err["loc"]), "message": err["msg"], "type": err["type"]}
            for err in exc.errors()
        ]
        emit(_error("VALIDATION_ERROR", "Validation Error", details), as_json)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        logger.warning("❌ invalid input: %s", exc)
        emit(_error("INVALID_INPUT", str(exc)), as_json)
        return EXIT_INPUT
    except Exception as exc:
        logger.exception("Unhandled exception: %s", exc)
        emit(_error("INTERNAL_ERROR", str(exc) if settings.DEBUG else "Internal Error"), as_json)
        return EXIT_INTERNAL

    passed = getattr(result, "passed", True)
    emit(ResponseModel[Any](success=passed, data=result), as_json)
    logger.debug("👋 %s finished", args.command)
    return EXIT_OK if passed else EXIT_FAILED


# ============ 入口 ============
if __name__ == "__main__":
    sys.exit(main())
