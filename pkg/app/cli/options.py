"""
命令注册与公共参数

CommandRouter 按名称收集子命令，router.py 汇总后生成 argparse 解析器
"""

from argparse import ArgumentParser, Namespace
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import BaseModel

from app.core.finite_groups import PANEL_NAMES
from app.core.presentation import PRESETS


Handler = Callable[[Namespace], BaseModel]
Configure = Callable[[ArgumentParser], None]


@dataclass
class Command:
    name: str
    help: str
    handler: Handler
    options: tuple[Configure, ...] = ()


@dataclass
class CommandRouter:
    """子命令注册表"""
    commands: dict[str, Command] = field(default_factory=dict)

    def command(
            self,
            name: str,
            *,
            help: str,
            options: tuple[Configure, ...] = (),
    ) -> Callable[[Handler], Handler]:
        def decorator(handler: Handler) -> Handler:
            self.commands[name] = Command(name, help, handler, options)
            return handler
        return decorator

    def include_router(self, other: "CommandRouter") -> None:
        self.commands.update(other.commands)

    def build_parser(self, prog: str, description: str) -> ArgumentParser:
        parser = ArgumentParser(prog=prog, description=description)
        subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
        for cmd in self.commands.values():
            sub = subparsers.add_parser(cmd.name, help=cmd.help, description=cmd.help)
            for configure in cmd.options:
                configure(sub)
            sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
            sub.set_defaults(handler=cmd.handler)
        return parser


# ============ 公共参数 ============

def code_options(parser: ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--gauss", help="Gauss code, e.g. 'O1+,U2+,O3+,U1+,O2+,U3+' or 'abcacb'")
    source.add_argument("--knot", help="name of a corpus knot")


def diagram_options(parser: ArgumentParser) -> None:
    code_options(parser)
    parser.add_argument("--diagram", type=Path, help="diagram JSON file")


def scheme_options(parser: ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=PRESETS, help="automorphism scheme preset (default pi1)")
    source.add_argument("--scheme", type=Path, help="automorphism scheme JSON file")


def presentation_options(parser: ArgumentParser) -> None:
    diagram_options(parser)
    scheme_options(parser)
    parser.add_argument("--presentation", type=Path, help="presentation JSON file")


def group_options(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--group", action="append", metavar="NAME",
        help=f"finite group ({', '.join(PANEL_NAMES)} or products like Z2xS3); repeatable",
    )
    parser.add_argument("--group-file", type=Path, help="finite group JSON file")
