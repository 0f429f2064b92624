"""
语料模块

内置 Gauss 码语料，CORPUS_DIR 中的 *.gauss 文件追加或覆盖同名条目
"""

import logging
from pathlib import Path

from app.config import BUNDLED_CORPUS, settings
from app.core.exceptions import NotFoundException
from app.schemas.diagram import CorpusEntry, CorpusFile


logger = logging.getLogger(__name__)


def read_gauss_file(path: Path) -> CorpusEntry:
    """
    以 # 开头的行作为描述，其余非空行以空白拼接为 Gauss 码

    文件名（去掉 .gauss）即条目名
    """
    description: list[str] = []
    code: list[str] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            description.append(stripped.lstrip("# "))
        elif stripped:
            code.append(stripped)
    return CorpusEntry(name=path.stem, gauss=" ".join(code), description=" ".join(description))


class CorpusManager:
    """语料管理器"""

    def __init__(self, directory: Path | None = None, bundled: Path = BUNDLED_CORPUS) -> None:
        self._directory = directory
        self._bundled = bundled
        self._entries: dict[str, CorpusEntry] | None = None

    @property
    def entries(self) -> dict[str, CorpusEntry]:
        if self._entries is None:
            self._entries = self._load()
        return self._entries

    def _load(self) -> dict[str, CorpusEntry]:
        data = CorpusFile.model_validate_json(self._bundled.read_bytes())
        entries = {e.name: e for e in data.knots}
        if self._directory is not None:
            if not self._directory.is_dir():
                raise NotFoundException(f"Corpus directory {self._directory} does not exist")
            for path in sorted(self._directory.glob("*.gauss")):
                entries[path.stem] = read_gauss_file(path)
                logger.debug("📚 corpus entry %s from %s", path.stem, path)
        return entries

    def names(self) -> list[str]:
        return sorted(self.entries)

    def get(self, name: str) -> CorpusEntry:
        if name not in self.entries:
            raise NotFoundException(f"Unknown knot {name!r}, expected one of {', '.join(self.names())}")
        return self.entries[name]


# 全局语料实例
corpus = CorpusManager(settings.CORPUS_DIR)
