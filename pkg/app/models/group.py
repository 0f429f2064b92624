from dataclasses import dataclass, field


# (生成元下标, ±1)
Letter = tuple[int, int]
Word = tuple[Letter, ...]


@dataclass(frozen=True, slots=True)
class Presentation:
    """
    有限群表示

    relators 中的下标指向 generators；provenance 与 relators 一一对应
    """
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    provenance: tuple[str, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index_of(self, name: str) -> int:
        return self.generators.index(name)


@dataclass(frozen=True, slots=True)
class InvariantSignature:
    """不变量签名：阿贝尔化不变量 + 有限群同态计数"""
    abelian_invariants: tuple[int, ...]
    hom_counts: dict[str, int] = field(default_factory=dict)

    def as_key(self) -> tuple[tuple[int, ...], tuple[tuple[str, int], ...]]:
        return self.abelian_invariants, tuple(sorted(self.hom_counts.items()))
