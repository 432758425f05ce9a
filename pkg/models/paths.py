"""
Paths, path-algebra elements and potentials
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from core.exceptions import PotentialError
from models.quiver import Quiver

Scalar = Union[int, Fraction]
Word = Tuple[str, ...]


@dataclass(frozen=True, order=True)
class Path:
    """A path composed left to right; an empty word is the lazy path at `source`"""
    arrows: Word
    source: str
    target: str

    @classmethod
    def lazy(cls, vertex: str) -> "Path":
        return cls((), vertex, vertex)

    @classmethod
    def of(cls, quiver: Quiver, arrows: Iterable[str]) -> "Path":
        """Validated path from a word of arrow ids"""
        word = tuple(arrows)
        if not word:
            raise PotentialError("empty word; use Path.lazy for e_i")
        first = quiver.arrow(word[0])
        current = first.target
        for prev, nxt in zip(word, word[1:]):
            arrow = quiver.arrow(nxt)
            if arrow.source != current:
                raise PotentialError(f"arrows {prev!r} and {nxt!r} do not compose", word=list(word))
            current = arrow.target
        return cls(word, first.source, current)

    @property
    def is_lazy(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return self.source == self.target

    def __len__(self) -> int:
        return len(self.arrows)

    def compose(self, other: "Path") -> Optional["Path"]:
        """self then other, or None when they do not compose"""
        if self.target != other.source:
            return None
        return Path(self.arrows + other.arrows, self.source, other.target)


class NCPoly:
    """Rational linear combination of paths"""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Path, Scalar]] = None):
        clean: Dict[Path, Fraction] = {}
        for path, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                clean[path] = clean.get(path, Fraction(0)) + c
                if not clean[path]:
                    del clean[path]
        self._terms = clean

    @classmethod
    def from_path(cls, path: Path, coeff: Scalar = 1) -> "NCPoly":
        return cls({path: coeff})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @property
    def terms(self) -> Dict[Path, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Path, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPoly):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self._terms)
        for path, c in other._terms.items():
            out[path] = out.get(path, Fraction(0)) + c
        return NCPoly(out)

    def __neg__(self) -> "NCPoly":
        return NCPoly({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "NCPoly":
        return NCPoly({p: v * c for p, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: Dict[Path, Fraction] = {}
        for p1, c1 in self._terms.items():
            for p2, c2 in other._terms.items():
                path = p1.compose(p2)
                if path is not None:
                    out[path] = out.get(path, Fraction(0)) + c1 * c2
        return NCPoly(out)

    def __rmul__(self, c: Scalar) -> "NCPoly":
        return self.scale(c)

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}*{'.'.join(p.arrows) or 'e_' + p.source}" for p, c in self.items())
        return f"NCPoly({inner})"


class Potential:
    """Rational linear combination of cyclic words in canonical rotation"""

    __slots__ = ("quiver", "_terms")

    def __init__(self, quiver: Quiver, terms: Optional[Mapping[Word, Scalar]] = None):
        self.quiver = quiver
        clean: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c:
                clean[word] = clean.get(word, Fraction(0)) + c
                if not clean[word]:
                    del clean[word]
        self._terms = clean

    @property
    def terms(self) -> Dict[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _combine(self, other: "Potential", sign: int) -> "Potential":
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, Fraction(0)) + sign * c
        return Potential(self.quiver, out)

    def __add__(self, other: "Potential") -> "Potential":
        return self._combine(other, 1)

    def __sub__(self, other: "Potential") -> "Potential":
        return self._combine(other, -1)

    def __neg__(self) -> "Potential":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "Potential":
        return Potential(self.quiver, {w: v * c for w, v in self._terms.items()})

    def __repr__(self) -> str:
        inner = " + ".join(f"{c}*{'.'.join(w)}" for w, c in self.items())
        return f"Potential({inner or '0'})"
