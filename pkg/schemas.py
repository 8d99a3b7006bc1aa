"""
Input schemas for the command line: pydantic models for JSON files and the
text shorthand for single polytopes (`hull((0,0),(1,0))`, `point(1,2)`,
`seg((0,0),(1,1))`, `zero`)
"""
import json
import logging
import re
from pathlib import Path
from typing import List, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from errors import MixedDimension, ParseError
from polynomial import GradedIdeal, Polynomial, parse_polynomial
from polytope_core import LatticePolytope, hull
from semimodule import SubSemimodule

logger = logging.getLogger(__name__)

ModelT = TypeVar('ModelT', bound=BaseModel)

SHORTHAND_TOKEN = re.compile(r"\s+|hull|point|seg|zero|\d+|[(),]")


class PolytopeModel(BaseModel):
    """`{"vertices": [[0,0],[1,0]]}` or `{"zero": true}`"""
    model_config = ConfigDict(extra='forbid')

    vertices: Optional[List[List[int]]] = None
    zero: bool = False
    dim: Optional[int] = None

    @model_validator(mode='after')
    def _one_form(self) -> "PolytopeModel":
        if self.zero and self.vertices:
            raise ValueError("a zero polytope has no vertices")
        if not self.zero and not self.vertices:
            raise ValueError("give vertices or zero: true")
        if self.vertices:
            lengths = {len(v) for v in self.vertices}
            if len(lengths) > 1:
                raise ValueError(f"vertices of mixed length {sorted(lengths)}")
            if any(c < 0 for v in self.vertices for c in v):
                raise ValueError("coordinates must be non-negative")
        return self

    def to_polytope(self, dim: Optional[int] = None) -> LatticePolytope:
        if self.zero:
            n = dim if dim is not None else self.dim
            if n is None:
                raise ValueError("zero polytope needs a dimension")
            return LatticePolytope.zero(n)
        return hull(self.vertices, dim if dim is not None else self.dim)


PolytopeInput = Union[PolytopeModel, str]


def _to_polytope(item: PolytopeInput, dim: Optional[int]) -> LatticePolytope:
    if isinstance(item, str):
        return parse_polytope(item, dim)
    return item.to_polytope(dim)


class PolytopeListModel(BaseModel):
    """`{"dim": 2, "polytopes": [...]}`; entries may be objects or shorthand strings"""
    dim: Optional[int] = None
    polytopes: List[PolytopeInput]

    def to_polytopes(self) -> List[LatticePolytope]:
        result = [_to_polytope(item, self.dim) for item in self.polytopes]
        dims = {p.dim for p in result}
        if len(dims) > 1:
            raise MixedDimension([p.dim for p in result])
        return result


class SemimoduleModel(BaseModel):
    dim: int
    generators: List[PolytopeInput]

    def to_semimodule(self) -> SubSemimodule:
        return SubSemimodule.generated_by([_to_polytope(g, self.dim) for g in self.generators], self.dim)


class IdealModel(BaseModel):
    """`{"dim": 3, "generators": ["x1 - x2", "x2 - x3"]}`"""
    dim: Optional[int] = None
    generators: List[str]

    @field_validator('generators')
    @classmethod
    def _nonempty(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("an ideal needs at least one generator")
        return value

    def to_ideal(self) -> GradedIdeal:
        return GradedIdeal.parse(self.generators, self.dim)


class SyzygyModel(BaseModel):
    dim: Optional[int] = None
    P: List[PolytopeInput]
    Q: List[PolytopeInput] = []

    def to_tuples(self) -> Tuple[List[LatticePolytope], List[LatticePolytope]]:
        P = [_to_polytope(p, self.dim) for p in self.P]
        n = self.dim if self.dim is not None else P[0].dim
        return P, [_to_polytope(q, n) for q in self.Q]


class PolynomialSyzygyModel(BaseModel):
    dim: Optional[int] = None
    f: List[str]
    g: List[str]

    def to_polynomials(self) -> Tuple[List[Polynomial], List[Polynomial]]:
        n = self.dim
        if n is None:
            n = max(parse_polynomial(t).dim for t in self.f + self.g)
        return [parse_polynomial(t, n) for t in self.f], [parse_polynomial(t, n) for t in self.g]


def load_model(path: Union[str, Path], model: Type[ModelT]) -> ModelT:
    """Read and validate a JSON file; problems surface as ParseError"""
    text = Path(path).read_text(encoding='utf-8')
    try:
        return model.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e.msg}", e.lineno, e.colno) from e
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first['loc'])
        raise ParseError(f"Invalid {model.__name__} in {path}: {location}: {first['msg']}") from e


class _Shorthand:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, int]] = []
        offset = 0
        while offset < len(text):
            match = SHORTHAND_TOKEN.match(text, offset)
            if match is None:
                raise ParseError(f"Unexpected character {text[offset]!r}", 1, offset + 1)
            if not match.group().isspace():
                self.tokens.append((match.group(), offset))
            offset = match.end()
        self.position = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.position][0] if self.position < len(self.tokens) else None

    def column(self) -> int:
        if self.position < len(self.tokens):
            return self.tokens[self.position][1] + 1
        return len(self.text) + 1

    def expect(self, token: Optional[str] = None) -> str:
        current = self.peek()
        if current is None or (token is not None and current != token):
            wanted = repr(token) if token is not None else "a token"
            found = repr(current) if current is not None else "end of input"
            raise ParseError(f"Expected {wanted}, found {found}", 1, self.column())
        self.position += 1
        return current

    def coordinates(self) -> List[int]:
        self.expect("(")
        values = [self.number()]
        while self.peek() == ",":
            self.expect(",")
            values.append(self.number())
        self.expect(")")
        return values

    def number(self) -> int:
        current = self.peek()
        if current is None or not current.isdigit():
            found = repr(current) if current is not None else "end of input"
            raise ParseError(f"Expected a non-negative integer, found {found}", 1, self.column())
        self.position += 1
        return int(current)

    def point_list(self) -> List[List[int]]:
        self.expect("(")
        points = [self.coordinates()]
        while self.peek() == ",":
            self.expect(",")
            points.append(self.coordinates())
        self.expect(")")
        return points


def parse_polytope(text: str, dim: Optional[int] = None) -> LatticePolytope:
    """Parse the polytope shorthand; errors carry the 1-based column"""
    parser = _Shorthand(text.strip())
    head = parser.expect()
    if head == "zero":
        if dim is None:
            raise ParseError("zero needs --dim", 1, 1)
        polytope = LatticePolytope.zero(dim)
    elif head == "point":
        polytope = hull([parser.coordinates()], dim)
    elif head in ("hull", "seg"):
        column = parser.column()
        points = parser.point_list()
        if head == "seg" and len(points) != 2:
            raise ParseError("seg takes exactly two points", 1, column)
        lengths = {len(p) for p in points}
        if len(lengths) > 1:
            raise ParseError(f"Points of mixed length {sorted(lengths)}", 1, column)
        polytope = hull(points, dim)
    else:
        raise ParseError(f"Unknown polytope form {head!r}", 1, 1)
    if parser.peek() is not None:
        raise ParseError(f"Unexpected trailing {parser.peek()!r}", 1, parser.column())
    return polytope
