"""Linear codes over F_{2^n} from simplicial-complex defining sets."""

from .codes import (
    DC,
    DSTAR,
    BudgetExceeded,
    CodeError,
    CodeReport,
    DefiningSet,
    build_defining_set,
    code_report,
    subfield_expand,
    subfield_report,
)
from .gf2n import BinPoly, FieldCtx, FieldError, default_modulus, make_ctx
from .lfsr import LfsrSeq
from .simplicial import Complex, GenComplex, Vec2m
from .verify import verify_theorems

__all__ = [
    "BinPoly",
    "BudgetExceeded",
    "CodeError",
    "CodeReport",
    "Complex",
    "DC",
    "DSTAR",
    "DefiningSet",
    "FieldCtx",
    "FieldError",
    "GenComplex",
    "LfsrSeq",
    "Vec2m",
    "build_defining_set",
    "code_report",
    "default_modulus",
    "make_ctx",
    "subfield_expand",
    "subfield_report",
    "verify_theorems",
]
