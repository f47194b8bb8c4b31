"""fretc: structured-requirements toolkit.

Parses FRETISH requirements, classifies them into semantic templates,
compiles future-/past-time temporal formulas evaluable over finite traces,
manages parent-child hierarchies with rationale, and checks refinement under
abstraction invariants by bounded trace enumeration.
"""

from .corpus import builtin_corpus
from .parser import ParseError, parse_expr, parse_requirement, pretty_print
from .semantics import classify_template, formalize_ft, formalize_pt, render_diagram
from .trace import Trace, eval_expr, eval_formula, eval_template_direct

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "Trace",
    "builtin_corpus",
    "classify_template",
    "eval_expr",
    "eval_formula",
    "eval_template_direct",
    "formalize_ft",
    "formalize_pt",
    "parse_expr",
    "parse_requirement",
    "pretty_print",
    "render_diagram",
    "__version__",
]
