"""Rule-based TimeML annotation: EVENT, TIMEX3 and TLINK tagging plus evaluation."""
from .model import (
    AnnotatedDocument,
    EventTag,
    RelationType,
    Tense,
    TimexTag,
    TLink,
    Token,
    validate,
)
from .pipeline import Lexicons, annotate, tag_text
from .timeml import parse_timeml, serialize_timeml
from .tlinks import ClassifierConfig, classify_pair, candidate_pairs, generate_tlinks

__version__ = "0.1.0"
