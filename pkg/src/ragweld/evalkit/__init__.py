from .metrics import (
    PRF,
    BleuBreakdown,
    EmptyAfterTokenizationError,
    LengthMismatchError,
    MetricError,
    bleu,
    bleu_breakdown,
    lcs_length,
    rouge_l,
    rouge_n,
    sentence_bleu,
    tokenize,
)
from .published import (
    PUBLISHED_MULTIMODAL_SCORES,
    PUBLISHED_QUERY_MODE_SCORES,
    format_published_table,
)
from .report import format_table, render_figure, reports_to_json, write_csv, write_report_files
from .runner import (
    ContextArm,
    EvalReport,
    EvalSetting,
    FaqPair,
    QueryMode,
    load_faq_csv,
    load_faq_jsonl,
    run_eval,
)

__all__ = [
    "PRF",
    "BleuBreakdown",
    "EmptyAfterTokenizationError",
    "LengthMismatchError",
    "MetricError",
    "bleu",
    "bleu_breakdown",
    "lcs_length",
    "rouge_l",
    "rouge_n",
    "sentence_bleu",
    "tokenize",
    "PUBLISHED_MULTIMODAL_SCORES",
    "PUBLISHED_QUERY_MODE_SCORES",
    "format_published_table",
    "format_table",
    "render_figure",
    "reports_to_json",
    "write_csv",
    "write_report_files",
    "ContextArm",
    "EvalReport",
    "EvalSetting",
    "FaqPair",
    "QueryMode",
    "load_faq_csv",
    "load_faq_jsonl",
    "run_eval",
]
