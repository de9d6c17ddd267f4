from .ablations import (
    WEIGHTING_SWEEP_FRACTIONS,
    AblationRow,
    format_ablation_tsv,
    function_comparison,
    sample_size_effect,
    weighting_comparison,
)

__all__ = [
    "WEIGHTING_SWEEP_FRACTIONS",
    "AblationRow",
    "format_ablation_tsv",
    "function_comparison",
    "sample_size_effect",
    "weighting_comparison",
]
