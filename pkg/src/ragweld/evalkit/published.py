"""Published scorecards from the original AsthmaBot deployment.

Shipped for report formatting comparison only: those numbers depended on
proprietary hosted providers at a point in time and are not reproducible
offline, so they are never used as test oracles.

Keys are (language code, arm); values are (ROUGE-1, ROUGE-2, ROUGE-L, BLEU).
"""

from __future__ import annotations

PUBLISHED_MULTIMODAL_SCORES: dict[tuple[str, str], tuple[float, float, float, float]] = {
    ("en", "norag"): (0.2370, 0.0504, 0.1338, 0.0180),
    ("en", "text"): (0.2684, 0.0612, 0.1576, 0.0367),
    ("en", "image"): (0.2664, 0.0585, 0.1547, 0.0327),
    ("en", "video"): (0.2686, 0.0570, 0.1556, 0.0321),
    ("fr", "norag"): (0.2810, 0.0868, 0.1528, 0.0219),
    ("fr", "text"): (0.2963, 0.0952, 0.1706, 0.0426),
    ("fr", "image"): (0.3108, 0.1003, 0.1709, 0.0441),
    ("fr", "video"): (0.3024, 0.0973, 0.1696, 0.0408),
    ("ar", "norag"): (0.0148, 0.0056, 0.0149, 0.0125),
    ("ar", "text"): (0.0152, 0.0068, 0.0149, 0.0300),
    ("ar", "image"): (0.0162, 0.0044, 0.0162, 0.0282),
    ("ar", "video"): (0.0169, 0.0050, 0.0167, 0.0263),
}

# Native-query vs translated-query comparison, text arm.
PUBLISHED_QUERY_MODE_SCORES: dict[tuple[str, str], tuple[float, float, float, float]] = {
    ("ar", "norag"): (0.0148, 0.0056, 0.0148, 0.0125),
    ("ar", "nq"): (0.0106, 0.0026, 0.0106, 0.0176),
    ("ar", "tq"): (0.0152, 0.0068, 0.0149, 0.0300),
    ("fr", "norag"): (0.2810, 0.0868, 0.1528, 0.0219),
    ("fr", "nq"): (0.2963, 0.0952, 0.1706, 0.0426),
    ("fr", "tq"): (0.3181, 0.0989, 0.1761, 0.0394),
}


def format_published_table() -> str:
    """Aligned view of the published multi-modal scorecard."""
    names = {"en": "English", "fr": "French", "ar": "Arabic"}
    arms = {"norag": "No RAG", "text": "Text", "image": "Image", "video": "Video"}
    header = f"{'Language':<10}{'Arm':<8}" + "".join(
        f"{c:>9}" for c in ("ROUGE-1", "ROUGE-2", "ROUGE-L", "BLEU")
    )
    lines = [header, "-" * len(header)]
    previous = None
    for (code, arm), values in PUBLISHED_MULTIMODAL_SCORES.items():
        label = names[code] if code != previous else ""
        previous = code
        cells = "".join(f"{v:>9.4f}" for v in values)
        lines.append(f"{label:<10}{arms[arm]:<8}{cells}")
    return "\n".join(lines) + "\n"
