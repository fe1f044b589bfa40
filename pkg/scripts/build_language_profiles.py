#!/usr/bin/env python3
"""Regenerate the shipped language profiles from data/lang_training/*.txt."""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from newsflow.textproc.langid import (  # noqa: E402
    SCRIPT_OF_LANGUAGE,
    build_profile,
    calibrate_profile,
)

TRAINING_DIR = ROOT / "data" / "lang_training"
PROFILE_DIR = ROOT / "src" / "newsflow" / "textproc" / "data" / "profiles"


def main() -> None:
    PROFILE_DIR.mkdir(parents=True, exist_ok=True)
    for path in sorted(TRAINING_DIR.glob("*.txt")):
        lang = path.stem
        text = path.read_text(encoding="utf-8")
        grams = build_profile(text)
        calibration = calibrate_profile(text, grams, SCRIPT_OF_LANGUAGE.get(lang, "latin"))
        out = PROFILE_DIR / f"{lang}.json"
        out.write_text(
            json.dumps({"calibration": round(calibration, 4), "ngrams": grams},
                       ensure_ascii=False, sort_keys=True),
            encoding="utf-8",
        )
        print(f"{lang}: {len(grams)} ngrams, calibration {calibration:.3f}")


if __name__ == "__main__":
    main()
