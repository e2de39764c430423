#!/usr/bin/env python3
"""Regenerates include/fgdm/resources.hpp from engines/*.json and data/*.tsv."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
ITEMS = [
    ("kTotalPreferenceEngine", "engines/total_preference.json"),
    ("kTotalPreferenceClassicEngine", "engines/total_preference_classic.json"),
    ("kFeedbackEngine", "engines/feedback.json"),
    ("kSentimentLexicon", "data/sentiment_lexicon.tsv"),
    ("kEmotionLexicon", "data/emotion_lexicon.tsv"),
]

out = [
    "#pragma once",
    "",
    "// Generated by tools/embed_resources.py; edit the source files instead.",
    "",
    "#include <string_view>",
    "",
    "namespace fgdm::resources {",
    "",
]
for name, rel in ITEMS:
    text = (ROOT / rel).read_text(encoding="utf-8")
    out.append(f"// {rel}")
    out.append(f'inline constexpr std::string_view {name} = R"FGDM({text})FGDM";')
    out.append("")
out.append("}  // namespace fgdm::resources")
(ROOT / "include/fgdm/resources.hpp").write_text("\n".join(out) + "\n", encoding="utf-8")
