"""Knowledge-constrained parsing of raw scoreboard OCR strings.

Clock and quarter strings must match sport-specific regular forms; anything
else is rejected outright rather than guessed at. Confusable glyphs (O for 0,
l for 1, ...) are normalized before the clock grammar is applied.
"""
from __future__ import annotations

import re

from .errors import OutOfRangeError, UnparseableError
from .types import MAX_CENTISECONDS, ClockTime, QuarterLabel

#: Confusable glyph -> canonical digit, applied in digit positions only.
GLYPH_TO_DIGIT = {
    "O": "0",
    "o": "0",
    "l": "1",
    "I": "1",
    "B": "8",
    "S": "5",
    "Z": "2",
}

#: Punctuation stripped from the end of a reading ("3rd.", "10:32,").
TRAILING_STRIP = ".,"

_GLYPH_TABLE = str.maketrans(GLYPH_TO_DIGIT)

# M{1,2}:SS with optional .t or .tt fraction.
_MINUTE_FORM = re.compile(r"^(\d{1,2}):(\d{2})(?:\.(\d{1,2}))?$")
# S.t / SS.t, the sub-minute display with exactly one tenths digit.
_SECONDS_FORM = re.compile(r"^(\d{1,2})\.(\d)$")

_QUARTER_WORDS = {"1st": 1, "2nd": 2, "3rd": 3, "4th": 4}
_OVERTIME_WORDS = {"ot": 5, "2ot": 6, "3ot": 7}


def _strip_trailing(s: str) -> str:
    while s and s[-1] in TRAILING_STRIP:
        s = s[:-1]
    return s


def normalize_glyphs(raw: str) -> str:
    """Trim whitespace, drop trailing punctuation, and canonicalize glyphs.

    Substitutions only ever touch characters that sit where the clock
    grammar expects digits; separators (':' and '.') are never letters, so
    a plain translation is exact. Idempotent.
    """
    return _strip_trailing(raw.strip()).translate(_GLYPH_TABLE)


def parse_time_remaining(raw: str) -> ClockTime:
    """Parse a time-remaining string into a ClockTime.

    Accepted forms after glyph normalization: M:SS, MM:SS, M:SS.t,
    M:SS.tt, SS.t, S.t. Raises UnparseableError on anything else and
    OutOfRangeError when the seconds field is 60+ or the value exceeds
    60:00.
    """
    s = normalize_glyphs(raw)
    m = _MINUTE_FORM.match(s)
    if m:
        minutes = int(m.group(1))
        seconds = int(m.group(2))
        frac = m.group(3)
        if seconds >= 60:
            raise OutOfRangeError(f"seconds field >= 60 in {raw!r}")
        centis = 0
        if frac is not None:
            centis = int(frac) * 10 if len(frac) == 1 else int(frac)
        total = minutes * 6000 + seconds * 100 + centis
        if total > MAX_CENTISECONDS:
            raise OutOfRangeError(f"{raw!r} exceeds the 60:00 clock bound")
        return ClockTime(total)
    m = _SECONDS_FORM.match(s)
    if m:
        seconds = int(m.group(1))
        if seconds >= 60:
            raise OutOfRangeError(f"seconds field >= 60 in {raw!r}")
        return ClockTime(seconds * 100 + int(m.group(2)) * 10)
    raise UnparseableError(f"not a clock reading: {raw!r}")


def parse_quarter(raw: str) -> QuarterLabel:
    """Parse a quarter string into a QuarterLabel.

    Case-insensitive, trailing punctuation stripped: 1st-4th, Q1-Q4, bare
    1-4, and OT/2OT/3OT. Anything else (including "5th", which broadcasts
    never show) raises UnparseableError.
    """
    s = _strip_trailing(raw.strip()).lower()
    if s in _QUARTER_WORDS:
        return QuarterLabel(_QUARTER_WORDS[s])
    if len(s) == 2 and s[0] == "q" and s[1] in "1234":
        return QuarterLabel(int(s[1]))
    if s in ("1", "2", "3", "4"):
        return QuarterLabel(int(s))
    if s in _OVERTIME_WORDS:
        return QuarterLabel(_OVERTIME_WORDS[s])
    raise UnparseableError(f"not a quarter label: {raw!r}")
