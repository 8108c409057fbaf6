"""Deterministic template-based intent classification.

A template is a token sequence mixing literals and ``{slot}`` placeholders;
it may also carry implied slot values (used for zone phrases like "in front
on the left").  Classification aligns every template against the utterance
tokens at every offset; the score of an alignment is the fraction of
utterance tokens it covers, so a full-sentence match scores 1.0.  Ties go to
the earliest declared intent/template.  No alignment at all yields the
reserved ``fallback`` intent with confidence 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

FALLBACK_INTENT = "fallback"

NUMERIC_SLOTS = ("horizontal", "vertical")
DIRECTION_WORDS = ("left", "right", "front", "behind")

_TOKEN_RE = re.compile(r"[A-Za-z0-9_]+")
_SLOT_RE = re.compile(r"^\{([a-z_]+)\}$")


def tokenize(text: str) -> list:
    return [t.lower() for t in _TOKEN_RE.findall(text)]


@dataclass(frozen=True)
class Template:
    """One utterance shape: its tokens plus slots implied by the phrasing."""

    text: str
    implied: tuple = ()  # of (slot, value)

    def tokens(self) -> list:
        return self.text.lower().split()


@dataclass(frozen=True)
class IntentDef:
    name: str
    templates: tuple
    entities: tuple = ()


@dataclass
class NluResult:
    intent: str
    confidence: float
    slots: dict = field(default_factory=dict)


def _slot_value(slot: str, token: str):
    """Typed capture; None rejects the alignment."""
    if slot in NUMERIC_SLOTS:
        try:
            return int(token)
        except ValueError:
            return None
    if slot == "relative_position":
        return token if token in DIRECTION_WORDS else None
    if token.isdigit():
        return None  # names and types are words, not bare numbers
    return token


def _align(template: Template, tokens: list, offset: int):
    """Match template tokens at the given offset; returns slots or None."""
    slots: dict = {}
    t_tokens = template.tokens()
    if offset + len(t_tokens) > len(tokens):
        return None
    for i, t_tok in enumerate(t_tokens):
        word = tokens[offset + i]
        slot_match = _SLOT_RE.match(t_tok)
        if slot_match:
            value = _slot_value(slot_match.group(1), word)
            if value is None:
                return None
            slots[slot_match.group(1)] = value
        elif t_tok != word:
            return None
    slots.update(dict(template.implied))
    return slots


def classify(utterance: str, intents) -> NluResult:
    """Deterministic classification; identical inputs give identical results."""
    tokens = tokenize(utterance)
    if not tokens:
        return NluResult(FALLBACK_INTENT, 0.0)
    best: NluResult | None = None
    for intent in intents:
        for template in intent.templates:
            width = len(template.tokens())
            for offset in range(0, len(tokens) - width + 1):
                slots = _align(template, tokens, offset)
                if slots is None:
                    continue
                confidence = width / len(tokens)
                if best is None or confidence > best.confidence:
                    best = NluResult(intent.name, confidence, slots)
    return best if best is not None else NluResult(FALLBACK_INTENT, 0.0)
