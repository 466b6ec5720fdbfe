"""Text forms for ideals, replete ideals and archimedean regions.

Ideals are written ``gen:[1,1],[0,2]``: generators as bracketed coordinate
lists in the integral basis (entries may be ``p/q``); ``O`` is the unit
ideal.  Replete ideals append archimedean components: ``gen:[1,0] | 10``.
Regions are ``;``-separated factors ``interval:lo,hi``, ``disc:r[,cx,cy]``
or ``box:x0,x1,y0,y1``, or the words ``ball`` and ``cube``.
"""

import re
from fractions import Fraction

from .growth import ArchRegion, Box, Disc, Interval, unit_ball, unit_cube
from .ideals import ideal_from_generators, replete, unit_ideal

_BRACKET = re.compile(r"\[([^\[\]]*)\]")


class LiteralError(ValueError):
    pass


def parse_rationals(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralError(f"bad rational list {text!r}") from exc


def parse_element(field, text):
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    coords = parse_rationals(text)
    if len(coords) != field.degree:
        raise LiteralError(f"element {text!r} needs {field.degree} coordinates")
    return field.element(coords)


def parse_ideal(field, text):
    text = text.strip()
    if text == "O":
        return unit_ideal(field)
    if not text.startswith("gen:"):
        raise LiteralError(f"ideal literal must start with 'gen:' (got {text!r})")
    body = text[4:]
    gens = _BRACKET.findall(body)
    rest = _BRACKET.sub("", body).replace(",", "").strip()
    if not gens or rest:
        raise LiteralError(f"cannot parse generators in {text!r}")
    elems = [parse_element(field, g) for g in gens]
    try:
        return ideal_from_generators(field, elems)
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc


def parse_replete(field, text):
    """``ideal | n_1, n_2, ...``; missing components default to 1."""
    ideal_text, _, arch_text = text.partition("|")
    finite = parse_ideal(field, ideal_text)
    places = len(field.places)
    scales = parse_rationals(arch_text) if arch_text.strip() else [Fraction(1)] * places
    if len(scales) == 1 and places > 1:
        scales = scales * places
    if len(scales) != places:
        raise LiteralError(f"need {places} archimedean components")
    try:
        return replete(finite, scales)
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc


def parse_per_place(field, text, what):
    vals = parse_rationals(text)
    places = len(field.places)
    if len(vals) == 1:
        vals = vals * places
    if len(vals) != places:
        raise LiteralError(f"{what}: need one value or {places} values")
    return vals


def parse_region(field, text):
    text = text.strip()
    if text == "ball":
        return unit_ball(field)
    if text == "cube":
        return unit_cube(field)
    factors = []
    for part in text.split(";"):
        kind, _, args = part.strip().partition(":")
        vals = parse_rationals(args)
        try:
            if kind == "interval" and len(vals) == 2:
                factors.append(Interval(*vals))
            elif kind == "disc" and len(vals) in (1, 3):
                factors.append(Disc(*vals))
            elif kind == "box" and len(vals) == 4:
                factors.append(Box(*vals))
            else:
                raise LiteralError(f"bad region factor {part!r}")
        except ValueError as exc:
            raise LiteralError(str(exc)) from exc
    try:
        return ArchRegion(tuple(factors)).check_field(field)
    except LiteralError:
        raise
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc


def format_element(alpha):
    return "[" + ",".join(str(c) for c in alpha.coords) + "]"
