"""
Text and JSON forms of polynomials, series, multisets and potentials
"""

import re
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Type

from core.exceptions import InputError, PotentialError, SeriesError
from models.hodge import HodgeMultiset
from models.kac import IntPoly
from models.paths import NCPoly, Path, Potential
from models.quiver import Quiver
from models.series import GradedSeries
from models.tate import TatePoly, TateRational
from schemas.results import HodgeEntry
from services.potential import make_potential
from services.quiver import LOOP_PREFIX

_SPLIT_TERMS = re.compile(r"(?<!\^)(?=[+-])")
_FRACTION = r"\d+(?:/\d+)?"


def fraction_str(c: Fraction) -> str:
    """'p/q', or 'p' for integers"""
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(text: str, error: Type[InputError] = InputError) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise error(f"bad rational {text!r}") from None
    return value


# ========== MONOMIAL SUMS ==========

def _monomial(c: Fraction, e: int, var: str) -> str:
    if e == 0:
        return fraction_str(abs(c))
    power = var if e == 1 else f"{var}^{e}"
    return power if abs(c) == 1 else f"{fraction_str(abs(c))}*{power}"


def _render_terms(terms: Sequence[Tuple[int, Fraction]], var: str) -> str:
    if not terms:
        return "0"
    out = ""
    for k, (e, c) in enumerate(terms):
        body = _monomial(c, e, var)
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _parse_terms(text: str, var: str) -> Dict[int, Fraction]:
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise SeriesError("empty polynomial text")
    pattern = re.compile(rf"^({_FRACTION})?(?:\*?({re.escape(var)})(?:\^(-?\d+))?)?$")
    out: Dict[int, Fraction] = {}
    for chunk in _SPLIT_TERMS.split(compact):
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:] if chunk[0] in "+-" else chunk
        match = pattern.match(body)
        if not body or match is None or not (match.group(1) or match.group(2)):
            raise SeriesError(f"cannot parse term {chunk!r}")
        coeff = parse_fraction(match.group(1), SeriesError) if match.group(1) else Fraction(1)
        if match.group(2):
            exp = int(match.group(3)) if match.group(3) is not None else 1
        else:
            exp = 0
        out[exp] = out.get(exp, Fraction(0)) + sign * coeff
    return out


def render_tate_poly(f: TatePoly) -> str:
    """Ascending exponents: 't^-3 + t^-1'"""
    return _render_terms(list(f.items()), "t")


def parse_tate_poly(text: str) -> TatePoly:
    return TatePoly(_parse_terms(text, "t"))


def render_int_poly(f: IntPoly) -> str:
    """Descending degree: 'q + 1'"""
    return _render_terms([(e, Fraction(c)) for e, c in sorted(f.items(), reverse=True)], "q")


def render_tate_rational(r: TateRational) -> str:
    if r.is_polynomial():
        return render_tate_poly(r.num)
    return f"({render_tate_poly(r.num)})/({render_tate_poly(r.den)})"


def parse_tate_rational(text: str) -> TateRational:
    match = re.match(r"^\s*\((.*)\)\s*/\s*\((.*)\)\s*$", text)
    if match:
        return TateRational(parse_tate_poly(match.group(1)), parse_tate_poly(match.group(2)))
    return TateRational(parse_tate_poly(text))


def render_hodge(h: HodgeMultiset) -> str:
    return repr(h)


# ========== JSON FORMS ==========

def tate_poly_json(f: TatePoly) -> Dict[str, str]:
    return {f"t^{e}": fraction_str(c) for e, c in f.items()}


def tate_poly_from_json(data: Mapping[str, str]) -> TatePoly:
    out = {}
    for key, value in data.items():
        if not key.startswith("t^"):
            raise SeriesError(f"bad exponent key {key!r}")
        out[int(key[2:])] = parse_fraction(str(value), SeriesError)
    return TatePoly(out)


def tate_rational_json(r: TateRational) -> Dict[str, Dict[str, str]]:
    return {"num": tate_poly_json(r.num), "den": tate_poly_json(r.den)}


def int_poly_json(f: IntPoly) -> Dict[str, int]:
    return {str(e): c for e, c in f.items()}


def hodge_json(h: HodgeMultiset) -> List[Dict[str, int]]:
    return [entry.model_dump() for entry in HodgeEntry.from_multiset(h)]


def expansion_json(r: TateRational, lo: int, hi: int, direction: str) -> Dict[str, str]:
    return {f"t^{e}": fraction_str(c) for e, c in sorted(r.expand(lo, hi, direction).items())}


def series_json(
    f: GradedSeries, window: Optional[Tuple[int, int]] = None, direction: str = "ascending"
) -> List[Dict]:
    """Nonzero coefficients, constant term first"""
    entries = []
    terms = [((0,) * f.nverts, f.constant)] if not f.constant.is_zero() else []
    for d, c in terms + list(f.items()):
        entry = {"d": list(d), "coeff": tate_rational_json(c), "text": render_tate_rational(c)}
        if window is not None:
            entry["expansion"] = expansion_json(c, window[0], window[1], direction)
        entries.append(entry)
    return entries


def render_series(f: GradedSeries, window: Optional[Tuple[int, int]] = None, direction: str = "ascending") -> List[str]:
    lines = []
    for entry in series_json(f, window, direction):
        line = f"x^{entry['d']}: {entry['text']}"
        if window is not None:
            expansion = tate_poly_from_json(entry["expansion"])
            line += f"  ~  {render_tate_poly(expansion)} + ..."
        lines.append(line)
    return lines


# ========== POTENTIALS ==========

def resolve_arrow(Q: Quiver, letter: str) -> str:
    """Accept ASCII aliases wX and w_X for the loop ω_X"""
    if Q.has_arrow(letter):
        return letter
    match = re.match(r"^w_?(.+)$", letter)
    if match and Q.has_arrow(LOOP_PREFIX + match.group(1)):
        return LOOP_PREFIX + match.group(1)
    raise PotentialError(f"unknown arrow {letter!r}")


def _parse_word(Q: Quiver, text: str) -> Path:
    if text.startswith("e_") and Q.has_vertex(text[2:]):
        return Path.lazy(text[2:])
    letters = text.split(".")
    if any(not letter for letter in letters):
        raise PotentialError(f"empty letter in word {text!r}")
    return Path.of(Q, [resolve_arrow(Q, letter) for letter in letters])


def _split_signed_terms(text: str) -> List[Tuple[int, str]]:
    compact = text.strip()
    if not compact:
        raise PotentialError("empty potential text")
    out = []
    for chunk in re.split(r"(?=[+-])", compact):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:].strip() if chunk[0] in "+-" else chunk
        if not body:
            raise PotentialError(f"dangling sign in {text!r}")
        out.append((sign, body))
    return out


def parse_ncpoly(Q: Quiver, text: str) -> NCPoly:
    """'c * w1.w2 + ...'; c defaults to 1, e_X is the lazy path at X, '0' is zero"""
    if text.strip() == "0":
        return NCPoly.zero()
    total: Dict[Path, Fraction] = {}
    for sign, body in _split_signed_terms(text):
        match = re.match(rf"^({_FRACTION})\s*\*\s*(\S+)$", body)
        if match:
            coeff, word = parse_fraction(match.group(1), PotentialError), match.group(2)
        elif re.match(rf"^{_FRACTION}$", body):
            raise PotentialError(f"constant term {body!r} needs a lazy path e_X")
        else:
            coeff, word = Fraction(1), body
        path = _parse_word(Q, word)
        total[path] = total.get(path, Fraction(0)) + sign * coeff
    return NCPoly(total)


def parse_potential(Q: Quiver, text: str) -> Potential:
    poly = parse_ncpoly(Q, text)
    terms = []
    for path, coeff in poly.items():
        if path.is_lazy:
            raise PotentialError("lazy paths are not cyclic words")
        terms.append((path.arrows, coeff))
    return make_potential(Q, terms)


def _render_words(terms: Sequence[Tuple[str, Fraction]]) -> str:
    if not terms:
        return "0"
    out = ""
    for k, (word, c) in enumerate(terms):
        body = f"{fraction_str(abs(c))} * {word}"
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def render_ncpoly(f: NCPoly) -> str:
    return _render_words([(".".join(p.arrows) or f"e_{p.source}", c) for p, c in f.items()])


def render_potential(W: Potential) -> str:
    return _render_words([(".".join(w), c) for w, c in W.items()])


def potential_json(W: Potential) -> Dict:
    return {
        "text": render_potential(W),
        "terms": [{"word": ".".join(w), "coeff": fraction_str(c)} for w, c in W.items()],
    }


def ncpoly_json(f: NCPoly) -> Dict:
    return {
        "text": render_ncpoly(f),
        "terms": [{"word": ".".join(p.arrows) or f"e_{p.source}", "coeff": fraction_str(c)} for p, c in f.items()],
    }


def parse_substitution(Q: Quiver, specs: Sequence[str]) -> Dict[str, NCPoly]:
    """'ARROW=NCPOLY' items"""
    sigma: Dict[str, NCPoly] = {}
    for spec in specs:
        if "=" not in spec:
            raise PotentialError(f"substitution {spec!r} is not of the form ARROW=NCPOLY")
        name, image = spec.split("=", 1)
        sigma[resolve_arrow(Q, name.strip())] = parse_ncpoly(Q, image)
    return sigma
