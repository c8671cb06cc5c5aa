"""Canonical text for elements; the output parses back to the same element."""

from __future__ import annotations

from ..cartan import format_weight


def _gen_names(flavor):
    return ("F", "K", "E") if flavor == "U" else ("Y", "Z", "X")


def format_key(key, flavor: str) -> str:
    f, lam, e = key
    fn, kn, en = _gen_names(flavor)
    parts = [f"{fn}({i})" for i in f]
    if any(lam):
        parts.append(f"{kn}({format_weight(lam)})")
    parts += [f"{en}({i})" for i in e]
    return "*".join(parts)


def format_coeff_term(c, mono: str) -> tuple[str, str]:
    """(sign, body) for coefficient c times monomial text (may be empty)."""
    text = str(c)
    neg = False
    if c.is_laurent() and " " not in text.lstrip("-"):
        if text.startswith("-"):
            neg = True
            text = text[1:]
        if not mono:
            return ("-" if neg else "+", text)
        if text == "1":
            return ("-" if neg else "+", mono)
        return ("-" if neg else "+", f"{text}*{mono}")
    if not mono:
        return ("+", f"({text})")
    return ("+", f"({text})*{mono}")


def sort_key(key):
    f, lam, e = key
    return (len(f) + len(e), f, lam, e)


def format_element(x) -> str:
    if not x.terms:
        return "0"
    pieces = [format_coeff_term(c, format_key(k, x.alg.flavor))
              for k, c in sorted(x.terms.items(), key=lambda kc: sort_key(kc[0]))]
    return _join(pieces)


def _join(pieces):
    sign, body = pieces[0]
    text = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def format_tensor(t) -> str:
    if not t.terms:
        return "0"
    flavor = t.alg.flavor
    pieces = []
    for keys, c in sorted(t.terms.items(), key=lambda kc: [sort_key(k) for k in kc[0]]):
        mono = " (x) ".join(format_key(k, flavor) or "1" for k in keys)
        sign, body = format_coeff_term(c, "")
        if body == "1":
            pieces.append((sign, mono))
        else:
            pieces.append((sign, f"{body} * [{mono}]"))
    return _join(pieces)
