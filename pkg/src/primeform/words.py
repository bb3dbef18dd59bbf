"""Words in free groups.

A letter is a pair ``(generator, sign)`` with sign +1 or -1, and a word is a
tuple of letters.  Generators are usually :class:`Generator` triples, but
any hashable value works, so ad hoc symbols such as ``"a"`` can be used for
experiments with surface symbols.

Text form: ``Y:r:v``, ``A:i:v``, ``B:i:v`` for structured generators, any
other bare token for an ad hoc one; a trailing ``'`` (or ``^-1`` or ``⁻¹``)
marks an inverse; letters are separated by whitespace.
"""

import re
from typing import NamedTuple

from .errors import ValidationError

KINDS = ("A", "B", "Y")


class Generator(NamedTuple):
    kind: str
    index: int
    power: int

    def __str__(self):
        return f"{self.kind}:{self.index}:{self.power}"

    def shifted(self, k, p):
        return Generator(self.kind, self.index, (self.power + k) % p)


_GEN_RE = re.compile(r"^([ABY]):(\d+):(\d+)$")
_INVERSE_SUFFIXES = ("'", "^-1", "⁻¹")


def gen_name(g):
    return str(g)


def parse_generator(text):
    m = _GEN_RE.match(text)
    if m:
        return Generator(m.group(1), int(m.group(2)), int(m.group(3)))
    if not text or any(c.isspace() for c in text) or "'" in text:
        raise ValidationError(f"bad generator {text!r}")
    return text


def parse_letter(token):
    for suf in _INVERSE_SUFFIXES:
        if token.endswith(suf):
            return (parse_generator(token[: -len(suf)]), -1)
    return (parse_generator(token), 1)


def parse_word(text):
    if isinstance(text, (list, tuple)):
        return tuple(parse_letter(t) for t in text)
    return tuple(parse_letter(t) for t in text.split())


def format_letter(letter):
    g, s = letter
    return gen_name(g) + ("'" if s < 0 else "")


def letters_to_strings(word):
    return [format_letter(x) for x in word]


def format_word(word):
    return " ".join(letters_to_strings(word))


def inverse(word):
    return tuple((g, -s) for g, s in reversed(word))


def free_reduce(word):
    out = []
    for g, s in word:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def is_freely_reduced(word, cyclic=False):
    n = len(word)
    for i in range(n - 1):
        if word[i][0] == word[i + 1][0] and word[i][1] == -word[i + 1][1]:
            return False
    if cyclic and n > 1 and word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
        return False
    return True


def cyclic_rotations(word):
    for k in range(len(word)):
        yield word[k:] + word[:k]


def cyclically_equal(u, v):
    """True when the cyclic reductions of ``u`` and ``v`` are rotations of each other."""
    u, v = cyclic_reduce(u), cyclic_reduce(v)
    if len(u) != len(v):
        return False
    if not u:
        return True
    return any(r == v for r in cyclic_rotations(u))


def h_shift(word, k, p):
    """Apply ``h^k`` letterwise by bumping generator powers modulo ``p``.

    Only meaningful on words whose generators carry all ``p`` powers.
    """
    return tuple((g.shifted(k, p), s) for g, s in word)


def power_word(U, exps, p):
    """``h^{u_1}(U) h^{u_2}(U) ...`` for a generator or word ``U``."""
    if isinstance(U, Generator):
        U = ((U, 1),)
    out = []
    for e in exps:
        out.extend(h_shift(U, e, p))
    return tuple(out)


def commutator(x, y):
    """``[x, y] = x y x^-1 y^-1`` for words (or single letters) ``x``, ``y``."""
    x = (x,) if _is_letter(x) else tuple(x)
    y = (y,) if _is_letter(y) else tuple(y)
    return x + y + inverse(x) + inverse(y)


def conjugate_word(z, w):
    """``z w z^-1``."""
    return tuple(z) + tuple(w) + inverse(z)


def substitute(word, mapping):
    """Replace generators by words; ``mapping`` sends a generator to its word."""
    out = []
    for g, s in word:
        if g in mapping:
            out.extend(mapping[g] if s > 0 else inverse(mapping[g]))
        else:
            out.append((g, s))
    return tuple(out)


def generators_of(word):
    seen = {}
    for g, _ in word:
        seen.setdefault(g, None)
    return list(seen)


def _is_letter(x):
    return isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], int)
