"""Free Lie rings over the integers in the Lyndon basis.

Basis elements are Lyndon words, stored as tuples of letters. Letters can be
any totally ordered hashable values (ints for abstract alphabets, ``(i, j)``
pairs for the braid generators). A Lyndon word ``w`` stands for its standard
bracketing ``P_w = [P_u, P_v]`` where ``v`` is the longest proper Lyndon
suffix of ``w``.

Elements are plain ``dict[word, int]`` maps with nonzero coefficients; the
:class:`LieElement` wrapper adds arithmetic and a canonical text form.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

Word = tuple
Vec = dict  # Word -> int

CONVENTIONS = ("classical", "graded-symmetric")

# Jacobi rewriting depth guard; a sound convention never comes close.
DEFAULT_FUEL = 400


class UnknownGeneratorError(ValueError):
    pass


class RewritingFuelExhausted(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Lyndon words


def is_lyndon(word: Sequence) -> bool:
    n = len(word)
    if n == 0:
        return False
    w = tuple(word)
    return all(w < w[i:] for i in range(1, n))


def lyndon_words(alphabet: Sequence, length: int) -> list[Word]:
    """All Lyndon words of exactly ``length`` over ``alphabet`` in lex order (Duval)."""
    letters = sorted(alphabet)
    q = len(letters)
    if length < 1 or q == 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == length:
            out.append(tuple(letters[k] for k in w))
        while len(w) < length:
            w.append(w[-m])
        while w and w[-1] == q - 1:
            w.pop()
    return out


@lru_cache(maxsize=None)
def standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as ``(u, v)``, ``v`` its longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word!r} has no standard factorization")


def is_square(word: Word) -> bool:
    """True for ``w + w`` with ``w`` an odd-length Lyndon word (graded basis square)."""
    n = len(word)
    if n % 4 != 2:
        return False
    h = n // 2
    return word[:h] == word[h:] and is_lyndon(word[:h])


def split(word: Word) -> tuple[Word, Word]:
    """The two bracket factors of a basis word (Lyndon or square)."""
    if is_square(word):
        h = len(word) // 2
        return word[:h], word[h:]
    return standard_factorization(word)


def bracket_tree(word: Word) -> Any:
    """Nested-pair bracketing of a Lyndon word; leaves are letters."""
    if len(word) == 1:
        return word[0]
    u, v = split(word)
    return (bracket_tree(u), bracket_tree(v))


def _letter_text(letter) -> str:
    if isinstance(letter, tuple):
        return "b" + "".join(str(a) for a in letter)
    return str(letter)


def word_text(word: Word) -> str:
    """Canonical text of a basis word, e.g. ``"[[1,2],3]"``."""
    if len(word) == 1:
        return _letter_text(word[0])
    u, v = split(word)
    return f"[{word_text(u)},{word_text(v)}]"


# ---------------------------------------------------------------------------
# bracket normalization


def add_into(target: Vec, source: Vec, scale: int = 1) -> Vec:
    for w, c in source.items():
        v = target.get(w, 0) + scale * c
        if v:
            target[w] = v
        else:
            target.pop(w, None)
    return target


class LyndonRing:
    """Bracket arithmetic in the Lyndon basis of the free Lie ring.

    ``convention="classical"`` is the ordinary antisymmetric Lie ring.
    ``"graded-symmetric"`` makes every word of length ``k`` homogeneous of
    degree ``k`` with generators odd (the sign rule of Samelson products of
    2-spheres): ``[x, y] = -(-1)^{|x||y|} [y, x]``, and the basis grows by the
    squares ``[w, w]`` of odd Lyndon words, stored as the tuple ``w + w``.
    """

    def __init__(self, convention: str = "classical", fuel: int = DEFAULT_FUEL):
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}")
        self.convention = convention
        self.fuel = fuel
        self._cache: dict[tuple[Word, Word], Vec] = {}
        self._depth = 0

    def _swap_sign(self, u: Word, v: Word) -> int:
        if self.convention == "classical":
            return -1
        # [x, y] = -(-1)^{|x||y|} [y, x] with |x| = word length
        return -1 if (len(u) * len(v)) % 2 == 0 else 1

    def bracket_words(self, u: Word, v: Word) -> Vec:
        """``[P_u, P_v]`` expanded in the Lyndon basis (memoized)."""
        key = (u, v)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self._depth >= self.fuel:
            raise RewritingFuelExhausted(
                f"bracket rewriting nested deeper than {self.fuel} at [{word_text(u)}, {word_text(v)}]"
            )
        self._depth += 1
        try:
            res = self._bracket_words(u, v)
        finally:
            self._depth -= 1
        self._cache[key] = res
        return res

    def _bracket_words(self, u: Word, v: Word) -> Vec:
        graded = self.convention == "graded-symmetric"
        if graded:
            if is_square(u):
                w = u[: len(u) // 2]
                if v == w:
                    return {}  # [w,[w,w]] = 0
                # [[w,w],v] = 2[w,[w,v]] for odd w
                res: Vec = {}
                for x, c in self.bracket_words(w, v).items():
                    add_into(res, self.bracket_words(w, x), 2 * c)
                return res
            if is_square(v):
                return {x: -c for x, c in self.bracket_words(v, u).items()}
        if u == v:
            if graded and len(u) % 2 == 1:
                return {u + u: 1}
            return {}
        if u > v:
            return {w: self._swap_sign(u, v) * c for w, c in self.bracket_words(v, u).items()}
        if len(u) == 1:
            return {u + v: 1}
        u1, u2 = standard_factorization(u)
        if u2 >= v:
            return {u + v: 1}
        # [[u1,u2],v] = [u1,[u2,v]] - (-1)^{|u1||u2|} [u2,[u1,v]]
        res = {}
        sgn = -1 if graded and len(u1) * len(u2) % 2 else 1
        for w, c in self.bracket_words(u2, v).items():
            add_into(res, self.bracket_words(u1, w), c)
        for w, c in self.bracket_words(u1, v).items():
            add_into(res, self.bracket_words(u2, w), -c * sgn)
        return res

    def bracket(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for u, cu in a.items():
            for v, cv in b.items():
                add_into(out, self.bracket_words(u, v), cu * cv)
        return out


_RINGS: dict[str, LyndonRing] = {}


def ring(convention: str = "classical") -> LyndonRing:
    """Shared memoizing ring per convention."""
    r = _RINGS.get(convention)
    if r is None:
        r = _RINGS[convention] = LyndonRing(convention)
    return r


# ---------------------------------------------------------------------------
# public element type


@dataclass(frozen=True)
class LieElement:
    terms: tuple  # sorted ((word, coeff), ...)
    convention: str = field(default="classical", compare=False)

    @classmethod
    def from_vec(cls, vec: Vec, convention: str = "classical") -> "LieElement":
        return cls(tuple(sorted((w, c) for w, c in vec.items() if c)), convention)

    @property
    def vec(self) -> Vec:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement.from_vec(add_into(self.vec, other.vec), self.convention)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return LieElement.from_vec(add_into(self.vec, other.vec, -1), self.convention)

    def __neg__(self) -> "LieElement":
        return LieElement.from_vec({w: -c for w, c in self.terms}, self.convention)

    def __rmul__(self, k: int) -> "LieElement":
        return LieElement.from_vec({w: k * c for w, c in self.terms}, self.convention)

    def bracket(self, other: "LieElement") -> "LieElement":
        return LieElement.from_vec(ring(self.convention).bracket(self.vec, other.vec), self.convention)

    def multidegree(self) -> Counter | None:
        """Common leaf multiset, or None when the element is inhomogeneous or zero."""
        degs = {tuple(sorted(Counter(w).items())) for w, _ in self.terms}
        if len(degs) != 1:
            return None
        return Counter(dict(degs.pop()))

    @property
    def is_homogeneous(self) -> bool:
        return self.multidegree() is not None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms:
            t = word_text(w)
            if c == 1:
                parts.append(f"+{t}")
            elif c == -1:
                parts.append(f"-{t}")
            else:
                parts.append(f"{c:+d}*{t}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# public operations


def hall_words(alphabet: Sequence, length: int, convention: str = "classical") -> list[Word]:
    """The Lyndon (Hall) basis of the free Lie ring in the given length.

    Under the graded convention the odd squares ``[w, w]`` are appended.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    words = lyndon_words(alphabet, length)
    if convention == "graded-symmetric" and length % 4 == 2:
        words = sorted(words + [w + w for w in lyndon_words(alphabet, length // 2)])
    return words


_TOKEN = re.compile(r"\s*(\[|\]|,|-?\d+)")


def parse_expression(text: str):
    """Parse ``"[[1,2],3]"`` into nested pairs of ints."""
    tokens = [t for t in _TOKEN.findall(text)]
    if "".join(tokens) != re.sub(r"\s", "", text):
        raise ValueError(f"malformed bracket expression {text!r}")
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        if tok == "[":
            pos += 1
            left = parse()
            if tokens[pos] != ",":
                raise ValueError(f"expected ',' in {text!r}")
            pos += 1
            right = parse()
            if tokens[pos] != "]":
                raise ValueError(f"expected ']' in {text!r}")
            pos += 1
            return (left, right)
        pos += 1
        return int(tok)

    try:
        tree = parse()
    except IndexError:
        raise ValueError(f"truncated bracket expression {text!r}") from None
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return tree


def normalize(expr, alphabet: Sequence | None = None, convention: str = "classical") -> LieElement:
    """Rewrite a bracket expression (text, nested pairs, or LieElement) in the Lyndon basis.

    With ``alphabet`` given, leaves are checked against it and ``UnknownGeneratorError``
    is raised for strays. Leaves must be ints when no alphabet is given.
    """
    if isinstance(expr, LieElement):
        return expr
    if isinstance(expr, str):
        expr = parse_expression(expr)
    r = ring(convention)
    if alphabet is None:
        return LieElement.from_vec(_tree_to_vec(r, expr, None), convention)
    return LieElement.from_vec(_tree_to_vec(r, expr, set(alphabet)), convention)


def _tree_to_vec(r: LyndonRing, tree, allowed) -> Vec:
    if isinstance(tree, list):
        tree = tuple(tree)
    if allowed is not None and not isinstance(tree, tuple) and tree not in allowed:
        raise UnknownGeneratorError(f"generator {tree!r} not in alphabet")
    if allowed is not None and tree in allowed:
        return {(tree,): 1}
    if isinstance(tree, tuple):
        if len(tree) != 2:
            raise ValueError(f"bracket node must have two children: {tree!r}")
        return r.bracket(_tree_to_vec(r, tree[0], allowed), _tree_to_vec(r, tree[1], allowed))
    return {(tree,): 1}


def multidegree_basis(alphabet: Sequence, multidegree, convention: str = "classical") -> list[Word]:
    """Basis words whose leaf multiset is exactly ``multidegree``.

    Enumerates Lyndon arrangements of the multiset directly instead of
    filtering all words of that length.
    """
    counts = Counter(multidegree)
    letters = set(alphabet)
    if any(a not in letters for a in counts):
        raise UnknownGeneratorError(f"multidegree uses letters outside the alphabet: {dict(counts)}")
    return basis_words_of_content(counts, convention)


def basis_words_of_content(counts: Counter, convention: str = "classical") -> list[Word]:
    """Lyndon words of the content, plus odd squares under the graded convention."""
    words = lyndon_words_of_content(counts)
    if convention == "graded-symmetric" and counts and all(k % 2 == 0 for k in counts.values()):
        half = Counter({a: k // 2 for a, k in counts.items() if k})
        if sum(half.values()) % 2 == 1:
            words = sorted(words + [w + w for w in lyndon_words_of_content(half)])
    return words


def lyndon_words_of_content(counts: Counter) -> list[Word]:
    """Lyndon words with prescribed letter multiplicities, lex order."""
    letters = sorted(a for a, k in counts.items() if k > 0)
    total = sum(counts[a] for a in letters)
    if total == 0:
        return []
    first = letters[0]
    remaining = Counter({a: counts[a] for a in letters})
    out: list[Word] = []
    prefix: list = [first]
    remaining[first] -= 1

    def extend():
        if len(prefix) == total:
            w = tuple(prefix)
            if is_lyndon(w):
                out.append(w)
            return
        for a in letters:
            if remaining[a]:
                prefix.append(a)
                # every proper suffix starting here must stay > the word; prune on prefix comparisons
                if _prefix_viable(prefix):
                    remaining[a] -= 1
                    extend()
                    remaining[a] += 1
                prefix.pop()

    extend()
    return out


def _prefix_viable(prefix: list) -> bool:
    # a Lyndon word's prefixes are pre-Lyndon: each suffix is >= the same-length prefix
    n = len(prefix)
    for i in range(1, n):
        for k in range(n - i):
            a, b = prefix[i + k], prefix[k]
            if a != b:
                if a < b:
                    return False
                break
    return True


def multilinear_rank(k: int) -> int:
    """Rank of Lie(k): Lyndon words using each of ``1..k`` exactly once."""
    if k < 1:
        raise ValueError("k must be >= 1")
    # every multilinear Lyndon word starts with the least letter; the rest is any permutation
    return len(lyndon_words_of_content(Counter(range(1, k + 1))))


def necklace_count(q: int, length: int) -> int:
    """Witt's formula (1/l) sum_{d|l} mu(d) q^{l/d}."""
    total = 0
    for d in range(1, length + 1):
        if length % d == 0:
            total += _mobius(d) * q ** (length // d)
    return total // length


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def factorial(k: int) -> int:
    return math.factorial(k)
