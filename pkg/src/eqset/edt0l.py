"""Rational sets of endomorphisms and the EDT0L languages they define.

An :class:`EndoAutomaton` is an NFA whose arcs are labelled by
endomorphisms of the free monoid over a finite alphabet.  Together with a
seed word it defines the language ``{h(seed) : h accepted}``; a path
``g1, g2, ..., gm`` denotes ``gm o ... o g1`` (first arc innermost).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .core import Alphabet, Word

ADMISSIBLE_IMAGE_LENGTH = 2


class SchemaError(ValueError):
    """Malformed EDT0L system description; ``path`` locates the offending item."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class Endomorphism:
    """Letter-to-word map over a fixed alphabet, extended homomorphically."""

    __slots__ = ("symbols", "_image", "_table")

    def __init__(self, symbols: Iterable[str], image: Mapping[str, Word] = None):
        symbols = tuple(dict.fromkeys(symbols))
        image = dict(image or {})
        for s, w in image.items():
            if s not in symbols:
                raise ValueError(f"image given for unknown symbol {s!r}")
            for t in w:
                if t not in symbols:
                    raise ValueError(f"image of {s!r} uses unknown symbol {t!r}")
        # unspecified letters are fixed
        full = tuple(image.get(s, s) for s in symbols)
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_image", full)
        object.__setattr__(self, "_table", str.maketrans(dict(zip(symbols, full))))

    def __setattr__(self, name, value):
        raise AttributeError("Endomorphism is immutable")

    @classmethod
    def identity(cls, symbols: Iterable[str]) -> "Endomorphism":
        return cls(symbols)

    def image(self, symbol: str) -> Word:
        return self._image[self.symbols.index(symbol)]

    def items(self):
        return zip(self.symbols, self._image)

    def as_dict(self) -> dict:
        return dict(self.items())

    def nontrivial(self) -> dict:
        """Only the letters that are not fixed."""
        return {s: w for s, w in self.items() if w != s}

    @property
    def is_admissible(self) -> bool:
        return all(len(w) <= ADMISSIBLE_IMAGE_LENGTH for w in self._image)

    @property
    def is_erasing(self) -> bool:
        return any(w == "" for w in self._image)

    def __call__(self, word: Word) -> Word:
        return apply(self, word)

    def __eq__(self, other):
        return (
            isinstance(other, Endomorphism)
            and self.symbols == other.symbols
            and self._image == other._image
        )

    def __hash__(self):
        return hash((self.symbols, self._image))

    def __lt__(self, other):
        return (self.symbols, self._image) < (other.symbols, other._image)

    def __repr__(self):
        inner = ", ".join(f"{s}->{w or 'ε'}" for s, w in self.nontrivial().items())
        return f"Endomorphism({inner or 'id'})"


def apply(h: Endomorphism, w: Word) -> Word:
    known = set(h.symbols)
    for s in w:
        if s not in known:
            raise ValueError(f"symbol {s!r} is not in the alphabet of {h!r}")
    return w.translate(h._table)


def compose(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """``f o g``: apply ``g`` first, then ``f``."""
    if f.symbols != g.symbols:
        raise ValueError("cannot compose endomorphisms over different alphabets")
    return Endomorphism(f.symbols, {s: apply(f, w) for s, w in g.items()})


@dataclass(frozen=True)
class EndoAutomaton:
    alphabet: Alphabet
    states: tuple
    arcs: tuple  # (source, Endomorphism, target)
    initial: str
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(sorted(set(self.states))))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(
            self, "arcs", tuple(sorted(self.arcs, key=lambda a: (a[0], a[2], a[1])))
        )
        known = set(self.states)
        if self.initial not in known:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        if not self.finals <= known:
            raise ValueError(f"final states {sorted(self.finals - known)} are not states")
        symbols = self.alphabet.symbols
        for p, h, q in self.arcs:
            if p not in known or q not in known:
                raise ValueError(f"arc {p!r} -> {q!r} uses an unknown state")
            if h.symbols != symbols:
                raise ValueError(f"arc {p!r} -> {q!r} is labelled over a different alphabet")
            if not h.is_admissible:
                raise ValueError(
                    f"arc {p!r} -> {q!r} has an image longer than {ADMISSIBLE_IMAGE_LENGTH}"
                )

    def successors(self) -> dict:
        out = {s: [] for s in self.states}
        for p, h, q in self.arcs:
            out[p].append((h, q))
        return out

    def reachable(self) -> set:
        succ = self.successors()
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            p = queue.popleft()
            for _, q in succ[p]:
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def coreachable(self) -> set:
        pred = {s: [] for s in self.states}
        for p, _, q in self.arcs:
            pred[q].append(p)
        seen = set(self.finals)
        queue = deque(sorted(self.finals))
        while queue:
            q = queue.popleft()
            for p in pred[q]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return seen

    @property
    def is_trim(self) -> bool:
        return set(self.states) == self.reachable() & self.coreachable()

    def trim(self) -> "EndoAutomaton":
        """Drop every state on no initial-to-final path.

        If nothing is accepted, only the (non-final) initial state is kept.
        """
        live = self.reachable() & self.coreachable()
        if self.initial not in live:
            return EndoAutomaton(self.alphabet, (self.initial,), (), self.initial, ())
        return EndoAutomaton(
            self.alphabet,
            tuple(live),
            tuple(a for a in self.arcs if a[0] in live and a[2] in live),
            self.initial,
            self.finals & live,
        )


@dataclass(frozen=True)
class EDT0LSystem:
    automaton: EndoAutomaton
    seed: Optional[Word] = None
    tuple_arity: Optional[int] = None

    def __post_init__(self):
        if self.seed is None:
            if self.automaton.alphabet.marker is None:
                raise ValueError("no seed given and the alphabet has no marker")
            object.__setattr__(self, "seed", self.automaton.alphabet.marker)
        self.automaton.alphabet.check(self.seed)
        if self.tuple_arity is not None:
            if self.tuple_arity < 1:
                raise ValueError("tuple_arity must be positive")
            if self.automaton.alphabet.marker is None:
                raise ValueError("tuple_arity needs a marker symbol")

    @property
    def marker(self) -> Optional[str]:
        return self.automaton.alphabet.marker


@dataclass(frozen=True)
class Enumeration:
    words: tuple  # shortlex order
    truncated: bool = False

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


def _shortlex(w):
    return (len(w), w)


def mortal_symbols(aut: EndoAutomaton) -> frozenset:
    """Symbols some sequence of labels can erase completely.

    Least fixpoint: a symbol is mortal when a label maps it to a word made
    of mortal symbols only (the empty word included).  Every label keeps at
    least one immortal symbol in the image of an immortal one, so the count
    of immortal symbols never drops along a path.
    """
    labels = {h for _, h, _ in aut.arcs}
    mortal = set()
    changed = True
    while changed:
        changed = False
        for h in labels:
            for s, w in h.items():
                if s not in mortal and all(t in mortal for t in w):
                    mortal.add(s)
                    changed = True
    return frozenset(mortal)


def edt0l_enumerate(sys: EDT0LSystem, length_cap: int, depth_cap: int = 32) -> Enumeration:
    """Words ``h(seed)`` of length at most ``length_cap`` over accepted ``h``.

    Without erasing labels a word never shrinks along a path, so anything
    longer than the cap is pruned and the search is exhaustive.  With an
    erasing label only the immortal symbols are counted against the cap, and
    the search is also cut at ``depth_cap`` arcs; ``truncated`` reports
    whether that cut discarded anything.
    """
    if length_cap < 0 or depth_cap < 0:
        raise ValueError("caps must be nonnegative")
    aut = sys.automaton.trim()
    if aut.initial not in aut.finals and not aut.arcs:
        return Enumeration(())
    succ = aut.successors()
    erasing = any(h.is_erasing for _, h, _ in aut.arcs)
    mortal = mortal_symbols(aut) if erasing else frozenset()

    def weight(w):
        return len(w) - sum(w.count(m) for m in mortal) if mortal else len(w)

    start = (aut.initial, sys.seed)
    seen = {start}
    frontier = [start]
    found = set()
    truncated = False
    depth = 0
    while frontier:
        nxt = []
        for state, w in frontier:
            if state in aut.finals and len(w) <= length_cap:
                found.add(w)
            for h, q in succ[state]:
                v = h(w)
                if weight(v) > length_cap:
                    continue
                pair = (q, v)
                if pair in seen:
                    continue
                if erasing and depth == depth_cap:
                    truncated = True
                    continue
                seen.add(pair)
                nxt.append(pair)
        frontier = nxt
        depth += 1

    words = tuple(sorted(found, key=_shortlex))
    if sys.tuple_arity is not None:
        for w in words:
            if w.count(sys.marker) != sys.tuple_arity - 1:
                raise ValueError(
                    f"word {w!r} does not have {sys.tuple_arity - 1} marker(s)"
                )
    return Enumeration(words, truncated)


def edt0l_is_empty(sys: EDT0LSystem) -> bool:
    aut = sys.automaton
    return not (aut.reachable() & aut.finals)


def edt0l_is_language_infinite(sys: EDT0LSystem) -> bool:
    """Whether the trimmed automaton has a cycle, i.e. accepts infinitely many paths.

    This is about the set of accepted compositions; distinct compositions
    may still send the seed to the same word.
    """
    aut = sys.automaton.trim()
    succ = aut.successors()
    # iterative three-colour DFS
    colour = dict.fromkeys(aut.states, 0)
    for root in aut.states:
        if colour[root]:
            continue
        colour[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            node, it = stack[-1]
            for _, q in it:
                if colour[q] == 1:
                    return True
                if colour[q] == 0:
                    colour[q] = 1
                    stack.append((q, iter(succ[q])))
                    break
            else:
                colour[node] = 2
                stack.pop()
    return False


def split_tuple(w: Word, marker: str) -> tuple:
    return tuple(w.split(marker))


def system_from_dict(data) -> EDT0LSystem:
    """Build a system from its JSON form.

    ``{"alphabet": [...], "marker": "#", "states": [...], "initial": id,
    "finals": [...], "arcs": [{"from", "to", "map": {symbol: image}}],
    "seed": "#", "tuple_arity": k}``; ``seed`` and ``tuple_arity`` are
    optional and letters missing from a ``map`` are fixed.
    """
    if not isinstance(data, dict):
        raise SchemaError("$", "expected an object")

    def need(key, kind):
        if key not in data:
            raise SchemaError(f"$.{key}", "missing")
        if not isinstance(data[key], kind):
            raise SchemaError(f"$.{key}", f"expected {kind.__name__}")
        return data[key]

    symbols = need("alphabet", list)
    for i, s in enumerate(symbols):
        if not isinstance(s, str) or len(s) != 1:
            raise SchemaError(f"$.alphabet[{i}]", "symbols must be single characters")
    marker = data.get("marker")
    if marker is not None and (not isinstance(marker, str) or len(marker) != 1):
        raise SchemaError("$.marker", "must be a single character")
    try:
        alphabet = Alphabet(tuple(s for s in symbols if s != marker), (), marker)
    except ValueError as exc:
        raise SchemaError("$.alphabet", str(exc)) from None
    universe = alphabet.symbols

    states = need("states", list)
    for i, s in enumerate(states):
        if not isinstance(s, str):
            raise SchemaError(f"$.states[{i}]", "state ids must be strings")
    if len(set(states)) != len(states):
        raise SchemaError("$.states", "duplicate state id")
    initial = need("initial", str)
    if initial not in states:
        raise SchemaError("$.initial", f"unknown state {initial!r}")
    finals = need("finals", list)
    for i, s in enumerate(finals):
        if s not in states:
            raise SchemaError(f"$.finals[{i}]", f"unknown state {s!r}")

    arcs = []
    for i, arc in enumerate(need("arcs", list)):
        where = f"$.arcs[{i}]"
        if not isinstance(arc, dict):
            raise SchemaError(where, "expected an object")
        for key in ("from", "to"):
            if arc.get(key) not in states:
                raise SchemaError(f"{where}.{key}", f"unknown state {arc.get(key)!r}")
        mapping = arc.get("map", {})
        if not isinstance(mapping, dict):
            raise SchemaError(f"{where}.map", "expected an object")
        for s, w in mapping.items():
            if s not in universe:
                raise SchemaError(f"{where}.map", f"unknown symbol {s!r}")
            if not isinstance(w, str) or any(t not in universe for t in w):
                raise SchemaError(f"{where}.map.{s}", f"bad image {w!r}")
            if len(w) > ADMISSIBLE_IMAGE_LENGTH:
                raise SchemaError(
                    f"{where}.map.{s}", f"image longer than {ADMISSIBLE_IMAGE_LENGTH}"
                )
        arcs.append((arc["from"], Endomorphism(universe, mapping), arc["to"]))

    seed = data.get("seed")
    if seed is not None:
        if not isinstance(seed, str) or any(t not in universe for t in seed):
            raise SchemaError("$.seed", f"bad seed {seed!r}")
    elif marker is None:
        raise SchemaError("$.seed", "required when there is no marker")
    arity = data.get("tuple_arity")
    if arity is not None and (not isinstance(arity, int) or arity < 1 or marker is None):
        raise SchemaError("$.tuple_arity", "must be a positive integer and needs a marker")

    aut = EndoAutomaton(alphabet, tuple(states), tuple(arcs), initial, frozenset(finals))
    return EDT0LSystem(aut, seed, arity)


def system_to_dict(sys: EDT0LSystem) -> dict:
    aut = sys.automaton
    out = {
        "alphabet": list(aut.alphabet.constants),
        "marker": aut.alphabet.marker,
        "states": list(aut.states),
        "initial": aut.initial,
        "finals": sorted(aut.finals),
        "arcs": [{"from": p, "to": q, "map": h.nontrivial()} for p, h, q in aut.arcs],
        "seed": sys.seed,
    }
    if sys.tuple_arity is not None:
        out["tuple_arity"] = sys.tuple_arity
    return out


def from_affine_automaton(aut, letter: str = "a", marker: str = "#") -> EDT0LSystem:
    """Encode an affine solution automaton as an EDT0L system.

    A vector ``x`` becomes ``a^x1 # a^x2 # ... # a^xn``.  Each coordinate
    keeps a private end letter while the path runs: ``x -> 2x`` doubles
    ``a`` and ``x -> x + 1_I`` rewrites the end letter of every ``i`` in
    ``I`` to ``a`` followed by itself.  One last erasing arc into a fresh
    final state deletes the end letters.
    """
    n = aut.dim
    ends = [chr(0x2460 + i) for i in range(n)]  # circled digits, never user letters
    if letter in ends or marker in ends or letter == marker:
        raise ValueError("letter and marker must be distinct ordinary symbols")
    alphabet = Alphabet((letter,) + tuple(ends), (), marker)
    universe = alphabet.symbols

    def name(v):
        return "(" + ",".join(map(str, v)) + ")"

    arcs = []
    for p, h, q in aut.arcs:
        if h.is_double:
            image = {letter: letter * 2}
        else:
            image = {ends[i]: letter + ends[i] for i in h.add_set}
        arcs.append((name(p), Endomorphism(universe, image), name(q)))
    states = [name(s) for s in aut.states]
    accept = "accept"
    while accept in states:
        accept += "'"
    if aut.states:
        arcs.append((name(aut.final), Endomorphism(universe, {e: "" for e in ends}), accept))
    states.append(accept)
    initial = name(aut.initial)
    if initial not in states:
        states.append(initial)
    endo = EndoAutomaton(alphabet, tuple(states), tuple(arcs), initial, frozenset([accept]))
    seed = marker.join(ends)
    return EDT0LSystem(endo, seed, n)
