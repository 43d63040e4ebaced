"""Utility classes and functions used throughout pynct."""
import json
import os
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence

from scipy.special import comb

from pynct.validation import UsageError


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k)."""
    return int(comb(n, k, exact=True))


def lcm(a: int, b: int) -> int:
    """Least common multiple of two nonnegative integers."""
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def lcm_all(values: Iterable[int]) -> int:
    """Least common multiple of a collection of positive integers. Returns 1 for an empty collection."""
    return reduce(lcm, values, 1)


def content(vector: Sequence[int]) -> int:
    """Gcd of the coordinates of an integer vector. Returns 0 for the zero vector."""
    return reduce(gcd, (abs(v) for v in vector), 0)


def primitive(vector: Sequence[int]) -> List[int]:
    """Divide an integer vector by its content and make its first nonzero coordinate positive."""
    c = content(vector)
    if c == 0:
        return list(vector)
    out = [v // c for v in vector]
    for v in out:
        if v != 0:
            if v < 0:
                out = [-w for w in out]
            break
    return out


def sup_norm(vector: Sequence[int]) -> int:
    """Largest absolute coordinate of a vector."""
    return max((abs(v) for v in vector), default=0)


def fraction_to_str(q) -> str:
    """Render a rational as ``"num/den"``, or ``"num"`` when integral."""
    return str(Fraction(q))


def fraction_from_json(s) -> Fraction:
    """Parse a rational written by ``fraction_to_str``. Plain integers are accepted too."""
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise UsageError.bad_format("rational", "expected a string or an integer, got {v!r}".format(v=s))
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError.bad_format("rational", str(e))


def dumps_stable(obj, indent: int = None) -> str:
    """Serialize to JSON with insertion-ordered keys and fixed separators."""
    if indent is None:
        return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(obj, indent=indent, ensure_ascii=False)


class JsonSaveable:
    """Allows a class with ``to_json`` and ``from_json`` to be written and loaded from a JSON file."""

    def save(self, path: str):
        """Save the object to a JSON file."""
        loc, filename = os.path.split(path)
        if loc != "":
            os.makedirs(loc, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps_stable(self.to_json(), indent=2))
            f.write("\n")

    @classmethod
    def load(cls, path: str):
        """Load an object from a JSON file."""
        with open(path, "r", encoding="utf-8") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise UsageError.bad_format(path, str(e))
        return cls.from_json(data)
