import random

import pytest

from qcov.nfalgebra import Element, Word
from qcov.scalars import Scalar


def random_word(rng: random.Random, bound: int = 3) -> Word:
    return Word(rng.randint(-bound, bound), rng.randint(0, bound), rng.randint(0, bound))


def random_short_word(rng: random.Random, max_length: int = 3) -> Word:
    total = rng.randint(0, max_length)
    a = rng.randint(-total, total)
    g = rng.randint(0, total - abs(a))
    gs = total - abs(a) - g
    return Word(a, g, gs)


def random_scalar(rng: random.Random, order: int, with_zeta: bool = True) -> Scalar:
    c = Scalar.rational(order, rng.choice([1, -1, 2, -2, 3]))
    c = c * Scalar.t(order, rng.randint(-2, 2))
    if with_zeta and order > 1 and rng.random() < 0.5:
        c = c * Scalar.zeta(order, rng.randrange(order))
    if rng.random() < 0.3:
        c = c + Scalar.t(order, rng.randint(-1, 1))
    return c


def random_element(rng: random.Random, n: int, nwords: int = 2, bound: int = 2,
                   order: int | None = None, short: bool = False) -> Element:
    order = order or n
    terms = {}
    for _ in range(rng.randint(1, nwords)):
        w = random_short_word(rng, bound) if short else random_word(rng, bound)
        c = random_scalar(rng, order)
        terms[w] = terms.get(w, Scalar.zero(order)) + c
    return Element(n, terms, order)


def random_base_element(rng: random.Random, order: int = 1, nwords: int = 2,
                        max_length: int = 3) -> Element:
    terms = {}
    for _ in range(rng.randint(1, nwords)):
        w = random_short_word(rng, max_length)
        c = random_scalar(rng, order, with_zeta=False)
        terms[w] = terms.get(w, Scalar.zero(order)) + c
    return Element(1, terms, order)


@pytest.fixture
def rng():
    return random.Random(20260809)
