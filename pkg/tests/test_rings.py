import itertools
import random

import pytest

from chainring.errors import (
    BadGenerator,
    ComponentMismatch,
    NotAUnit,
    ZeroElement,
)
from chainring.rings import (
    Zpk,
    crt_join,
    crt_split,
    galois_ring,
    integer_ring,
    ring_from_json,
)


def test_valuation_examples(z8):
    assert z8.valuation(z8.element(6)) == 1
    assert z8.valuation(z8.one) == 0
    assert z8.valuation(z8.zero) == 3


def test_unit_part_examples(z8):
    assert z8.unit_part(z8.element(6)).data == 3
    assert z8.unit_part(z8.element(5)).data == 5
    # 4 = 2^2 * 1 and pi^l * u reconstructs 4
    u = z8.unit_part(z8.element(4))
    assert u.data == 1
    assert z8.mul(z8.pow(z8.pi_element, 2), u) == z8.element(4)


def test_unit_part_of_zero_raises(z8):
    with pytest.raises(ZeroElement):
        z8.unit_part(z8.zero)


def test_invert_unit_examples(z8, z25):
    assert z8.invert(z8.element(3)).data == 3
    inv5 = z25.invert(z25.element(5 + 2))  # any unit; direct product check below
    assert z25.mul(inv5, z25.element(7)) == z25.one
    # exhaustive cross-check over Z25 units
    for x in z25.elements():
        if z25.is_unit(x):
            assert z25.mul(x, z25.invert(x)) == z25.one


def test_invert_unit_galois(ext83):
    alpha = ext83.alpha
    beta = ext83.invert(alpha)
    assert ext83.mul(alpha, beta) == ext83.one


def test_invert_non_unit_raises(z8):
    with pytest.raises(NotAUnit):
        z8.invert(z8.element(2))


def test_teichmuller_sets(z8, z9, gr42):
    assert [g.data for g in z8.teichmuller_set()] == [0, 1]
    # field case: the whole ring
    f3 = Zpk(3, 1)
    assert [g.data for g in f3.teichmuller_set()] == [0, 1, 2]
    assert [g.data for g in z9.teichmuller_set()] == [0, 1, 8]
    gamma = gr42.teichmuller_set()
    assert len(gamma) == 4
    for a in gamma:
        assert gr42.pow(a, 4) == a


def test_pi_adic_decomposition_examples(z8):
    six = z8.element(6)
    assert [d.data for d in z8.pi_adic_digits(six)] == [0, 1, 1]
    assert [d.data for d in z8.pi_adic_digits(six, six)] == [0, 1, 0]
    assert [d.data for d in z8.pi_adic_digits(z8.zero)] == [0, 0, 0]


def test_pi_adic_bad_generator(z8):
    with pytest.raises(BadGenerator):
        z8.pi_adic_digits(z8.element(3), z8.element(4))


def test_pi_adic_roundtrip_every_generator(z8):
    generators = [x for x in z8.elements() if z8.valuation(x) == 1]
    for pi in generators:
        for c in z8.elements():
            digits = z8.pi_adic_digits(c, pi)
            assert all(d in z8.teichmuller_set() for d in digits)
            assert z8.pi_adic_compose(digits, pi) == c


def test_valuation_product_rule(z8, z9):
    for ring in (z8, z9):
        for a in ring.elements():
            for b in ring.elements():
                va, vb = ring.valuation(a), ring.valuation(b)
                assert ring.valuation(ring.mul(a, b)) == min(va + vb, ring.nu)


def test_unit_reconstruction_everywhere(z8, gr42):
    for ring in (z8, gr42):
        for c in ring.elements():
            if c.is_zero():
                continue
            l = ring.valuation(c)
            assert ring.mul(ring.pow(ring.pi_element, l), ring.unit_part(c)) == c


def test_gamma_multiplicative_and_cyclic(z8, z9, gr42):
    for ring in (z8, z9, gr42):
        gamma = ring.teichmuller_set()
        for a in gamma:
            for b in gamma:
                assert ring.mul(a, b) in gamma
        nonzero = [a for a in gamma if not a.is_zero()]
        # some element generates the whole group
        orders = []
        for a in nonzero:
            power = a
            order = 1
            while power != ring.one:
                power = ring.mul(power, a)
                order += 1
            orders.append(order)
        assert max(orders) == ring.q - 1


def test_every_ideal_is_pi_power(z8, z9):
    # the ideal generated by c equals the one generated by pi^val(c)
    for ring in (z8, z9):
        for c in ring.elements():
            pival = ring.pow(ring.pi_element, ring.valuation(c))
            ideal_c = {ring.mul(c, x) for x in ring.elements()}
            ideal_p = {ring.mul(pival, x) for x in ring.elements()}
            assert ideal_c == ideal_p


def test_crt_split_join_roundtrip():
    z6 = integer_ring(6)
    assert len(z6.components) == 2
    x = z6.element([1, 2])
    parts = crt_split(x)
    assert [p.data for p in parts] == [1, 2]
    assert crt_join(parts, z6) == x
    random.seed(7)
    elems = list(z6.elements())
    for _ in range(100):
        a = random.choice(elems)
        assert crt_join(crt_split(a), z6) == a


def test_crt_split_respects_arithmetic():
    z30 = integer_ring(30)
    random.seed(3)
    elems = list(z30.elements())
    for _ in range(50):
        a, b = random.choice(elems), random.choice(elems)
        lhs = crt_split(z30.add(a, b))
        rhs = [x.ring.add(x, y) for x, y in zip(crt_split(a), crt_split(b))]
        assert lhs == rhs
        lhs = crt_split(z30.mul(a, b))
        rhs = [x.ring.mul(x, y) for x, y in zip(crt_split(a), crt_split(b))]
        assert lhs == rhs


def test_crt_join_mismatch():
    z6 = integer_ring(6)
    z10 = integer_ring(10)
    with pytest.raises(ComponentMismatch):
        crt_join(crt_split(z10.from_int(3)), z6)


def test_integer_encoding_roundtrip():
    z6 = integer_ring(6)
    for n in range(6):
        assert z6.to_integer(z6.from_int(n)) == n


def test_ring_json_roundtrip(z8, ext83, gr42):
    z6 = integer_ring(6)
    for ring in (z8, ext83, gr42, z6):
        clone = ring_from_json(ring.to_json())
        assert clone == ring
        for x in itertools.islice(ring.elements(), 10):
            assert clone.element_from_json(ring.element_to_json(x)) == x


def test_galois_modulus_reduction_irreducible():
    import pytest as _pytest
    from chainring.errors import DomainError

    base = Zpk(2, 3)
    # X^2 + 1 factors as (X+1)^2 mod 2
    with _pytest.raises(DomainError):
        galois_ring(2, 3, 2, [1, 0, 1])


def test_frobenius_lifting_path_matches_enumeration(z9):
    # force the large-ring branch and compare against the filter
    by_filter = z9.teichmuller_set()
    lifted = []
    for rep in z9.residue_lifts():
        a = rep
        for _ in range(z9.nu):
            a = z9.pow(a, z9.q)
        lifted.append(a)
    assert sorted(lifted, key=z9.sort_key) == list(by_filter)
