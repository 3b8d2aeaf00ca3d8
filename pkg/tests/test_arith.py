import random

import pytest
import sympy

from wittknot.arith import factorize, is_prime, is_square_mod, squarefree_part


def test_factorize_matches_sympy():
    rng = random.Random(7)
    samples = [1, 2, 3, 41, 105, 123, 2 * 3 * 5 * 7 * 11 * 13, 2**61 - 1, 10**12 + 39]
    samples += [rng.randrange(2, 10**9) for _ in range(300)]
    # semiprimes with both factors beyond the trial-division limit
    samples += [1000003 * 1000033, 999983 * 1000037]
    for n in samples:
        assert factorize(n).factors == sympy.factorint(n), n
        assert factorize(-n).sign == -1
        assert factorize(-n).value() == -n


def test_factorize_zero_raises():
    with pytest.raises(ValueError):
        factorize(0)


def test_is_prime_matches_sympy():
    for n in list(range(-5, 3000)) + [2**61 - 1, 2**64 + 13, 1000003 * 1000033]:
        assert is_prime(n) == sympy.isprime(n), n


@pytest.mark.parametrize("p", list(sympy.primerange(2, 200)))
def test_is_square_mod_brute_force(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(1, 3 * p):
        if a % p == 0:
            continue
        assert is_square_mod(a, p) == (a % p in squares)
        assert is_square_mod(-a, p) == ((-a) % p in squares)


def test_is_square_mod_rejects_bad_input():
    with pytest.raises(ValueError):
        is_square_mod(3, 9)
    with pytest.raises(ValueError):
        is_square_mod(10, 5)


def test_squarefree_part():
    assert squarefree_part(12) == 3
    assert squarefree_part(-50) == -2
    assert squarefree_part(1) == 1
    assert squarefree_part(41 * 41 * 6) == 6
