"""Decimal sequences: the repeating digits of ``1/q`` in radix ``r``.

Two independent generators are provided. ``generate`` jumps straight to any
digit with modular exponentiation: digit ``i`` is ``(r * (r**(i-1) mod q)) div q``,
which equals the familiar ``(r**i mod q) mod r`` whenever ``q = -1 (mod r)``
(always true in binary); ``register_generate`` emulates the carry
shift register that produces the same digits, in reverse, for primes of the
form ``q = t*r - 1``. ``long_division_digits`` is a schoolbook oracle used to
cross-check both.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import NotApplicableError, ParameterError
from .numtheory import check_modulus, is_prime, multiplicative_order


@dataclass(frozen=True)
class DSequence:
    q: int
    r: int
    digits: tuple[int, ...]
    period: int

    def __len__(self):
        return len(self.digits)


@dataclass(frozen=True)
class RegisterTrace:
    """Raw output of the carry shift register, in generation order.

    ``digit_row[j]`` and ``carry_row[j]`` are the lower and upper rows of the
    worked table; reading ``digit_row`` backwards gives the d-sequence.
    """

    t: int
    r: int
    digit_row: tuple[int, ...]
    carry_row: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.t * self.r - 1

    def reversed_digits(self) -> tuple[int, ...]:
        return self.digit_row[::-1]

    def recurrence_holds(self) -> bool:
        """Check ``r*u_i + a_i == u_{i+1} + t*a_{i+1}`` in sequence order.

        In generation order this reads ``t*a_j + u_j == r*u_{j+1} + a_{j+1}``;
        the last column wraps to the seed (digit 1, carry 0) so the check is
        exact only when the trace covers whole periods.
        """
        a, u, t, r = self.digit_row, self.carry_row, self.t, self.r
        n = len(a)
        for j in range(n):
            na, nu = (a[j + 1], u[j + 1]) if j + 1 < n else (1, 0)
            if t * a[j] + u[j] != r * nu + na:
                return False
        return True


def _check_index(name, value, minimum=1):
    if not isinstance(value, int) or value < minimum:
        raise ParameterError(f"{name} must be an integer >= {minimum}, got {value!r}")


def digit_at(i: int, q: int, r: int) -> int:
    """The ``i``-th fractional digit (1-based) of ``1/q`` in radix ``r``."""
    check_modulus(q, r)
    _check_index("i", i)
    return r * pow(r, i - 1, q) // q


def period(q: int, r: int) -> int:
    """Period of the d-sequence, i.e. the multiplicative order of ``r`` mod ``q``."""
    return multiplicative_order(r, q)


def generate(q: int, r: int, n: int) -> DSequence:
    check_modulus(q, r)
    _check_index("n", n)
    digits = kernels.dseq_digits(q, r, n)
    return DSequence(q=q, r=r, digits=tuple(digits.tolist()), period=period(q, r))


def register_generate(t: int, r: int, n: int) -> RegisterTrace:
    """Run the carry shift register for ``1/(t*r - 1)`` for ``n`` steps.

    The register starts at digit 1 with carry 0; each step forms
    ``v = t*digit + carry`` and keeps ``v mod r`` as the next digit and
    ``v div r`` as the next carry. The trace is returned unreversed.
    """
    _check_index("t", t)
    _check_index("n", n)
    if not isinstance(r, int) or r < 2:
        raise ParameterError(f"radix must be >= 2, got {r}")
    q = t * r - 1
    if not is_prime(q):
        raise ParameterError(f"t*r - 1 = {q} is not prime")
    check_modulus(q, r)
    digits, carries = kernels.register_rows(t, r, n)
    return RegisterTrace(t=t, r=r, digit_row=tuple(digits.tolist()),
                         carry_row=tuple(carries.tolist()))


def long_division_digits(q: int, r: int, n: int) -> list[int]:
    """First ``n`` fractional digits of ``1/q`` in radix ``r`` by long division.

    Accepts composite ``q`` (and ``q = 2``); this is a test oracle.
    """
    if not isinstance(q, int) or q < 2:
        raise ParameterError(f"q must be >= 2, got {q!r}")
    if not isinstance(r, int) or r < 2:
        raise ParameterError(f"radix must be >= 2, got {r!r}")
    _check_index("n", n)
    out = []
    rem = 1
    for _ in range(n):
        rem *= r
        out.append(rem // q)
        rem %= q
    return out


def check_complementarity(seq: DSequence) -> bool:
    """True iff digits half a period apart sum to ``r - 1``.

    Needs at least one full period of digits. Raises ``NotApplicableError``
    for odd periods.
    """
    p = seq.period
    if p % 2:
        raise NotApplicableError(f"period {p} of 1/{seq.q} is odd")
    if len(seq.digits) < p:
        raise ParameterError(f"need {p} digits, got {len(seq.digits)}")
    half = p // 2
    d = seq.digits
    return all(d[i] + d[i + half] == seq.r - 1 for i in range(half))


def half_period_is_minus_one(q: int, r: int) -> bool:
    """``r**(p/2) == -1 (mod q)``: the condition under which complementarity holds."""
    p = period(q, r)
    return p % 2 == 0 and pow(r, p // 2, q) == q - 1


def residue_digit(i: int, q: int, r: int) -> int:
    """``(r**i mod q) mod r``; agrees with ``digit_at`` exactly when ``q = -1 (mod r)``."""
    check_modulus(q, r)
    _check_index("i", i)
    return pow(r, i, q) % r
