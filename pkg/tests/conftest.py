import importlib

import pytest


def _available_backends():
    mods = [importlib.import_module("dseqmark._pykernels")]
    try:
        mods.append(importlib.import_module("dseqmark._ckernels"))
    except ImportError:
        pass
    return mods


BACKENDS = _available_backends()


@pytest.fixture(params=BACKENDS, ids=lambda m: m.BACKEND)
def backend(request):
    return request.param


def brute_order(r, q):
    x, p = r % q, 1
    while x != 1:
        x = x * r % q
        p += 1
    return p


def primes_below(n):
    sieve = bytearray([1]) * n
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n) if sieve[i]]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
