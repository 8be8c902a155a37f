import doctest

from torusroots import cyclotomic


def test_module_doctests():
    results = doctest.testmod(cyclotomic, verbose=False)
    assert results.attempted > 0
    assert results.failed == 0
