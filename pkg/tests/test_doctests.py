import doctest

import pytest

from qkbruhat import catalog, cli, equiv, operators, orders, perms, qalgebra

MODULES = [perms, qalgebra, operators, orders, equiv, catalog, cli]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_module_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
    if module is not cli:  # the CLI is exercised end to end instead
        assert result.attempted > 0
