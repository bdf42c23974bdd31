import os
import sys

import pytest

_mod_dir = os.environ.get("EQSIM_PYMODULE_DIR")
if _mod_dir:
    sys.path.insert(0, _mod_dir)

eq = pytest.importorskip("_core")


@pytest.fixture(scope="session")
def core():
    return eq


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("EQSIM_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("eqsim CLI binary not available")
    return path
