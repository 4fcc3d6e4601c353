import os
import pathlib

import pytest


@pytest.fixture(autouse=True, scope="session")
def _run_from_repo_root():
    # tests and CLI invocations reference lattices/ by relative path
    root = pathlib.Path(__file__).resolve().parent.parent
    previous = os.getcwd()
    os.chdir(root)
    yield
    os.chdir(previous)
