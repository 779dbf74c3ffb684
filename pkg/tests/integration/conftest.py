"""
Integration fixtures: run the lab command line in-process and capture output.
"""
import pytest

from sortlab.commands import main


class LabRun:
    def __init__(self, code: int, out: str, err: str):
        self.code = code
        self.out = out
        self.err = err

    @property
    def lines(self) -> list[str]:
        return self.out.splitlines()


@pytest.fixture
def lab(capsys):
    """Call the CLI with an argv list, returning exit code and captured streams."""
    def run(*argv: str) -> LabRun:
        code = main([*argv])
        captured = capsys.readouterr()
        return LabRun(code, captured.out, captured.err)
    return run
