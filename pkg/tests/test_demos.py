import runpy
import sys
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parents[1] / "demos").glob("*.py"))


@pytest.mark.parametrize("script", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(script, monkeypatch, capsys):
    # hide matplotlib so the smoke run writes no figures
    monkeypatch.setitem(sys.modules, "matplotlib", None)
    runpy.run_path(str(script), run_name="__main__")
    assert capsys.readouterr().out.strip()
