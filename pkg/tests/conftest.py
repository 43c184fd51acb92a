from __future__ import annotations

import configparser
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
CORPUS = FIXTURES / "corpus"
PATHOLOGY = FIXTURES / "pathology"
TAGGED = FIXTURES / "tagged"
JUDGMENTS = FIXTURES / "judgments"


def write_config(src: Path, dest_dir: Path, out_dir: Path, **overrides) -> Path:
    """Copy a fixture config with absolute input paths and a private output dir.

    ``overrides`` maps "section.key" (dots in the key replaced by "__") to values.
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp.read(src, encoding="utf-8")
    for key in ("ja_dump", "es_dump", "dictionary"):
        cp["input"][key] = str((src.parent / cp["input"][key]).resolve())
    if cp.has_section("eval"):
        for key in cp["eval"]:
            if key == "gold" or key.startswith("judgments_"):
                cp["eval"][key] = str((src.parent / cp["eval"][key]).resolve())
    cp["output"]["dir"] = str(out_dir)
    for dotted, value in overrides.items():
        section, key = dotted.split(".", 1)
        if not cp.has_section(section):
            cp.add_section(section)
        cp[section][key.replace("__", ".")] = str(value)
    dest_dir.mkdir(parents=True, exist_ok=True)
    path = dest_dir / "config.ini"
    with open(path, "w", encoding="utf-8") as f:
        cp.write(f)
    return path


@pytest.fixture
def corpus_config(tmp_path):
    def make(**overrides):
        return write_config(CORPUS / "config.ini", tmp_path / "cfg", tmp_path / "out", **overrides)

    return make


@pytest.fixture(scope="session")
def corpus_run(tmp_path_factory):
    """One full pipeline run over the fixture corpus, shared by read-only tests."""
    from corpusforge.pipeline import PipelineConfig, run_stage

    base = tmp_path_factory.mktemp("corpus_run")
    cfg_path = write_config(CORPUS / "config.ini", base / "cfg", base / "out")
    cfg = PipelineConfig.load(cfg_path)
    counts = run_stage("all", cfg)
    return cfg, counts
