from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import pytest

from arith_helper.cyclotomic import CyclotomicInt
from modules.message_manager import VerificationLog
from modules.metadata_utils import create_metadata, dump_json, dumps_line, fraction_to_str, to_json_value
from modules.settings import CACHE_DIR_ENV, Settings, default_worker_count
from modules.version import APP_VERSION


@dataclass
class _Point:
    x: int
    label: str


def test_integers_and_rationals_become_strings():
    assert to_json_value(12345678901234567890) == "12345678901234567890"
    assert to_json_value(Fraction(3, 2)) == "3/2"
    assert to_json_value(Fraction(4, 2)) == "2"
    assert fraction_to_str(Fraction(-5, 6)) == "-5/6"
    assert to_json_value(True) is True
    assert to_json_value(None) is None


def test_containers_and_records():
    assert to_json_value({1: [2, (3, Fraction(1, 3))]}) == {"1": ["2", ["3", "1/3"]]}
    assert to_json_value({3, 1, 2}) == ["1", "2", "3"]
    assert to_json_value(_Point(4, "a")) == {"x": "4", "label": "a"}
    assert to_json_value(CyclotomicInt(3, (1, -1))) == {"conductor": "3", "coeffs": ["1", "-1"]}
    with pytest.raises(TypeError):
        to_json_value(object())


def test_metadata_is_reproducible():
    first = create_metadata("mass", {"level": 11})
    second = create_metadata("mass", {"level": 11})
    assert first == second
    assert first["version"] == APP_VERSION
    assert first["parameters"] == {"level": "11"}
    assert "timestamp" not in first


def test_dump_json_writes_canonical_text(tmp_path):
    path = tmp_path / "out" / "doc.json"
    text = dump_json({"b": 1, "a": Fraction(1, 2)}, str(path))
    assert json.loads(path.read_text()) == {"a": "1/2", "b": "1"}
    assert text.index('"a"') < text.index('"b"')
    line = dumps_line({"b": 2, "a": 1})
    assert "\n" not in line
    assert line == '{"a":"1","b":"2"}'


def test_verification_log():
    log = VerificationLog()
    assert log.passed
    assert log.check(True, "first")
    log.add_skip("not applicable")
    assert log.passed
    assert not log.check(False, "second")
    assert not log.passed
    assert log.count("PASS") == 1
    assert log.count("FAIL") == 1
    assert log.count("SKIP") == 1
    assert log.to_record()[1] == {"type": "SKIP", "message": "not applicable"}
    assert "[FAIL] second" in log.get_messages()
    log.clear()
    assert log.passed and log.to_record() == []
    with pytest.raises(ValueError):
        log.add_message("x", "DEBUG")


def test_verification_log_is_bounded():
    log = VerificationLog(max_messages=3)
    for i in range(5):
        log.add_message(str(i))
    assert [m["message"] for m in log.to_record()] == ["2", "3", "4"]


def test_settings_defaults_and_persistence(tmp_path, monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    settings_file = tmp_path / "settings.json"
    settings = Settings(settings_file)
    assert settings.get("l_max") == 50
    assert settings.get("missing", 7) == 7
    assert set(settings.settings) == set(settings.default_settings)
    assert "output_dir" not in settings.settings
    settings.save_settings(l_max=30)
    assert Settings(settings_file).get("l_max") == 30
    assert Settings(settings_file).get("n_max") == 200


def test_settings_environment_override(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "cache"))
    assert Settings(tmp_path / "settings.json").get("cache_dir") == str(tmp_path / "cache")


def test_corrupt_settings_fall_back_to_defaults(tmp_path):
    settings_file = tmp_path / "settings.json"
    settings_file.write_text("{not json")
    assert Settings(settings_file).get("r") == 1


def test_default_worker_count():
    assert default_worker_count() >= 1
