#!/usr/bin/env python3
"""
Configuration tests: environment parsing, size caps and process-wide overrides.
"""

import sys

import pytest

from errors import CharacterCapExceeded, SizeCapExceeded
from settings import Settings, check_cap, configure, get_settings, load_settings, reset


@pytest.fixture(autouse=True)
def fresh_settings():
    reset()
    yield
    reset()


def test_defaults(monkeypatch):
    for name in ["QSW_PERM_CAP", "QSW_BRUTE_CAP", "QSW_COMP_CAP", "QSW_CHAR_CAP", "QSW_MAX_N",
                 "QSW_WORKERS", "QSW_BLOCK_SIZE", "QSW_VERBOSE"]:
        monkeypatch.delenv(name, raising=False)
    settings = load_settings()
    assert settings.perm_cap == 8
    assert settings.brute_cap == 6
    assert settings.comp_cap == 8
    assert settings.char_cap == 10
    assert settings.workers == 1
    assert not settings.verbose


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("QSW_BRUTE_CAP", "4")
    monkeypatch.setenv("QSW_WORKERS", "0")
    monkeypatch.setenv("QSW_VERBOSE", "yes")
    monkeypatch.setenv("QSW_COMP_CAP", "lots")
    settings = load_settings()
    assert settings.brute_cap == 4
    assert settings.workers == 1
    assert settings.verbose
    assert settings.comp_cap == 8


def test_cap_resolution():
    assert Settings().cap("perm") == 8
    assert Settings(max_n=5).cap("perm") == 5
    assert Settings(max_n=5, force=True).cap("perm") is None


def test_check_cap_raises():
    configure(comp_cap=3)
    check_cap("comp", 3, "kbar")
    with pytest.raises(SizeCapExceeded) as info:
        check_cap("comp", 4, "kbar")
    assert "kbar" in str(info.value)
    with pytest.raises(CharacterCapExceeded):
        check_cap("char", 11, "theta")


def test_force_and_reset():
    configure(force=True)
    check_cap("brute", 50, "k_full")
    assert get_settings().force
    reset()
    assert not get_settings().force


if __name__ == "__main__":
    print("🧪 SETTINGS TESTS")
    print("=" * 50)
    success = pytest.main([__file__, "-q"]) == 0
    print("✅ All settings tests passed" if success else "❌ Some settings tests failed")
    sys.exit(0 if success else 1)
