"""
Runtime configuration for qsw.

Values come from the environment (optionally a .env file) with defaults
suited to a desktop run. Status messages go to stderr so stdout stays
machine-readable.
"""

import os
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import click

from errors import CharacterCapExceeded, SizeCapExceeded

try:
    from dotenv import load_dotenv
    load_dotenv()
    DOTENV_LOADED = True
except ImportError:
    DOTENV_LOADED = False


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        click.echo(f"⚠️  ignoring {name}={raw!r} (not an integer)", err=True)
        return default


def _env_bool(name: str, default: bool = False) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class Settings:
    perm_cap: int = 8
    brute_cap: int = 6
    comp_cap: int = 8
    char_cap: int = 10
    max_n: Optional[int] = None
    workers: int = 1
    block_size: int = 100_000
    verbose: bool = False
    force: bool = False

    def cap(self, name: str) -> Optional[int]:
        """Effective cap for one of perm/brute/comp/char; None when disabled."""
        if self.force:
            return None
        if self.max_n is not None:
            return self.max_n
        return getattr(self, f"{name}_cap")


def load_settings() -> Settings:
    return Settings(
        perm_cap=_env_int("QSW_PERM_CAP", 8),
        brute_cap=_env_int("QSW_BRUTE_CAP", 6),
        comp_cap=_env_int("QSW_COMP_CAP", 8),
        char_cap=_env_int("QSW_CHAR_CAP", 10),
        max_n=_env_int("QSW_MAX_N", None),
        workers=max(1, _env_int("QSW_WORKERS", 1)),
        block_size=max(1, _env_int("QSW_BLOCK_SIZE", 100_000)),
        verbose=_env_bool("QSW_VERBOSE"),
    )


@lru_cache(maxsize=1)
def _initial() -> Settings:
    return load_settings()


_override: Optional[Settings] = None


def get_settings() -> Settings:
    return _override if _override is not None else _initial()


def configure(**changes) -> Settings:
    """Replace selected fields process-wide (used by the CLI flags)."""
    global _override
    _override = replace(get_settings(), **changes)
    return _override


def reset() -> None:
    global _override
    _override = None


def check_cap(name: str, n: int, what: str) -> None:
    cap = get_settings().cap(name)
    if cap is not None and n > cap:
        if name == "char":
            raise CharacterCapExceeded(what, n, cap)
        raise SizeCapExceeded(what, n, cap)


def log(message: str, emoji: str = "🔹") -> None:
    """Status line on stderr, only when QSW_VERBOSE is set."""
    if get_settings().verbose:
        click.echo(f"{emoji} {message}", err=True)
