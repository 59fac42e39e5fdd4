#!/usr/bin/env python3
"""
Quick Setup Script for qsw
Writes a .env file with the size caps and simulation settings
"""

import os
import shutil
import sys

CAPS = [
    ("QSW_PERM_CAP", "largest n for permutation expansions in the descent algebra", "8"),
    ("QSW_BRUTE_CAP", "largest n for K on permutations and brute-force checks", "6"),
    ("QSW_COMP_CAP", "largest n for matrices on compositions", "8"),
    ("QSW_CHAR_CAP", "largest weight for character values", "10"),
]


def _set_value(content: str, name: str, value: str) -> str:
    lines = content.splitlines()
    for i, line in enumerate(lines):
        if line.lstrip("# ").startswith(f"{name}="):
            lines[i] = f"{name}={value}"
            return "\n".join(lines) + "\n"
    return content.rstrip("\n") + f"\n{name}={value}\n"


def _ask_int(prompt: str, default: str) -> str:
    raw = input(f"   {prompt} [{default}]: ").strip()
    if not raw:
        return default
    if not raw.isdigit():
        print(f"   ⚠️  '{raw}' is not a number, keeping {default}")
        return default
    return raw


def setup_qsw():
    """Interactive setup for qsw"""

    print("🃏 QSW - QUICK SETUP")
    print("=" * 40)
    print()

    if os.path.exists('.env'):
        print("⚠️  .env file already exists!")
        response = input("Do you want to overwrite it? (y/N): ").strip().lower()
        if response != 'y':
            print("Setup cancelled. Edit your existing .env file manually.")
            return True

    if os.path.exists('.env.example'):
        print("📋 Creating .env file from template...")
        shutil.copy('.env.example', '.env')
        print("✅ .env file created")
    else:
        print("❌ .env.example not found")
        return False

    with open('.env', 'r') as f:
        content = f.read()

    print()
    print("📏 SIZE CAPS:")
    print("Exact computations grow like n! or 4^n; the caps stop runaway jobs.")
    for name, meaning, default in CAPS:
        print(f" - {name}: {meaning}")
        content = _set_value(content, name, _ask_int("value", default))

    print()
    print("🎲 SIMULATION:")
    workers = _ask_int("worker processes", str(os.cpu_count() or 1))
    content = _set_value(content, "QSW_WORKERS", workers)

    with open('.env', 'w') as f:
        f.write(content)

    print()
    print("🎉 SETUP COMPLETE!")
    print()
    print("📋 NEXT STEPS:")
    print("1. Install dependencies: pip install -r requirements.txt")
    print("2. Try it:")
    print("   python qsw.py kbar --n 3 --char theta")
    print("   python qsw.py simulate --model ashuffle:2 --n 4 --steps 2")
    print("3. Run the tests: pytest")
    return True


if __name__ == "__main__":
    try:
        success = setup_qsw()
        sys.exit(0 if success else 1)
    except KeyboardInterrupt:
        print("\n\nSetup cancelled by user.")
        sys.exit(1)
    except Exception as e:
        print(f"\nSetup failed: {e}")
        sys.exit(1)
