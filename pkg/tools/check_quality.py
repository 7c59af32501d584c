#!/usr/bin/env python3
"""dqcsim quality gate: layer boundaries, mypy, black and the unit tests."""

import ast
import os
import subprocess
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

ROOT = Path(__file__).resolve().parent.parent
SRC = ROOT / "src"

# Packages under src/ and the top-level names each one must not import
FORBIDDEN_IMPORTS: Dict[str, Tuple[str, ...]] = {
    "domain": ("application", "infrastructure", "cli"),
    "application": ("infrastructure", "cli"),
    "infrastructure": ("application", "cli"),
}


def run_command(
    cmd: List[str], env: Optional[Dict[str, str]] = None
) -> Tuple[bool, str]:
    try:
        result = subprocess.run(
            cmd, capture_output=True, text=True, cwd=ROOT, env=env, check=False
        )
        return result.returncode == 0, result.stdout + result.stderr
    except OSError as e:
        return False, str(e)


def print_header(title: str) -> None:
    print(f"\n{'=' * 50}")
    print(f" {title}")
    print(f"{'=' * 50}")


def print_result(check_name: str, passed: bool, output: str = "") -> None:
    print(f"{check_name}: {'PASSED' if passed else 'FAILED'}")
    if output and not passed:
        print(f"Output:\n{output}")


def module_available(module: str) -> bool:
    try:
        __import__(module)
        return True
    except ImportError:
        return False


def imported_roots(path: Path) -> List[Tuple[int, str]]:
    """Top-level module names imported by ``path`` with their line numbers."""
    tree = ast.parse(path.read_text(encoding="utf-8"), filename=str(path))
    found: List[Tuple[int, str]] = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            found.extend((node.lineno, a.name.split(".")[0]) for a in node.names)
        elif isinstance(node, ast.ImportFrom) and node.module and not node.level:
            found.append((node.lineno, node.module.split(".")[0]))
    return found


def layer_violations() -> List[str]:
    problems: List[str] = []
    for package, forbidden in FORBIDDEN_IMPORTS.items():
        for path in sorted((SRC / package).rglob("*.py")):
            for line, name in imported_roots(path):
                if name in forbidden:
                    rel = path.relative_to(ROOT)
                    problems.append(f"{rel}:{line}: {package} imports {name}")
    return problems


def mypy_targets() -> List[str]:
    """Packages and modules by import name; ``src`` itself is on MYPYPATH."""
    targets: List[str] = []
    for package in FORBIDDEN_IMPORTS:
        targets += ["-p", package]
    targets += ["-m", "cli", "-m", "version"]
    tests = sorted(str(p) for p in (ROOT / "tests").glob("test_*.py"))
    tools = sorted(str(p) for p in (ROOT / "tools").glob("*.py"))
    return targets + tests + tools


def main() -> int:
    slow = "--slow" in sys.argv[1:]
    print("dqcsim code quality checker")
    results: Dict[str, str] = {}

    print_header("Layer Boundaries")
    problems = layer_violations()
    print_result("Layers", not problems, "\n".join(problems))
    results["Layers"] = "failed" if problems else "passed"

    print_header("MyPy Type Checking")
    if module_available("mypy"):
        env = dict(os.environ, MYPYPATH=str(SRC))
        cmd = [sys.executable, "-m", "mypy", "--config-file", "mypy.ini"]
        passed, output = run_command(cmd + mypy_targets(), env)
        print_result("MyPy", passed, output)
        results["MyPy"] = "passed" if passed else "failed"
    else:
        print("MyPy: SKIPPED (module not installed)")
        results["MyPy"] = "skipped"

    print_header("Black Code Formatting Check")
    if module_available("black"):
        targets = [str(ROOT / name) for name in ("src", "tests", "tools")]
        cmd = [sys.executable, "-m", "black", "--check", *targets]
        passed, output = run_command(cmd)
        print_result("Black", passed, output)
        results["Black"] = "passed" if passed else "failed"
    else:
        print("Black: SKIPPED (module not installed)")
        results["Black"] = "skipped"

    print_header("Unit Tests" + (" (with large codes)" if slow else ""))
    cmd = [sys.executable, str(ROOT / "tools" / "run_tests.py")]
    passed, output = run_command(cmd + (["--slow"] if slow else []))
    print_result("Tests", passed, output)
    results["Tests"] = "passed" if passed else "failed"

    print_header("Final Summary")
    for name, status in results.items():
        print(f"{name}: {status}")
    if "failed" in results.values():
        print("Some code quality checks failed")
        return 1
    print("All code quality checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
