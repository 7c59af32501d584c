"""Version information for dqcsim."""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib  # type: ignore[no-redef]
from pathlib import Path

FALLBACK_VERSION = "0.1.0"


def get_version() -> str:
    """Read the version from pyproject.toml, falling back to the packaged constant."""
    # src/version.py -> project root; tests may run from the repo root instead
    for candidate in (
        Path(__file__).resolve().parent.parent / "pyproject.toml",
        Path.cwd() / "pyproject.toml",
    ):
        if not candidate.exists():
            continue
        try:
            with candidate.open("rb") as f:
                data = tomllib.load(f)
            project = data.get("project", {})
            if project.get("name") == "dqcsim":
                return str(project["version"])
        except (OSError, tomllib.TOMLDecodeError, KeyError):
            continue
    return FALLBACK_VERSION


__version__ = get_version()
