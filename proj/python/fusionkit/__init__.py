"""Python front end for the fusionkit C++ library."""

import json
from pathlib import Path

from ._fusionkit import (
    BoundExceeded,
    FusionSystem,
    InputError,
    PermutationGroup,
    StructureError,
    commands,
    normalize_spec,
)
from ._fusionkit import _run_json

__all__ = [
    "BoundExceeded",
    "FusionSystem",
    "InputError",
    "PermutationGroup",
    "StructureError",
    "commands",
    "normalize_spec",
    "run",
]


def run(command, spec, *, family="", truncation=4, seed=1, what=(), out_dir="."):
    """Run a report command on spec text (or a path to a spec file).

    Returns (report dict, table text, exit code); the dict matches `fusionkit --json`.
    """
    path = "<string>"
    if isinstance(spec, Path) or (isinstance(spec, str) and "{" not in spec and Path(spec).is_file()):
        path = str(spec)
        spec = Path(spec).read_text()
    text, table, code = _run_json(command, spec, path, family, truncation, seed, list(what), str(out_dir))
    return json.loads(text), table, code
