"""Make the CMake-built package importable when running from the source tree.

An installed wheel ships ``nilrigid/`` with the compiled ``_core`` extension
inside it. For in-tree runs, the build directory holds the same layout under
``<build>/python``; prepend it (and honour NILRIGID_BUILD_DIR when the build
tree lives elsewhere).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

_repo = Path(__file__).resolve().parents[2]
_candidates = []
if "NILRIGID_BUILD_DIR" in os.environ:
    _candidates.append(Path(os.environ["NILRIGID_BUILD_DIR"]) / "python")
_candidates.append(_repo / "build" / "python")

for _dir in _candidates:
    if (_dir / "nilrigid" / "__init__.py").exists():
        sys.path.insert(0, str(_dir))
        break
