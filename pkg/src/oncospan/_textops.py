"""Text-kernel backend selection.

The compiled extension is preferred when it imported cleanly; the
pure-Python module is the fallback and the reference implementation.
Setting the environment variable ``ONCOSPAN_PURE=1`` before import forces
the fallback.  ``set_backend`` switches at runtime (used by the tests and
the benchmark; annotator modules call through this module, so the switch
takes effect immediately).
"""

import os

from . import _textops_py

_compiled = None
if os.environ.get("ONCOSPAN_PURE") != "1":
    try:
        from . import _speedups as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_active = _compiled if _compiled is not None else _textops_py


def backend_name() -> str:
    """Name of the active backend: ``"c"`` or ``"python"``."""
    return _active.BACKEND_NAME


def available_backends() -> tuple[str, ...]:
    return ("python", "c") if _compiled is not None else ("python",)


def set_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _textops_py
    elif name == "c":
        if _compiled is None:
            raise ValueError("compiled backend is not available")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def normalize_text(text: str) -> tuple[str, list[int]]:
    return _active.normalize_text(text)


def sentence_spans(
    text: str, abbreviations: frozenset[str] = frozenset()
) -> list[tuple[int, int]]:
    return _active.sentence_spans(text, abbreviations)


def token_spans(text: str, begin: int, end: int) -> list[tuple[int, int, int]]:
    return _active.token_spans(text, begin, end)
