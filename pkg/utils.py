import sys
from pathlib import Path
from typing import Any, Dict, Mapping

import yaml
from loguru import logger

from config import LOG_LEVEL

LOG_DIR = Path(".data")
LOG_DIR.mkdir(parents=True, exist_ok=True)

logger.remove()


def _plain(value: Any) -> Any:
    """Reduce a value to what yaml.safe_dump accepts.

    Tuples and sets become lists; polynomials, operators and anything else
    without a YAML form fall back to ``str``.
    """
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_plain(item) for item in value), key=str)
    return str(value)


def dump_yaml(payload: Mapping[str, Any]) -> str:
    """Block-style YAML with keys in insertion order; used for log extras and CLI reports."""
    return yaml.safe_dump(_plain(payload), sort_keys=False, default_flow_style=False, allow_unicode=True)


def _console_format(record: Dict[str, Any]) -> str:
    """One header line per record, structured extras below it as indented YAML."""
    timestamp = record["time"].strftime("%Y-%m-%d %H:%M:%S.%f")[:-3]
    source = f"{record['name']}:{record['function']}".replace("<", "\\<").replace(">", "\\>")
    base = (
        f"<green>{timestamp}</green> | "
        f"<level>{record['level'].name:<8}</level> | "
        f"<cyan>{source}</cyan> - {record['message']}"
    )
    extras = record.get("extra") or {}
    if extras:
        # loguru runs str.format over the result; polynomial text may contain braces.
        rendered = dump_yaml(extras).rstrip().replace("{", "{{").replace("}", "}}")
        # Markup tags in extras (e.g. "<u>") must not be read as colours.
        rendered = rendered.replace("<", "\\<")
        base = base + "\n" + "\n".join(f"  {line}" for line in rendered.splitlines())
    if record["exception"] is not None:
        base += "\n{exception}"
    return f"{base}\n"


CONSOLE_SINK_ID = logger.add(
    sys.stderr,
    level=LOG_LEVEL,
    colorize=True,
    enqueue=True,
    format=_console_format,
)

_file_sink_id: int | None = None


def configure_file_logging(filename: str, *, rotation: str = "10 MB") -> Path:
    """Attach the JSON file sink for this process under ``.data/`` and return its path.

    A second call replaces the previous file sink, so the CLI and a Celery
    worker started in the same interpreter never write to both files.
    """
    global _file_sink_id
    if _file_sink_id is not None:
        logger.remove(_file_sink_id)
    log_path = LOG_DIR / filename
    _file_sink_id = logger.add(
        log_path,
        level="DEBUG",
        rotation=rotation,
        serialize=True,
        backtrace=True,
        diagnose=False,
        enqueue=True,
    )
    logger.debug("File logging attached", log_path=str(log_path), console_level=LOG_LEVEL)
    return log_path
