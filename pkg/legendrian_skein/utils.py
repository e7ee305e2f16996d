import json
import logging
from typing import Any, Optional

from jsonpath_ng.ext import parse
from jsonpath_ng.exceptions import JSONPathError

from legendrian_skein.exceptions import ValidationError, DataError

LOGGER_NAME = "legendrian_skein"


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Return the package logger or one of its children.

    Args:
        name (str): Dotted module name; names outside the package are nested under it

    Returns:
        logging.Logger: The requested logger
    """
    if not name or name == LOGGER_NAME:
        return logging.getLogger(LOGGER_NAME)
    if not name.startswith(LOGGER_NAME + "."):
        name = f"{LOGGER_NAME}.{name}"
    return logging.getLogger(name)


def log_error(message: str, title: str) -> None:
    """
    Record an error entry.

    Same call shape as the error log of the hosting framework the package grew
    out of: a short title and a free form message.

    Args:
        message (str): What went wrong, including the cause
        title (str): Short category of the failure
    """
    get_logger().error("%s: %s", title, message)


def resolve_path(payload: Any, path: str, default: Optional[Any] = None) -> Any:
    """
    Resolves a JSONPath expression against a report or any JSON-like value.

    Args:
        payload: Parsed JSON data (dict or list) or a JSON string
        path: JSONPath expression string (e.g., '$.invariants.tb', '$.histogram[*][1]')
        default: Value returned when the path matches nothing

    Returns:
        The single matched value, a list when several values match, or default

    Raises:
        ValidationError: For invalid input parameters
        DataError: For JSON parsing or JSONPath compilation errors
    """
    if not isinstance(path, str):
        raise ValidationError(f"Path must be a string, got {type(path).__name__}")

    if not path.strip():
        raise ValidationError("Path cannot be empty or whitespace")

    if payload is None:
        return default

    if isinstance(payload, str):
        if not payload.strip():
            return default
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as e:
            log_error(
                message=f"Failed to parse JSON payload: {str(e)}",
                title="JSONPath Resolution Error"
            )
            raise DataError(f"Invalid JSON payload: {str(e)}")
    elif not isinstance(payload, (dict, list)):
        raise ValidationError(f"Payload must be a JSON string or object, got {type(payload).__name__}")

    try:
        jsonpath_expr = parse(path)
    except JSONPathError as e:
        log_error(
            message=f"Invalid JSONPath expression '{path}': {str(e)}",
            title="JSONPath Compilation Error"
        )
        raise DataError(f"Invalid JSONPath expression '{path}': {str(e)}")
    except Exception as e:
        log_error(
            message=f"Unexpected error compiling JSONPath '{path}': {str(e)}",
            title="JSONPath Compilation Error"
        )
        raise DataError(f"Failed to compile JSONPath expression '{path}': {str(e)}")

    try:
        matches = jsonpath_expr.find(payload)
    except Exception as e:
        log_error(
            message=f"Error executing JSONPath '{path}' on data: {str(e)}",
            title="JSONPath Execution Error"
        )
        raise DataError(f"Failed to execute JSONPath query '{path}': {str(e)}")

    if not matches:
        return default

    values = [match.value for match in matches]
    if len(values) == 1:
        return values[0]
    return values


def dump_json(payload: Any) -> str:
    """Serialize a report deterministically."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _flatten(value: Any, prefix: str, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict) and value:
        for key in sorted(value):
            _flatten(value[key], f"{prefix}.{key}" if prefix else str(key), rows)
    elif isinstance(value, list) and value:
        for i, item in enumerate(value):
            _flatten(item, f"{prefix}[{i}]", rows)
    else:
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True, ensure_ascii=False)
        rows.append((prefix or "$", text))


def render_table(payload: Any) -> str:
    """
    Render a report as an aligned two-column table of dotted paths and values.

    Keys are sorted and list items are indexed as [i]; empty containers
    show as [] or {}.

    Args:
        payload (Any): A JSON-compatible report

    Returns:
        str: One "path  value" row per leaf
    """
    rows: list[tuple[str, str]] = []
    _flatten(payload, "", rows)
    width = max(len(path) for path, _ in rows)
    return "\n".join(f"{path.ljust(width)}  {text}" for path, text in rows)
