import os
from collections.abc import Collection

_TRUE = ("true", "t", "1", "yes", "y", "on")
_FALSE = ("false", "f", "0", "no", "n", "off")


def env_bool(env_var: str, default: str = "false") -> bool:
    """Parse boolean environment variable.

    Args:
        env_var: Environment variable name.
        default: Default value if environment variable is not set.

    Returns:
        Boolean value.

    Raises:
        ValueError: If the environment variable value is invalid.
    """
    value = os.environ.get(env_var, default).lower()

    if value in _TRUE:
        return True
    if value in _FALSE:
        return False
    msg = f"Invalid boolean value for {env_var}: '{value}'. Use true/false, 1/0, yes/no, on/off"
    raise ValueError(msg)


def env_choice(env_var: str, default: str, choices: Collection[str]) -> str:
    """Read a lower-cased environment variable restricted to a fixed set of values.

    Raises:
        ValueError: If the value is not one of ``choices``.
    """
    value = os.environ.get(env_var, default).lower()
    if value not in choices:
        allowed = ", ".join(sorted(choices))
        msg = f"Invalid value for {env_var}: '{value}'. Expected one of: {allowed}"
        raise ValueError(msg)
    return value
