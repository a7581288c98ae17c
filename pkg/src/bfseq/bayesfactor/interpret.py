import math

from bfseq.errors import ConfigError

# Upper edges of the evidence categories for max(BF01, BF10).
_CATEGORIES: tuple[tuple[float, str], ...] = (
    (3.0, "anecdotal"),
    (10.0, "moderate"),
    (30.0, "strong"),
    (100.0, "very strong"),
)


def interpret_bf01(bf01: float) -> str:
    """Describe a Bayes factor on Jeffreys' evidence scale.

    Examples:
        >>> interpret_bf01(1 / 9.2)
        'moderate evidence for H1'
        >>> interpret_bf01(40.0)
        'very strong evidence for H0'
    """
    if not bf01 > 0 or math.isnan(bf01):
        msg = f"Bayes factor must be positive, got {bf01}"
        raise ConfigError(msg)
    if bf01 == 1.0:
        return "no evidence either way"
    favoured, strength = ("H0", bf01) if bf01 > 1.0 else ("H1", 1.0 / bf01)
    label = next((name for edge, name in _CATEGORIES if strength <= edge), "extreme")
    return f"{label} evidence for {favoured}"
