import os

DEFAULT_MAX_BRUTE = 10**7
AUT_MAX_ORDER = 64


def max_brute() -> int:
    """Global cap on candidate maps for any brute-force search.

    Overridden by the COCYCLE_MAX_BRUTE environment variable.
    """
    raw = os.environ.get("COCYCLE_MAX_BRUTE")
    if raw is None:
        return DEFAULT_MAX_BRUTE
    return int(raw)
