import logging
import time
from functools import wraps

from .config import LOGGER_NAME
from .validators import GridMismatchError, UnsupportedGridError

logger = logging.getLogger(LOGGER_NAME)


# Décorateurs

def log_action(description: str):
    """
    Journalise une opération une fois terminée
    Format : Action effectuée : description (durée)
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            result = func(*args, **kwargs)
            elapsed = (time.perf_counter() - start) * 1e3
            logger.info("Action effectuée : %s (%.1f ms)", description, elapsed)
            return result

        return wrapper

    return decorator


def require_self_dual(func):
    """
    Vérifie que le premier argument vit sur une grille auto-duale
    L'argument doit exposer un attribut `grid` avec une propriété `self_dual`
    """

    @wraps(func)
    def wrapper(obj, *args, **kwargs):
        if not obj.grid.self_dual:
            raise UnsupportedGridError(
                f"{func.__name__} exige une grille auto-duale (h = n^-1/2), reçu {obj.grid!r}"
            )
        return func(obj, *args, **kwargs)

    return wrapper


def require_same_grid(func):
    """
    Vérifie que les deux premiers arguments partagent la même grille
    """

    @wraps(func)
    def wrapper(first, second, *args, **kwargs):
        if first.grid != second.grid:
            raise GridMismatchError(
                f"{func.__name__} : grilles différentes {first.grid!r} et {second.grid!r}"
            )
        return func(first, second, *args, **kwargs)

    return wrapper
