"""
Constantes de configuration et réglage du journal.

Les valeurs numériques sont des choix de politique (pas des constantes
mathématiques) ; elles sont regroupées ici pour être citées dans les rapports.
"""
from __future__ import annotations

import logging
import os
from pathlib import Path

# Chemins
BASE_DIR = Path(__file__).resolve().parent.parent
DATA_FILE = BASE_DIR / "data" / "builtins.json"
LOG_FILE = Path(os.environ.get("ALPHA_SYNTHESIS_LOG", "logs.txt"))

LOGGER_NAME = "alpha_synthesis"

# Tolérances
SELF_DUAL_RTOL = 1e-12
TRACE_ZERO_RTOL = 1e-8
SURROGATE_THRESHOLD = 1e-8  # masse relative tolérée sur les 2 lignes/colonnes du bord
SURROGATE_BORDER = 2
INEQUALITY_SLACK = 1e-9

# Oracle par quadrature
DIRECT_ACTION_CAP = 64

# Politique de résolution
HERMITE_SAFETY_FACTOR = 2.0
PLATEAU_POINTS = 5  # points par axe dans la boule fermée de rayon delta/2
SCALING_MIN_RATIO = 24  # delta/h minimal pour asserter l'identité d'échelle
VERSAL_MIN_REACH = 12.0  # delta*sqrt(n)/2 minimal pour asserter V à 1 %
OSCILLATOR_SERIES_TERMS = 2000


def thread_count() -> int:
    """Nombre de threads autorisés (variable NCFK_THREADS, 1 par défaut)."""
    raw = os.environ.get("NCFK_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def configure_logging(log_file: Path | None = None, level: int = logging.INFO) -> logging.Logger:
    """
    Installe un fichier de log au format [jj/mm/aaaa hh:mm:ss] et un flux
    stderr pour les avertissements. Idempotent.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    target = Path(log_file or LOG_FILE)
    known = {getattr(h, "baseFilename", None) for h in logger.handlers}
    if str(target.resolve()) not in known:
        file_handler = logging.FileHandler(target, encoding="utf-8")
        file_handler.setFormatter(
            logging.Formatter("[%(asctime)s] %(message)s", datefmt="%d/%m/%Y %H:%M:%S")
        )
        logger.addHandler(file_handler)
    if not any(type(h) is logging.StreamHandler for h in logger.handlers):
        stream = logging.StreamHandler()
        stream.setLevel(logging.WARNING)
        stream.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
        logger.addHandler(stream)
    return logger
