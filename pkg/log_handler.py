import logging
import os
from pathlib import Path

def setup_logging():
    log_dir = Path(os.getenv("LEFSCHETZ_LOG_DIR", "logs"))
    log_dir.mkdir(parents=True, exist_ok=True)

    logger = logging.getLogger("Lefschetz")
    logger.setLevel(logging.DEBUG)

    if not logger.handlers:
        file_handler = logging.FileHandler(log_dir / "lefschetz.log", encoding="utf-8")
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s', datefmt='%Y-%m-%d %H:%M:%S'))
        logger.addHandler(file_handler)

        # stderr only: stdout carries the rendered reports
        console_handler = logging.StreamHandler()
        console_handler.setLevel(os.getenv("LEFSCHETZ_LOG_LEVEL", "WARNING").upper())
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        logger.addHandler(console_handler)

    return logger

logger = setup_logging()

def log_rank(kind: str, rows: int, cols: int, rank: int):
    """Record the shape and outcome of one elimination."""
    if rows * cols >= 100_000:
        logger.debug(f"🧮 {kind} | shape: {rows}x{cols} | rank: {rank}")

def log_claim(claim_id: str, verdict: str, expected, computed):
    """Log a claim verdict; failures go to the error level."""
    if verdict == "fail":
        logger.error(f"❌ CLAIM FAILED | {claim_id} | expected: {expected} | computed: {computed}")
    elif verdict == "unlucky-specialization":
        logger.warning(f"⚠️ UNLUCKY SPECIALIZATION | {claim_id} | passed after re-seed")
    else:
        logger.info(f"✅ CLAIM {verdict.upper()} | {claim_id} | computed: {computed}")
