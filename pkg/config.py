import argparse
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from dotenv import load_dotenv

from error_handler import ConfigError
from field_linalg import DEFAULT_PRIME, SECOND_PRIME, PrimeFieldConfig
from log_handler import logger
from reports import FORMATS

load_dotenv(Path(__file__).parent / ".env")

VERSION = "0.1.0"
TOOL_NAME = "lefschetz-probe"
DATA_DIR = Path(__file__).parent / "datas"
DEFAULT_PINS = DATA_DIR / "claim_pins.json"

# flag name -> environment variable
ENV_KEYS = {
    "prime": "LEFSCHETZ_PRIME",
    "seed": "LEFSCHETZ_SEED",
    "threads": "LEFSCHETZ_THREADS",
    "pins_path": "LEFSCHETZ_PINS",
}

# =================================================================================================
# RUN CONFIG
# =================================================================================================

@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    max_degree: int = 30
    trials: int = 3
    output_format: str = "table"
    output_path: Optional[str] = None
    threads: Optional[int] = None
    pins_path: Path = DEFAULT_PINS
    timings: bool = False
    second_prime: int = SECOND_PRIME

    def __post_init__(self):
        # field construction runs the primality and range checks
        PrimeFieldConfig(self.prime)
        PrimeFieldConfig(self.second_prime)
        if self.second_prime == self.prime:
            raise ConfigError("the stability prime must differ from the primary prime")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if self.max_degree < 0:
            raise ConfigError(f"max degree must be nonnegative, got {self.max_degree}")
        if self.output_format not in FORMATS:
            raise ConfigError(f"unsupported output format '{self.output_format}'")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads must be at least 1, got {self.threads}")

    @property
    def field(self) -> PrimeFieldConfig:
        return PrimeFieldConfig(self.prime)

    @property
    def stability_primes(self):
        return (self.prime, self.second_prime)

    @property
    def writes_stdout(self) -> bool:
        return self.output_path in (None, "-")


def report_meta(config: RunConfig, command: str) -> Dict[str, Any]:
    """Deterministic report header; wall time is added by the caller only on request."""
    return {
        "tool": TOOL_NAME,
        "version": VERSION,
        "command": command,
        "prime": config.prime,
        "seed": config.seed,
        "trials": config.trials,
    }


def int_list(text: str) -> List[int]:
    """argparse type for comma-separated integers such as `2,2,3`."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _env_int(name: str, environ: Mapping[str, str]) -> Optional[int]:
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got '{raw}'")


def load_config(flags: Mapping[str, Any], environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    """Flags (None = not given) over environment over defaults."""
    environ = os.environ if environ is None else environ
    values: Dict[str, Any] = {}

    for key in ("prime", "seed", "threads"):
        env_value = _env_int(ENV_KEYS[key], environ)
        if env_value is not None:
            values[key] = env_value
    if environ.get(ENV_KEYS["pins_path"]):
        values["pins_path"] = Path(environ[ENV_KEYS["pins_path"]])

    for key, value in flags.items():
        if value is not None:
            values[key] = Path(value) if key == "pins_path" else value

    config = RunConfig(**values)
    logger.info(f"⚙️ Run config: prime={config.prime}, seed={config.seed}, trials={config.trials}, format={config.output_format}")
    return config

# =================================================================================================
# PINS
# =================================================================================================

def load_pins(path: Path) -> Dict[str, Any]:
    """Claim id -> pinned expectation."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            pins = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"pins file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"pins file {path} is not valid JSON: {e}")
    except OSError as e:
        raise ConfigError(f"cannot read pins file {path}: {e}")

    if not isinstance(pins, dict):
        raise ConfigError(f"pins file {path} must hold a JSON object")
    pins.pop("_comment", None)
    logger.info(f"📌 Loaded {len(pins)} claim pins from {Path(path).name}")
    return pins
