import os
from dataclasses import dataclass
from pathlib import Path

app_name = "legendrian_skein"
app_title = "Legendrian Skein"
app_publisher = "Picurit"
app_description = "Invariants of Legendrian links in the solid torus from annular front diagrams"
app_email = "dev@picurit.com"
app_license = "mit"

# Settings
# ------------------

# Version stamped into every CLI report header
REPORT_VERSION = 1

# Rewriting steps allowed per top-level HOMFLY-PT evaluation
REWRITE_STEP_BUDGET = 200_000

# Grading used when a command does not pass -p
DEFAULT_RULING_GRADING = 2

DEFAULT_CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"

STEP_BUDGET_ENV = "LEGENDRIAN_SKEIN_STEP_BUDGET"


@dataclass(frozen=True)
class Settings:
    report_version: int
    rewrite_step_budget: int
    default_ruling_grading: int
    default_corpus_dir: Path


def get_settings() -> Settings:
    """
    Return the effective settings, applying the optional step budget override.

    Returns:
        Settings: frozen snapshot of the module level settings

    Raises:
        ValueError: If the environment override is not a positive integer
    """
    budget = REWRITE_STEP_BUDGET
    override = os.environ.get(STEP_BUDGET_ENV, "").strip()
    if override:
        budget = int(override)
        if budget <= 0:
            raise ValueError(f"{STEP_BUDGET_ENV} must be positive, got {budget}")

    return Settings(
        report_version=REPORT_VERSION,
        rewrite_step_budget=budget,
        default_ruling_grading=DEFAULT_RULING_GRADING,
        default_corpus_dir=DEFAULT_CORPUS_DIR,
    )
