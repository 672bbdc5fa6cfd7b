import os
import yaml
from pathlib import Path

# Base directories
PROJECT_DIR = Path(__file__).resolve().parent.parent
CONFIG_DIR = Path(os.environ.get("AOT_CONFIG_DIR", PROJECT_DIR / "configs"))

# Configuration file paths
COMMON_CONFIG = CONFIG_DIR / "common_config.yaml"
CHECK_CONFIG = CONFIG_DIR / "check_config.yaml"
ENUMERATE_CONFIG = CONFIG_DIR / "enumerate_config.yaml"

def load_config(config_file):
    """Load and return the configuration from a YAML file (empty dict for an empty file)."""
    with open(config_file, 'r') as file:
        return yaml.safe_load(file) or {}

# Load configurations
common_config = load_config(COMMON_CONFIG)
check_config = load_config(CHECK_CONFIG)
enumerate_config = load_config(ENUMERATE_CONFIG)

# Serialization
FORMAT_VERSION = 1

# Logging
LOG_DIR = PROJECT_DIR / common_config.get('log_dir', 'logs')
LOG_TO_FILE = common_config.get('log_to_file', False)

# Relativized comprehension bounds (max_objects, max_states)
_bounds = common_config.get('bounds', {})
DEFAULT_MAX_OBJECTS = _bounds.get('max_objects', 3)
DEFAULT_MAX_STATES = _bounds.get('max_states', 4)

# Canonical forms
_canonical = common_config.get('canonical', {})
MAX_CANONICAL_WIDTH = _canonical.get('max_width', 8)
ID_PREFIX_LENGTH = _canonical.get('id_prefix_length', 8)

# Search budgets
MAX_SEARCH_SPACE = common_config.get('limits', {}).get('max_search_space', 2_000_000)
MAX_STATE_POWER = check_config.get('max_state_power', 16)
DIAGONAL_BOUND = check_config.get('diagonal_bound', 6)
AUDIT_CHECKS = check_config.get('checks', [
    'axioms', 'isolation', 'identity_criterion',
    'uniform_state_spaces', 'state_space_corollary', 'f_injective',
])

# Enumeration
DEFAULT_JOBS = enumerate_config.get('jobs', 1)
DEFAULT_STRATEGY = enumerate_config.get('strategy', 'orderly')
COUNT_RANGE = enumerate_config.get('count_range', [1, 2, 3])
