import os

from dotenv import load_dotenv

load_dotenv()

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
LOG_DIR = os.getenv("LOG_DIR", "logs")
LOG_FILE_ENABLED = True if int(os.getenv("LOG_FILE_ENABLED", 0)) == 1 else False  # Default false
LOG_FILE_MAX_BYTES = int(os.getenv("LOG_FILE_MAX_BYTES", 10 * 1024 * 1024))  # 10MB
LOG_FILE_BACKUP_COUNT = int(os.getenv("LOG_FILE_BACKUP_COUNT", 5))

# Catalog verification fan-out
VERIFY_MAX_WORKERS = int(os.getenv("VERIFY_MAX_WORKERS", 4))

# Exhaustive oracle guard: p^(n*n) candidate matrices
ORACLE_MAX_MATRICES = int(os.getenv("ORACLE_MAX_MATRICES", 1_000_000))

# Randomized checks
PROPERTY_SAMPLES = int(os.getenv("PROPERTY_SAMPLES", 100))
RANDOM_SEED = int(os.getenv("RANDOM_SEED", 42))
RANDOM_ENTRY_BOUND = int(os.getenv("RANDOM_ENTRY_BOUND", 5))  # numerators in [-B, B], denominators in [1, B]

# Documents and reports
DEFAULT_SYMMETRIC = True if int(os.getenv("DEFAULT_SYMMETRIC", 1)) == 1 else False  # Default true
JSON_INDENT = int(os.getenv("JSON_INDENT", 2))
