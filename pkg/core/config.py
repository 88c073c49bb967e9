import os
from dotenv import load_dotenv

# Load .env file
load_dotenv()

class Settings:
    # Column cap for compile_network; larger networks have to be aggregated first
    SIZE_CAP: int = int(os.getenv("FVN_SIZE_CAP", str(2**24)))

    # Enumeration caps (distinct words / prefixes kept before a result is flagged partial)
    LANGUAGE_CAP: int = int(os.getenv("FVN_LANGUAGE_CAP", "200000"))
    SIMULATION_CAP: int = int(os.getenv("FVN_SIMULATION_CAP", "200000"))

    # CLI defaults
    DEFAULT_HORIZON: int = int(os.getenv("FVN_DEFAULT_HORIZON", "3"))
    DEFAULT_SEED: int = int(os.getenv("FVN_DEFAULT_SEED", "0"))
    OUTPUT_DIR: str = os.getenv("FVN_OUTPUT_DIR", "artifacts")
    LOG_LEVEL: str = os.getenv("FVN_LOG_LEVEL", "INFO").upper()

    # Non aggregate-able blocks are logged and extracted anyway unless this is set
    STRICT_AGGREGATION: bool = os.getenv("FVN_STRICT_AGGREGATION", "false").lower() == "true"

    # Largest domain size accepted by the network DSL
    MAX_DOMAIN_SIZE: int = int(os.getenv("FVN_MAX_DOMAIN_SIZE", "16"))

settings = Settings()
