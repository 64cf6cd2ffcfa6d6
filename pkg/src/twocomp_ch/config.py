import os
from dotenv import load_dotenv

load_dotenv()


class BaseConfig:
    # Environment
    TESTING = False
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_DIRECTORY = os.getenv("LOG_DIRECTORY", "")

    # Output
    OUTPUT_DIRECTORY = os.getenv("OUTPUT_DIRECTORY", "output")

    # Sweeps
    SWEEP_JOBS = int(os.getenv("SWEEP_JOBS", "1"))

    # Check suite
    CHECK_SEED = int(os.getenv("CHECK_SEED", "20240601"))
    CHECK_GRID_SIZE = int(os.getenv("CHECK_GRID_SIZE", "64"))


class BaseTestConfig(BaseConfig):
    # Environment
    TESTING = True
    LOG_LEVEL = "WARNING"
    LOG_DIRECTORY = ""
