import traceback
import logging
from logging import FileHandler
from pathlib import Path
from rich.logging import RichHandler


def init_logging(config):
    logging.basicConfig(
        level=config.LOG_LEVEL, format="%(message)s", datefmt="[%X]", handlers=[RichHandler()], force=True,
    )

    if not config.LOG_DIRECTORY:
        return

    log_directory = Path(config.LOG_DIRECTORY)
    log_directory.mkdir(parents=True, exist_ok=True)

    info_handler = FileHandler(str(log_directory / 'info.log'))
    info_handler.setLevel(logging.INFO)
    info_handler.setFormatter(logging.Formatter(
        '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
    ))

    logging.getLogger().addHandler(info_handler)

    error_handler = FileHandler(str(log_directory / 'error.log'))
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(logging.Formatter(
        '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
    ))

    logging.getLogger().addHandler(error_handler)

    logging.info(f'Logging to {log_directory}')


def log_exception(e):
    tb = ''.join(traceback.format_exception(type(e), e, e.__traceback__))
    logging.error(tb)
