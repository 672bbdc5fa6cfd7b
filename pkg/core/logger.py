import logging
import sys
from datetime import datetime
from .config import LOG_DIR, LOG_TO_FILE


class RunLogger:
    """Console (and optionally file) logging for one command-line run.

    Results go to stdout, so the console handler writes to stderr and leaves
    the result bytes untouched.
    """

    def __init__(self, command, debug_mode=False, log_to_file=LOG_TO_FILE):
        self.command = command
        self.start_time = datetime.now()
        self.debug_mode = debug_mode
        self.log_to_file = log_to_file
        self.log_file_path = None
        self.logger = self._setup_logging()

    def _setup_logging(self):
        formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s', datefmt='%y-%m-%d %H:%M:%S')

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        handlers = [console_handler]

        if self.log_to_file:
            LOG_DIR.mkdir(parents=True, exist_ok=True)
            self.log_file_path = LOG_DIR / f"{self.start_time:%y%m%d}_{self.command}.log"
            file_handler = logging.FileHandler(self.log_file_path, mode='a', delay=False)
            file_handler.setFormatter(formatter)
            handlers.append(file_handler)

        logging.basicConfig(
            level=logging.DEBUG if self.debug_mode else logging.WARNING,
            handlers=handlers,
            force=True,
        )
        # Library loggers report progress at INFO; keep them quiet unless debugging.
        logging.getLogger('core').setLevel(logging.DEBUG if self.debug_mode else logging.WARNING)

        logger = logging.getLogger(__name__)
        logger.setLevel(logging.DEBUG if self.debug_mode else logging.INFO)
        if self.debug_mode or self.log_file_path is not None:
            logger.info(f"========================= Run Start: {self.job_name} ==========================")
            if self.log_file_path is not None:
                logger.info(f"Logging to {self.log_file_path}")
        return logger

    @property
    def job_name(self):
        return f"{self.start_time:%Y%m%d-%H%M%S} {self.command}"

    def debug(self, message):
        self.logger.debug(message)

    def info(self, message):
        self.logger.info(message)

    def warning(self, message):
        self.logger.warning(message)

    def error(self, message):
        self.logger.error(message)

    def exception(self, message):
        self.logger.exception(message)

    def close(self):
        if not (self.debug_mode or self.log_file_path is not None):
            return
        end_time = datetime.now()
        self.logger.info(f"========================== Run End: {self.job_name} ===========================")
        self.logger.info(f"{self.start_time.strftime('%d-%m-%Y %H:%M:%S')}  Run started")
        self.logger.info(f"{end_time.strftime('%d-%m-%Y %H:%M:%S')}  Run completed")
        self.logger.info(f"Duration: {end_time - self.start_time}")


def setup_logging(command, debug_mode=False, log_to_file=LOG_TO_FILE):
    return RunLogger(command, debug_mode, log_to_file)
