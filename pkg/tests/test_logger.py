import logging
import tempfile
import unittest
from unittest.mock import patch
from pathlib import Path
import sys
import os

# Add the project root directory to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.logger import RunLogger, setup_logging


class TestRunLogger(unittest.TestCase):
    def tearDown(self):
        for handler in logging.getLogger().handlers:
            handler.close()
        logging.basicConfig(level=logging.WARNING, force=True)

    def test_quiet_by_default(self):
        log = setup_logging("count")
        self.assertIsInstance(log, RunLogger)
        self.assertIsNone(log.log_file_path)
        self.assertEqual(logging.getLogger('core').level, logging.WARNING)
        self.assertTrue(log.job_name.endswith(" count"))

    def test_debug_mode_opens_up_library_loggers(self):
        with patch.object(logging.Logger, 'info') as mock_info:
            log = setup_logging("check", debug_mode=True)
            log.close()
        self.assertEqual(logging.getLogger('core').level, logging.DEBUG)
        messages = [call.args[0] for call in mock_info.call_args_list]
        self.assertTrue(any("Run Start: " in message for message in messages))
        self.assertTrue(any(message.startswith("Duration: ") for message in messages))

    def test_log_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            with patch('core.logger.LOG_DIR', Path(tmp) / "logs"):
                log = setup_logging("check", log_to_file=True)
                log.warning("three systems registered")
                log.close()
                for handler in logging.getLogger().handlers:
                    handler.flush()
                self.assertTrue(log.log_file_path.name.endswith("_check.log"))
                self.assertIn("three systems registered", log.log_file_path.read_text())


if __name__ == '__main__':
    unittest.main()
