"""Report generation for market reconstruction runs."""
import os

import jinja2
from jinja2 import FileSystemLoader

from market_recon.config import get_custom_logger

logger = get_custom_logger("market_recon.reports.report")

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates")


class Report:
    """Report class tracking the parameters, outputs and findings of one command."""

    def __init__(self, command, params):
        self.command = command
        self.params = dict(params)
        self.files_written = []
        self.warnings = []
        self.summary = {}

    def add_file(self, path):
        """Record an output file"""
        self.files_written.append(path)

    def add_warning(self, message):
        """Add a data or fitting warning to the report"""
        logger.warning(message)
        self.warnings.append(str(message))

    def update_summary(self, **values):
        """Update headline values"""
        self.summary.update(values)

    def to_json(self):
        return {
            "command": self.command,
            "params": self.params,
            "summary": self.summary,
            "warnings": self.warnings,
            "files": [os.path.basename(f) for f in self.files_written],
        }

    def report(self, file):
        """Generate the HTML run summary."""
        environment = jinja2.Environment(loader=FileSystemLoader(TEMPLATES_DIR),
                                         autoescape=True)
        template = environment.get_template("run_report.html")
        content = template.render(self.to_json())

        os.makedirs(os.path.dirname(file) if os.path.dirname(
            file) else '.', exist_ok=True)

        with open(file, mode="w", encoding="utf-8") as message:
            message.write(content)
