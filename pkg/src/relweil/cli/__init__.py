"""Command-line interface and job-file handling."""

from relweil.cli.jobs import JobSpec, parse_job, serialize_job
from relweil.cli.main import main, run_job
from relweil.cli.suite import run_paper_suite

__all__ = ["JobSpec", "main", "parse_job", "run_job", "run_paper_suite", "serialize_job"]
