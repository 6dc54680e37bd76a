"""Check-script front end."""

from .builtins import builtin_example, example_names
from .main import main
from .runner import Report, run
from .script import CheckScript, parse_script, print_script

__all__ = ["CheckScript", "Report", "builtin_example", "example_names", "main", "parse_script",
           "print_script", "run"]
